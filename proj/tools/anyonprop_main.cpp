#include "anyonprop/cli.hpp"

int main(int argc, char** argv) { return anyonprop::run_cli(argc, argv); }
