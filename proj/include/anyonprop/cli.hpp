#ifndef ANYONPROP_CLI_HPP
#define ANYONPROP_CLI_HPP

#include <cstdint>
#include <string>

namespace anyonprop {

// Parsed command-line run description.  Every field is echoed verbatim into
// the '#' metadata header of the output, so a result file identifies the run
// that produced it.
struct RunSpec {
    std::string command;
    double r_src = 1.0;
    double theta_src = 0.0;
    double r_dst = 1.0;
    double theta_dst = 0.0;
    double T = 1.0;
    std::string regime = "euclidean";  // euclidean | realtime
    double alpha = 0.0;
    std::string period = "2pi";        // 2pi | pi
    int n_max = 8;
    double rel_tol = -1.0;             // <= 0 selects the library defaults
    int lattice_n = 64;
    int grid_points = 400;
    long samples = 200000;
    int steps = 256;
    std::uint64_t seed = 20260815;
    std::string sweep = "none";        // alpha | time | r-dst | theta-dst
    double sweep_from = 0.0;
    double sweep_to = 0.0;
    int sweep_points = 0;
    std::string out;                   // empty writes to stdout
};

// Parses argv, dispatches the command, writes the CSV.  Returns the process
// exit status: 0 success, 2 usage or precondition failure, 3 numerical
// evaluation failure.
int run_cli(int argc, const char* const* argv);

} // namespace anyonprop

#endif
