#ifndef ANYONPROP_ERRORS_HPP
#define ANYONPROP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace anyonprop {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Argument outside the mathematical domain of an operation (r <= 0, x < 0, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// A caller combined valid pieces in an invalid way (mixed sector periods,
// empty sweep grid, realtime request to a Euclidean-only routine, ...).
class UsageError : public Error {
public:
    explicit UsageError(const std::string& msg) : Error(msg) {}
};

// A numerical procedure failed to converge within its budget.  The message
// carries the diagnostics (argument, order, terms used, tail estimate).
class EvaluationError : public Error {
public:
    explicit EvaluationError(const std::string& msg) : Error(msg) {}
};

// Monte Carlo sampling exhausted its retry budget (e.g. a path refinement
// near the origin hit the recursion cap repeatedly).
class SamplingError : public Error {
public:
    explicit SamplingError(const std::string& msg) : Error(msg) {}
};

} // namespace anyonprop

#endif
