#ifndef ANYONPROP_SPECIAL_FUNCTIONS_HPP
#define ANYONPROP_SPECIAL_FUNCTIONS_HPP

#include <vector>

namespace anyonprop {

// ln Gamma(x) for x > 0 via the 13-term Lanczos rational approximation
// (g = 6.024680040776729583740234375).  Relative error <= 1e-13 on
// [0.5, 1e6]; values below 0.5 are lifted with the recurrence.
double log_gamma(double x);

// Scaled modified Bessel function e^{-x} I_nu(x), nu >= 0, x >= 0.
// The scale exponent is by definition equal to x, so I_nu(x) = value * e^x.
// Strategy: ascending power series for x < max(30, nu^2/20); beyond that a
// large-argument expansion (Hankel for nu < 14, uniform Debye otherwise).
struct ScaledBessel {
    double value = 0.0;  // e^{-x} I_nu(x), in (0, 1]
    double scale = 0.0;  // exponent s with I_nu(x) = value * e^s; s = x
    int terms = 0;
};

ScaledBessel bessel_i_scaled(double nu, double x);

// Bessel function of the first kind J_nu(x), nu >= 0, x >= 0.  Power series
// for small x, Hankel asymptotics for large x at small order, and a backward
// (Miller) recurrence with Neumann-series normalisation in between.
// Relative error <= 1e-9 for x <= 1e4 (in practice ~1e-13).
double bessel_j(double nu, double x);

// All of J_{mu+k}(x) for k = 0..count-1 from one backward-recurrence chain.
// mu >= 0; much cheaper than `count` independent evaluations and immune to
// the instability of upward recursion past the turning point.
std::vector<double> bessel_j_ladder(double mu, double x, int count);

// Sum_{m=-m_max}^{m_max} I_m(x), accumulated in scaled form.  Converges to
// e^x as m_max grows (generating function at t = 1).
double bessel_i_generating_sum(double x, int m_max);

} // namespace anyonprop

#endif
