#ifndef ANYONPROP_QUADRATURE_HPP
#define ANYONPROP_QUADRATURE_HPP

#include <functional>

#include "anyonprop/types.hpp"

namespace anyonprop {

struct QuadratureResult {
    complex value{0.0, 0.0};
    double error_estimate = 0.0;  // sum of accepted panel bisection deltas
    long evals = 0;               // integrand evaluations
};

// Integrate f over [0, upper] with panelled 16-point Gauss-Legendre.
// Panels of spec.panel_width are bisected until the two halves agree with the
// parent to within a width-proportional share of spec.rel_tol times the L1
// mass of the coarse pass, or until spec.max_depth; the achieved deltas are
// accumulated into error_estimate rather than hidden.
QuadratureResult integrate_panels(const std::function<complex(double)>& f,
                                  double upper, const QuadratureSpec& spec);

// Default truncation point for the lambda integrals: the scaled Bessel factor
// has effectively left its support once lambda exceeds x + 12*sqrt(x) + 20.
double default_lambda_max(double x);

// The 16-point Gauss-Legendre rule on [-1, 1] used by the panel integrator,
// for callers that lay out fixed (non-adaptive) panels themselves.
const double* gl16_nodes();
const double* gl16_weights();

} // namespace anyonprop

#endif
