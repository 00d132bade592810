#ifndef ANYONPROP_LATTICE_HPP
#define ANYONPROP_LATTICE_HPP

#include <vector>

#include "anyonprop/types.hpp"

namespace anyonprop {

// Radial grid and slicing plan for the transfer-matrix evaluation.
// Non-positive r_min / r_max select problem-adapted defaults:
//   r_min = min(0.39*sqrt(T/N), 0.75*min(r', r''))
//   r_max = 4*max(r', r'', sqrt(T)) + 2*sqrt(T)
// The r_min floor is a stability bound: each slice carries the attractive
// factor e^{+eps/(8ab)} from the effective potential, which blows up on a
// fixed grid once ab << eps/8.  The kernel suppresses paths below
// sqrt(eps) anyway, so the cut bias stays within the slicing error.
struct LatticeConfig {
    int N = 64;
    double r_min = 0.0;
    double r_max = 0.0;
    int grid_points = 400;
    bool include_effective_potential = true;
};

// Operator-ordering correction of the radial discretization, -1/(8 r^2).
double effective_potential(double r);

// Geometric-mean midpoint of one time slice.
double midpoint_radius(double r_prev, double r_next);

// LatticeConfig with defaults resolved and invariants checked against the
// endpoints (r_min below both radii, r_max above 4*max(r', r'', sqrt(T))).
LatticeConfig resolve_lattice(const LatticeConfig& cfg, const PolarPoint& src,
                              const PolarPoint& dst, double T);

// Sector propagator from the time-sliced path integral: for each lambda
// quadrature node, N-step radial transfer with the sliced kernel
//   (2 pi eps)^{-1/2} (ab)^{-1/2} e^{-(a-b)^2/2eps} e^{-(lambda^2 - 1/4) eps / 2ab}
// on a log-spaced grid, then K_n = (1/pi) int_0^inf cos(lambda dtheta_n)
// A(lambda) dlambda.  Euclidean only.  Significant amplitude reaching the
// r_max boundary raises an EvaluationError naming the bound.
PropagatorValue transfer_matrix_Kn(const SectorLabel& sector,
                                   const PolarPoint& src, const PolarPoint& dst,
                                   double T, const LatticeConfig& lattice,
                                   const QuadratureSpec& quad = {});

// Same, for several sectors at once: the radial amplitude A(lambda) does not
// depend on n, so one transfer sweep serves every sector.
std::vector<PropagatorValue> transfer_matrix_Kn_batch(
    const std::vector<SectorLabel>& sectors, const PolarPoint& src,
    const PolarPoint& dst, double T, const LatticeConfig& lattice,
    const QuadratureSpec& quad = {});

} // namespace anyonprop

#endif
