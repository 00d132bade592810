#ifndef ANYONPROP_PROPAGATORS_HPP
#define ANYONPROP_PROPAGATORS_HPP

#include <utility>
#include <vector>

#include "anyonprop/types.hpp"

namespace anyonprop {

// Free particle in the plane:
//   real time  (1/2pi i T) exp(i|r''-r'|^2 / 2T)
//   Euclidean  (1/2pi T)   exp(-|r''-r'|^2 / 2T)
PropagatorValue free_2d(const PolarPoint& src, const PolarPoint& dst,
                        const TimeMode& mode);

// Particle on a circle of radius R threaded by flux alpha, winding form:
//   sum_{|n|<=n_max} e^{-i n alpha} (2pi i T)^{-1/2} exp(i R^2 (dtheta+2pi n)^2 / 2T)
// (Euclidean analogue via T -> -iT).  error_estimate comes from the dropped
// windings; if rel_tol > 0 and the Euclidean tail exceeds it, an
// EvaluationError suggests a sufficient n_max.
PropagatorValue circle_flux(double theta_src, double theta_dst, double R,
                            const StatisticsAngle& alpha, const TimeMode& mode,
                            int n_max, double rel_tol = 0.0);

// Same propagator through the dual (angular-momentum) representation:
//   (1/2pi R) sum_m exp(i(m+alpha/2pi) dtheta) exp(-(m+alpha/2pi)^2 T / 2R^2)
// Euclidean only: the dual sum has unit-modulus terms in real time and does
// not converge.  The two forms agree by Poisson summation.
PropagatorValue circle_flux_momentum(double theta_src, double theta_dst,
                                     double R, const StatisticsAngle& alpha,
                                     const TimeMode& mode,
                                     const TruncationPolicy& trunc = {});

// Fixed-winding-sector propagator K_n on the punctured plane:
//   Euclidean  e^{-(r'-r'')^2/2T}/(pi T) int_0^inf cos(lambda dtheta_n)
//              e^{-x} I_lambda(x) dlambda,     x = r'r''/T
//   real time  e^{i(r'^2+r''^2)/2T}/(pi i T) int_0^inf cos(lambda dtheta_n)
//              e^{-i pi lambda/2} J_lambda(x) dlambda
PropagatorValue sector_K(const SectorLabel& sector, const PolarPoint& src,
                         const PolarPoint& dst, const TimeMode& mode,
                         const QuadratureSpec& quad = {});

// Flux-tube propagator, the dual sum over angular momenta:
//   e^{i(r'^2+r''^2)/2T}/(2pi i T) sum_m e^{i(m+alpha/2pi)(theta''-theta')}
//   I_{|m+alpha/2pi|}(-i r'r''/T)
// summed symmetrically outward from the order-minimizing m per trunc.
PropagatorValue flux_tube_K(const StatisticsAngle& alpha, const PolarPoint& src,
                            const PolarPoint& dst, const TimeMode& mode,
                            const TruncationPolicy& trunc = {});

// Two-anyon relative propagator: as flux_tube_K but summed over orders
// |2m + alpha/pi| with phases e^{i(2m+alpha/pi)(theta''-theta')} and twice the
// prefactor (angular period pi instead of 2pi).
PropagatorValue two_anyon_K(const StatisticsAngle& alpha, const PolarPoint& src,
                            const PolarPoint& dst, const TimeMode& mode,
                            const TruncationPolicy& trunc = {});

// Symmetrized (+1) / antisymmetrized (-1) free propagator,
//   (1/2pi i T)(e^{i|r''-r'|^2/2T} +- e^{i|r''+r'|^2/2T}),
// the alpha = 0 / pi closed forms of two_anyon_K.
PropagatorValue boson_fermion_K(int sign, const PolarPoint& src,
                                const PolarPoint& dst, const TimeMode& mode);

// Phase exp(-i alpha (theta''-theta')/2pi) converting the winding-phase
// convention to the single-valued-wavefunction gauge.
complex gauge_phase(const StatisticsAngle& alpha, double theta_src,
                    double theta_dst);

// sum_n e^{-i n alpha} K_n over precomputed sectors, which must share one
// angular period.  Error estimates accumulate.
PropagatorValue sector_sum(const StatisticsAngle& alpha,
                           const std::vector<std::pair<SectorLabel, PropagatorValue>>& sectors);

} // namespace anyonprop

#endif
