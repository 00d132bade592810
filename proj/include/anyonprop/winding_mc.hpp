#ifndef ANYONPROP_WINDING_MC_HPP
#define ANYONPROP_WINDING_MC_HPP

#include <cstdint>
#include <map>

#include "anyonprop/types.hpp"

namespace anyonprop {

struct WindingBin {
    long count = 0;
    double probability = 0.0;
    double std_error = 0.0;  // sqrt(p(1-p)/samples)
};

struct WindingHistogram {
    std::map<int, WindingBin> counts;
    long samples = 0;
    std::uint64_t seed = 0;
};

// Winding-sector distribution of Brownian bridges from src to dst over time
// T: samples discretized bridges (steps Cartesian increments), accumulates
// the continuous angle with per-segment increments in (-pi, pi), classifies
// each path by n = round((theta' + sum - theta'')/period), and normalizes.
// Segments passing near the origin are recursively refined with midpoint
// bridge samples until the winding is unambiguous; a path still ambiguous at
// the depth limit is resampled, and a SamplingError reports retry exhaustion.
// For period pi the bridge targets dst or its antipode, Bernoulli-weighted by
// the two free-propagator kernels.  P(n) estimates K_n / sum_m K_m.
// Fixed-size sample blocks carry seeds derived from (seed, block index), so
// results are bit-identical for a given seed regardless of thread count.
WindingHistogram brownian_winding_distribution(
    const PolarPoint& src, const PolarPoint& dst, double T, long samples,
    int steps, std::uint64_t seed, AngularPeriod period = AngularPeriod::TwoPi);

} // namespace anyonprop

#endif
