#include "anyonprop/winding_mc.hpp"

#include <cmath>
#include <vector>

#include "anyonprop/errors.hpp"
#include "anyonprop/parallel.hpp"
#include "anyonprop/rng.hpp"

namespace anyonprop {

namespace {

constexpr long kBlock = 16384;
constexpr int kMaxDepth = 980;
constexpr int kMaxRetries = 100;

struct Vec2 {
    double x = 0.0, y = 0.0;
};

double segment_origin_distance2(const Vec2& a, const Vec2& b) {
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double L2 = dx * dx + dy * dy;
    if (L2 == 0.0) return a.x * a.x + a.y * a.y;
    double t = -(a.x * dx + a.y * dy) / L2;
    t = std::clamp(t, 0.0, 1.0);
    const double px = a.x + t * dx, py = a.y + t * dy;
    return px * px + py * py;
}

double turn(const Vec2& a, const Vec2& b) {
    return std::atan2(a.x * b.y - a.y * b.x, a.x * b.x + a.y * b.y);
}

// Continuous-angle increment across one bridge segment of duration dt.  The
// straight chord is trusted once it clears the origin by 3*sqrt(dt): the
// probability that the true sub-bridge still winds behind the origin is then
// below e^{-18}.  Closer segments are split by midpoint bridge samples
// (mean (a+b)/2, variance dt/4 per coordinate).  The depth budget must be
// generous: the chance that a bridge approaches within delta of the origin
// falls off only like 1/log(1/delta), so cutting refinement off after a few
// dozen halvings discards a percent-level, winding-rich slice of paths and
// visibly skews the histogram.  The limit below is the double-precision
// floor (dt underflow); segments still ambiguous there flag the path for
// resampling, which at that rarity (~4e-4) is statistically harmless.
double segment_angle(const Vec2& a, const Vec2& b, double dt,
                     GaussianSampler& rng, int depth, bool& ambiguous) {
    if (ambiguous) return 0.0;
    if (segment_origin_distance2(a, b) > 9.0 * dt) return turn(a, b);
    if (depth >= kMaxDepth || dt < 1e-300) {
        ambiguous = true;
        return 0.0;
    }
    const double half_std = 0.5 * std::sqrt(dt);
    Vec2 mid{0.5 * (a.x + b.x) + half_std * rng.next(),
             0.5 * (a.y + b.y) + half_std * rng.next()};
    return segment_angle(a, mid, 0.5 * dt, rng, depth + 1, ambiguous) +
           segment_angle(mid, b, 0.5 * dt, rng, depth + 1, ambiguous);
}

// One bridge path; returns the winding label or sets `ambiguous`.
int sample_winding(const PolarPoint& src, const PolarPoint& dst, double T,
                   int steps, GaussianSampler& rng, double per,
                   double antipode_prob, bool& ambiguous) {
    ambiguous = false;
    bool antipode = false;
    if (antipode_prob > 0.0 && rng.uniform01() < antipode_prob) antipode = true;
    const double sgn = antipode ? -1.0 : 1.0;
    const Vec2 target{sgn * dst.r * std::cos(dst.theta),
                      sgn * dst.r * std::sin(dst.theta)};
    Vec2 cur{src.r * std::cos(src.theta), src.r * std::sin(src.theta)};
    const double dt = T / steps;
    double swept = 0.0;
    for (int k = 0; k < steps; ++k) {
        const double rem = (double)(steps - k) * dt;
        const double pull = dt / rem;
        const double sd = std::sqrt(dt * (rem - dt) / rem);
        Vec2 nxt{cur.x + (target.x - cur.x) * pull + sd * rng.next(),
                 cur.y + (target.y - cur.y) * pull + sd * rng.next()};
        if (k == steps - 1) nxt = target;  // exact endpoint, sd is 0 here
        swept += segment_angle(cur, nxt, dt, rng, 0, ambiguous);
        if (ambiguous) return 0;
        cur = nxt;
    }
    return (int)std::lround((src.theta + swept - dst.theta) / per);
}

} // namespace

WindingHistogram brownian_winding_distribution(const PolarPoint& src,
                                               const PolarPoint& dst, double T,
                                               long samples, int steps,
                                               std::uint64_t seed,
                                               AngularPeriod period) {
    check_point(src, "brownian_winding_distribution src");
    check_point(dst, "brownian_winding_distribution dst");
    if (!(T > 0.0) || !std::isfinite(T))
        throw DomainError("brownian_winding_distribution: require finite T > 0");
    if (samples < 1)
        throw DomainError("brownian_winding_distribution: require samples >= 1");
    if (steps < 16)
        throw DomainError("brownian_winding_distribution: require steps >= 16");

    const double per = period_radians(period);
    // Relative weight of the antipodal image for the pi-period identification.
    double antipode_prob = 0.0;
    if (period == AngularPeriod::Pi) {
        const double ct = std::cos(dst.theta - src.theta);
        const double wm = std::exp(-(src.r * src.r + dst.r * dst.r -
                                     2.0 * src.r * dst.r * ct) / (2.0 * T));
        const double wp = std::exp(-(src.r * src.r + dst.r * dst.r +
                                     2.0 * src.r * dst.r * ct) / (2.0 * T));
        antipode_prob = wp / (wm + wp);
    }

    const long nblocks = (samples + kBlock - 1) / kBlock;
    std::vector<std::map<int, long>> block_counts((size_t)nblocks);
    parallel_for(nblocks, [&](long b) {
        GaussianSampler rng{Xoshiro256pp(seed, (std::uint64_t)b)};
        const long lo = b * kBlock;
        const long hi = std::min(samples, lo + kBlock);
        auto& counts = block_counts[(size_t)b];
        for (long i = lo; i < hi; ++i) {
            int n = 0;
            bool ambiguous = true;
            for (int attempt = 0; ambiguous; ++attempt) {
                if (attempt >= kMaxRetries)
                    throw SamplingError(
                        "brownian_winding_distribution: origin ambiguity "
                        "persisted through the retry budget");
                n = sample_winding(src, dst, T, steps, rng, per, antipode_prob,
                                   ambiguous);
            }
            ++counts[n];
        }
    });

    WindingHistogram out;
    out.samples = samples;
    out.seed = seed;
    std::map<int, long> merged;
    for (const auto& bc : block_counts)
        for (const auto& [n, c] : bc) merged[n] += c;
    for (const auto& [n, c] : merged) {
        WindingBin bin;
        bin.count = c;
        bin.probability = (double)c / (double)samples;
        bin.std_error =
            std::sqrt(bin.probability * (1.0 - bin.probability) / (double)samples);
        out.counts[n] = bin;
    }
    return out;
}

} // namespace anyonprop
