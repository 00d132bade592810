#ifndef ANYONPROP_RNG_HPP
#define ANYONPROP_RNG_HPP

#include <cmath>
#include <cstdint>

namespace anyonprop {

// splitmix64 step; used only to expand seeds into well-mixed state words.
struct SplitMix64 {
    std::uint64_t state = 0;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

// xoshiro256++ generator.  The (seed, stream) form derives an independent
// state per stream index, so sample blocks can be generated in any order or
// concurrently and still reproduce bit-identically.
class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed) : Xoshiro256pp(seed, 0) {}

    Xoshiro256pp(std::uint64_t seed, std::uint64_t stream) {
        SplitMix64 sm{seed};
        std::uint64_t base = sm.next();
        SplitMix64 derive{base + 0x9E3779B97F4A7C15ULL * stream};
        for (int i = 0; i < 4; ++i) s_[i] = derive.next();
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;  // all-zero is absorbing
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // 53-bit uniform in [0, 1).
    double uniform01() { return (double)(next() >> 11) * 0x1.0p-53; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

// Standard normal deviates via the Marsaglia polar method.
class GaussianSampler {
public:
    explicit GaussianSampler(Xoshiro256pp rng) : rng_(rng) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * rng_.uniform01() - 1.0;
            v = 2.0 * rng_.uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        have_spare_ = true;
        return u * m;
    }

    double uniform01() { return rng_.uniform01(); }

private:
    Xoshiro256pp rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace anyonprop

#endif
