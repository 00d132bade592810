#include "doctest.h"

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "anyonprop/errors.hpp"
#include "anyonprop/propagators.hpp"
#include "anyonprop/rng.hpp"
#include "anyonprop/types.hpp"

using namespace anyonprop;

namespace {

TimeMode euclid(double T) { return TimeMode{Regime::Euclidean, T}; }
TimeMode realtime(double T) { return TimeMode{Regime::RealTime, T}; }

double rel(const complex& got, const complex& want) {
    return std::abs(got - want) / std::abs(want);
}

// Sum of e^{-i n alpha} sector_K(n) over |n| <= n_max, period 2pi.
PropagatorValue sector_partial(double alpha, const PolarPoint& src,
                               const PolarPoint& dst, const TimeMode& mode,
                               int n_max) {
    std::vector<std::pair<SectorLabel, PropagatorValue>> acc;
    for (int n = -n_max; n <= n_max; ++n) {
        const SectorLabel sec{n, AngularPeriod::TwoPi};
        acc.emplace_back(sec, sector_K(sec, src, dst, mode));
    }
    return sector_sum(StatisticsAngle{alpha}, acc);
}

} // namespace

TEST_CASE("free_2d closed values") {
    const PolarPoint p{1.0, 0.4};
    CHECK(rel(free_2d(p, p, euclid(1.0)).amplitude, complex{1.0 / kTwoPi, 0.0}) <=
          1e-15);
    // |r''-r'| = 2 at T = 2: (1/4pi) e^{-1}.
    const PolarPoint a{1.0, 0.0}, b{3.0, 0.0};
    CHECK(rel(free_2d(a, b, euclid(2.0)).amplitude,
              complex{std::exp(-1.0) / (4.0 * kPi), 0.0}) <= 1e-15);
    // Real time: modulus is 1/(2 pi T) regardless of separation.
    CHECK(std::fabs(std::abs(free_2d(a, b, realtime(0.7)).amplitude) -
                    1.0 / (kTwoPi * 0.7)) <= 1e-15);
}

TEST_CASE("free_2d integrates to one over the plane") {
    const PolarPoint src{1.0, 0.0};
    const double T = 0.7;
    const double r_max = 1.0 + 6.0 * std::sqrt(T);
    const int nr = 2000, na = 64;  // midpoint-rule radial error ~ h^2
    double total = 0.0;
    for (int i = 0; i < nr; ++i) {
        const double r = (i + 0.5) * r_max / nr;
        for (int j = 0; j < na; ++j) {
            const double th = kTwoPi * j / na;
            total += free_2d(src, PolarPoint{r, th}, euclid(T)).amplitude.real() *
                     r * (r_max / nr) * (kTwoPi / na);
        }
    }
    CHECK(std::fabs(total - 1.0) <= 1e-6);
}

TEST_CASE("circle_flux equals the direct theta-function sum") {
    const double R = 1.0, T = 0.8;
    const auto got = circle_flux(0.0, 0.0, R, StatisticsAngle{0.0}, euclid(T), 12);
    double want = 0.0;
    for (int n = -12; n <= 12; ++n)
        want += std::exp(-R * R * kTwoPi * kTwoPi * n * n / (2.0 * T));
    want /= std::sqrt(kTwoPi * T);
    CHECK(rel(got.amplitude, complex{want, 0.0}) <= 1e-13);
}

TEST_CASE("circle_flux quasi-periodicity picks up one statistics phase") {
    // Shifting the arrival angle by a full turn relabels the windings
    // n -> n-1, so the amplitude gains e^{+i alpha}; the downward shift
    // gains e^{-i alpha}.
    const double R = 1.0, T = 0.6, a = 0.7, th = 0.4;
    const StatisticsAngle alpha{a};
    const complex base = circle_flux(0.0, th, R, alpha, euclid(T), 30).amplitude;
    const complex up = circle_flux(0.0, th + kTwoPi, R, alpha, euclid(T), 30).amplitude;
    const complex down = circle_flux(0.0, th - kTwoPi, R, alpha, euclid(T), 30).amplitude;
    CHECK(std::abs(up - std::exp(complex{0.0, a}) * base) <= 1e-12 * std::abs(base));
    CHECK(std::abs(down - std::exp(complex{0.0, -a}) * base) <= 1e-12 * std::abs(base));
}

TEST_CASE("circle_flux winding and momentum forms agree (Poisson)") {
    for (double T : {0.2, 0.5, 1.0, 5.0})
        for (double a : {0.0, 1.0, kPi}) {
            const StatisticsAngle alpha{a};
            const auto w = circle_flux(0.2, 0.9, 1.0, alpha, euclid(T), 60);
            const auto m = circle_flux_momentum(0.2, 0.9, 1.0, alpha, euclid(T));
            CHECK(rel(w.amplitude, m.amplitude) <= 1e-12);
        }
}

TEST_CASE("circle_flux flags an insufficient winding cutoff") {
    CHECK_THROWS_AS((void)circle_flux(0.0, 0.0, 1.0, StatisticsAngle{0.0},
                                      euclid(5.0), 1, 1e-10),
                    EvaluationError);
    try {
        (void)circle_flux(0.0, 0.0, 1.0, StatisticsAngle{0.0}, euclid(5.0), 1,
                          1e-10);
    } catch (const EvaluationError& e) {
        CHECK(std::string(e.what()).find("n_max") != std::string::npos);
    }
}

TEST_CASE("circle_flux momentum form refuses real time") {
    CHECK_THROWS_AS((void)circle_flux_momentum(0.0, 0.3, 1.0,
                                               StatisticsAngle{0.5},
                                               realtime(1.0)),
                    UsageError);
}

TEST_CASE("sector_K is real, and positive at small angle gap") {
    const PolarPoint src{1.0, 0.0}, dst{1.5, 0.3};
    const auto k0 = sector_K(SectorLabel{0, AngularPeriod::TwoPi}, src, dst,
                             euclid(1.0));
    CHECK(k0.amplitude.real() > 0.0);
    CHECK(std::fabs(k0.amplitude.imag()) <= 1e-14 * k0.amplitude.real());
    const auto k1 = sector_K(SectorLabel{1, AngularPeriod::TwoPi}, src, dst,
                             euclid(1.0));
    CHECK(std::fabs(k1.amplitude.imag()) <=
          1e-14 * std::fabs(k1.amplitude.real()));
}

TEST_CASE("sector_K is even in the sign of the sector angle") {
    const PolarPoint src{1.0, 0.0};
    const auto a = sector_K(SectorLabel{1, AngularPeriod::TwoPi}, src,
                            PolarPoint{1.3, 0.8}, euclid(0.9));
    const auto b = sector_K(SectorLabel{-1, AngularPeriod::TwoPi}, src,
                            PolarPoint{1.3, -0.8}, euclid(0.9));
    CHECK(rel(a.amplitude, b.amplitude) <= 1e-13);
}

TEST_CASE("sector partial sums approach flux_tube_K with a 1/dtheta^2 tail") {
    // The sector tail falls off like 1/dtheta_n^2 (endpoint contribution of
    // the lambda integral), so the |n| <= N deficit shrinks like 1/N: slow,
    // measurable, and pinned here at the (1, 0) -> (1.5, 1), T=1 point.
    const PolarPoint src{1.0, 0.0}, dst{1.5, 1.0};
    const TimeMode mode = euclid(1.0);

    const complex free_ref = flux_tube_K(StatisticsAngle{0.0}, src, dst, mode)
                                 .amplitude;  // equals free_2d, checked below
    const double d4 = rel(sector_partial(0.0, src, dst, mode, 4).amplitude, free_ref);
    const double d8 = rel(sector_partial(0.0, src, dst, mode, 8).amplitude, free_ref);
    const double d16 = rel(sector_partial(0.0, src, dst, mode, 16).amplitude, free_ref);
    CHECK(d8 < d4);
    CHECK(d16 < d8);
    CHECK(d8 > 5e-4);   // genuinely slow: the tail is power-law, not Gaussian
    CHECK(d8 < 2e-3);
    // Tail-law constant K_n * dtheta_n^2 is flat at large |n|.
    const SectorLabel s6{6, AngularPeriod::TwoPi}, s8{8, AngularPeriod::TwoPi};
    const double c6 = sector_K(s6, src, dst, mode).amplitude.real() *
                      std::pow(s6.delta_theta(0.0, 1.0), 2);
    const double c8 = sector_K(s8, src, dst, mode).amplitude.real() *
                      std::pow(s8.delta_theta(0.0, 1.0), 2);
    CHECK(std::fabs(c6 - c8) <= 0.01 * c8);
    // With the statistics phases on, the alternating weights accelerate the
    // tail: at alpha = pi/3 the |n| <= 8 deficit is already ~1e-4.
    const complex ref3 = flux_tube_K(StatisticsAngle{kPi / 3.0}, src, dst, mode).amplitude;
    CHECK(rel(sector_partial(kPi / 3.0, src, dst, mode, 8).amplitude, ref3) <= 2e-4);
}

TEST_CASE("flux_tube_K at alpha=0 reproduces the free propagator") {
    const PolarPoint src{1.0, 0.0}, dst{2.0, 0.7};
    const auto flux = flux_tube_K(StatisticsAngle{0.0}, src, dst, euclid(1.0));
    const auto free = free_2d(src, dst, euclid(1.0));
    CHECK(rel(flux.amplitude, free.amplitude) <= 1e-10);
    const auto fluxr = flux_tube_K(StatisticsAngle{0.0}, src, dst, realtime(1.0));
    const auto freer = free_2d(src, dst, realtime(1.0));
    CHECK(rel(fluxr.amplitude, freer.amplitude) <= 1e-9);
}

TEST_CASE("flux_tube_K depends on the angles only through their difference") {
    const StatisticsAngle alpha{0.9};
    for (double shift : {0.5, 2.0, 6.0}) {
        const auto a = flux_tube_K(alpha, PolarPoint{1.0, 0.2},
                                   PolarPoint{1.4, 1.1}, euclid(0.8));
        const auto b = flux_tube_K(alpha, PolarPoint{1.0, 0.2 + shift},
                                   PolarPoint{1.4, 1.1 + shift}, euclid(0.8));
        CHECK(std::abs(a.amplitude - b.amplitude) <= 1e-14 * std::abs(a.amplitude));
    }
}

TEST_CASE("flux_tube_K Euclidean hermiticity under endpoint swap") {
    Xoshiro256pp rng(12345);
    for (int i = 0; i < 6; ++i) {
        const PolarPoint a{0.3 + 2.0 * rng.uniform01(), kTwoPi * rng.uniform01()};
        const PolarPoint b{0.3 + 2.0 * rng.uniform01(), kTwoPi * rng.uniform01()};
        const double T = 0.4 + 1.6 * rng.uniform01();
        const StatisticsAngle alpha{0.9};
        const auto fwd = flux_tube_K(alpha, a, b, euclid(T));
        const auto bwd = flux_tube_K(alpha, b, a, euclid(T));
        CHECK(std::abs(fwd.amplitude - std::conj(bwd.amplitude)) <=
              1e-12 * std::abs(fwd.amplitude));
    }
}

TEST_CASE("flux_tube_K is periodic in alpha by 2pi") {
    const PolarPoint src{1.0, 0.0}, dst{1.3, 0.9};
    const auto a = flux_tube_K(StatisticsAngle{0.7}, src, dst, euclid(1.0));
    const auto b = flux_tube_K(StatisticsAngle{0.7 + kTwoPi}, src, dst, euclid(1.0));
    CHECK(std::fabs(std::abs(a.amplitude) - std::abs(b.amplitude)) <=
          1e-12 * std::abs(a.amplitude));
}

TEST_CASE("flux_tube_K alpha=0 is real and positive (Euclidean)") {
    Xoshiro256pp rng(777);
    for (int i = 0; i < 8; ++i) {
        const PolarPoint a{0.3 + 3.0 * rng.uniform01(), kTwoPi * rng.uniform01()};
        const PolarPoint b{0.3 + 3.0 * rng.uniform01(), kTwoPi * rng.uniform01()};
        const auto v = flux_tube_K(StatisticsAngle{0.0}, a, b,
                                   euclid(0.3 + 2.0 * rng.uniform01()));
        CHECK(v.amplitude.real() > 0.0);
        CHECK(std::fabs(v.amplitude.imag()) <= 1e-12 * v.amplitude.real());
    }
}

TEST_CASE("flux_tube_K reports truncation exhaustion with diagnostics") {
    TruncationPolicy tight;  // valid, but far below the terms x = 90 needs
    tight.max_terms = 8;
    CHECK_THROWS_AS((void)flux_tube_K(StatisticsAngle{0.0}, PolarPoint{3.0, 0.0},
                                      PolarPoint{3.0, 0.1}, euclid(0.1), tight),
                    EvaluationError);
    TruncationPolicy bad;
    bad.consecutive_small = 1;
    CHECK_THROWS_AS((void)flux_tube_K(StatisticsAngle{0.0}, PolarPoint{1.0, 0.0},
                                      PolarPoint{1.0, 0.1}, euclid(1.0), bad),
                    DomainError);
}

TEST_CASE("two_anyon_K hits the boson and fermion closed forms") {
    const PolarPoint src{1.0, 0.0}, dst{1.0, 0.3};
    for (const TimeMode& mode : {euclid(1.0), realtime(1.0)}) {
        const auto b = two_anyon_K(StatisticsAngle{0.0}, src, dst, mode);
        const auto bf = boson_fermion_K(1, src, dst, mode);
        CHECK(rel(b.amplitude, bf.amplitude) <= 1e-10);
        const auto f = two_anyon_K(StatisticsAngle{kPi}, src, dst, mode);
        const auto ff = boson_fermion_K(-1, src, dst, mode);
        CHECK(rel(f.amplitude, ff.amplitude) <= 1e-10);
    }
    // Coincident relative endpoints, the spec's fermionic pin.
    const PolarPoint p{1.0, 0.3};
    const auto f = two_anyon_K(StatisticsAngle{kPi}, p, p, euclid(1.0));
    const double want = (1.0 - std::exp(-2.0)) / kTwoPi;
    CHECK(rel(f.amplitude, complex{want, 0.0}) <= 1e-10);
}

TEST_CASE("two_anyon_K exchange quasi-periodicity") {
    // theta'' -> theta'' + pi relabels the exchange windings n -> n-1 and
    // multiplies the amplitude by e^{+i alpha}; the downward shift gives
    // e^{-i alpha}.
    const PolarPoint src{1.0, 0.0}, dst{1.2, 0.4};
    const double a = 1.3;
    const StatisticsAngle alpha{a};
    const complex base = two_anyon_K(alpha, src, dst, euclid(0.9)).amplitude;
    const complex up =
        two_anyon_K(alpha, src, PolarPoint{1.2, 0.4 + kPi}, euclid(0.9)).amplitude;
    const complex down =
        two_anyon_K(alpha, src, PolarPoint{1.2, 0.4 - kPi}, euclid(0.9)).amplitude;
    CHECK(std::abs(up - std::exp(complex{0.0, a}) * base) <= 1e-12 * std::abs(base));
    CHECK(std::abs(down - std::exp(complex{0.0, -a}) * base) <= 1e-12 * std::abs(base));
}

TEST_CASE("two_anyon_K statistics periodicity in alpha") {
    const PolarPoint src{1.0, 0.0}, dst{1.2, 0.4};
    const auto a = two_anyon_K(StatisticsAngle{0.8}, src, dst, euclid(1.1));
    const auto b = two_anyon_K(StatisticsAngle{0.8 + kTwoPi}, src, dst, euclid(1.1));
    CHECK(std::fabs(std::abs(a.amplitude) - std::abs(b.amplitude)) <=
          1e-12 * std::abs(a.amplitude));
}

TEST_CASE("boson_fermion_K basics") {
    // At a relative right angle the direct and exchanged images are
    // equidistant, so antisymmetrisation cancels them exactly.
    const PolarPoint src{1.0, 0.3};
    const PolarPoint perp{1.7, 0.3 + kPi / 2};
    const auto killed = boson_fermion_K(-1, src, perp, euclid(0.7));
    CHECK(std::abs(killed.amplitude) <= 1e-16);
    // Advancing the destination angle by pi swaps the two images, so the
    // amplitude picks up exactly the exchange sign.
    const PolarPoint dst{1.3, 1.1};
    const PolarPoint anti{1.3, 1.1 + kPi};
    for (int sign : {1, -1}) {
        const auto k0 = boson_fermion_K(sign, src, dst, euclid(0.7));
        const auto k1 = boson_fermion_K(sign, src, anti, euclid(0.7));
        CHECK(std::abs(k1.amplitude - (double)sign * k0.amplitude) <= 1e-14);
    }
    CHECK_THROWS_AS((void)boson_fermion_K(0, src, src, euclid(1.0)), DomainError);
    Xoshiro256pp rng(2024);
    for (int i = 0; i < 5; ++i) {
        const PolarPoint a{0.4 + 2.0 * rng.uniform01(), kTwoPi * rng.uniform01()};
        const PolarPoint b{0.4 + 2.0 * rng.uniform01(), kTwoPi * rng.uniform01()};
        const double T = 0.5 + 1.5 * rng.uniform01();
        for (int sign : {1, -1}) {
            const double a_stat = sign == 1 ? 0.0 : kPi;
            const auto lhs = boson_fermion_K(sign, a, b, euclid(T));
            const auto rhs = two_anyon_K(StatisticsAngle{a_stat}, a, b, euclid(T));
            CHECK(rel(lhs.amplitude, rhs.amplitude) <= 1e-10);
        }
    }
}

TEST_CASE("gauge_phase closed values and modulus preservation") {
    CHECK(std::abs(gauge_phase(StatisticsAngle{0.0}, 0.1, 2.3) - complex{1.0, 0.0}) <=
          1e-16);
    CHECK(std::abs(gauge_phase(StatisticsAngle{1.7}, 0.4, 0.4) - complex{1.0, 0.0}) <=
          1e-16);
    CHECK(std::abs(gauge_phase(StatisticsAngle{kPi}, 0.0, kPi) - complex{0.0, -1.0}) <=
          1e-15);
    const PolarPoint src{1.0, 0.2}, dst{1.4, 1.0};
    const StatisticsAngle alpha{2.1};
    const auto k = flux_tube_K(alpha, src, dst, euclid(0.8));
    const complex g = k.amplitude * gauge_phase(alpha, 0.2, 1.0);
    CHECK(std::fabs(std::abs(g) - std::abs(k.amplitude)) <=
          1e-15 * std::abs(k.amplitude));
}

TEST_CASE("degenerate angle: series and sector routes agree") {
    const PolarPoint src{1.0, 0.0}, dst{1.5, 0.0};
    const TimeMode mode = euclid(1.0);
    const StatisticsAngle alpha{0.9};
    const auto direct = flux_tube_K(alpha, src, dst, mode);
    std::vector<std::pair<SectorLabel, PropagatorValue>> acc;
    for (int n = -30; n <= 30; ++n) {
        const SectorLabel sec{n, AngularPeriod::TwoPi};
        acc.emplace_back(sec, sector_K(sec, src, dst, mode));
    }
    const auto summed = sector_sum(alpha, acc);
    CHECK(rel(summed.amplitude, direct.amplitude) <= 2e-5);
}

TEST_CASE("sector_sum combinators") {
    const SectorLabel s0{0, AngularPeriod::TwoPi}, s1{1, AngularPeriod::TwoPi};
    PropagatorValue unit;
    unit.amplitude = complex{1.0, 0.0};
    // A single n=0 sector passes through unchanged for any alpha.
    const auto same = sector_sum(StatisticsAngle{2.7}, {{s0, unit}});
    CHECK(std::abs(same.amplitude - unit.amplitude) <= 1e-16);
    // alpha = pi with equal n=0,1 sectors cancels exactly.
    const auto zero = sector_sum(StatisticsAngle{kPi}, {{s0, unit}, {s1, unit}});
    CHECK(std::abs(zero.amplitude) <= 1e-15);
    CHECK_THROWS_AS((void)sector_sum(StatisticsAngle{0.0}, {}), UsageError);
    const SectorLabel mixed{1, AngularPeriod::Pi};
    CHECK_THROWS_AS((void)sector_sum(StatisticsAngle{0.0},
                                     {{s0, unit}, {mixed, unit}}),
                    UsageError);
}

TEST_CASE("domain validation on points and modes") {
    CHECK_THROWS_AS((void)free_2d(PolarPoint{0.0, 0.0}, PolarPoint{1.0, 0.0},
                                  euclid(1.0)),
                    DomainError);
    CHECK_THROWS_AS((void)free_2d(PolarPoint{1.0, 0.0}, PolarPoint{1.0, 0.0},
                                  euclid(-1.0)),
                    DomainError);
    CHECK_THROWS_AS((void)free_2d(PolarPoint{1.0, 0.0}, PolarPoint{1.0, 0.0},
                                  euclid(0.0)),
                    DomainError);
}
