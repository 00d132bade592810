#ifndef ANYONPROP_TYPES_HPP
#define ANYONPROP_TYPES_HPP

#include <complex>
#include <cmath>

#include "anyonprop/errors.hpp"

namespace anyonprop {

using complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

// Point in the punctured plane.  theta is an arbitrary real (an angle on the
// covering space); r must be strictly positive since the origin is excised.
struct PolarPoint {
    double r = 1.0;
    double theta = 0.0;

    double x() const { return r * std::cos(theta); }
    double y() const { return r * std::sin(theta); }
};

inline void check_point(const PolarPoint& p, const char* what) {
    if (!(p.r > 0.0) || !std::isfinite(p.r) || !std::isfinite(p.theta))
        throw DomainError(std::string(what) + ": require finite r > 0 and finite theta");
}

enum class Regime { Euclidean, RealTime };

// Propagation time.  Euclidean values arise from the real-time formulas by
// T -> -iT, which makes every Bessel argument positive real.
struct TimeMode {
    Regime regime = Regime::Euclidean;
    double T = 1.0;
};

inline void check_mode(const TimeMode& m, const char* what) {
    if (!(m.T > 0.0) || !std::isfinite(m.T))
        throw DomainError(std::string(what) + ": require finite T > 0");
}

// Angular period of the winding decomposition: 2*pi for one particle circling
// a flux tube, pi for the relative coordinate of two identical particles.
enum class AngularPeriod { TwoPi, Pi };

inline double period_radians(AngularPeriod p) {
    return p == AngularPeriod::TwoPi ? kTwoPi : kPi;
}

// Homotopy class label.  delta_theta(n) = theta'' + n*period - theta'.
struct SectorLabel {
    int n = 0;
    AngularPeriod period = AngularPeriod::TwoPi;

    double delta_theta(double theta_src, double theta_dst) const {
        return theta_dst + n * period_radians(period) - theta_src;
    }
};

// Statistical phase per exchange (alpha = 0 bosons, alpha = pi fermions).
struct StatisticsAngle {
    double alpha = 0.0;
};

// Stopping rule for the winding series: stop only after `consecutive_small`
// successive terms each fall below rel_tol * |partial sum|, never before
// min_terms, and give up past max_terms.
struct TruncationPolicy {
    double rel_tol = 1e-12;
    int min_terms = 5;
    int max_terms = 100000;
    int consecutive_small = 3;
};

inline void check_policy(const TruncationPolicy& t, const char* what) {
    if (!(t.rel_tol > 0.0) || t.min_terms < 1 || t.consecutive_small < 2 ||
        t.max_terms < t.min_terms)
        throw DomainError(std::string(what) + ": invalid truncation policy");
}

// Panelled Gauss-Legendre quadrature plan for the lambda integrals.
// lambda_max <= 0 selects the automatic bound x + 12*sqrt(x) + 20.
struct QuadratureSpec {
    double lambda_max = 0.0;
    double panel_width = 1.0;
    double rel_tol = 1e-11;
    int max_depth = 14;
};

// Complex amplitude plus the truncation/quadrature error estimate that the
// evaluation actually computed (never a guess), and the number of terms or
// integrand evaluations spent.
struct PropagatorValue {
    complex amplitude{0.0, 0.0};
    double error_estimate = 0.0;
    long terms_used = 0;
};

} // namespace anyonprop

#endif
