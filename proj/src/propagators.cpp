#include "anyonprop/propagators.hpp"

#include <cmath>
#include <sstream>

#include "anyonprop/errors.hpp"
#include "anyonprop/quadrature.hpp"
#include "anyonprop/special_functions.hpp"

namespace anyonprop {

namespace {

const complex kI{0.0, 1.0};

// 1/(2 pi i T) = -i/(2 pi T)
complex inv_2pi_iT(double T) { return complex(0.0, -1.0 / (kTwoPi * T)); }

// (2 pi i T)^{-1/2} on the principal branch.
complex inv_sqrt_2pi_iT(double T) {
    return std::exp(complex(0.0, -kPi / 4)) / std::sqrt(kTwoPi * T);
}

double squared_separation(const PolarPoint& a, const PolarPoint& b, int sign) {
    return a.r * a.r + b.r * b.r + 2.0 * sign * a.r * b.r * std::cos(b.theta - a.theta);
}

// One dual-sum term at signed order nu_signed: phase times the (scaled)
// Bessel factor for the requested regime.
complex dual_term(double nu_signed, double dtheta, double x, Regime regime,
                  long& bessel_terms) {
    const double nu = std::abs(nu_signed);
    const complex phase = std::exp(kI * nu_signed * dtheta);
    if (regime == Regime::Euclidean) {
        ScaledBessel b = bessel_i_scaled(nu, x);
        bessel_terms += b.terms;
        return phase * b.value;
    }
    // I_nu(-ix) = e^{-i pi nu/2} J_nu(x)
    bessel_terms += 1;
    return phase * std::exp(complex(0.0, -kPi * nu / 2)) * bessel_j(nu, x);
}

struct DualSum {
    complex sum{0.0, 0.0};
    double error_estimate = 0.0;
    long terms = 0;
};

// Symmetric-shell summation of sum_m phase(m) * Bessel(order(m)) where
// order(m) = |stride*m + offset|.  Shells expand outward from the
// order-minimizing m; stopping needs `consecutive_small` successive shells
// below rel_tol relative to the partial sum, and in real time additionally
// waits until the order has passed the Bessel turning point at x, where
// J_nu(x) finally starts to decay.
DualSum shell_sum(int stride, double offset, double dtheta, double x,
                  Regime regime, const TruncationPolicy& trunc) {
    check_policy(trunc, "shell_sum");
    const long mstar = std::lround(-offset / stride);
    DualSum out;
    long bessel_terms = 0;
    int small_run = 0;
    double small_mag = 0.0;  // total magnitude over the current small run
    int terms_in_sum = 0;
    for (int s = 0;; ++s) {
        double shell_mag = 0.0;
        double shell_min_order = 1e300;
        for (int side = 0; side < (s == 0 ? 1 : 2); ++side) {
            const long m = (side == 0) ? mstar + s : mstar - s;
            const double nu_signed = (double)stride * (double)m + offset;
            const complex t = dual_term(nu_signed, dtheta, x, regime, bessel_terms);
            out.sum += t;
            shell_mag += std::abs(t);
            shell_min_order = std::min(shell_min_order, std::abs(nu_signed));
            ++terms_in_sum;
        }
        const bool decayed = regime == Regime::Euclidean || shell_min_order > x;
        if (decayed && shell_mag < trunc.rel_tol * std::abs(out.sum) &&
            terms_in_sum >= trunc.min_terms) {
            ++small_run;
            small_mag += shell_mag;
        } else {
            small_run = 0;
            small_mag = 0.0;
        }
        if (small_run >= trunc.consecutive_small) {
            out.error_estimate = small_mag;
            break;
        }
        if (terms_in_sum >= trunc.max_terms) {
            std::ostringstream msg;
            msg << "shell_sum: no convergence after " << terms_in_sum
                << " terms (partial sum " << out.sum.real() << (out.sum.imag() < 0 ? "-" : "+")
                << std::abs(out.sum.imag()) << "i, last shell " << shell_mag << ")";
            throw EvaluationError(msg.str());
        }
    }
    out.terms = bessel_terms;
    return out;
}

// Shared core of flux_tube_K / two_anyon_K: prefactor * shell sum.
PropagatorValue dual_series_K(int stride, double alpha_over,
                              const PolarPoint& src, const PolarPoint& dst,
                              const TimeMode& mode,
                              const TruncationPolicy& trunc,
                              double pref_scale) {
    const double T = mode.T;
    const double x = src.r * dst.r / T;
    const double dtheta = dst.theta - src.theta;
    complex pref;
    if (mode.regime == Regime::Euclidean) {
        const double dr = src.r - dst.r;
        pref = pref_scale * std::exp(-dr * dr / (2.0 * T)) / (kTwoPi * T);
    } else {
        pref = pref_scale *
               std::exp(kI * (src.r * src.r + dst.r * dst.r) / (2.0 * T)) *
               inv_2pi_iT(T);
    }
    DualSum s = shell_sum(stride, alpha_over, dtheta, x, mode.regime, trunc);
    PropagatorValue out;
    out.amplitude = pref * s.sum;
    out.error_estimate = std::abs(pref) * s.error_estimate;
    out.terms_used = s.terms;
    return out;
}

} // namespace

PropagatorValue free_2d(const PolarPoint& src, const PolarPoint& dst,
                        const TimeMode& mode) {
    check_point(src, "free_2d src");
    check_point(dst, "free_2d dst");
    check_mode(mode, "free_2d");
    const double d2 = squared_separation(src, dst, -1);
    PropagatorValue out;
    if (mode.regime == Regime::Euclidean)
        out.amplitude = std::exp(-d2 / (2.0 * mode.T)) / (kTwoPi * mode.T);
    else
        out.amplitude = inv_2pi_iT(mode.T) * std::exp(kI * d2 / (2.0 * mode.T));
    out.error_estimate = 0.0;
    out.terms_used = 1;
    return out;
}

PropagatorValue circle_flux(double theta_src, double theta_dst, double R,
                            const StatisticsAngle& alpha, const TimeMode& mode,
                            int n_max, double rel_tol) {
    if (!(R > 0.0) || !std::isfinite(R))
        throw DomainError("circle_flux: require finite R > 0");
    if (!std::isfinite(theta_src) || !std::isfinite(theta_dst) ||
        !std::isfinite(alpha.alpha))
        throw DomainError("circle_flux: require finite angles");
    if (n_max < 1) throw DomainError("circle_flux: require n_max >= 1");
    check_mode(mode, "circle_flux");

    const double T = mode.T;
    const double dtheta = theta_dst - theta_src;
    const bool euclid = mode.regime == Regime::Euclidean;
    const complex norm = euclid ? complex(1.0 / std::sqrt(kTwoPi * T), 0.0)
                                : inv_sqrt_2pi_iT(T);
    auto gauss = [&](double u) -> complex {
        const double a = R * R * u * u / (2.0 * T);
        return euclid ? complex(std::exp(-a), 0.0) : std::exp(kI * a);
    };
    PropagatorValue out;
    complex sum{0.0, 0.0};
    for (int n = -n_max; n <= n_max; ++n) {
        sum += std::exp(-kI * (double)n * alpha.alpha) * gauss(dtheta + kTwoPi * n);
        ++out.terms_used;
    }
    // Tail of the dropped windings: next three each side (geometric beyond
    // that in Euclidean mode; in real time the terms do not decay in modulus
    // and the first dropped pair is already the honest estimate).
    double tail = 0.0;
    const int tail_span = euclid ? 3 : 1;
    for (int k = 1; k <= tail_span; ++k)
        tail += std::abs(gauss(dtheta + kTwoPi * (n_max + k))) +
                std::abs(gauss(dtheta - kTwoPi * (n_max + k)));
    out.amplitude = norm * sum;
    out.error_estimate = std::abs(norm) * tail;
    if (rel_tol > 0.0 && euclid &&
        out.error_estimate > rel_tol * std::abs(out.amplitude)) {
        // Solve R^2 (2 pi n)^2 / 2T = -ln(rel_tol |sum|) for a sufficient n.
        const double target =
            -std::log(std::max(rel_tol * std::abs(sum), 1e-300));
        const int suggest =
            (int)std::ceil(std::sqrt(2.0 * T * std::max(target, 1.0)) /
                           (kTwoPi * R)) + 2;
        std::ostringstream msg;
        msg << "circle_flux: n_max=" << n_max << " leaves winding tail "
            << out.error_estimate << " above rel_tol; suggest n_max >= "
            << suggest;
        throw EvaluationError(msg.str());
    }
    return out;
}

PropagatorValue circle_flux_momentum(double theta_src, double theta_dst,
                                     double R, const StatisticsAngle& alpha,
                                     const TimeMode& mode,
                                     const TruncationPolicy& trunc) {
    if (!(R > 0.0) || !std::isfinite(R))
        throw DomainError("circle_flux_momentum: require finite R > 0");
    if (!std::isfinite(theta_src) || !std::isfinite(theta_dst) ||
        !std::isfinite(alpha.alpha))
        throw DomainError("circle_flux_momentum: require finite angles");
    check_mode(mode, "circle_flux_momentum");
    if (mode.regime != Regime::Euclidean)
        throw UsageError(
            "circle_flux_momentum: dual sum converges in Euclidean mode only; "
            "use circle_flux for real time");
    check_policy(trunc, "circle_flux_momentum");

    const double T = mode.T;
    const double dtheta = theta_dst - theta_src;
    const double beta = alpha.alpha / kTwoPi;
    const long mstar = std::lround(-beta);
    complex sum{0.0, 0.0};
    PropagatorValue out;
    int small_run = 0;
    double small_mag = 0.0;
    int terms = 0;
    for (int s = 0;; ++s) {
        double shell_mag = 0.0;
        for (int side = 0; side < (s == 0 ? 1 : 2); ++side) {
            const double q = (double)((side == 0) ? mstar + s : mstar - s) + beta;
            const complex t =
                std::exp(kI * q * dtheta) * std::exp(-q * q * T / (2.0 * R * R));
            sum += t;
            shell_mag += std::abs(t);
            ++terms;
        }
        if (shell_mag < trunc.rel_tol * std::abs(sum) && terms >= trunc.min_terms) {
            ++small_run;
            small_mag += shell_mag;
        } else {
            small_run = 0;
            small_mag = 0.0;
        }
        if (small_run >= trunc.consecutive_small) {
            out.error_estimate = small_mag;
            break;
        }
        if (terms >= trunc.max_terms)
            throw EvaluationError("circle_flux_momentum: max_terms exceeded");
    }
    out.amplitude = sum / (kTwoPi * R);
    out.error_estimate /= kTwoPi * R;
    out.terms_used = terms;
    return out;
}

PropagatorValue sector_K(const SectorLabel& sector, const PolarPoint& src,
                         const PolarPoint& dst, const TimeMode& mode,
                         const QuadratureSpec& quad) {
    check_point(src, "sector_K src");
    check_point(dst, "sector_K dst");
    check_mode(mode, "sector_K");
    const double T = mode.T;
    const double x = src.r * dst.r / T;
    const double delta = sector.delta_theta(src.theta, dst.theta);
    const double upper =
        quad.lambda_max > 0.0 ? quad.lambda_max : default_lambda_max(x);

    PropagatorValue out;
    if (mode.regime == Regime::Euclidean) {
        auto f = [&](double lam) -> complex {
            return complex(std::cos(lam * delta) * bessel_i_scaled(lam, x).value,
                           0.0);
        };
        QuadratureResult q = integrate_panels(f, upper, quad);
        const double dr = src.r - dst.r;
        const double pref = std::exp(-dr * dr / (2.0 * T)) / (kPi * T);
        out.amplitude = complex(pref * q.value.real(), 0.0);
        // Quadrature deltas plus the lambda cutoff tail, both at scale pref.
        out.error_estimate =
            pref * (q.error_estimate + bessel_i_scaled(upper, x).value);
        out.terms_used = q.evals;
    } else {
        auto f = [&](double lam) -> complex {
            return std::cos(lam * delta) *
                   std::exp(complex(0.0, -kPi * lam / 2)) * bessel_j(lam, x);
        };
        QuadratureResult q = integrate_panels(f, upper, quad);
        const complex pref =
            std::exp(kI * (src.r * src.r + dst.r * dst.r) / (2.0 * T)) *
            (2.0 * inv_2pi_iT(T));  // 1/(pi i T)
        out.amplitude = pref * q.value;
        out.error_estimate =
            std::abs(pref) * (q.error_estimate + std::abs(bessel_j(upper, x)));
        out.terms_used = q.evals;
    }
    return out;
}

PropagatorValue flux_tube_K(const StatisticsAngle& alpha, const PolarPoint& src,
                            const PolarPoint& dst, const TimeMode& mode,
                            const TruncationPolicy& trunc) {
    check_point(src, "flux_tube_K src");
    check_point(dst, "flux_tube_K dst");
    check_mode(mode, "flux_tube_K");
    if (!std::isfinite(alpha.alpha))
        throw DomainError("flux_tube_K: require finite alpha");
    return dual_series_K(1, alpha.alpha / kTwoPi, src, dst, mode, trunc, 1.0);
}

PropagatorValue two_anyon_K(const StatisticsAngle& alpha, const PolarPoint& src,
                            const PolarPoint& dst, const TimeMode& mode,
                            const TruncationPolicy& trunc) {
    check_point(src, "two_anyon_K src");
    check_point(dst, "two_anyon_K dst");
    check_mode(mode, "two_anyon_K");
    if (!std::isfinite(alpha.alpha))
        throw DomainError("two_anyon_K: require finite alpha");
    return dual_series_K(2, alpha.alpha / kPi, src, dst, mode, trunc, 2.0);
}

PropagatorValue boson_fermion_K(int sign, const PolarPoint& src,
                                const PolarPoint& dst, const TimeMode& mode) {
    if (sign != 1 && sign != -1)
        throw DomainError("boson_fermion_K: sign must be +1 or -1");
    check_point(src, "boson_fermion_K src");
    check_point(dst, "boson_fermion_K dst");
    check_mode(mode, "boson_fermion_K");
    const double T = mode.T;
    const double dm = squared_separation(src, dst, -1);  // |r''-r'|^2
    const double dp = squared_separation(src, dst, +1);  // |r''+r'|^2
    PropagatorValue out;
    if (mode.regime == Regime::Euclidean)
        out.amplitude =
            complex((std::exp(-dm / (2.0 * T)) +
                     sign * std::exp(-dp / (2.0 * T))) / (kTwoPi * T),
                    0.0);
    else
        out.amplitude = inv_2pi_iT(T) * (std::exp(kI * dm / (2.0 * T)) +
                                         (double)sign * std::exp(kI * dp / (2.0 * T)));
    out.error_estimate = 0.0;
    out.terms_used = 2;
    return out;
}

complex gauge_phase(const StatisticsAngle& alpha, double theta_src,
                    double theta_dst) {
    if (!std::isfinite(alpha.alpha) || !std::isfinite(theta_src) ||
        !std::isfinite(theta_dst))
        throw DomainError("gauge_phase: require finite arguments");
    return std::exp(complex(0.0, -alpha.alpha * (theta_dst - theta_src) / kTwoPi));
}

PropagatorValue sector_sum(const StatisticsAngle& alpha,
                           const std::vector<std::pair<SectorLabel, PropagatorValue>>& sectors) {
    if (!std::isfinite(alpha.alpha))
        throw DomainError("sector_sum: require finite alpha");
    if (sectors.empty()) throw UsageError("sector_sum: no sectors given");
    const AngularPeriod period = sectors.front().first.period;
    PropagatorValue out;
    for (const auto& [label, value] : sectors) {
        if (label.period != period)
            throw UsageError("sector_sum: sectors mix angular periods");
        out.amplitude +=
            std::exp(-kI * (double)label.n * alpha.alpha) * value.amplitude;
        out.error_estimate += value.error_estimate;
        out.terms_used += value.terms_used;
    }
    return out;
}

} // namespace anyonprop
