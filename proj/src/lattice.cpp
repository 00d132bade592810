#include "anyonprop/lattice.hpp"

#include <cmath>
#include <sstream>

#include "anyonprop/errors.hpp"
#include "anyonprop/parallel.hpp"
#include "anyonprop/quadrature.hpp"

namespace anyonprop {

namespace {

struct Grid {
    std::vector<double> r;   // log-spaced radii
    std::vector<double> w;   // trapezoid weights for the r dr measure
};

Grid make_grid(double r_min, double r_max, int points) {
    Grid g;
    g.r.resize((size_t)points);
    g.w.resize((size_t)points);
    const double du = std::log(r_max / r_min) / (points - 1);
    for (int j = 0; j < points; ++j) {
        const double r = r_min * std::exp(du * j);
        g.r[(size_t)j] = r;
        g.w[(size_t)j] = r * r * du;  // r dr = r^2 du on the log grid
    }
    g.w.front() *= 0.5;
    g.w.back() *= 0.5;
    return g;
}

// Radial amplitude A(lambda): N-step transfer between delta functions at
// src.r and dst.r.  The per-slice kernel is the same at every step, so it is
// materialized once (weights folded in) and the N-2 inner integrals become
// plain matrix-vector products.  Returns the boundary mass fraction of the
// final interior state so the caller can detect grid escape.
double radial_amplitude(double lambda, const Grid& grid, double eps, int N,
                        double r_src, double r_dst, bool with_potential,
                        double& boundary_fraction) {
    const int G = (int)grid.r.size();
    const double c = with_potential ? 0.25 : 0.0;
    const double lam2 = lambda * lambda - c;
    const double norm = 1.0 / std::sqrt(kTwoPi * eps);

    auto kernel = [&](double a, double b) -> double {
        const double d = a - b;
        return norm / std::sqrt(a * b) *
               std::exp(-d * d / (2.0 * eps) - lam2 * eps / (2.0 * a * b));
    };

    std::vector<double> M((size_t)G * (size_t)G);
    for (int j = 0; j < G; ++j)
        for (int b = 0; b < G; ++b)
            M[(size_t)j * (size_t)G + (size_t)b] =
                kernel(grid.r[(size_t)j], grid.r[(size_t)b]) * grid.w[(size_t)b];

    std::vector<double> v((size_t)G), next((size_t)G);
    for (int j = 0; j < G; ++j) v[(size_t)j] = kernel(grid.r[(size_t)j], r_src);
    for (int step = 0; step < N - 2; ++step) {
        for (int j = 0; j < G; ++j) {
            const double* row = &M[(size_t)j * (size_t)G];
            double acc = 0.0;
            for (int b = 0; b < G; ++b) acc += row[b] * v[(size_t)b];
            next[(size_t)j] = acc;
        }
        v.swap(next);
    }
    // Escape measure over the outer tenth of the window (not the outermost
    // cells, whose width would tie the measure to the grid resolution).
    const double band = 0.9 * grid.r[(size_t)(G - 1)];
    double mass = 0.0, edge = 0.0;
    for (int j = 0; j < G; ++j) {
        const double m = grid.w[(size_t)j] * std::abs(v[(size_t)j]);
        mass += m;
        if (grid.r[(size_t)j] >= band) edge += m;
    }
    boundary_fraction = (mass > 0.0) ? edge / mass : 0.0;
    double out = 0.0;
    for (int b = 0; b < G; ++b)
        out += kernel(r_dst, grid.r[(size_t)b]) * grid.w[(size_t)b] * v[(size_t)b];
    return out;
}

} // namespace

double effective_potential(double r) {
    if (!(r > 0.0) || !std::isfinite(r))
        throw DomainError("effective_potential: require finite r > 0");
    return -1.0 / (8.0 * r * r);
}

double midpoint_radius(double r_prev, double r_next) {
    if (!(r_prev > 0.0) || !(r_next > 0.0) || !std::isfinite(r_prev) ||
        !std::isfinite(r_next))
        throw DomainError("midpoint_radius: require finite positive radii");
    return std::sqrt(r_prev * r_next);
}

LatticeConfig resolve_lattice(const LatticeConfig& cfg, const PolarPoint& src,
                              const PolarPoint& dst, double T) {
    check_point(src, "resolve_lattice src");
    check_point(dst, "resolve_lattice dst");
    if (!(T > 0.0) || !std::isfinite(T))
        throw DomainError("resolve_lattice: require finite T > 0");
    LatticeConfig out = cfg;
    if (out.N < 2) throw DomainError("resolve_lattice: require N >= 2");
    if (out.grid_points < 16)
        throw DomainError("resolve_lattice: require grid_points >= 16");
    const double rlo = std::min(src.r, dst.r);
    const double rhi = std::max(std::max(src.r, dst.r), std::sqrt(T));
    if (out.r_min <= 0.0)
        out.r_min = std::min(0.39 * std::sqrt(T / out.N), 0.75 * rlo);
    if (out.r_max <= 0.0)
        out.r_max = 4.0 * rhi + 2.0 * std::sqrt(T);
    if (!(out.r_min < rlo))
        throw DomainError("resolve_lattice: r_min must lie below both endpoints");
    if (!(out.r_max > 4.0 * rhi))
        throw DomainError(
            "resolve_lattice: r_max must exceed 4*max(r', r'', sqrt(T))");
    return out;
}

std::vector<PropagatorValue> transfer_matrix_Kn_batch(
    const std::vector<SectorLabel>& sectors, const PolarPoint& src,
    const PolarPoint& dst, double T, const LatticeConfig& lattice,
    const QuadratureSpec& quad) {
    if (sectors.empty())
        throw UsageError("transfer_matrix_Kn_batch: no sectors given");
    const LatticeConfig cfg = resolve_lattice(lattice, src, dst, T);
    const Grid grid = make_grid(cfg.r_min, cfg.r_max, cfg.grid_points);
    const double eps = T / cfg.N;
    // The sliced amplitude decays in lambda at least as fast as the closed
    // form's Gaussian-like tail; a shorter range than the closed-form default
    // suffices at the 1e-4-scale accuracy a finite-N lattice can reach.
    const double x = src.r * dst.r / T;
    const double upper = quad.lambda_max > 0.0
                             ? quad.lambda_max
                             : std::max(16.0, x + 8.0 * std::sqrt(x) + 8.0);
    const double width = quad.panel_width > 0.0 ? quad.panel_width : 1.0;
    const long npanels = std::max(1L, (long)std::ceil(upper / width));
    const long nodes = npanels * 16;
    const double h = upper / (double)npanels;

    std::vector<double> lam((size_t)nodes), lamw((size_t)nodes),
        amp((size_t)nodes), edge((size_t)nodes);
    const double* gx = gl16_nodes();
    const double* gw = gl16_weights();
    for (long p = 0; p < npanels; ++p)
        for (int i = 0; i < 16; ++i) {
            lam[(size_t)(p * 16 + i)] = (p + 0.5 * (1.0 + gx[i])) * h;
            lamw[(size_t)(p * 16 + i)] = 0.5 * gw[i] * h;
        }
    parallel_for(nodes, [&](long k) {
        amp[(size_t)k] = radial_amplitude(lam[(size_t)k], grid, eps, cfg.N,
                                          src.r, dst.r,
                                          cfg.include_effective_potential,
                                          edge[(size_t)k]);
    });
    // Grid escape matters in proportion to what each lambda channel puts
    // into the integral: high lambda concentrates its (vanishing) amplitude
    // near r_max by the centrifugal factor, which the weighting discounts.
    double scale = 0.0, escape = 0.0;
    long worst = 0;
    for (long k = 0; k < nodes; ++k) {
        const double wgt = lamw[(size_t)k] * std::abs(amp[(size_t)k]);
        scale += wgt;
        escape += wgt * edge[(size_t)k];
        if (wgt * edge[(size_t)k] > lamw[(size_t)worst] *
                                        std::abs(amp[(size_t)worst]) *
                                        edge[(size_t)worst])
            worst = k;
    }
    if (scale > 0.0 && escape > 1e-3 * scale) {
        std::ostringstream msg;
        msg << "transfer_matrix_Kn: r_max=" << cfg.r_max
            << " too small, weighted boundary mass fraction "
            << escape / scale << " (largest contribution at lambda="
            << lam[(size_t)worst] << ", boundary fraction "
            << edge[(size_t)worst] << ")";
        throw EvaluationError(msg.str());
    }

    // Tail estimate for the lambda cutoff: magnitude of the last node's
    // integrand, which bounds the super-exponentially decaying remainder.
    const double tail = std::abs(amp[(size_t)(nodes - 1)]);
    std::vector<PropagatorValue> out(sectors.size());
    for (size_t s = 0; s < sectors.size(); ++s) {
        const double delta = sectors[s].delta_theta(src.theta, dst.theta);
        double acc = 0.0;
        for (long k = 0; k < nodes; ++k)
            acc += lamw[(size_t)k] * std::cos(lam[(size_t)k] * delta) *
                   amp[(size_t)k];
        out[s].amplitude = complex(acc / kPi, 0.0);
        out[s].error_estimate = tail / kPi;
        out[s].terms_used = nodes;
    }
    return out;
}

PropagatorValue transfer_matrix_Kn(const SectorLabel& sector,
                                   const PolarPoint& src, const PolarPoint& dst,
                                   double T, const LatticeConfig& lattice,
                                   const QuadratureSpec& quad) {
    return transfer_matrix_Kn_batch({sector}, src, dst, T, lattice, quad)[0];
}

} // namespace anyonprop
