#include "anyonprop/cli.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "anyonprop/errors.hpp"
#include "anyonprop/lattice.hpp"
#include "anyonprop/propagators.hpp"
#include "anyonprop/types.hpp"
#include "anyonprop/version.hpp"
#include "anyonprop/winding_mc.hpp"

namespace anyonprop {

namespace {

// 17 significant digits round-trip a double exactly.
std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

TimeMode make_mode(const RunSpec& rs) {
    TimeMode mode;
    mode.regime = rs.regime == "realtime" ? Regime::RealTime : Regime::Euclidean;
    mode.T = rs.T;
    check_mode(mode, "cli");
    return mode;
}

AngularPeriod make_period(const RunSpec& rs) {
    return rs.period == "pi" ? AngularPeriod::Pi : AngularPeriod::TwoPi;
}

TruncationPolicy make_trunc(const RunSpec& rs) {
    TruncationPolicy trunc;
    if (rs.rel_tol > 0.0) trunc.rel_tol = rs.rel_tol;
    return trunc;
}

QuadratureSpec make_quad(const RunSpec& rs) {
    QuadratureSpec quad;
    if (rs.rel_tol > 0.0) quad.rel_tol = rs.rel_tol;
    return quad;
}

void append_header(std::string& s, const RunSpec& rs) {
    s += "# version=";
    s += kVersion;
    s += '\n';
    s += "# command=" + rs.command + '\n';
    s += "# r_src=" + num(rs.r_src) + '\n';
    s += "# theta_src=" + num(rs.theta_src) + '\n';
    s += "# r_dst=" + num(rs.r_dst) + '\n';
    s += "# theta_dst=" + num(rs.theta_dst) + '\n';
    s += "# time=" + num(rs.T) + '\n';
    s += "# regime=" + rs.regime + '\n';
    s += "# alpha=" + num(rs.alpha) + '\n';
    s += "# period=" + rs.period + '\n';
    s += "# n_max=" + std::to_string(rs.n_max) + '\n';
    s += "# rel_tol=" + num(rs.rel_tol) + '\n';
    s += "# lattice_n=" + std::to_string(rs.lattice_n) + '\n';
    s += "# grid_points=" + std::to_string(rs.grid_points) + '\n';
    s += "# samples=" + std::to_string(rs.samples) + '\n';
    s += "# steps=" + std::to_string(rs.steps) + '\n';
    s += "# seed=" + std::to_string(rs.seed) + '\n';
    s += "# sweep=" + rs.sweep + '\n';
    s += "# sweep_from=" + num(rs.sweep_from) + '\n';
    s += "# sweep_to=" + num(rs.sweep_to) + '\n';
    s += "# sweep_points=" + std::to_string(rs.sweep_points) + '\n';
    s += "# out=" + rs.out + '\n';
}

void append_value_row(std::string& s, const std::string& prefix,
                      const std::string& label, const PropagatorValue& v) {
    s += prefix + label + ',' + num(v.amplitude.real()) + ',' +
         num(v.amplitude.imag()) + ',' + num(std::abs(v.amplitude)) + ',' +
         num(v.error_estimate) + ',' + std::to_string(v.terms_used) + '\n';
}

// The closed forms evaluated by `eval` at one parameter point.  The
// boson_fermion row symmetrizes when cos(alpha) >= 0 and antisymmetrizes
// otherwise, the statistics nearest to alpha.
void append_eval_rows(std::string& s, const std::string& prefix,
                      const RunSpec& rs, double alpha_value) {
    const TimeMode mode = make_mode(rs);
    const TruncationPolicy trunc = make_trunc(rs);
    const StatisticsAngle alpha{alpha_value};
    const PolarPoint src{rs.r_src, rs.theta_src}, dst{rs.r_dst, rs.theta_dst};
    append_value_row(s, prefix, "free", free_2d(src, dst, mode));
    append_value_row(s, prefix, "flux_tube",
                     flux_tube_K(alpha, src, dst, mode, trunc));
    append_value_row(s, prefix, "two_anyon",
                     two_anyon_K(alpha, src, dst, mode, trunc));
    const int sign = std::cos(alpha_value) >= 0.0 ? 1 : -1;
    append_value_row(s, prefix, "boson_fermion",
                     boson_fermion_K(sign, src, dst, mode));
}

std::string cmd_eval(const RunSpec& rs) {
    std::string s;
    append_header(s, rs);
    s += "label,re,im,abs,error_estimate,terms_used\n";
    append_eval_rows(s, "", rs, rs.alpha);
    return s;
}

std::string cmd_sectors(const RunSpec& rs) {
    if (rs.n_max < 0) throw UsageError("sectors: require n_max >= 0");
    const TimeMode mode = make_mode(rs);
    const QuadratureSpec quad = make_quad(rs);
    const AngularPeriod period = make_period(rs);
    const StatisticsAngle alpha{rs.alpha};
    const PolarPoint src{rs.r_src, rs.theta_src}, dst{rs.r_dst, rs.theta_dst};

    std::string s;
    append_header(s, rs);
    s += "n,re,im,abs,partial_re,partial_im,partial_abs,error_estimate,"
         "terms_used\n";
    // Shell order 0, -1, +1, -2, +2, ... so the partial sums show the
    // convergence of the winding series.
    std::vector<int> order{0};
    for (int k = 1; k <= rs.n_max; ++k) {
        order.push_back(-k);
        order.push_back(k);
    }
    std::vector<std::pair<SectorLabel, PropagatorValue>> acc;
    for (const int n : order) {
        const SectorLabel sector{n, period};
        const PropagatorValue kn = sector_K(sector, src, dst, mode, quad);
        acc.emplace_back(sector, kn);
        const PropagatorValue partial = sector_sum(alpha, acc);
        s += std::to_string(n) + ',' + num(kn.amplitude.real()) + ',' +
             num(kn.amplitude.imag()) + ',' + num(std::abs(kn.amplitude)) +
             ',' + num(partial.amplitude.real()) + ',' +
             num(partial.amplitude.imag()) + ',' +
             num(std::abs(partial.amplitude)) + ',' + num(kn.error_estimate) +
             ',' + std::to_string(kn.terms_used) + '\n';
    }
    return s;
}

std::string cmd_sweep(const RunSpec& rs) {
    if (rs.sweep == "none")
        throw UsageError("sweep: select a parameter with --sweep");
    if (rs.sweep_points < 1) throw UsageError("sweep: empty grid");

    std::string s;
    append_header(s, rs);
    s += "value,label,re,im,abs,error_estimate,terms_used\n";
    for (int i = 0; i < rs.sweep_points; ++i) {
        const double t = rs.sweep_points == 1
                             ? 0.0
                             : (double)i / (double)(rs.sweep_points - 1);
        const double v = rs.sweep_from + (rs.sweep_to - rs.sweep_from) * t;
        RunSpec point = rs;
        double alpha_value = rs.alpha;
        if (rs.sweep == "alpha")
            alpha_value = v;
        else if (rs.sweep == "time")
            point.T = v;
        else if (rs.sweep == "r-dst")
            point.r_dst = v;
        else
            point.theta_dst = v;
        append_eval_rows(s, num(v) + ",", point, alpha_value);
    }
    return s;
}

std::string cmd_oracle(const RunSpec& rs) {
    if (rs.regime != "euclidean")
        throw UsageError("oracle: the transfer-matrix check is Euclidean-only");
    if (rs.lattice_n < 8)
        throw UsageError("oracle: require lattice_n >= 8");
    const TimeMode mode = make_mode(rs);
    const QuadratureSpec quad = make_quad(rs);
    const SectorLabel sector{0, make_period(rs)};
    const PolarPoint src{rs.r_src, rs.theta_src}, dst{rs.r_dst, rs.theta_dst};
    const PropagatorValue closed = sector_K(sector, src, dst, mode, quad);

    std::string s;
    append_header(s, rs);
    s += "N,lattice,closed,rel_dev\n";
    for (int N = 8; N <= rs.lattice_n; N *= 2) {
        LatticeConfig cfg;
        cfg.N = N;
        cfg.grid_points = rs.grid_points;
        const PropagatorValue lat =
            transfer_matrix_Kn(sector, src, dst, rs.T, cfg, quad);
        const double dev = std::abs(lat.amplitude - closed.amplitude) /
                           std::abs(closed.amplitude);
        s += std::to_string(N) + ',' + num(lat.amplitude.real()) + ',' +
             num(closed.amplitude.real()) + ',' + num(dev) + '\n';
    }
    return s;
}

std::string cmd_winding(const RunSpec& rs) {
    if (rs.regime != "euclidean")
        throw UsageError("winding: the Brownian oracle is Euclidean-only");
    const TimeMode mode = make_mode(rs);
    const QuadratureSpec quad = make_quad(rs);
    const AngularPeriod period = make_period(rs);
    const PolarPoint src{rs.r_src, rs.theta_src}, dst{rs.r_dst, rs.theta_dst};
    const WindingHistogram hist = brownian_winding_distribution(
        src, dst, rs.T, rs.samples, rs.steps, rs.seed, period);
    const auto it0 = hist.counts.find(0);
    if (it0 == hist.counts.end())
        throw EvaluationError("winding: no samples landed in the n=0 sector");
    const WindingBin& bin0 = it0->second;
    const double k0 =
        sector_K(SectorLabel{0, period}, src, dst, mode, quad).amplitude.real();

    std::string s;
    append_header(s, rs);
    s += "n,count,probability,std_error,ratio_mc,ratio_exact,sigma_dev,"
         "within_3sigma\n";
    for (const auto& [n, bin] : hist.counts) {
        const double kn = sector_K(SectorLabel{n, period}, src, dst, mode, quad)
                              .amplitude.real();
        const double ratio_mc = bin.probability / bin0.probability;
        const double ratio_exact = kn / k0;
        double sigma_dev = 0.0;
        if (n != 0) {
            const double rel0 = bin0.std_error / bin0.probability;
            const double reln = bin.std_error / bin.probability;
            const double sigma =
                ratio_mc * std::sqrt(reln * reln + rel0 * rel0);
            sigma_dev = (ratio_mc - ratio_exact) / sigma;
        }
        s += std::to_string(n) + ',' + std::to_string(bin.count) + ',' +
             num(bin.probability) + ',' + num(bin.std_error) + ',' +
             num(ratio_mc) + ',' + num(ratio_exact) + ',' + num(sigma_dev) +
             ',' + (std::fabs(sigma_dev) <= 3.0 ? "pass" : "fail") + '\n';
    }
    return s;
}

void write_output(const RunSpec& rs, const std::string& body) {
    if (rs.out.empty()) {
        std::fwrite(body.data(), 1, body.size(), stdout);
        return;
    }
    std::ofstream f(rs.out, std::ios::binary);
    if (!f) throw UsageError("cannot open output file: " + rs.out);
    f.write(body.data(), (std::streamsize)body.size());
    if (!f) throw UsageError("failed writing output file: " + rs.out);
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    RunSpec rs;
    CLI::App app{"anyonprop: propagators on the punctured plane by winding "
                 "sectors, with lattice and Monte Carlo cross-checks"};
    app.option_defaults()->always_capture_default();
    app.add_option("--command", rs.command,
                   "one of: eval, sectors, sweep, oracle, winding")
        ->required()
        ->check(CLI::IsMember({"eval", "sectors", "sweep", "oracle",
                               "winding"}));
    app.add_option("--r-src", rs.r_src, "source radius");
    app.add_option("--theta-src", rs.theta_src, "source angle (radians)");
    app.add_option("--r-dst", rs.r_dst, "destination radius");
    app.add_option("--theta-dst", rs.theta_dst, "destination angle (radians)");
    app.add_option("--time", rs.T, "propagation time T > 0");
    app.add_option("--regime", rs.regime, "euclidean or realtime")
        ->check(CLI::IsMember({"euclidean", "realtime"}));
    app.add_option("--alpha", rs.alpha, "statistics/flux angle (radians)");
    app.add_option("--period", rs.period,
                   "angular identification: 2pi (plane) or pi (two anyons)")
        ->check(CLI::IsMember({"2pi", "pi"}));
    app.add_option("--n-max", rs.n_max, "largest |winding| listed by sectors");
    app.add_option("--rel-tol", rs.rel_tol,
                   "relative tolerance for series and quadrature; <= 0 keeps "
                   "the library defaults (1e-12 series, 1e-11 quadrature)");
    app.add_option("--lattice-n", rs.lattice_n,
                   "largest slice count for oracle (doubling from 8)");
    app.add_option("--grid-points", rs.grid_points,
                   "radial grid size of the transfer matrix");
    app.add_option("--samples", rs.samples, "Monte Carlo bridge count");
    app.add_option("--steps", rs.steps, "bridge discretization steps");
    app.add_option("--seed", rs.seed, "Monte Carlo seed");
    app.add_option("--sweep", rs.sweep,
                   "swept parameter: alpha, time, r-dst, theta-dst")
        ->check(CLI::IsMember({"none", "alpha", "time", "r-dst", "theta-dst"}));
    app.add_option("--sweep-from", rs.sweep_from, "sweep grid start");
    app.add_option("--sweep-to", rs.sweep_to, "sweep grid end");
    app.add_option("--sweep-points", rs.sweep_points, "sweep grid size");
    app.add_option("--out", rs.out, "output path; empty writes to stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        std::string body;
        if (rs.command == "eval")
            body = cmd_eval(rs);
        else if (rs.command == "sectors")
            body = cmd_sectors(rs);
        else if (rs.command == "sweep")
            body = cmd_sweep(rs);
        else if (rs.command == "oracle")
            body = cmd_oracle(rs);
        else
            body = cmd_winding(rs);
        write_output(rs, body);
        return 0;
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}

} // namespace anyonprop
