#include "anyonprop/quadrature.hpp"

#include <cmath>
#include <vector>

#include "anyonprop/errors.hpp"

namespace anyonprop {

namespace {

// 16-point Gauss-Legendre rule on [-1, 1].
const double kGlNode[16] = {
    -0.98940093499164993259615417345033263,
    -0.94457502307323257607798841553460835,
    -0.86563120238783174388046789771239313,
    -0.75540440835500303389510119484744227,
    -0.61787624440264374844667176404879102,
    -0.45801677765722738634241944298357757,
    -0.28160355077925891323046050146049611,
    -0.09501250983763744018531933542495806,
    0.09501250983763744018531933542495806,
    0.28160355077925891323046050146049611,
    0.45801677765722738634241944298357757,
    0.61787624440264374844667176404879102,
    0.75540440835500303389510119484744227,
    0.86563120238783174388046789771239313,
    0.94457502307323257607798841553460835,
    0.98940093499164993259615417345033263,
};

const double kGlWeight[16] = {
    0.02715245941175409485178057245601808,
    0.06225352393864789286284383699437719,
    0.09515851168249278480992510760224804,
    0.12462897125553387205247628219201642,
    0.14959598881657673208150173054747855,
    0.16915651939500253818931207903035996,
    0.18260341504492358886676366796921994,
    0.18945061045506849628539672320828311,
    0.18945061045506849628539672320828311,
    0.18260341504492358886676366796921994,
    0.16915651939500253818931207903035996,
    0.14959598881657673208150173054747855,
    0.12462897125553387205247628219201642,
    0.09515851168249278480992510760224804,
    0.06225352393864789286284383699437719,
    0.02715245941175409485178057245601808,
};

complex gl16(const std::function<complex(double)>& f, double a, double b,
             long& evals) {
    const double mid = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    complex acc{0.0, 0.0};
    for (int i = 0; i < 16; ++i) acc += kGlWeight[i] * f(mid + hw * kGlNode[i]);
    evals += 16;
    return hw * acc;
}

struct Budget {
    double per_width = 0.0;  // absolute tolerance per unit of interval width
    int max_depth = 14;
};

complex refine(const std::function<complex(double)>& f, double a, double b,
               complex coarse, int depth, const Budget& budget,
               double& err_acc, long& evals) {
    const complex left = gl16(f, a, 0.5 * (a + b), evals);
    const complex right = gl16(f, 0.5 * (a + b), b, evals);
    const double delta = std::abs(left + right - coarse);
    if (delta <= budget.per_width * (b - a) || depth >= budget.max_depth) {
        err_acc += delta;
        return left + right;
    }
    return refine(f, a, 0.5 * (a + b), left, depth + 1, budget, err_acc, evals) +
           refine(f, 0.5 * (a + b), b, right, depth + 1, budget, err_acc, evals);
}

} // namespace

double default_lambda_max(double x) {
    return x + 12.0 * std::sqrt(x) + 20.0;
}

const double* gl16_nodes() { return kGlNode; }
const double* gl16_weights() { return kGlWeight; }

QuadratureResult integrate_panels(const std::function<complex(double)>& f,
                                  double upper, const QuadratureSpec& spec) {
    if (!(upper > 0.0) || !std::isfinite(upper))
        throw DomainError("integrate_panels: require finite upper > 0");
    if (!(spec.panel_width > 0.0) || !(spec.rel_tol > 0.0) || spec.max_depth < 1)
        throw DomainError("integrate_panels: invalid quadrature spec");

    const long npanels =
        std::max(1L, (long)std::ceil(upper / spec.panel_width));
    const double width = upper / (double)npanels;

    QuadratureResult out;
    // Coarse pass sets the error scale; the L1 mass of the panel values is
    // immune to cancellation between panels.
    std::vector<complex> coarse((size_t)npanels);
    double mass = 0.0;
    for (long p = 0; p < npanels; ++p) {
        coarse[(size_t)p] = gl16(f, p * width, (p + 1) * width, out.evals);
        mass += std::abs(coarse[(size_t)p]);
    }
    Budget budget;
    budget.per_width = spec.rel_tol * std::max(mass, 1e-300) / upper;
    budget.max_depth = spec.max_depth;

    complex total{0.0, 0.0};
    for (long p = 0; p < npanels; ++p)
        total += refine(f, p * width, (p + 1) * width, coarse[(size_t)p], 0,
                        budget, out.error_estimate, out.evals);
    out.value = total;
    return out;
}

} // namespace anyonprop
