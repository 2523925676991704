#include "fracpvar/quadrature.hpp"

#include <array>
#include <cmath>

#include "fracpvar/errors.hpp"

namespace fracpvar {
namespace {

// 15-point Kronrod abscissae/weights on [-1,1]; odd entries form the embedded
// 7-point Gauss rule.
constexpr std::array<double, 15> kAbscissae = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,                0.207784955007898,
    0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};

constexpr std::array<double, 15> kKronrodWeights = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};

constexpr std::array<double, 7> kGaussWeights = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870};

struct PanelResult {
    double kronrod;
    double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double kronrod = 0.0;
    double gauss = 0.0;
    for (int i = 0; i < 15; ++i) {
        const double value = f(mid + half * kAbscissae[i]);
        kronrod += kKronrodWeights[i] * value;
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * value;
    }
    kronrod *= half;
    gauss *= half;
    return {kronrod, std::abs(kronrod - gauss)};
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double abs_tol, double rel_tol, int depth, const PanelResult& whole) {
    if (depth <= 0) throw SolverError("quadrature: subdivision budget exhausted");
    const double mid = 0.5 * (a + b);
    const PanelResult left = gk15(f, a, mid);
    const PanelResult right = gk15(f, mid, b);
    const double refined = left.kronrod + right.kronrod;
    const double tol = abs_tol + rel_tol * std::abs(refined);
    if (left.error + right.error <= tol || whole.error <= tol) return refined;
    return adapt(f, a, mid, 0.5 * abs_tol, rel_tol, depth - 1, left) +
           adapt(f, mid, b, 0.5 * abs_tol, rel_tol, depth - 1, right);
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, double rel_tol, int max_depth) {
    if (!(abs_tol > 0.0) && !(rel_tol > 0.0))
        throw std::invalid_argument("integrate: need a positive tolerance");
    if (a == b) return 0.0;
    return adapt(f, a, b, abs_tol, rel_tol, max_depth, gk15(f, a, b));
}

} // namespace fracpvar
