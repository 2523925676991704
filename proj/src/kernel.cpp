#include "fracpvar/kernel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fracpvar/parallel.hpp"
#include "fracpvar/quadrature.hpp"

namespace fracpvar {
namespace {

double exterior_weight_1d(double x, double radius, double sp) {
    return 2.0 * (std::pow(radius - x, -sp) + std::pow(radius + x, -sp)) / sp;
}

// Exact reduction in polar coordinates centered at the node x with |x| = rho:
// a ray at angle theta leaves the ball at t_exit = sqrt(R^2 - rho^2 sin^2) -
// rho cos, and the radial integral of t^-(1+sp) is exact, so
//   kappa/2 = (1/sp) * int_0^{2pi} t_exit(theta)^-sp dtheta.
// The part beyond distance 2R from x is split off analytically; t_exit <= 2R
// always holds since rho < R.
double exterior_weight_2d(double rho, double radius, double sp) {
    const double tail = std::pow(2.0 * radius, -sp);
    const auto integrand = [=](double theta) {
        const double sin_t = std::sin(theta);
        const double cos_t = std::cos(theta);
        const double t_exit =
            std::sqrt(radius * radius - rho * rho * sin_t * sin_t) - rho * cos_t;
        return std::pow(t_exit, -sp) - tail;
    };
    const double near =
        integrate(integrand, 0.0, 2.0 * std::numbers::pi, 1e-10, 1e-12);
    return (2.0 / sp) * (near + 2.0 * std::numbers::pi * tail);
}

} // namespace

double exterior_weight(const std::array<double, 2>& x, double radius,
                       const HypothesisParams& params) {
    const double sp = params.sp();
    const double norm =
        params.dim == 1 ? std::abs(x[0]) : std::sqrt(x[0] * x[0] + x[1] * x[1]);
    if (!(norm < radius))
        throw std::invalid_argument("exterior_weight: node must lie strictly inside the ball");
    if (params.dim == 1) return exterior_weight_1d(x[0], radius, sp);
    if (params.dim == 2) return exterior_weight_2d(norm, radius, sp);
    throw std::invalid_argument("exterior_weight: dim must be 1 or 2");
}

KernelOperator KernelOperator::build(std::shared_ptr<const Grid> grid,
                                     const HypothesisParams& params) {
    params.validate();
    KernelOperator kernel;
    kernel.grid_ = std::move(grid);
    kernel.params_ = params;
    kernel.size_ = kernel.grid_->size();
    kernel.exponent_ = static_cast<double>(kernel.grid_->dim()) + params.sp();
    if (kernel.grid_->dim() != params.dim)
        throw std::invalid_argument("KernelOperator: grid and params dimension differ");

    const Grid& g = *kernel.grid_;
    const auto n = static_cast<std::ptrdiff_t>(kernel.size_);
    kernel.weights_.assign(kernel.size_ * kernel.size_, 0.0);
    kernel.exterior_.resize(kernel.size_);

    // Upper triangle once, mirrored, so symmetry holds bitwise.
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const double vol_i = g.volume(i);
        for (std::ptrdiff_t j = i + 1; j < n; ++j) {
            const double w =
                vol_i * g.volume(j) / std::pow(g.distance(i, j), kernel.exponent_);
            kernel.weights_[i * n + j] = w;
            kernel.weights_[j * n + i] = w;
        }
    }

#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        kernel.exterior_[i] = exterior_weight(g.node(i), g.radius(), params);

    return kernel;
}

double pow_abs(double t, double e) {
    const double a = std::abs(t);
    if (e == 2.0) return a * a;
    if (e == 3.0) return a * a * a;
    return std::pow(a, e);
}

double seminorm_p(const KernelOperator& kernel, const Field& u) {
    if (u.size() != kernel.size() || u.grid.get() != &kernel.grid())
        throw std::invalid_argument("seminorm_p: field does not match the kernel grid");
    const auto n = static_cast<std::ptrdiff_t>(kernel.size());
    const double p = kernel.params().p;
    const double* values = u.values.data();
    std::vector<double> row_terms(kernel.size());

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const double ui = values[i];
        const double* w = kernel.row(i);
        double acc = 0.0;
        for (std::ptrdiff_t j = 0; j < n; ++j)
            acc += w[j] * pow_abs(ui - values[j], p);
        row_terms[i] =
            acc + kernel.exterior(i) * pow_abs(ui, p) * kernel.grid().volume(i);
    }
    return pairwise_sum(row_terms);
}

} // namespace fracpvar
