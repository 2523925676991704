#include "fracpvar/energy.hpp"

#include <cmath>
#include <stdexcept>

#include "fracpvar/errors.hpp"
#include "fracpvar/parallel.hpp"

namespace fracpvar {
namespace {

void check_shapes(const EnergyContext& ctx, const Field& u) {
    if (u.size() != ctx.kernel->size() || u.grid.get() != &ctx.kernel->grid())
        throw std::invalid_argument("energy: field does not match the context grid");
    if (ctx.phi.size() != ctx.kernel->size())
        throw std::invalid_argument("energy: weight values do not match the grid");
}

// |t|^(p-2) t with the exact limit 0 at t = 0.
inline double signed_power(double t, double p) {
    if (t == 0.0) return 0.0;
    if (p == 2.0) return t;
    return std::pow(std::abs(t), p - 2.0) * t;
}

inline double signed_power_regularized(double t, double p, double eps) {
    return std::pow(t * t + eps * eps, 0.5 * (p - 2.0)) * t;
}

} // namespace

EnergyContext EnergyContext::make(std::shared_ptr<const KernelOperator> kernel,
                                  const WeightSpec& weight,
                                  std::shared_ptr<const NonlinearitySpec> nonlinearity) {
    EnergyContext ctx;
    ctx.params = kernel->params();
    ctx.kernel = std::move(kernel);
    ctx.nonlinearity = std::move(nonlinearity);
    const Grid& g = ctx.kernel->grid();
    ctx.phi.resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        ctx.phi[i] = weight.phi(g.node(i), g.dim());
    return ctx;
}

double energy(const EnergyContext& ctx, const Field& u) {
    check_shapes(ctx, u);
    const double sem = seminorm_p(*ctx.kernel, u);
    const Grid& g = ctx.kernel->grid();
    std::vector<double> potential(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double plus = u.values[i] > 0.0 ? u.values[i] : 0.0;
        potential[i] = -ctx.phi[i] * ctx.nonlinearity->F(plus) * g.volume(i);
    }
    return sem / ctx.params.p + pairwise_sum(potential);
}

Field gradient(const EnergyContext& ctx, const Field& u) {
    check_shapes(ctx, u);
    const double p = ctx.params.p;
    if (p < 2.0 && !ctx.regularize_gradient)
        throw SolverError("gradient: p < 2 requires the regularized gradient");

    const auto n = static_cast<std::ptrdiff_t>(u.size());
    const double* values = u.values.data();
    const KernelOperator& kernel = *ctx.kernel;
    const Grid& g = kernel.grid();
    const bool regularize = p < 2.0;
    const double eps = ctx.regularization_eps;

    Field out(u.grid);
    double* target = out.values.data();

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const double ui = values[i];
        const double* w = kernel.row(i);
        double acc = 0.0;
        if (regularize) {
            for (std::ptrdiff_t j = 0; j < n; ++j)
                acc += w[j] * signed_power_regularized(ui - values[j], p, eps);
        } else {
            for (std::ptrdiff_t j = 0; j < n; ++j)
                acc += w[j] * signed_power(ui - values[j], p);
        }
        const double radial = regularize ? signed_power_regularized(ui, p, eps)
                                         : signed_power(ui, p);
        const double plus = ui > 0.0 ? ui : 0.0;
        target[i] = 2.0 * acc + kernel.exterior(i) * radial * g.volume(i) -
                    ctx.phi[i] * ctx.nonlinearity->f(plus) * g.volume(i);
    }
    return out;
}

Field gradient_seminorm_part(const EnergyContext& ctx, const Field& u) {
    check_shapes(ctx, u);
    const double p = ctx.params.p;
    if (p < 2.0 && !ctx.regularize_gradient)
        throw SolverError("gradient: p < 2 requires the regularized gradient");

    const auto n = static_cast<std::ptrdiff_t>(u.size());
    const double* values = u.values.data();
    const KernelOperator& kernel = *ctx.kernel;
    const Grid& g = kernel.grid();
    const bool regularize = p < 2.0;
    const double eps = ctx.regularization_eps;

    Field out(u.grid);
    double* target = out.values.data();

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const double ui = values[i];
        const double* w = kernel.row(i);
        double acc = 0.0;
        if (regularize) {
            for (std::ptrdiff_t j = 0; j < n; ++j)
                acc += w[j] * signed_power_regularized(ui - values[j], p, eps);
        } else {
            for (std::ptrdiff_t j = 0; j < n; ++j)
                acc += w[j] * signed_power(ui - values[j], p);
        }
        const double radial = regularize ? signed_power_regularized(ui, p, eps)
                                         : signed_power(ui, p);
        target[i] = 2.0 * acc + kernel.exterior(i) * radial * g.volume(i);
    }
    return out;
}

double negative_part_seminorm(const KernelOperator& kernel, const Field& u) {
    return seminorm_p(kernel, u.negative_part());
}

} // namespace fracpvar
