#include "fracpvar/reference.hpp"

#include <cmath>
#include <stdexcept>

#include "fracpvar/errors.hpp"

namespace fracpvar::reference {
namespace {

inline double signed_power(double t, double p) {
    if (t == 0.0) return 0.0;
    if (p == 2.0) return t;
    return std::pow(std::abs(t), p - 2.0) * t;
}

} // namespace

double seminorm_p(const KernelOperator& kernel, const Field& u) {
    if (u.size() != kernel.size())
        throw std::invalid_argument("reference::seminorm_p: size mismatch");
    const double p = kernel.params().p;
    const Grid& g = kernel.grid();
    double acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = 0; j < u.size(); ++j)
            acc += kernel.weight(i, j) * pow_abs(u.values[i] - u.values[j], p);
        acc += kernel.exterior(i) * pow_abs(u.values[i], p) * g.volume(i);
    }
    return acc;
}

Field gradient(const EnergyContext& ctx, const Field& u) {
    if (u.size() != ctx.kernel->size())
        throw std::invalid_argument("reference::gradient: size mismatch");
    const double p = ctx.params.p;
    if (p < 2.0) throw SolverError("reference::gradient: p < 2 not supported");
    const KernelOperator& kernel = *ctx.kernel;
    const Grid& g = kernel.grid();
    Field out(u.grid);
    for (std::size_t i = 0; i < u.size(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < u.size(); ++j)
            acc += kernel.weight(i, j) * signed_power(u.values[i] - u.values[j], p);
        const double plus = u.values[i] > 0.0 ? u.values[i] : 0.0;
        out.values[i] = 2.0 * acc +
                        kernel.exterior(i) * signed_power(u.values[i], p) * g.volume(i) -
                        ctx.phi[i] * ctx.nonlinearity->f(plus) * g.volume(i);
    }
    return out;
}

double energy(const EnergyContext& ctx, const Field& u) {
    const double sem = reference::seminorm_p(*ctx.kernel, u);
    const Grid& g = ctx.kernel->grid();
    double potential = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double plus = u.values[i] > 0.0 ? u.values[i] : 0.0;
        potential -= ctx.phi[i] * ctx.nonlinearity->F(plus) * g.volume(i);
    }
    return sem / ctx.params.p + potential;
}

} // namespace fracpvar::reference
