#pragma once

#include <memory>
#include <vector>

#include "fracpvar/field.hpp"
#include "fracpvar/kernel.hpp"
#include "fracpvar/model.hpp"
#include "fracpvar/params.hpp"

namespace fracpvar {

// Everything a J evaluation needs, bound to one grid: kernel weights, the
// weight phi sampled at the nodes, and the nonlinearity.
struct EnergyContext {
    std::shared_ptr<const KernelOperator> kernel;
    std::vector<double> phi;
    std::shared_ptr<const NonlinearitySpec> nonlinearity;
    HypothesisParams params;

    // |t|^(p-2) t is not Lipschitz at 0 for p < 2; the gradient then needs
    // the (t^2 + eps^2)^((p-2)/2) t regularization. The energy stays exact.
    bool regularize_gradient = false;
    double regularization_eps = 1e-8;

    static EnergyContext make(std::shared_ptr<const KernelOperator> kernel,
                              const WeightSpec& weight,
                              std::shared_ptr<const NonlinearitySpec> nonlinearity);

    const Grid& grid() const { return kernel->grid(); }
    const std::shared_ptr<const Grid>& grid_ptr() const { return kernel->grid_ptr(); }
};

// J(u) = (1/p) * seminorm_p(u) - sum_i phi_i F(u_i^+) vol_i
double energy(const EnergyContext& ctx, const Field& u);

// g_i = 2 sum_j w_ij |u_i-u_j|^(p-2)(u_i-u_j) + kappa_i |u_i|^(p-2) u_i vol_i
//       - phi_i f(u_i^+) vol_i,
// the coefficient gradient of J: <g, v> = d/dt J(u + t v) at t = 0.
Field gradient(const EnergyContext& ctx, const Field& u);

// Seminorm part of the gradient only (the discrete fractional p-Laplacian
// tested against cell indicators); used by the weak-form residual.
Field gradient_seminorm_part(const EnergyContext& ctx, const Field& u);

// seminorm_p(u^-): the nonnegativity certificate. Critical points carry
// u^- = 0, so this vanishes at solver tolerance.
double negative_part_seminorm(const KernelOperator& kernel, const Field& u);

} // namespace fracpvar
