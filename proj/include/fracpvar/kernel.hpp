#pragma once

#include <array>
#include <memory>
#include <vector>

#include "fracpvar/field.hpp"
#include "fracpvar/grid.hpp"
#include "fracpvar/params.hpp"

namespace fracpvar {

// kappa(x) = 2 * integral over {|y| > radius} of |x-y|^-(N+sp) dy for a node
// strictly inside the ball. 1d uses the closed form
// 2*((R-x)^-sp + (R+x)^-sp)/sp; 2d reduces the integral exactly to one
// angular integral up to a cutoff at distance 2R from x plus the analytic
// tail 2*pi*(2R)^-sp/sp beyond it, and resolves the angular part by adaptive
// quadrature to 1e-9 absolute.
double exterior_weight(const std::array<double, 2>& x, double radius,
                       const HypothesisParams& params);

// Dense symmetric pairwise weights w_ij = vol_i*vol_j / |x_i-x_j|^(N+sp) with
// zero diagonal, plus per-node exterior weights. Storage is M x M.
class KernelOperator {
public:
    static KernelOperator build(std::shared_ptr<const Grid> grid,
                                const HypothesisParams& params);

    std::size_t size() const { return size_; }
    double exponent() const { return exponent_; }
    double weight(std::size_t i, std::size_t j) const { return weights_[i * size_ + j]; }
    double exterior(std::size_t i) const { return exterior_[i]; }
    const double* row(std::size_t i) const { return weights_.data() + i * size_; }

    const HypothesisParams& params() const { return params_; }
    const Grid& grid() const { return *grid_; }
    const std::shared_ptr<const Grid>& grid_ptr() const { return grid_; }

private:
    KernelOperator() = default;

    std::shared_ptr<const Grid> grid_;
    HypothesisParams params_;
    std::size_t size_ = 0;
    double exponent_ = 0.0;
    std::vector<double> weights_;
    std::vector<double> exterior_;
};

// p-th power of the discrete Gagliardo seminorm:
//   sum over ordered pairs i != j of w_ij |u_i - u_j|^p
//   + sum over i of kappa_i |u_i|^p vol_i.
// Row-parallel with a deterministic reduction; results do not depend on the
// thread count.
double seminorm_p(const KernelOperator& kernel, const Field& u);

// |t|^e with fast paths for e = 2, 3.
double pow_abs(double t, double e);

} // namespace fracpvar
