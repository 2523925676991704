#include "fracpvar/diagnostics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fracpvar/parallel.hpp"
#include "fracpvar/rng.hpp"

namespace fracpvar {

double pohozaev_residual(const Field& u, const WeightSpec& weight,
                         const NonlinearitySpec& spec, const HypothesisParams& params) {
    const Grid& g = *u.grid;
    const double nsp = static_cast<double>(params.dim) - params.sp();
    std::vector<double> terms(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        const auto& x = g.node(i);
        const double phi = weight.phi(x, g.dim());
        const auto grad_phi = weight.grad_phi(x, g.dim());
        const double x_dot_grad =
            x[0] * grad_phi[0] + (g.dim() == 2 ? x[1] * grad_phi[1] : 0.0);
        const double plus = u.values[i] > 0.0 ? u.values[i] : 0.0; // explicit truncation
        const double f = spec.f(plus);
        const double F = spec.F(plus);
        terms[i] = (nsp * phi * f * plus - params.p * params.dim * phi * F -
                    params.p * x_dot_grad * F) *
                   g.volume(i);
    }
    return pairwise_sum(terms);
}

std::string to_string(SignVerdict verdict) {
    switch (verdict) {
    case SignVerdict::fixed_positive: return "FIXED_POSITIVE";
    case SignVerdict::fixed_negative: return "FIXED_NEGATIVE";
    case SignVerdict::mixed: return "MIXED";
    }
    return "MIXED";
}

SignTestResult pohozaev_sign_test(const WeightSpec& weight, const HypothesisParams& params,
                                  const Grid& grid, NonlinearityKind kind) {
    if (kind != NonlinearityKind::power)
        throw std::invalid_argument(
            "pohozaev_sign_test: the sign test applies to the power nonlinearity only");

    const double q1 = params.q + 1.0;
    const auto test_function = [&](const std::array<double, 2>& x) {
        const double phi = weight.phi(x, params.dim);
        const auto grad_phi = weight.grad_phi(x, params.dim);
        const double x_dot_grad =
            x[0] * grad_phi[0] + (params.dim == 2 ? x[1] * grad_phi[1] : 0.0);
        return (static_cast<double>(params.dim) - params.sp()) * phi -
               params.p * static_cast<double>(params.dim) / q1 * phi -
               params.p / q1 * x_dot_grad;
    };

    SignTestResult result;
    result.min_value = std::numeric_limits<double>::infinity();
    result.max_value = -std::numeric_limits<double>::infinity();
    const auto absorb = [&](double value) {
        result.min_value = std::min(result.min_value, value);
        result.max_value = std::max(result.max_value, value);
    };

    for (std::size_t i = 0; i < grid.size(); ++i) absorb(test_function(grid.node(i)));

    // "Fixed sign in R^N" cannot be sampled everywhere; an exterior ring at
    // twice the largest radius stands in for the far field.
    const double ring = 2.0 * grid.radius();
    if (params.dim == 1) {
        absorb(test_function({-ring, 0.0}));
        absorb(test_function({ring, 0.0}));
    } else {
        for (int k = 0; k < 64; ++k) {
            const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / 64.0;
            absorb(test_function({ring * std::cos(angle), ring * std::sin(angle)}));
        }
    }

    constexpr double kZeroTol = 1e-12;
    if (std::abs(result.min_value) <= kZeroTol && std::abs(result.max_value) <= kZeroTol) {
        result.verdict = SignVerdict::mixed;
        result.identically_zero = true;
    } else if (result.min_value > kZeroTol) {
        result.verdict = SignVerdict::fixed_positive;
    } else if (result.max_value < -kZeroTol) {
        result.verdict = SignVerdict::fixed_negative;
    } else {
        result.verdict = SignVerdict::mixed;
    }
    return result;
}

long fuzz_negative_part_inequality(double p, long trials, std::uint64_t seed) {
    if (!(p > 1.0)) throw std::invalid_argument("fuzz: p must exceed 1");
    if (trials < 1) throw std::invalid_argument("fuzz: trials must be >= 1");

    long violations = 0;
#pragma omp parallel for schedule(static) reduction(+ : violations)
    for (long i = 0; i < trials; ++i) {
        const auto index = static_cast<std::uint64_t>(i);
        const double xi = -10.0 + 20.0 * counter_uniform(seed, 2 * index);
        const double eta = -10.0 + 20.0 * counter_uniform(seed, 2 * index + 1);

        const long double xm = xi < 0.0 ? -static_cast<long double>(xi) : 0.0L;
        const long double em = eta < 0.0 ? -static_cast<long double>(eta) : 0.0L;
        const long double diff = static_cast<long double>(xi) - static_cast<long double>(eta);
        long double lhs = 0.0L;
        long double rhs = 0.0L;
        if (diff != 0.0L) {
            lhs = powl(fabsl(xm - em), static_cast<long double>(p));
            rhs = powl(fabsl(diff), static_cast<long double>(p) - 2.0L) * diff * (em - xm);
        }
        if (lhs > rhs + 1e-12L) ++violations;
    }
    return violations;
}

double sobolev_ratio(const Field& u, const KernelOperator& kernel,
                     const HypothesisParams& params) {
    if (u.max_abs() == 0.0)
        throw std::invalid_argument("sobolev_ratio: the zero field has no ratio");
    const double star = critical_exponent(params);
    std::vector<double> terms(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        terms[i] = pow_abs(u.values[i], star) * u.grid->volume(i);
    const double numerator = std::pow(pairwise_sum(terms), 1.0 / star);
    const double denominator = std::pow(seminorm_p(kernel, u), 1.0 / params.p);
    return numerator / denominator;
}

} // namespace fracpvar
