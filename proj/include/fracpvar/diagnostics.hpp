#pragma once

#include <cstdint>
#include <string>

#include "fracpvar/energy.hpp"

namespace fracpvar {

// Discrete Pohozaev integral
//   sum_i ((N-sp) phi_i f(u_i) u_i - p N phi_i F(u_i) - p (x_i . grad phi_i) F(u_i)) vol_i
// evaluated at u^+ (converged solutions are nonnegative up to solver
// tolerance). Reported as data, never asserted: the identity is formal for
// p != 2.
double pohozaev_residual(const Field& u, const WeightSpec& weight,
                         const NonlinearitySpec& spec, const HypothesisParams& params);

enum class SignVerdict { fixed_positive, fixed_negative, mixed };

std::string to_string(SignVerdict verdict);

struct SignTestResult {
    SignVerdict verdict = SignVerdict::mixed;
    bool identically_zero = false; // the degenerate exponent q = p*_s - 1
    double min_value = 0.0;
    double max_value = 0.0;
};

// Sign of x -> (N-sp) phi - p N/(q+1) phi - p/(q+1) x . grad phi over the grid
// nodes plus an exterior ring of 64 samples at radius 2 R. A fixed sign means
// nonexistence of W^{s,p} solutions is expected for the power nonlinearity.
SignTestResult pohozaev_sign_test(const WeightSpec& weight, const HypothesisParams& params,
                                  const Grid& grid, NonlinearityKind kind);

// Counts violations of |xi^- - eta^-|^p <= |xi-eta|^(p-2)(xi-eta)(eta^- - xi^-)
// beyond absolute slack 1e-12 over seeded samples on [-10,10]^2. Both sides
// are evaluated in extended precision so the check measures the inequality,
// not double rounding in the equality cases. Counter-based sampling keeps the
// stream independent of evaluation order.
long fuzz_negative_part_inequality(double p, long trials, std::uint64_t seed);

// (sum |u_i|^(p*_s) vol_i)^(1/p*_s) / S(u)^(1/p); scale-invariant monitor of
// the discrete Sobolev embedding.
double sobolev_ratio(const Field& u, const KernelOperator& kernel,
                     const HypothesisParams& params);

} // namespace fracpvar
