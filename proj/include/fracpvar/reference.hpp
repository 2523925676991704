#pragma once

#include "fracpvar/energy.hpp"
#include "fracpvar/field.hpp"
#include "fracpvar/kernel.hpp"

namespace fracpvar::reference {

// Serial reference kernels: plain double loops with straight left-to-right
// accumulation. Kept as the ground truth for the parallel implementations
// and as the baseline in the benchmark.

double seminorm_p(const KernelOperator& kernel, const Field& u);

Field gradient(const EnergyContext& ctx, const Field& u);

double energy(const EnergyContext& ctx, const Field& u);

} // namespace fracpvar::reference
