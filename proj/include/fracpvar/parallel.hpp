#pragma once

#include <span>

namespace fracpvar {

// Pairwise tree reduction with a fixed association order. All parallel
// kernels accumulate per-row partials in index order and reduce them through
// this function, so totals are bit-identical for any worker count.
double pairwise_sum(std::span<const double> values) noexcept;

int max_threads() noexcept;
void set_threads(int n) noexcept;

} // namespace fracpvar
