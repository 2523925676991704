#include "fracpvar/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fracpvar {

double pairwise_sum(std::span<const double> values) noexcept {
    if (values.size() <= 16) {
        double acc = 0.0;
        for (double v : values) acc += v;
        return acc;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

int max_threads() noexcept {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void set_threads(int n) noexcept {
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

} // namespace fracpvar
