#pragma once

#include <functional>

namespace fracpvar {

// Adaptive Gauss-Kronrod (G7,K15) on a finite interval. Subdivides until the
// local Kronrod error estimate meets abs_tol + rel_tol * |integral|.
// Throws SolverError if the subdivision budget is exhausted.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, double rel_tol = 0.0, int max_depth = 48);

} // namespace fracpvar
