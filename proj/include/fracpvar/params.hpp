#pragma once

#include <optional>
#include <string>

namespace fracpvar {

enum class Regime { sublinear, superlinear };

std::string to_string(Regime regime);

// Scalar hypotheses of the model problem. validate() checks ranges that do
// not depend on the growth regime; regime() decides sublinear vs superlinear
// and rejects the borderline and supercritical exponents. The critical
// exponent N*p/(N - s*p) only exists when N > s*p; operations that need it
// call critical_exponent() and fail there, everything else runs for any
// s*p > 0.
struct HypothesisParams {
    double p = 2.0;          // > 1
    double s = 0.5;          // in (0,1)
    int dim = 1;             // ambient dimension N >= 1
    double q = 3.0;          // >= 0, growth exponent of f
    std::optional<double> m; // < p, required in the superlinear regime
    double mu = 1.0;         // > 0, lower growth constant
    double c_growth = 1.0;   // >= mu, upper growth constant
    double C_f3 = 1.0;       // > 0, defect constant in the third hypothesis

    double sp() const { return s * p; }

    void validate() const;     // throws HypothesisError naming the violation
    Regime regime() const;     // throws HypothesisError (q == p-1, supercritical q)
    double subcritical_m() const; // m with presence/range checked
};

// N*p/(N - s*p); throws HypothesisError when N <= s*p.
double critical_exponent(const HypothesisParams& params);

} // namespace fracpvar
