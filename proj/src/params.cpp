#include "fracpvar/params.hpp"

#include <cmath>
#include <sstream>

#include "fracpvar/errors.hpp"

namespace fracpvar {

std::string to_string(Regime regime) {
    return regime == Regime::sublinear ? "sublinear" : "superlinear";
}

void HypothesisParams::validate() const {
    std::ostringstream what;
    if (!(p > 1.0)) {
        what << "hypothesis violated: p > 1 (got p = " << p << ")";
    } else if (!(s > 0.0 && s < 1.0)) {
        what << "hypothesis violated: s in (0,1) (got s = " << s << ")";
    } else if (dim < 1) {
        what << "hypothesis violated: N >= 1 (got N = " << dim << ")";
    } else if (!(q >= 0.0)) {
        what << "hypothesis violated: q >= 0 (got q = " << q << ")";
    } else if (!(mu > 0.0)) {
        what << "hypothesis violated: mu > 0 (got mu = " << mu << ")";
    } else if (!(c_growth >= mu)) {
        what << "hypothesis violated: c >= mu (got c = " << c_growth << ", mu = " << mu << ")";
    } else if (!(C_f3 > 0.0)) {
        what << "hypothesis violated: C > 0 (got C = " << C_f3 << ")";
    } else if (m.has_value() && !(*m < p)) {
        what << "hypothesis violated: m < p (got m = " << *m << ", p = " << p << ")";
    } else {
        return;
    }
    throw HypothesisError(what.str());
}

Regime HypothesisParams::regime() const {
    validate();
    if (q == p - 1.0)
        throw HypothesisError("regime violation: q = p-1 separates the regimes and is rejected");
    if (q < p - 1.0) return Regime::sublinear;
    // Superlinear: the subcritical ceiling q < p*_s - 1 applies when p*_s is
    // finite; for N <= s*p there is no ceiling.
    if (static_cast<double>(dim) > sp()) {
        const double ceiling = critical_exponent(*this) - 1.0;
        if (!(q < ceiling)) {
            std::ostringstream what;
            what << "regime violation: superlinear requires q < p*_s - 1 = " << ceiling
                 << " (got q = " << q << ")";
            throw HypothesisError(what.str());
        }
    }
    if (!m.has_value())
        throw HypothesisError("hypothesis violated: superlinear regime requires m < p");
    return Regime::superlinear;
}

double HypothesisParams::subcritical_m() const {
    if (!m.has_value())
        throw HypothesisError("hypothesis violated: m is required but not set");
    if (!(*m < p))
        throw HypothesisError("hypothesis violated: m < p");
    return *m;
}

double critical_exponent(const HypothesisParams& params) {
    const double n = static_cast<double>(params.dim);
    if (!(n > params.sp())) {
        std::ostringstream what;
        what << "hypothesis violated: N > s*p required for the critical exponent (N = " << n
             << ", s*p = " << params.sp() << ")";
        throw HypothesisError(what.str());
    }
    return n * params.p / (n - params.sp());
}

} // namespace fracpvar
