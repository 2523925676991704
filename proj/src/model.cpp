#include "fracpvar/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fracpvar/errors.hpp"

namespace fracpvar {

std::string to_string(NonlinearityKind kind) {
    switch (kind) {
    case NonlinearityKind::power: return "power";
    case NonlinearityKind::paper_piecewise: return "paper_piecewise";
    case NonlinearityKind::tabulated: return "tabulated";
    }
    return "unknown";
}

NonlinearitySpec NonlinearitySpec::power(double q) {
    if (!(q >= 0.0)) throw HypothesisError("power nonlinearity requires q >= 0");
    NonlinearitySpec spec;
    spec.kind_ = NonlinearityKind::power;
    spec.q_ = q;
    return spec;
}

NonlinearitySpec NonlinearitySpec::paper_piecewise(double q, double m) {
    if (!(q >= 0.0)) throw HypothesisError("paper_piecewise requires q >= 0");
    if (!(m > 0.0 && m < q + 1.0))
        throw HypothesisError("paper_piecewise requires 0 < m < q+1");
    NonlinearitySpec spec;
    spec.kind_ = NonlinearityKind::paper_piecewise;
    spec.q_ = q;
    spec.m_ = m;
    return spec;
}

NonlinearitySpec NonlinearitySpec::tabulated(std::vector<double> abscissae,
                                             std::vector<double> values) {
    if (abscissae.size() != values.size() || abscissae.size() < 2)
        throw HypothesisError("tabulated nonlinearity needs at least two (s, f) samples");
    if (!(abscissae.front() >= 0.0))
        throw HypothesisError("tabulated nonlinearity: abscissae must be nonnegative");
    for (std::size_t k = 1; k < abscissae.size(); ++k)
        if (!(abscissae[k] > abscissae[k - 1]))
            throw HypothesisError("tabulated nonlinearity: non-monotone abscissae");
    for (double v : values) {
        if (!std::isfinite(v) || v < 0.0)
            throw HypothesisError("tabulated nonlinearity: samples must be finite and >= 0");
    }

    NonlinearitySpec spec;
    spec.kind_ = NonlinearityKind::tabulated;
    spec.abscissae_ = std::move(abscissae);
    spec.values_ = std::move(values);
    // Exact primitive of the clamped interpolant, accumulated per segment.
    spec.cumulative_.resize(spec.abscissae_.size());
    spec.cumulative_[0] = spec.values_[0] * spec.abscissae_[0];
    for (std::size_t k = 1; k < spec.abscissae_.size(); ++k) {
        const double dt = spec.abscissae_[k] - spec.abscissae_[k - 1];
        spec.cumulative_[k] =
            spec.cumulative_[k - 1] + 0.5 * (spec.values_[k] + spec.values_[k - 1]) * dt;
    }
    return spec;
}

double NonlinearitySpec::f(double t) const {
    if (t < 0.0)
        throw std::invalid_argument("f_eval: negative input; callers must pass u^+");
    switch (kind_) {
    case NonlinearityKind::power:
        return std::pow(t, q_);
    case NonlinearityKind::paper_piecewise:
        return t <= 1.0 ? 2.0 * std::pow(t, q_) : std::pow(t, q_) + std::pow(t, m_ - 1.0);
    case NonlinearityKind::tabulated: {
        if (t <= abscissae_.front()) return values_.front();
        if (t >= abscissae_.back()) return values_.back();
        const auto it = std::upper_bound(abscissae_.begin(), abscissae_.end(), t);
        const std::size_t k = static_cast<std::size_t>(it - abscissae_.begin());
        const double w = (t - abscissae_[k - 1]) / (abscissae_[k] - abscissae_[k - 1]);
        return values_[k - 1] + w * (values_[k] - values_[k - 1]);
    }
    }
    return 0.0;
}

double NonlinearitySpec::F(double t) const {
    if (t < 0.0)
        throw std::invalid_argument("F_eval: negative input; callers must pass u^+");
    switch (kind_) {
    case NonlinearityKind::power:
        return std::pow(t, q_ + 1.0) / (q_ + 1.0);
    case NonlinearityKind::paper_piecewise: {
        if (t <= 1.0) return 2.0 * std::pow(t, q_ + 1.0) / (q_ + 1.0);
        return 2.0 / (q_ + 1.0) + (std::pow(t, q_ + 1.0) - 1.0) / (q_ + 1.0) +
               (std::pow(t, m_) - 1.0) / m_;
    }
    case NonlinearityKind::tabulated: {
        if (t <= abscissae_.front()) return values_.front() * t;
        if (t >= abscissae_.back())
            return cumulative_.back() + values_.back() * (t - abscissae_.back());
        const auto it = std::upper_bound(abscissae_.begin(), abscissae_.end(), t);
        const std::size_t k = static_cast<std::size_t>(it - abscissae_.begin());
        const double dt = t - abscissae_[k - 1];
        const double slope =
            (values_[k] - values_[k - 1]) / (abscissae_[k] - abscissae_[k - 1]);
        return cumulative_[k - 1] + values_[k - 1] * dt + 0.5 * slope * dt * dt;
    }
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// Shapes

Shape Shape::ball(std::array<double, 2> center, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("Shape::ball: radius must be positive");
    Shape s;
    s.kind = Kind::ball;
    s.center = center;
    s.radius = radius;
    return s;
}

Shape Shape::box(std::array<double, 2> lo, std::array<double, 2> hi) {
    if (!(lo[0] < hi[0]) || !(lo[1] <= hi[1]))
        throw std::invalid_argument("Shape::box: lo must be below hi");
    Shape s;
    s.kind = Kind::box;
    s.lo = lo;
    s.hi = hi;
    return s;
}

namespace {

double norm2(double a, double b) { return std::sqrt(a * a + b * b); }

} // namespace

bool Shape::contains(const std::array<double, 2>& x, int dim) const {
    if (kind == Kind::ball) {
        const double dx = x[0] - center[0];
        const double dy = dim == 2 ? x[1] - center[1] : 0.0;
        return norm2(dx, dy) <= radius;
    }
    for (int a = 0; a < dim; ++a)
        if (x[a] < lo[a] || x[a] > hi[a]) return false;
    return true;
}

double Shape::distance_outside(const std::array<double, 2>& x, int dim) const {
    if (kind == Kind::ball) {
        const double dx = x[0] - center[0];
        const double dy = dim == 2 ? x[1] - center[1] : 0.0;
        return std::max(norm2(dx, dy) - radius, 0.0);
    }
    double acc = 0.0;
    for (int a = 0; a < dim; ++a) {
        const double d = std::max({lo[a] - x[a], x[a] - hi[a], 0.0});
        acc += d * d;
    }
    return std::sqrt(acc);
}

double Shape::distance_inside(const std::array<double, 2>& x, int dim) const {
    if (kind == Kind::ball) {
        const double dx = x[0] - center[0];
        const double dy = dim == 2 ? x[1] - center[1] : 0.0;
        return std::max(radius - norm2(dx, dy), 0.0);
    }
    double depth = std::numeric_limits<double>::infinity();
    for (int a = 0; a < dim; ++a)
        depth = std::min({depth, x[a] - lo[a], hi[a] - x[a]});
    return std::max(depth, 0.0);
}

std::array<double, 2> Shape::grad_distance_outside(const std::array<double, 2>& x,
                                                   int dim) const {
    if (kind == Kind::ball) {
        const double dx = x[0] - center[0];
        const double dy = dim == 2 ? x[1] - center[1] : 0.0;
        const double r = norm2(dx, dy);
        if (r <= radius || r == 0.0) return {0.0, 0.0};
        return {dx / r, dim == 2 ? dy / r : 0.0};
    }
    std::array<double, 2> diff{0.0, 0.0};
    double r = 0.0;
    for (int a = 0; a < dim; ++a) {
        if (x[a] < lo[a]) diff[a] = x[a] - lo[a];
        else if (x[a] > hi[a]) diff[a] = x[a] - hi[a];
        r += diff[a] * diff[a];
    }
    r = std::sqrt(r);
    if (r == 0.0) return {0.0, 0.0};
    return {diff[0] / r, diff[1] / r};
}

std::array<double, 2> Shape::grad_distance_inside(const std::array<double, 2>& x,
                                                  int dim) const {
    if (distance_inside(x, dim) == 0.0) return {0.0, 0.0};
    if (kind == Kind::ball) {
        const double dx = x[0] - center[0];
        const double dy = dim == 2 ? x[1] - center[1] : 0.0;
        const double r = norm2(dx, dy);
        if (r == 0.0) return {0.0, 0.0};
        return {-dx / r, dim == 2 ? -dy / r : 0.0};
    }
    // One-sided choice at ties: the first axis/side attaining the depth.
    int best_axis = 0;
    double best = std::numeric_limits<double>::infinity();
    double sign = 1.0;
    for (int a = 0; a < dim; ++a) {
        if (x[a] - lo[a] < best) {
            best = x[a] - lo[a];
            best_axis = a;
            sign = 1.0;
        }
        if (hi[a] - x[a] < best) {
            best = hi[a] - x[a];
            best_axis = a;
            sign = -1.0;
        }
    }
    std::array<double, 2> g{0.0, 0.0};
    g[best_axis] = sign;
    return g;
}

double Shape::bounding_radius() const {
    if (kind == Kind::ball) return norm2(center[0], center[1]) + radius;
    double best = 0.0;
    for (double cx : {lo[0], hi[0]})
        for (double cy : {lo[1], hi[1]}) best = std::max(best, norm2(cx, cy));
    return best;
}

std::array<double, 2> Shape::inscribed_center() const {
    if (kind == Kind::ball) return center;
    return {0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1])};
}

double Shape::inscribed_radius(int dim) const {
    if (kind == Kind::ball) return radius;
    double side = hi[0] - lo[0];
    if (dim == 2) side = std::min(side, hi[1] - lo[1]);
    return 0.5 * side;
}

bool Shape::strictly_contains(const Shape& inner, int dim) const {
    if (kind == Kind::ball && inner.kind == Kind::ball) {
        const double dc = dim == 2 ? norm2(inner.center[0] - center[0],
                                           inner.center[1] - center[1])
                                   : std::abs(inner.center[0] - center[0]);
        return dc + inner.radius < radius;
    }
    if (kind == Kind::box && inner.kind == Kind::box) {
        for (int a = 0; a < dim; ++a)
            if (!(lo[a] < inner.lo[a] && inner.hi[a] < hi[a])) return false;
        return true;
    }
    if (kind == Kind::box && inner.kind == Kind::ball) {
        for (int a = 0; a < dim; ++a)
            if (!(lo[a] < inner.center[a] - inner.radius &&
                  inner.center[a] + inner.radius < hi[a]))
                return false;
        return true;
    }
    // inner box in ball: every corner strictly inside
    for (double cx : {inner.lo[0], inner.hi[0]}) {
        if (dim == 1) {
            if (!(std::abs(cx - center[0]) < radius)) return false;
            continue;
        }
        for (double cy : {inner.lo[1], inner.hi[1]})
            if (!(norm2(cx - center[0], cy - center[1]) < radius)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Weights

WeightSpec WeightSpec::plateau(Shape omega, Shape Omega, double beta, int dim) {
    if (!(beta > 0.0)) throw HypothesisError("plateau weight requires beta > 0");
    if (!Omega.strictly_contains(omega, dim))
        throw HypothesisError("hypothesis (W) violated: omega is not strictly inside Omega");
    WeightSpec w;
    w.constant_ = false;
    w.beta_ = beta;
    w.omega_ = omega;
    w.Omega_ = Omega;
    return w;
}

WeightSpec WeightSpec::constant(double value) {
    return constant(value, Shape::ball({0.0, 0.0}, 0.5), Shape::ball({0.0, 0.0}, 1.0));
}

WeightSpec WeightSpec::constant(double value, Shape omega, Shape Omega) {
    WeightSpec w;
    w.constant_ = true;
    w.value_ = value;
    w.omega_ = omega;
    w.Omega_ = Omega;
    return w;
}

double WeightSpec::phi(const std::array<double, 2>& x, int dim) const {
    if (constant_) return value_;
    const double a = omega_.distance_outside(x, dim);
    const double b = Omega_.distance_inside(x, dim);
    if (a == 0.0) return 1.0;
    if (b == 0.0) return -beta_;
    return 1.0 - (1.0 + beta_) * a / (a + b);
}

std::array<double, 2> WeightSpec::grad_phi(const std::array<double, 2>& x, int dim) const {
    if (constant_) return {0.0, 0.0};
    const double a = omega_.distance_outside(x, dim);
    const double b = Omega_.distance_inside(x, dim);
    if (a == 0.0 || b == 0.0) return {0.0, 0.0};
    const auto ga = omega_.grad_distance_outside(x, dim);
    const auto gb = Omega_.grad_distance_inside(x, dim);
    const double denom = (a + b) * (a + b);
    return {-(1.0 + beta_) * (ga[0] * b - a * gb[0]) / denom,
            -(1.0 + beta_) * (ga[1] * b - a * gb[1]) / denom};
}

// ---------------------------------------------------------------------------
// Verifiers

namespace {

std::vector<double> log_samples(int count) {
    if (count < 1) throw std::invalid_argument("verifier: sample_count must be >= 1");
    std::vector<double> s(count);
    if (count == 1) {
        s[0] = 1.0;
        return s;
    }
    const double lo = -6.0;
    const double hi = 3.0;
    for (int i = 0; i < count; ++i)
        s[i] = std::pow(10.0, lo + (hi - lo) * static_cast<double>(i) /
                                   static_cast<double>(count - 1));
    return s;
}

} // namespace

CheckReport verify_f2(const NonlinearitySpec& spec, const HypothesisParams& params,
                      int sample_count) {
    CheckReport report;
    report.name = "f2";
    double tight_mu = std::numeric_limits<double>::infinity();
    double tight_c = 0.0;
    for (double s : log_samples(sample_count)) {
        const double ratio = spec.f(s) / std::pow(s, params.q);
        if (!std::isfinite(ratio)) {
            report.passed = false;
            report.has_witness = true;
            report.witness = s;
            report.message = "f(s)/s^q is not finite at a sample";
            return report;
        }
        if (ratio < tight_mu) tight_mu = ratio;
        if (ratio > tight_c) tight_c = ratio;
        if (!report.has_witness &&
            (ratio < params.mu * (1.0 - 1e-12) || ratio > params.c_growth * (1.0 + 1e-12))) {
            report.has_witness = true;
            report.witness = s;
        }
    }
    report.observed_lower = tight_mu;
    report.observed_upper = tight_c;
    report.passed = !report.has_witness;
    std::ostringstream msg;
    if (report.passed) {
        msg << "tightest (mu, c) = (" << tight_mu << ", " << tight_c << ")";
    } else {
        msg << "growth bound violated at s = " << report.witness << " (ratio outside ["
            << params.mu << ", " << params.c_growth << "])";
    }
    report.message = msg.str();
    return report;
}

CheckReport verify_f3(const NonlinearitySpec& spec, const HypothesisParams& params,
                      int sample_count) {
    if (params.regime() != Regime::superlinear)
        throw HypothesisError("verify_f3: only meaningful in the superlinear regime");
    const double m = params.subcritical_m();

    CheckReport report;
    report.name = "f3";
    double c_first = 0.0;
    double c_second = 0.0;
    for (double s : log_samples(sample_count)) {
        const double fs = spec.f(s) * s;
        const double Fs = spec.F(s);
        const double d1 = (params.q + 1.0) * Fs - fs;
        const double d2 = fs - params.p * Fs;
        const double scale = std::abs((params.q + 1.0) * Fs) + std::abs(fs) + 1.0;
        if (d1 < -1e-12 * scale || d2 < -1e-12 * scale) {
            report.has_witness = true;
            report.witness = s;
            report.message = "lower bound of (f3) violated";
            break;
        }
        c_first = std::max(c_first, d1 / std::pow(s, m));
        c_second = std::max(c_second, d2 / std::pow(s, params.q + 1.0));
    }
    report.min_C_first = c_first;
    report.min_C_second = c_second;
    if (!report.has_witness &&
        (c_first > params.C_f3 * (1.0 + 1e-12) || c_second > params.C_f3 * (1.0 + 1e-12))) {
        report.has_witness = true;
        report.witness = std::max(c_first, c_second);
        report.message = "minimal feasible C exceeds the hypothesis constant";
    }
    report.passed = !report.has_witness;
    if (report.passed) {
        std::ostringstream msg;
        msg << "minimal feasible C: first bound " << c_first << ", second bound " << c_second;
        report.message = msg.str();
    }
    return report;
}

CheckReport verify_W(const WeightSpec& weight, const Grid& grid) {
    if (!weight.Omega().strictly_contains(weight.omega(), grid.dim()))
        throw HypothesisError("hypothesis (W) violated: omega is not strictly inside Omega");
    if (weight.Omega().bounding_radius() > grid.radius())
        throw std::invalid_argument("verify_W: grid does not cover Omega");

    CheckReport report;
    report.name = "W";
    double min_inside = std::numeric_limits<double>::infinity();
    double max_outside = -std::numeric_limits<double>::infinity();
    std::size_t witness_in = Grid::npos;
    std::size_t witness_out = Grid::npos;
    std::size_t count_in = 0;
    std::size_t count_out = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double value = weight.phi(grid.node(i), grid.dim());
        if (weight.omega().contains(grid.node(i), grid.dim())) {
            ++count_in;
            if (value < min_inside) {
                min_inside = value;
                witness_in = i;
            }
        }
        if (!weight.Omega().contains(grid.node(i), grid.dim())) {
            ++count_out;
            if (value > max_outside) {
                max_outside = value;
                witness_out = i;
            }
        }
    }
    if (count_in == 0)
        throw HypothesisError("verify_W: no grid node falls inside omega; refine spacing");
    if (count_out == 0)
        throw std::invalid_argument("verify_W: grid does not extend beyond Omega");

    report.observed_lower = min_inside;
    report.observed_upper = max_outside;
    report.passed = min_inside > 0.0 && max_outside <= 0.0;
    std::ostringstream msg;
    if (report.passed) {
        msg << "extrema (min over omega, max outside Omega) = (" << min_inside << ", "
            << max_outside << ")";
    } else if (!(min_inside > 0.0)) {
        report.has_witness = true;
        report.witness = grid.node(witness_in)[0];
        msg << "(W) violated: phi not positive on omega (phi = " << min_inside << ")";
    } else {
        report.has_witness = true;
        report.witness = grid.node(witness_out)[0];
        msg << "(W) violated: phi positive outside Omega (phi = " << max_outside << ")";
    }
    report.message = msg.str();
    return report;
}

} // namespace fracpvar
