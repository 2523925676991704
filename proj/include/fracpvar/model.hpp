#pragma once

#include <array>
#include <string>
#include <vector>

#include "fracpvar/grid.hpp"
#include "fracpvar/params.hpp"

namespace fracpvar {

enum class NonlinearityKind { power, paper_piecewise, tabulated };

std::string to_string(NonlinearityKind kind);

// Nonlinearity f with its primitive F, F(0) = 0. f rejects negative inputs;
// callers truncate through u^+ themselves so the truncation stays visible in
// the energy.
class NonlinearitySpec {
public:
    // f(t) = t^q
    static NonlinearitySpec power(double q);
    // f(t) = 2 t^q on [0,1], t^q + t^(m-1) on [1,inf); continuous at 1
    static NonlinearitySpec paper_piecewise(double q, double m);
    // piecewise-linear interpolation of (s_k, f_k) samples, clamped outside
    // the table; the primitive is the exact integral of that interpolant
    static NonlinearitySpec tabulated(std::vector<double> abscissae,
                                      std::vector<double> values);

    NonlinearityKind kind() const { return kind_; }
    double q() const { return q_; }
    double m() const { return m_; }

    double f(double t) const;
    double F(double t) const;

private:
    NonlinearitySpec() = default;

    NonlinearityKind kind_ = NonlinearityKind::power;
    double q_ = 0.0;
    double m_ = 0.0;
    std::vector<double> abscissae_;
    std::vector<double> values_;
    std::vector<double> cumulative_;
};

// Ball or axis-aligned box; the pieces of hypothesis (W) geometry.
struct Shape {
    enum class Kind { ball, box };

    Kind kind = Kind::ball;
    std::array<double, 2> center{0.0, 0.0};
    double radius = 0.0;
    std::array<double, 2> lo{0.0, 0.0};
    std::array<double, 2> hi{0.0, 0.0};

    static Shape ball(std::array<double, 2> center, double radius);
    static Shape box(std::array<double, 2> lo, std::array<double, 2> hi);

    bool contains(const std::array<double, 2>& x, int dim) const;
    // Euclidean distance from x to the set; zero inside.
    double distance_outside(const std::array<double, 2>& x, int dim) const;
    // Distance from x to the complement; zero outside ("depth").
    double distance_inside(const std::array<double, 2>& x, int dim) const;
    std::array<double, 2> grad_distance_outside(const std::array<double, 2>& x, int dim) const;
    std::array<double, 2> grad_distance_inside(const std::array<double, 2>& x, int dim) const;

    double bounding_radius() const; // sup of |x| over the set
    std::array<double, 2> inscribed_center() const;
    double inscribed_radius(int dim) const;

    // Strict containment with positive margin; used to validate omega in Omega.
    bool strictly_contains(const Shape& inner, int dim) const;
};

// Weight phi with the sets omega in Omega. The plateau built-in is 1 on
// omega, decays linearly in the distance fraction between the boundaries,
// and is -beta outside Omega. Gradients are analytic a.e. (one-sided at
// corners).
class WeightSpec {
public:
    static WeightSpec plateau(Shape omega, Shape Omega, double beta, int dim);
    static WeightSpec constant(double value);
    static WeightSpec constant(double value, Shape omega, Shape Omega);

    bool is_constant() const { return constant_; }
    double beta() const { return beta_; }
    const Shape& omega() const { return omega_; }
    const Shape& Omega() const { return Omega_; }

    double phi(const std::array<double, 2>& x, int dim) const;
    std::array<double, 2> grad_phi(const std::array<double, 2>& x, int dim) const;

private:
    WeightSpec() = default;

    bool constant_ = false;
    double value_ = 0.0;
    double beta_ = 1.0;
    Shape omega_;
    Shape Omega_;
};

struct CheckReport {
    std::string name;
    bool passed = false;
    std::string message;
    // f2: tightest (mu, c) observed; W: (min over omega, max outside Omega).
    double observed_lower = 0.0;
    double observed_upper = 0.0;
    // f3: minimal feasible C per bound.
    double min_C_first = 0.0;
    double min_C_second = 0.0;
    bool has_witness = false;
    double witness = 0.0;
};

// Samples s log-spaced on [1e-6, 1e3]. These are falsifiers with witnesses:
// a pass certifies the hypothesis on the sampled range only.
CheckReport verify_f2(const NonlinearitySpec& spec, const HypothesisParams& params,
                      int sample_count);
CheckReport verify_f3(const NonlinearitySpec& spec, const HypothesisParams& params,
                      int sample_count);
CheckReport verify_W(const WeightSpec& weight, const Grid& grid);

} // namespace fracpvar
