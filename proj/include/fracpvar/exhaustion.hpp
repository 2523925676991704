#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "fracpvar/energy.hpp"
#include "fracpvar/solvers.hpp"

namespace fracpvar {

struct BallEntry {
    double radius = 0.0;
    double level = 0.0;                     // c_n (min-max) or inf J_n
    double seminorm_p_value = 0.0;          // S(u_n)
    double negative_part_certificate = 0.0; // S(u_n^-)
    double nontriviality = 0.0;             // T_n
    double lp_norm = 0.0;                   // ||u_n||_Lp, reported as data
    double ps_slack = 0.0;                  // superlinear only
    bool sphere_check = true;               // superlinear only
    std::int64_t iterations = 0;
};

struct ResidualStats {
    double max_residual = 0.0;
    double mean_residual = 0.0;
    double max_probe_l1 = 0.0; // largest probe 1-norm, for normalized checks
    int probe_count = 0;
};

struct ExhaustionVerdicts {
    bool monotone_levels = true;  // superlinear: c_{n+1} <= c_n + slack
    bool levels_admissible = true; // superlinear: c_n >= r - slack; sublinear: level <= cap < 0
    bool uniform_bound = true;    // S(u_n)^(1/p) <= M + slack
    bool nontriviality = true;    // superlinear: T_n >= c_n - slack and min T_n > 0
    bool negative_part = true;    // certificates <= 1e-10
    bool sphere_sampling = true;  // superlinear: J >= r(1 - 1e-6) on the rho-sphere
};

struct ExhaustionReport {
    Regime regime = Regime::sublinear;
    std::vector<BallEntry> entries;
    std::vector<Field> solutions; // per-ball solutions, radius order
    Field limit_candidate;        // largest-ball solution
    double C_est = 0.0;    // growth constant behind the geometry (superlinear)
    double C_omega = 0.0;  // Omega-restricted constant behind the uniform bound
    double rho = 0.0;
    double r = 0.0;
    double endpoint_scale = 0.0; // t0 with psi = t0 zeta (superlinear)
    double seed_scale = 0.0;     // tau with the cap J(tau zeta) (sublinear)
    double level_cap = 0.0;      // sublinear: J_1(tau zeta) < 0
    double uniform_bound_M = 0.0;
    ResidualStats residual;
    ExhaustionVerdicts verdicts;
};

struct ExhaustionSetup {
    HypothesisParams params;
    std::vector<double> radii; // strictly increasing, multiples of spacing
    double spacing = 0.125;
    WeightSpec weight = WeightSpec::constant(1.0);
    std::shared_ptr<const NonlinearitySpec> nonlinearity;
    SolverOptions solver;
    bool warm_start = true;
    int residual_probes = 16;
};

// Per-ball trace sinks, keyed by the ball radius.
using TraceSinkFactory = std::function<TraceSink(double radius)>;

// Solves on each ball in the configured regime, warm-starting ball n+1 from
// the zero-extension of u_n, and fills the level chain, uniform bounds and
// verdicts.
ExhaustionReport run_exhaustion(const ExhaustionSetup& setup,
                                const TraceSinkFactory& traces = {});

// Largest root M of (1/p - 1/(q+1)) t^p - C_omega t^m = c1; every admissible
// S(u_n)^(1/p) is bounded by M.
double uniform_bound(double c1, const HypothesisParams& params, double C_omega);

// T(u) = sum over nodes in Omega of phi_i (f(u_i^+) u_i / p - F(u_i^+)) vol_i.
double nontriviality_functional(const Field& u, const WeightSpec& weight,
                                const NonlinearitySpec& spec,
                                const HypothesisParams& params, const Shape& Omega);

// Weak-form defect |<g_seminorm(u), probe> - sum phi f(u^+) probe vol| over
// seeded bump probes supported strictly inside the ball.
ResidualStats distributional_residual(const Field& u, const EnergyContext& ctx,
                                      int probe_count, std::uint64_t seed);

} // namespace fracpvar
