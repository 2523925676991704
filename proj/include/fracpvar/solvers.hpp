#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fracpvar/energy.hpp"

namespace fracpvar {

// One machine-parsable record per solver step: iteration, energy, gradient
// norm. For the mountain pass the "energy" is the current path maximum.
struct TraceRecord {
    std::int64_t iteration;
    double energy;
    double gradient_norm;
};
using TraceSink = std::function<void(const TraceRecord&)>;

struct SolverOptions {
    double tol = 1e-8;                  // max-norm of the discrete gradient
    std::int64_t max_iterations = 100000;
    std::int64_t max_sweeps = 10000;
    int path_nodes = 32;                // P: the path samples gamma_0..gamma_P
    std::uint64_t seed = 42;
    int probe_count = 200;
    double chain_slack = 1e-6;          // slack on all chain inequalities
};

struct SolveReport {
    Field solution;
    double energy_value = 0.0;
    double level = 0.0;
    double gradient_norm = 0.0;
    double seminorm_p_value = 0.0;      // S(u) = seminorm_p of the solution
    double negative_part_certificate = 0.0;
    std::int64_t iterations = 0;
    Regime regime = Regime::sublinear;
};

// Fixed smooth bump ((1 - |x-c|^2/r^2)_+)^2 on the ball inscribed in omega.
Field bump_field(std::shared_ptr<const Grid> grid, const Shape& omega);

struct SeedScale {
    double t;
    double energy;
};

// Scans t in {2^-k, k = 0..40} and returns the scale with the most negative
// J(t*zeta). Throws SolverError when no scale has negative energy, which
// signals a weight/nonlinearity misconfiguration.
SeedScale negative_energy_scale(const EnergyContext& ctx, const Field& zeta);

// Global minimization for the coercive regime (q + 1 < p): Armijo-backtracked
// gradient descent with Barzilai-Borwein step seeding. Starts from init when
// J(init) < 0; otherwise (including the trivial critical point u = 0) restarts
// from the seeded bump. Post: gradient_norm <= tol and energy_value < 0.
SolveReport minimize_coercive(const EnergyContext& ctx, const Field& init,
                              const Field& zeta, const SolverOptions& options,
                              const TraceSink& trace = {});

struct MountainPassGeometry {
    double rho;
    double r;
};

// rho = 0.9 * (1/(2 p C_est))^(1/(q-p+1)), r = rho^p / (2p). The 0.9 keeps the
// strict inequality of the geometry lemma with margin.
MountainPassGeometry mp_geometry(double C_est, const HypothesisParams& params);

// max over probe fields of sum_i phi_i^+ |u_i|^e vol_i / S(u)^(e/p).
// Probes: seeded random fields (half masked to the phi > 0 region) plus the
// bump family on omega. Callers apply the safety factor.
double estimate_growth_constant(const EnergyContext& ctx, const Shape& omega,
                                double exponent, int probe_count,
                                std::uint64_t seed);

// psi = t0 * zeta with J(psi) <= 0 and S(psi)^(1/p) > rho, t0 found by
// doubling from 1. Throws after 60 doublings.
Field find_endpoint(const EnergyContext& ctx, const Field& zeta, double rho);
double find_endpoint_scale(const EnergyContext& ctx, const Field& zeta, double rho);

struct MountainPassPath {
    std::vector<Field> nodes; // gamma(t_k); endpoints pinned
};

// Min-max search at the level c = inf over paths of max J. Phase one deforms
// the discrete path: every interior node takes one Armijo step down its own
// gradient per sweep (endpoints pinned bitwise), nodes re-sorted by seminorm
// to keep the parametrization monotone; the path maximum never increases.
// Phase two converges the maximizer to the critical point through the ray
// minimax: peak the energy along the current direction, step the direction
// against the full gradient, repeat until the gradient max-norm meets tol.
// The reported level is checked against r - slack from below and the initial
// path maximum from above.
SolveReport mountain_pass_solve(const EnergyContext& ctx, const Field& psi,
                                const MountainPassGeometry& geometry,
                                const SolverOptions& options,
                                const TraceSink& trace = {},
                                const MountainPassPath* warm_start = nullptr,
                                MountainPassPath* final_path = nullptr);

// (1/p - 1/(q+1)) S(u) - C_n S(u)^(m/p) - c_level; nonpositive slack means the
// Palais-Smale a-priori bound is active at this level.
double ps_boundedness_certificate(const EnergyContext& ctx, const Field& u,
                                  double c_level, double C_n);

} // namespace fracpvar
