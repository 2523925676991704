#include "fracpvar/exhaustion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fracpvar/errors.hpp"
#include "fracpvar/parallel.hpp"
#include "fracpvar/rng.hpp"

namespace fracpvar {
namespace {

// Largest root of A t^a - B t^b = level for a > b > 0, A, B > 0. The left
// side falls to a negative minimum at t* = (B b / (A a))^(1/(a-b)) and then
// grows without bound, so the largest root sits right of t* whenever
// level >= min.
double largest_root(double A, double a, double B, double b, double level) {
    const double t_min = std::pow(B * b / (A * a), 1.0 / (a - b));
    const auto lhs = [&](double t) { return A * std::pow(t, a) - B * std::pow(t, b); };
    if (lhs(t_min) > level)
        throw SolverError("uniform_bound: the level lies below the minimum; no root exists");
    double hi = std::max(t_min, 1.0);
    int doublings = 0;
    while (lhs(hi) <= level) {
        hi *= 2.0;
        if (++doublings > 400)
            throw SolverError("uniform_bound: bisection bracket not found");
    }
    double lo = t_min;
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (lhs(mid) <= level) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

double lp_norm(const Field& u, double p) {
    std::vector<double> terms(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        terms[i] = pow_abs(u.values[i], p) * u.grid->volume(i);
    return std::pow(pairwise_sum(terms), 1.0 / p);
}

// 50 seeded fields scaled onto the sphere S(u)^(1/p) = rho, first one along
// the bump direction, the rest random; all must satisfy J >= r (1 - 1e-6).
bool sphere_sampling_check(const EnergyContext& ctx, const Field& zeta, double rho,
                           double r, std::uint64_t seed) {
    const double p = ctx.params.p;
    Xoshiro256ss rng(seed);
    for (int sample = 0; sample < 50; ++sample) {
        Field u(ctx.grid_ptr());
        if (sample == 0 && zeta.max_abs() > 0.0) {
            u = zeta;
        } else {
            for (std::size_t i = 0; i < u.size(); ++i)
                u.values[i] = rng.uniform(-1.0, 1.0);
            if (sample % 2 == 1) {
                // Smooth the odd samples: concentrated low-frequency fields
                // probe the geometry harder than white noise.
                std::vector<double> smooth(u.size());
                for (std::size_t i = 0; i < u.size(); ++i) {
                    const double left = i > 0 ? u.values[i - 1] : 0.0;
                    const double right = i + 1 < u.size() ? u.values[i + 1] : 0.0;
                    smooth[i] = (left + 2.0 * u.values[i] + right) / 4.0;
                }
                u.values = std::move(smooth);
            }
        }
        const double sem = seminorm_p(*ctx.kernel, u);
        if (!(sem > 0.0)) continue;
        const Field on_sphere = scaled(u, rho / std::pow(sem, 1.0 / p));
        if (energy(ctx, on_sphere) < r * (1.0 - 1e-6)) return false;
    }
    return true;
}

struct BallStack {
    std::vector<std::shared_ptr<const Grid>> grids;
    std::vector<std::shared_ptr<const KernelOperator>> kernels;
    std::vector<EnergyContext> contexts;
    std::vector<Field> bumps;
};

BallStack build_stack(const ExhaustionSetup& setup) {
    BallStack stack;
    for (double radius : setup.radii) {
        auto grid = Grid::build(radius, setup.spacing, setup.params.dim);
        auto kernel =
            std::make_shared<KernelOperator>(KernelOperator::build(grid, setup.params));
        stack.contexts.push_back(
            EnergyContext::make(kernel, setup.weight, setup.nonlinearity));
        stack.bumps.push_back(bump_field(grid, setup.weight.omega()));
        stack.grids.push_back(std::move(grid));
        stack.kernels.push_back(std::move(kernel));
    }
    return stack;
}

} // namespace

double uniform_bound(double c1, const HypothesisParams& params, double C_omega) {
    if (params.regime() != Regime::superlinear)
        throw HypothesisError("uniform_bound: requires the superlinear regime");
    if (!(C_omega > 0.0))
        throw std::invalid_argument("uniform_bound: C_omega must be positive");
    const double A = 1.0 / params.p - 1.0 / (params.q + 1.0);
    return largest_root(A, params.p, C_omega, params.subcritical_m(), c1);
}

double nontriviality_functional(const Field& u, const WeightSpec& weight,
                                const NonlinearitySpec& spec,
                                const HypothesisParams& params, const Shape& Omega) {
    const Grid& g = *u.grid;
    std::vector<double> terms(u.size(), 0.0);
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (!Omega.contains(g.node(i), g.dim())) continue;
        const double phi = weight.phi(g.node(i), g.dim());
        const double plus = u.values[i] > 0.0 ? u.values[i] : 0.0;
        terms[i] = phi *
                   (spec.f(plus) * u.values[i] / params.p - spec.F(plus)) *
                   g.volume(i);
    }
    return pairwise_sum(terms);
}

ResidualStats distributional_residual(const Field& u, const EnergyContext& ctx,
                                      int probe_count, std::uint64_t seed) {
    if (probe_count < 1)
        throw std::invalid_argument("distributional_residual: probe_count must be >= 1");
    const Grid& g = ctx.grid();
    const double R = g.radius();
    const double h = g.spacing();
    // Probes must clear the outermost two cell rings.
    const double max_extent = R - 2.0 * h;
    if (!(max_extent > 0.15 * R))
        throw std::invalid_argument(
            "distributional_residual: grid too small to host interior probes");

    const Field grad = gradient(ctx, u);

    Xoshiro256ss rng(seed);
    ResidualStats stats;
    stats.probe_count = probe_count;
    double total = 0.0;
    for (int k = 0; k < probe_count; ++k) {
        const double probe_radius = rng.uniform(0.10 * R, 0.15 * R);
        const double center_cap = max_extent - probe_radius;
        std::array<double, 2> center{0.0, 0.0};
        center[0] = rng.uniform(-center_cap, center_cap);
        if (g.dim() == 2) {
            const double second_cap =
                std::sqrt(std::max(center_cap * center_cap - center[0] * center[0], 0.0));
            center[1] = rng.uniform(-second_cap, second_cap);
        }

        Field probe(ctx.grid_ptr());
        double l1 = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const auto& x = g.node(i);
            const double dx = x[0] - center[0];
            const double dy = g.dim() == 2 ? x[1] - center[1] : 0.0;
            const double arg = 1.0 - (dx * dx + dy * dy) / (probe_radius * probe_radius);
            probe.values[i] = arg > 0.0 ? arg * arg : 0.0;
            if (probe.values[i] != 0.0 && g.node_norm(i) > R - 2.0 * h)
                throw std::invalid_argument(
                    "distributional_residual: probe support touches the boundary ring");
            l1 += std::abs(probe.values[i]);
        }
        const double defect = std::abs(dot(grad, probe));
        stats.max_residual = std::max(stats.max_residual, defect);
        stats.max_probe_l1 = std::max(stats.max_probe_l1, l1);
        total += defect;
    }
    stats.mean_residual = total / static_cast<double>(probe_count);
    return stats;
}

ExhaustionReport run_exhaustion(const ExhaustionSetup& setup,
                                const TraceSinkFactory& traces) {
    if (setup.radii.empty())
        throw std::invalid_argument("run_exhaustion: at least one radius required");
    for (std::size_t n = 1; n < setup.radii.size(); ++n)
        if (!(setup.radii[n] > setup.radii[n - 1]))
            throw std::invalid_argument("run_exhaustion: radii must increase strictly");
    if (setup.weight.Omega().bounding_radius() > setup.radii.front())
        throw HypothesisError("run_exhaustion: Omega must fit inside the smallest ball");
    if (!setup.nonlinearity)
        throw std::invalid_argument("run_exhaustion: nonlinearity is not set");

    const Regime regime = setup.params.regime();
    const double slack = setup.solver.chain_slack;
    BallStack stack = build_stack(setup);

    ExhaustionReport report;
    report.regime = regime;

    const auto trace_for = [&](std::size_t n) -> TraceSink {
        return traces ? traces(setup.radii[n]) : TraceSink{};
    };

    if (regime == Regime::superlinear) {
        const double q1 = setup.params.q + 1.0;
        const EnergyContext& widest = stack.contexts.back();
        report.C_est = 2.0 * estimate_growth_constant(widest, setup.weight.omega(), q1,
                                                      setup.solver.probe_count,
                                                      setup.solver.seed);
        report.C_omega =
            2.0 * (setup.params.C_f3 / q1) *
            estimate_growth_constant(widest, setup.weight.omega(),
                                     setup.params.subcritical_m(),
                                     setup.solver.probe_count, setup.solver.seed + 1);
        const MountainPassGeometry geometry = mp_geometry(report.C_est, setup.params);
        report.rho = geometry.rho;
        report.r = geometry.r;

        // One endpoint scale for the whole exhaustion: psi = t0 zeta must
        // have nonpositive energy and seminorm above rho on every ball.
        double t0 = find_endpoint_scale(stack.contexts.front(), stack.bumps.front(),
                                        geometry.rho);
        for (int attempt = 0; attempt <= 60; ++attempt) {
            bool admissible = true;
            for (std::size_t n = 0; n < stack.contexts.size() && admissible; ++n) {
                const Field psi_n = scaled(stack.bumps[n], t0);
                const double sem_root = std::pow(
                    seminorm_p(*stack.kernels[n], psi_n), 1.0 / setup.params.p);
                admissible = energy(stack.contexts[n], psi_n) <= 0.0 &&
                             sem_root > geometry.rho;
            }
            if (admissible) break;
            t0 *= 2.0;
            if (attempt == 60)
                throw SolverError("run_exhaustion: no endpoint scale fits every ball");
        }
        report.endpoint_scale = t0;

        MountainPassPath previous_path;
        bool have_path = false;
        for (std::size_t n = 0; n < stack.contexts.size(); ++n) {
            const EnergyContext& ctx = stack.contexts[n];
            const Field psi = scaled(stack.bumps[n], t0);

            MountainPassPath warm;
            if (setup.warm_start && have_path) {
                for (const Field& node : previous_path.nodes)
                    warm.nodes.push_back(zero_extend(node, stack.grids[n]));
            }
            MountainPassPath final_path;
            SolveReport solve;
            try {
                solve = mountain_pass_solve(ctx, psi, geometry, setup.solver, trace_for(n),
                                            (setup.warm_start && have_path) ? &warm : nullptr,
                                            &final_path);
            } catch (const SolverError& err) {
                std::ostringstream what;
                what << "ball R = " << setup.radii[n] << ": " << err.what();
                throw SolverError(what.str());
            }
            previous_path = std::move(final_path);
            have_path = true;

            BallEntry entry;
            entry.radius = setup.radii[n];
            entry.level = solve.level;
            entry.seminorm_p_value = solve.seminorm_p_value;
            entry.negative_part_certificate = solve.negative_part_certificate;
            entry.nontriviality =
                nontriviality_functional(solve.solution, setup.weight, *setup.nonlinearity,
                                         setup.params, setup.weight.Omega());
            entry.lp_norm = lp_norm(solve.solution, setup.params.p);
            entry.ps_slack =
                ps_boundedness_certificate(ctx, solve.solution, solve.level, report.C_omega);
            entry.sphere_check = sphere_sampling_check(ctx, stack.bumps[n], geometry.rho,
                                                       geometry.r, setup.solver.seed + n);
            entry.iterations = solve.iterations;
            report.entries.push_back(entry);
            report.solutions.push_back(std::move(solve.solution));
            if (n + 1 == stack.contexts.size()) report.limit_candidate = report.solutions.back();
        }

        report.uniform_bound_M =
            uniform_bound(report.entries.front().level, setup.params, report.C_omega);

        for (std::size_t n = 0; n < report.entries.size(); ++n) {
            const BallEntry& entry = report.entries[n];
            if (n > 0 && entry.level > report.entries[n - 1].level + slack)
                report.verdicts.monotone_levels = false;
            if (entry.level < report.r - slack) report.verdicts.levels_admissible = false;
            if (std::pow(entry.seminorm_p_value, 1.0 / setup.params.p) >
                report.uniform_bound_M + slack)
                report.verdicts.uniform_bound = false;
            if (entry.nontriviality < entry.level - slack || !(entry.nontriviality > 0.0))
                report.verdicts.nontriviality = false;
            if (entry.negative_part_certificate > 1e-10)
                report.verdicts.negative_part = false;
            if (!entry.sphere_check) report.verdicts.sphere_sampling = false;
        }
    } else {
        const SeedScale seed = negative_energy_scale(stack.contexts.front(),
                                                     stack.bumps.front());
        report.seed_scale = seed.t;
        report.level_cap = seed.energy;

        Field previous;
        bool have_previous = false;
        for (std::size_t n = 0; n < stack.contexts.size(); ++n) {
            const EnergyContext& ctx = stack.contexts[n];
            Field init = (setup.warm_start && have_previous)
                             ? zero_extend(previous, stack.grids[n])
                             : scaled(stack.bumps[n], seed.t);
            SolveReport solve;
            try {
                solve = minimize_coercive(ctx, init, stack.bumps[n], setup.solver,
                                          trace_for(n));
            } catch (const SolverError& err) {
                std::ostringstream what;
                what << "ball R = " << setup.radii[n] << ": " << err.what();
                throw SolverError(what.str());
            }
            previous = solve.solution;
            have_previous = true;

            BallEntry entry;
            entry.radius = setup.radii[n];
            entry.level = solve.level;
            entry.seminorm_p_value = solve.seminorm_p_value;
            entry.negative_part_certificate = solve.negative_part_certificate;
            entry.nontriviality =
                nontriviality_functional(solve.solution, setup.weight, *setup.nonlinearity,
                                         setup.params, setup.weight.Omega());
            entry.lp_norm = lp_norm(solve.solution, setup.params.p);
            entry.iterations = solve.iterations;
            report.entries.push_back(entry);
            report.solutions.push_back(std::move(solve.solution));
            if (n + 1 == stack.contexts.size()) report.limit_candidate = report.solutions.back();
        }

        // Uniform seminorm bound from J(u_n) <= cap < 0 and the (f2) growth
        // of the potential term: (1/p) t^p - C t^(q+1) <= cap caps t.
        const double q1 = setup.params.q + 1.0;
        const double C_pot =
            2.0 * (setup.params.c_growth / q1) *
            estimate_growth_constant(stack.contexts.back(), setup.weight.omega(), q1,
                                     setup.solver.probe_count, setup.solver.seed + 1);
        report.C_omega = C_pot;
        report.uniform_bound_M =
            largest_root(1.0 / setup.params.p, setup.params.p, C_pot, q1, report.level_cap);

        for (const BallEntry& entry : report.entries) {
            if (entry.level > report.level_cap + slack)
                report.verdicts.levels_admissible = false;
            if (std::pow(entry.seminorm_p_value, 1.0 / setup.params.p) >
                report.uniform_bound_M + slack)
                report.verdicts.uniform_bound = false;
            if (entry.negative_part_certificate > 1e-10)
                report.verdicts.negative_part = false;
            if (!(entry.level < 0.0)) report.verdicts.nontriviality = false;
        }
    }

    report.residual = distributional_residual(report.limit_candidate,
                                              stack.contexts.back(),
                                              setup.residual_probes, setup.solver.seed);
    return report;
}

} // namespace fracpvar
