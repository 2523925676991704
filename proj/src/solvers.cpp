#include "fracpvar/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>
#include <stdexcept>

#include "fracpvar/errors.hpp"
#include "fracpvar/rng.hpp"

namespace fracpvar {
namespace {

constexpr double kArmijoSlope = 1e-4;

double max_norm(const Field& g) { return g.max_abs(); }

bool bitwise_equal(const Field& a, const Field& b) {
    return a.size() == b.size() &&
           std::memcmp(a.values.data(), b.values.data(), a.size() * sizeof(double)) == 0;
}

} // namespace

Field bump_field(std::shared_ptr<const Grid> grid, const Shape& omega) {
    const auto center = omega.inscribed_center();
    const double radius = omega.inscribed_radius(grid->dim());
    Field zeta(grid);
    for (std::size_t i = 0; i < grid->size(); ++i) {
        const auto& x = grid->node(i);
        const double dx = x[0] - center[0];
        const double dy = grid->dim() == 2 ? x[1] - center[1] : 0.0;
        const double arg = 1.0 - (dx * dx + dy * dy) / (radius * radius);
        zeta.values[i] = arg > 0.0 ? arg * arg : 0.0;
    }
    return zeta;
}

SeedScale negative_energy_scale(const EnergyContext& ctx, const Field& zeta) {
    if (zeta.max_abs() == 0.0)
        throw SolverError("seed scan: the bump field vanishes on this grid");
    SeedScale best{0.0, 0.0};
    for (int k = 0; k <= 40; ++k) {
        const double t = std::ldexp(1.0, -k);
        const double value = energy(ctx, scaled(zeta, t));
        if (value < best.energy) best = {t, value};
    }
    if (!(best.energy < 0.0))
        throw SolverError(
            "no negative-energy seed among t = 2^-k, k = 0..40; "
            "check the weight and nonlinearity configuration");
    return best;
}

SolveReport minimize_coercive(const EnergyContext& ctx, const Field& init,
                              const Field& zeta, const SolverOptions& options,
                              const TraceSink& trace) {
    if (ctx.params.regime() != Regime::sublinear)
        throw HypothesisError("minimize_coercive: requires the sublinear regime (q + 1 < p)");
    if (!(options.tol > 0.0))
        throw std::invalid_argument("minimize_coercive: tol must be positive");

    Field u = init;
    double value = energy(ctx, u);
    if (!(value < 0.0)) {
        // Covers the trivial critical point u = 0 and any nonnegative-energy
        // start: descend from the seeded bump instead, which guarantees a
        // negative final energy.
        const SeedScale seed = negative_energy_scale(ctx, zeta);
        u = scaled(zeta, seed.t);
        value = seed.energy;
    }

    Field grad = gradient(ctx, u);
    double gnorm = max_norm(grad);
    Field prev_u = u;
    Field prev_grad = grad;
    bool have_prev = false;
    double step = 1.0 / (1.0 + gnorm);

    std::int64_t iteration = 0;
    while (true) {
        ++iteration;
        if (trace) trace({iteration, value, gnorm});
        if (gnorm <= options.tol) break;
        if (iteration > options.max_iterations)
            throw SolverError("minimize_coercive: iteration cap reached before convergence");

        if (have_prev) {
            // Barzilai-Borwein seed for the Armijo search.
            double ss = 0.0;
            double sy = 0.0;
            for (std::size_t i = 0; i < u.size(); ++i) {
                const double s = u.values[i] - prev_u.values[i];
                const double y = grad.values[i] - prev_grad.values[i];
                ss += s * s;
                sy += s * y;
            }
            if (sy > 0.0 && ss > 0.0) step = ss / sy;
        }
        step = std::clamp(step, 1e-14, 1e14);

        const double slope = dot(grad, grad);
        double alpha = step;
        Field candidate = u;
        double candidate_value = 0.0;
        int halvings = 0;
        while (true) {
            candidate = u;
            axpy(candidate, -alpha, grad);
            candidate_value = energy(ctx, candidate);
            if (candidate_value <= value - kArmijoSlope * alpha * slope) break;
            alpha *= 0.5;
            if (++halvings > 60)
                throw SolverError("minimize_coercive: line search failed to decrease the energy");
        }

        prev_u = std::move(u);
        prev_grad = std::move(grad);
        have_prev = true;
        u = std::move(candidate);
        value = candidate_value;
        grad = gradient(ctx, u);
        gnorm = max_norm(grad);
        step = alpha * 2.0;
    }

    if (!(value < 0.0))
        throw SolverError("minimize_coercive: converged to a nonnegative energy level");

    SolveReport report;
    report.solution = u;
    report.energy_value = value;
    report.level = value;
    report.gradient_norm = gnorm;
    report.seminorm_p_value = seminorm_p(*ctx.kernel, u);
    report.negative_part_certificate = negative_part_seminorm(*ctx.kernel, u);
    report.iterations = iteration;
    report.regime = Regime::sublinear;
    return report;
}

MountainPassGeometry mp_geometry(double C_est, const HypothesisParams& params) {
    if (params.regime() != Regime::superlinear)
        throw HypothesisError("mp_geometry: requires the superlinear regime (q > p - 1)");
    if (!(C_est > 0.0))
        throw std::invalid_argument("mp_geometry: C_est must be positive");
    const double exponent = params.q - params.p + 1.0;
    const double rho = 0.9 * std::pow(1.0 / (2.0 * params.p * C_est), 1.0 / exponent);
    const double r = std::pow(rho, params.p) / (2.0 * params.p);
    return {rho, r};
}

double estimate_growth_constant(const EnergyContext& ctx, const Shape& omega,
                                double exponent, int probe_count,
                                std::uint64_t seed) {
    if (probe_count < 1)
        throw std::invalid_argument("estimate_growth_constant: probe_count must be >= 1");
    const Grid& g = ctx.grid();
    const double p = ctx.params.p;

    const auto ratio = [&](const Field& u) -> double {
        const double sem = seminorm_p(*ctx.kernel, u);
        if (!(sem > 0.0)) return 0.0;
        double mass = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            const double plus = ctx.phi[i] > 0.0 ? ctx.phi[i] : 0.0;
            mass += plus * pow_abs(u.values[i], exponent) * g.volume(i);
        }
        return mass / std::pow(sem, exponent / p);
    };

    double best = 0.0;

    const auto bump_probe = [&](const std::array<double, 2>& center, double radius,
                                double power) {
        Field bump(ctx.grid_ptr());
        for (std::size_t i = 0; i < g.size(); ++i) {
            const auto& x = g.node(i);
            const double dx = x[0] - center[0];
            const double dy = g.dim() == 2 ? x[1] - center[1] : 0.0;
            const double arg = 1.0 - (dx * dx + dy * dy) / (radius * radius);
            bump.values[i] = arg > 0.0 ? std::pow(arg, power) : 0.0;
        }
        return bump;
    };

    // Bump family: the supremum is realized by smooth profiles over the
    // positive-weight region, and with wide tails when s*p >= N, so widths
    // span the bump support up to the whole ball.
    const auto center = omega.inscribed_center();
    const double narrow = omega.inscribed_radius(g.dim());
    const double wide = g.radius();
    for (double width : {0.25 * narrow, 0.5 * narrow, narrow, 2.0 * narrow,
                         0.25 * wide, 0.5 * wide, 0.75 * wide, wide}) {
        if (!(width > 0.0) || width > wide) continue;
        for (double power : {0.5, 1.0, 2.0})
            best = std::max(best, ratio(bump_probe(center, width, power)));
    }

    Xoshiro256ss rng(seed);
    for (int probe = 0; probe < probe_count; ++probe) {
        Field u(ctx.grid_ptr());
        switch (probe % 4) {
        case 0: { // random smooth profile, random width and exponent
            const double width = rng.uniform(0.25 * narrow, wide);
            const double power = rng.uniform(0.5, 2.5);
            std::array<double, 2> jitter = center;
            jitter[0] += rng.uniform(-0.5, 0.5) * narrow;
            if (g.dim() == 2) jitter[1] += rng.uniform(-0.5, 0.5) * narrow;
            u = bump_probe(jitter, width, power);
            break;
        }
        case 1: { // bump plus mild noise
            const double width = rng.uniform(0.5 * narrow, wide);
            u = bump_probe(center, width, 1.0 + rng.uniform(0.0, 1.0));
            for (std::size_t i = 0; i < u.size(); ++i)
                u.values[i] *= 1.0 + 0.2 * rng.uniform(-1.0, 1.0);
            break;
        }
        case 2: // noise on the positive-weight region
            for (std::size_t i = 0; i < u.size(); ++i)
                u.values[i] = ctx.phi[i] > 0.0 ? rng.uniform(-1.0, 1.0) : 0.0;
            break;
        default: // global noise
            for (std::size_t i = 0; i < u.size(); ++i)
                u.values[i] = rng.uniform(-1.0, 1.0);
            break;
        }
        best = std::max(best, ratio(u));
    }
    return best;
}

double find_endpoint_scale(const EnergyContext& ctx, const Field& zeta, double rho) {
    if (zeta.max_abs() == 0.0)
        throw SolverError("find_endpoint: zeta vanishes on this grid");
    if (!(rho > 0.0))
        throw std::invalid_argument("find_endpoint: rho must be positive");
    double t = 1.0;
    for (int attempt = 0; attempt <= 60; ++attempt) {
        const Field candidate = scaled(zeta, t);
        const double value = energy(ctx, candidate);
        const double sem_root = std::pow(seminorm_p(*ctx.kernel, candidate), 1.0 / ctx.params.p);
        if (value <= 0.0 && sem_root > rho) return t;
        t *= 2.0;
    }
    throw SolverError(
        "find_endpoint: no scale with nonpositive energy within 60 doublings; "
        "the weighted potential never dominates (check (W))");
}

Field find_endpoint(const EnergyContext& ctx, const Field& zeta, double rho) {
    return scaled(zeta, find_endpoint_scale(ctx, zeta, rho));
}

namespace {

// d/dt J(t v) = <grad J(t v), v>.
double radial_derivative(const EnergyContext& ctx, const Field& v, double t) {
    return dot(gradient(ctx, scaled(v, t)), v);
}

// Peak of t -> J(t v) along the ray, by bisection on the radial derivative.
// The bracket grows/shrinks geometrically from t_init, which tracks the same
// peak branch across minimax iterations.
double ray_peak(const EnergyContext& ctx, const Field& v, double t_init, double rel_tol) {
    double t = t_init > 0.0 ? t_init : 1.0;
    double lo = 0.0;
    double hi = 0.0;
    if (radial_derivative(ctx, v, t) > 0.0) {
        lo = t;
        hi = 2.0 * t;
        int doublings = 0;
        while (radial_derivative(ctx, v, hi) > 0.0) {
            lo = hi;
            hi *= 2.0;
            if (++doublings > 200)
                throw SolverError("ray peak: energy keeps ascending along the ray");
        }
    } else {
        hi = t;
        lo = 0.5 * t;
        int halvings = 0;
        while (radial_derivative(ctx, v, lo) <= 0.0) {
            hi = lo;
            lo *= 0.5;
            if (++halvings > 200)
                throw SolverError("ray peak: no ascent near the origin along the ray");
        }
    }
    while (hi - lo > rel_tol * hi) {
        const double mid = 0.5 * (lo + hi);
        if (radial_derivative(ctx, v, mid) > 0.0) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

struct RefineResult {
    Field solution;
    double value;
    double gradient_norm;
    std::int64_t iterations;
};

// Ray minimax: peak the energy along the direction, then move the direction
// against the full gradient at the peak. The radial derivative vanishes at
// the peak, so the step acts on the tangential component. Energy comparisons
// lose meaning once the per-step decrease reaches the rounding floor of J,
// so this phase only drives the gradient to kPolishThreshold; the caller
// polishes the rest on the squared gradient norm, whose scale shrinks with
// the gradient itself.
constexpr double kPolishThreshold = 1e-4;

RefineResult refine_minimax(const EnergyContext& ctx, const Field& start,
                            const SolverOptions& options, const TraceSink& trace,
                            std::int64_t iteration_offset, std::int64_t* used) {
    const double p = ctx.params.p;
    double sem = seminorm_p(*ctx.kernel, start);
    if (!(sem > 0.0)) throw SolverError("mountain pass refinement: zero starting field");

    Field direction = scaled(start, 1.0 / std::pow(sem, 1.0 / p));
    double t = ray_peak(ctx, direction, std::pow(sem, 1.0 / p), 1e-13);
    Field u = scaled(direction, t);
    double value = energy(ctx, u);
    Field grad = gradient(ctx, u);
    double gnorm = max_norm(grad);
    double beta = 1.0 / (1.0 + gnorm);
    const double target = std::max(options.tol, kPolishThreshold);

    std::int64_t iteration = 0;
    while (gnorm > target) {
        ++iteration;
        if (iteration > options.max_iterations)
            throw SolverError("mountain pass refinement: iteration cap reached");

        const double slope = dot(grad, grad);
        const double noise_floor = 1e-14 * (1.0 + std::abs(value));
        int halvings = 0;
        while (true) {
            Field trial_direction = u;
            axpy(trial_direction, -beta, grad);
            const double trial_sem = seminorm_p(*ctx.kernel, trial_direction);
            if (trial_sem > 0.0) {
                trial_direction = scaled(trial_direction, 1.0 / std::pow(trial_sem, 1.0 / p));
                const double trial_t = ray_peak(ctx, trial_direction, t, 1e-8);
                const Field trial_u = scaled(trial_direction, trial_t);
                const double trial_value = energy(ctx, trial_u);
                if (trial_value <= value - kArmijoSlope * beta * slope + noise_floor) {
                    direction = std::move(trial_direction);
                    t = trial_t;
                    u = trial_u;
                    value = trial_value;
                    break;
                }
            }
            beta *= 0.5;
            if (++halvings > 60)
                throw SolverError("mountain pass refinement: direction search stalled");
        }

        t = ray_peak(ctx, direction, t, 1e-13);
        u = scaled(direction, t);
        value = energy(ctx, u);
        grad = gradient(ctx, u);
        gnorm = max_norm(grad);
        beta *= 2.0;
        if (trace) trace({iteration_offset + iteration, value, gnorm});
    }
    if (used != nullptr) *used = iteration;
    return {std::move(u), value, gnorm, iteration};
}

// Final polish: descend W(u) = 0.5 |grad J(u)|^2 with Barzilai-Borwein
// seeded Armijo steps; the W-gradient H g comes from a central difference of
// the gradient along g. Converges to the nearby critical point and certifies
// the max-norm tolerance on the directly evaluated gradient.
RefineResult polish_gradient_norm(const EnergyContext& ctx, Field u,
                                  const SolverOptions& options, const TraceSink& trace,
                                  std::int64_t iteration_offset) {
    Field grad = gradient(ctx, u);
    double gnorm = max_norm(grad);

    const auto w_gradient = [&](const Field& point, const Field& g_at_point) {
        const double g2 = std::sqrt(dot(g_at_point, g_at_point));
        Field direction = scaled(g_at_point, 1.0 / g2);
        const double eps = 1e-6 * (1.0 + point.max_abs());
        Field forward = point;
        axpy(forward, eps, direction);
        Field backward = point;
        axpy(backward, -eps, direction);
        Field hv = gradient(ctx, forward);
        const Field gb = gradient(ctx, backward);
        for (std::size_t i = 0; i < hv.size(); ++i)
            hv.values[i] = (hv.values[i] - gb.values[i]) / (2.0 * eps) * g2;
        return hv; // H g
    };

    double w_value = 0.5 * dot(grad, grad);
    Field w_grad = w_gradient(u, grad);
    Field prev_u = u;
    Field prev_w_grad = w_grad;
    bool have_prev = false;
    double step = 1.0;

    std::int64_t iteration = 0;
    while (gnorm > options.tol) {
        ++iteration;
        if (iteration > options.max_iterations)
            throw SolverError("mountain pass polish: iteration cap reached");

        if (have_prev) {
            double ss = 0.0;
            double sy = 0.0;
            for (std::size_t i = 0; i < u.size(); ++i) {
                const double s = u.values[i] - prev_u.values[i];
                const double y = w_grad.values[i] - prev_w_grad.values[i];
                ss += s * s;
                sy += s * y;
            }
            if (sy > 0.0 && ss > 0.0) step = ss / sy;
        }
        step = std::clamp(step, 1e-16, 1e12);

        const double slope = dot(w_grad, w_grad);
        if (slope == 0.0)
            throw SolverError("mountain pass polish: stationary squared-gradient norm "
                              "away from a critical point");
        double alpha = step;
        Field candidate = u;
        Field candidate_grad = grad;
        double candidate_w = w_value;
        int halvings = 0;
        while (true) {
            candidate = u;
            axpy(candidate, -alpha, w_grad);
            candidate_grad = gradient(ctx, candidate);
            candidate_w = 0.5 * dot(candidate_grad, candidate_grad);
            if (candidate_w <= w_value - kArmijoSlope * alpha * slope) break;
            alpha *= 0.5;
            if (++halvings > 60)
                throw SolverError("mountain pass polish: line search stalled");
        }

        prev_u = std::move(u);
        prev_w_grad = std::move(w_grad);
        have_prev = true;
        u = std::move(candidate);
        grad = std::move(candidate_grad);
        w_value = candidate_w;
        gnorm = max_norm(grad);
        w_grad = w_gradient(u, grad);
        step = alpha * 2.0;
        if (trace) trace({iteration_offset + iteration, energy(ctx, u), gnorm});
    }

    RefineResult result;
    result.value = energy(ctx, u);
    result.solution = std::move(u);
    result.gradient_norm = gnorm;
    result.iterations = iteration;
    return result;
}

struct PathNode {
    Field u;
    double value = 0.0;
    double sem = 0.0;
    double step = 1.0;
};

} // namespace

SolveReport mountain_pass_solve(const EnergyContext& ctx, const Field& psi,
                                const MountainPassGeometry& geometry,
                                const SolverOptions& options, const TraceSink& trace,
                                const MountainPassPath* warm_start,
                                MountainPassPath* final_path) {
    if (ctx.params.regime() != Regime::superlinear)
        throw HypothesisError("mountain_pass_solve: requires the superlinear regime");
    if (options.path_nodes < 2)
        throw std::invalid_argument(
            "mountain_pass_solve: the path needs at least one interior node");
    const double psi_energy = energy(ctx, psi);
    if (!(psi_energy <= 0.0))
        throw std::invalid_argument("mountain_pass_solve: psi must have nonpositive energy");

    // Assemble the path; endpoints are pinned for the whole run.
    std::vector<PathNode> path;
    if (warm_start != nullptr) {
        if (warm_start->nodes.size() < 3)
            throw std::invalid_argument("mountain_pass_solve: warm-start path too short");
        if (!bitwise_equal(warm_start->nodes.back(), psi))
            throw std::invalid_argument(
                "mountain_pass_solve: warm-start path must end at psi");
        for (const Field& node : warm_start->nodes) path.push_back({node});
    } else {
        const int segments = options.path_nodes;
        for (int k = 0; k <= segments; ++k) {
            const double share = static_cast<double>(k) / static_cast<double>(segments);
            path.push_back({scaled(psi, share)});
        }
    }
    const Field pinned_zero = path.front().u;
    const Field pinned_psi = path.back().u;
    if (pinned_zero.max_abs() != 0.0)
        throw std::invalid_argument("mountain_pass_solve: path must start at 0");

    for (PathNode& node : path) {
        node.value = energy(ctx, node.u);
        node.sem = seminorm_p(*ctx.kernel, node.u);
        node.step = 1.0;
    }

    const auto argmax_node = [&path]() {
        std::size_t best = 0;
        for (std::size_t k = 1; k < path.size(); ++k)
            if (path[k].value > path[best].value) best = k;
        return best;
    };

    const double initial_max = path[argmax_node()].value;
    double previous_max = initial_max;
    int stalled_sweeps = 0;
    std::int64_t sweep = 0;
    std::size_t peak = argmax_node();
    double peak_gnorm = max_norm(gradient(ctx, path[peak].u));

    const auto euclidean_gap = [](const Field& a, const Field& b) {
        double acc = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double d = a.values[i] - b.values[i];
            acc += d * d;
        }
        return std::sqrt(acc);
    };

    // Deformation sweeps stop once the level stalls, the gradient at the
    // maximizer is small, or the sampled maximum nears the mountain-pass
    // floor (the coarse path stops resolving the ridge there); the minimax
    // refinement finishes the job either way.
    const double switch_tol = std::max(options.tol * 100.0, 1e-5);
    const std::int64_t soft_sweep_cap = std::min<std::int64_t>(options.max_sweeps, 200);

    while (peak_gnorm > switch_tol && sweep < soft_sweep_cap &&
           previous_max > 1.25 * geometry.r) {
        ++sweep;
        for (std::size_t k = 1; k + 1 < path.size(); ++k) {
            PathNode& node = path[k];
            Field grad = gradient(ctx, node.u);
            const double gnorm2 = std::sqrt(dot(grad, grad));
            if (max_norm(grad) <= 0.1 * options.tol || gnorm2 == 0.0) continue;
            // Trust cap: one step may not exceed half the gap to a neighbor,
            // so the discrete path keeps resolving the ridge it crosses.
            const double gap = std::max(euclidean_gap(path[k - 1].u, node.u),
                                        euclidean_gap(node.u, path[k + 1].u));
            const double cap = 0.5 * gap / gnorm2;
            const double slope = dot(grad, grad);
            double alpha = std::clamp(std::min(node.step, cap), 1e-16, 1e14);
            for (int halvings = 0; halvings <= 60; ++halvings) {
                Field candidate = node.u;
                axpy(candidate, -alpha, grad);
                const double candidate_value = energy(ctx, candidate);
                if (candidate_value <= node.value - kArmijoSlope * alpha * slope) {
                    node.u = std::move(candidate);
                    node.value = candidate_value;
                    node.sem = seminorm_p(*ctx.kernel, node.u);
                    node.step = alpha * 2.0;
                    break;
                }
                alpha *= 0.5;
            }
        }

        // Monotone parametrization: interior nodes ordered by seminorm.
        std::stable_sort(path.begin() + 1, path.end() - 1,
                         [](const PathNode& a, const PathNode& b) { return a.sem < b.sem; });

        peak = argmax_node();
        const double path_max = path[peak].value;
        if (path_max > previous_max)
            throw std::logic_error("mountain_pass_solve: a deformation raised the path maximum");
        peak_gnorm = max_norm(gradient(ctx, path[peak].u));
        if (trace) trace({sweep, path_max, peak_gnorm});

        if (previous_max - path_max <= 1e-13 * (1.0 + std::abs(path_max))) {
            if (++stalled_sweeps >= 5) {
                previous_max = path_max;
                break;
            }
        } else {
            stalled_sweeps = 0;
        }
        previous_max = path_max;
    }

    std::int64_t minimax_iterations = 0;
    RefineResult refined =
        refine_minimax(ctx, path[peak].u, options, trace, sweep, &minimax_iterations);
    if (refined.gradient_norm > options.tol)
        refined = polish_gradient_norm(ctx, std::move(refined.solution), options, trace,
                                       sweep + minimax_iterations);
    refined.iterations += minimax_iterations;

    if (!bitwise_equal(path.front().u, pinned_zero) ||
        !bitwise_equal(path.back().u, pinned_psi))
        throw std::logic_error("mountain_pass_solve: a pinned endpoint moved");
    if (refined.value < geometry.r - options.chain_slack) {
        std::ostringstream what;
        what << "mountain_pass_solve: converged level " << refined.value
             << " collapsed below r = " << geometry.r << "; rho/C_est were misestimated";
        throw SolverError(what.str());
    }
    if (refined.value > initial_max + options.chain_slack)
        throw SolverError("mountain_pass_solve: converged level exceeds the initial path maximum");

    if (final_path != nullptr) {
        final_path->nodes.clear();
        for (PathNode& node : path) final_path->nodes.push_back(std::move(node.u));
    }

    SolveReport report;
    report.solution = refined.solution;
    report.energy_value = refined.value;
    report.level = refined.value;
    report.gradient_norm = refined.gradient_norm;
    report.seminorm_p_value = seminorm_p(*ctx.kernel, report.solution);
    report.negative_part_certificate = negative_part_seminorm(*ctx.kernel, report.solution);
    report.iterations = sweep + refined.iterations;
    report.regime = Regime::superlinear;
    return report;
}

double ps_boundedness_certificate(const EnergyContext& ctx, const Field& u,
                                  double c_level, double C_n) {
    if (ctx.params.regime() != Regime::superlinear)
        throw HypothesisError("ps_boundedness_certificate: requires the superlinear regime");
    const double p = ctx.params.p;
    const double q = ctx.params.q;
    const double m = ctx.params.subcritical_m();
    const double sem = seminorm_p(*ctx.kernel, u);
    return (1.0 / p - 1.0 / (q + 1.0)) * sem - C_n * std::pow(sem, m / p) - c_level;
}

} // namespace fracpvar
