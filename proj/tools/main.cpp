// Command-line front end: check / solve / exhaust / diagnose / fuzz.
// Exit codes: 0 success, 2 hypothesis violation, 3 solver failure, 4 I/O.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "fracpvar/config.hpp"
#include "fracpvar/diagnostics.hpp"
#include "fracpvar/errors.hpp"
#include "fracpvar/exhaustion.hpp"
#include "fracpvar/io.hpp"
#include "fracpvar/parallel.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace fracpvar;

namespace {

constexpr int kExitHypothesis = 2;
constexpr int kExitSolver = 3;
constexpr int kExitIo = 4;

json config_json(const RunConfig& config) {
    json out = json::object();
    for (const auto& [key, value] : config.echo()) out[key] = value;
    return out;
}

json check_json(const CheckReport& report) {
    json out = json::object();
    out["passed"] = report.passed;
    out["message"] = report.message;
    if (report.name == "f2" || report.name == "W") {
        out["observed_lower"] = report.observed_lower;
        out["observed_upper"] = report.observed_upper;
    }
    if (report.name == "f3") {
        out["min_C_first"] = report.min_C_first;
        out["min_C_second"] = report.min_C_second;
    }
    if (report.has_witness) out["witness"] = report.witness;
    return out;
}

struct CheckOutcome {
    json report;
    bool passed = true;
    std::string first_failure;
};

// Hypothesis screening shared by check/solve/exhaust: regime detection plus
// the (f2)/(f3)/(W) verifiers on the smallest configured ball.
CheckOutcome run_checks(const RunConfig& config) {
    CheckOutcome outcome;
    const Regime regime = config.params.regime();
    outcome.report["regime"] = to_string(regime);

    const auto spec = config.make_nonlinearity();
    const auto weight = config.make_weight();
    const auto grid = Grid::build(config.radii.front(), config.spacing, config.params.dim);

    const CheckReport f2 = verify_f2(*spec, config.params, 400);
    outcome.report["f2"] = check_json(f2);
    if (!f2.passed && outcome.first_failure.empty())
        outcome.first_failure = "(f2) " + f2.message;

    if (regime == Regime::superlinear) {
        const CheckReport f3 = verify_f3(*spec, config.params, 400);
        outcome.report["f3"] = check_json(f3);
        if (!f3.passed && outcome.first_failure.empty())
            outcome.first_failure = "(f3) " + f3.message;
        outcome.passed = outcome.passed && f3.passed;
    }

    const CheckReport w = verify_W(weight, *grid);
    outcome.report["W"] = check_json(w);
    if (!w.passed && outcome.first_failure.empty())
        outcome.first_failure = "(W) " + w.message;

    outcome.passed = outcome.passed && f2.passed && w.passed;
    return outcome;
}

json exhaustion_json(const ExhaustionReport& report) {
    json out = json::object();
    out["regime"] = to_string(report.regime);
    if (report.regime == Regime::superlinear) {
        json geometry = json::object();
        geometry["C_est"] = report.C_est;
        geometry["C_omega"] = report.C_omega;
        geometry["rho"] = report.rho;
        geometry["r"] = report.r;
        geometry["endpoint_scale"] = report.endpoint_scale;
        out["geometry"] = geometry;
    } else {
        json sub = json::object();
        sub["seed_scale"] = report.seed_scale;
        sub["level_cap"] = report.level_cap;
        sub["C_potential"] = report.C_omega;
        out["sublinear"] = sub;
    }
    out["uniform_bound_M"] = report.uniform_bound_M;

    json balls = json::array();
    for (const BallEntry& entry : report.entries) {
        json ball = json::object();
        ball["R"] = entry.radius;
        ball["level"] = entry.level;
        ball["seminorm_p"] = entry.seminorm_p_value;
        ball["neg_part"] = entry.negative_part_certificate;
        ball["T"] = entry.nontriviality;
        ball["lp_norm"] = entry.lp_norm;
        if (report.regime == Regime::superlinear) {
            ball["ps_slack"] = entry.ps_slack;
            ball["sphere_check"] = entry.sphere_check;
        }
        ball["iterations"] = entry.iterations;
        balls.push_back(ball);
    }
    out["balls"] = balls;

    json verdicts = json::object();
    if (report.regime == Regime::superlinear) {
        verdicts["monotone_levels"] = report.verdicts.monotone_levels;
        verdicts["levels_above_r"] = report.verdicts.levels_admissible;
        verdicts["nontriviality"] = report.verdicts.nontriviality;
        verdicts["sphere_sampling"] = report.verdicts.sphere_sampling;
    } else {
        verdicts["levels_below_cap"] = report.verdicts.levels_admissible;
        verdicts["nontriviality"] = report.verdicts.nontriviality;
    }
    verdicts["uniform_bound"] = report.verdicts.uniform_bound;
    verdicts["negative_part"] = report.verdicts.negative_part;
    out["verdicts"] = verdicts;

    json residual = json::object();
    residual["max"] = report.residual.max_residual;
    residual["mean"] = report.residual.mean_residual;
    residual["max_probe_l1"] = report.residual.max_probe_l1;
    residual["probes"] = report.residual.probe_count;
    out["residual"] = residual;
    return out;
}

void write_json(const fs::path& path, const json& value) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << value.dump(2) << '\n';
    if (!out) throw IoError("write failed for " + path.string());
}

TraceSinkFactory file_traces(const fs::path& dir,
                             std::vector<std::shared_ptr<std::ofstream>>& keep_alive) {
    return [&keep_alive, dir](double radius) -> TraceSink {
        const fs::path path = dir / ("trace_R" + format_double(radius) + ".csv");
        auto stream = std::make_shared<std::ofstream>(path);
        if (!*stream) throw IoError("cannot open " + path.string() + " for writing");
        *stream << "iteration,energy,gradient_norm\n";
        keep_alive.push_back(stream);
        return [stream](const TraceRecord& record) {
            *stream << record.iteration << ',' << format_double(record.energy) << ','
                    << format_double(record.gradient_norm) << '\n';
        };
    };
}

void write_run_outputs(const fs::path& dir, const RunConfig& config,
                       const json& checks, const ExhaustionReport& report) {
    json root = json::object();
    root["config"] = config_json(config);
    root["checks"] = checks;
    root.update(exhaustion_json(report));
    write_json(dir / "report.json", root);

    for (std::size_t n = 0; n < report.solutions.size(); ++n) {
        const std::string name = report.solutions.size() == 1
                                     ? std::string("solution.csv")
                                     : "solution_R" + format_double(report.entries[n].radius) +
                                           ".csv";
        write_field_csv(dir / name, report.solutions[n]);
    }

    if (report.entries.size() > 1) {
        std::ostringstream exhaust;
        exhaust << "R,level,seminorm_p,neg_part,T,iterations\n";
        std::ostringstream levels;
        levels << "R,level\n";
        std::ostringstream seminorms;
        seminorms << "R,seminorm_root\n";
        for (const BallEntry& entry : report.entries) {
            exhaust << format_double(entry.radius) << ',' << format_double(entry.level) << ','
                    << format_double(entry.seminorm_p_value) << ','
                    << format_double(entry.negative_part_certificate) << ','
                    << format_double(entry.nontriviality) << ',' << entry.iterations << '\n';
            levels << format_double(entry.radius) << ',' << format_double(entry.level) << '\n';
            seminorms << format_double(entry.radius) << ','
                      << format_double(std::pow(entry.seminorm_p_value,
                                                1.0 / config.params.p))
                      << '\n';
        }
        write_text_file(dir / "exhaustion.csv", exhaust.str());
        write_text_file(dir / "levels_vs_R.csv", levels.str());
        write_text_file(dir / "seminorm_vs_R.csv", seminorms.str());
    }
}

struct CommonFlags {
    std::string config_path;
    std::string out_dir;
    std::int64_t seed = -1;
    int threads = 0;
};

RunConfig load_config(const CommonFlags& flags) {
    RunConfig config = RunConfig::parse_file(flags.config_path);
    if (!flags.out_dir.empty()) config.output_dir = flags.out_dir;
    if (flags.seed >= 0) config.solver.seed = static_cast<std::uint64_t>(flags.seed);
    return config;
}

fs::path prepare_out_dir(const RunConfig& config) {
    const fs::path dir(config.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string());
    return dir;
}

int command_check(const CommonFlags& flags) {
    const RunConfig config = load_config(flags);
    config.validate();
    const CheckOutcome outcome = run_checks(config);

    std::cout << "regime: " << outcome.report["regime"].get<std::string>() << '\n';
    for (const char* name : {"f2", "f3", "W"}) {
        if (!outcome.report.contains(name)) continue;
        const auto& entry = outcome.report[name];
        std::cout << "(" << name << ") " << (entry["passed"].get<bool>() ? "pass" : "FAIL")
                  << ": " << entry["message"].get<std::string>() << '\n';
    }
    if (!flags.out_dir.empty() || !config.output_dir.empty()) {
        const fs::path dir = prepare_out_dir(config);
        json root = json::object();
        root["config"] = config_json(config);
        root["checks"] = outcome.report;
        write_json(dir / "report.json", root);
    }
    if (!outcome.passed) {
        std::cerr << "hypothesis check failed: " << outcome.first_failure << '\n';
        return kExitHypothesis;
    }
    return 0;
}

int run_pipeline(const CommonFlags& flags, bool full_exhaustion) {
    RunConfig config = load_config(flags);
    config.validate();
    if (full_exhaustion && config.radii.size() < 2)
        throw HypothesisError("exhaust: at least two radii are required");

    const CheckOutcome checks = run_checks(config);
    if (!checks.passed) {
        std::cerr << "hypothesis check failed: " << checks.first_failure << '\n';
        return kExitHypothesis;
    }

    if (!full_exhaustion) config.radii.resize(1); // solve: the first ball only

    const fs::path dir = prepare_out_dir(config);
    std::vector<std::shared_ptr<std::ofstream>> trace_streams;
    ExhaustionSetup setup = config.make_setup();
    const ExhaustionReport report =
        run_exhaustion(setup, file_traces(dir, trace_streams));
    trace_streams.clear();

    write_run_outputs(dir, config, checks.report, report);

    std::cout << (full_exhaustion ? "exhaustion" : "solve") << " finished: "
              << report.entries.size() << " ball(s), ";
    if (report.regime == Regime::superlinear)
        std::cout << "levels from " << format_double(report.entries.front().level) << " to "
                  << format_double(report.entries.back().level) << ", r = "
                  << format_double(report.r);
    else
        std::cout << "levels below cap " << format_double(report.level_cap);
    std::cout << "; outputs in " << dir.string() << '\n';
    return 0;
}

int command_diagnose(const CommonFlags& flags, const std::string& solution_path) {
    const RunConfig config = load_config(flags);
    config.validate();

    // Locate the configured grid the file matches (solve writes the first
    // ball; exhaust writes one file per ball).
    Field solution;
    bool matched = false;
    std::string mismatch;
    for (double radius : config.radii) {
        const auto grid = Grid::build(radius, config.spacing, config.params.dim);
        try {
            solution = read_field_csv(solution_path, grid);
            matched = true;
            break;
        } catch (const IoError& err) {
            mismatch = err.what();
        }
    }
    if (!matched)
        throw IoError("diagnose: solution file matches none of the configured grids (" +
                      mismatch + ")");

    const auto spec = config.make_nonlinearity();
    const auto weight = config.make_weight();
    auto kernel = std::make_shared<KernelOperator>(
        KernelOperator::build(solution.grid, config.params));
    const EnergyContext ctx = EnergyContext::make(kernel, weight, spec);

    json diagnostics = json::object();
    diagnostics["pohozaev_residual"] =
        pohozaev_residual(solution, weight, *spec, config.params);

    if (config.nonlinearity_kind == "power") {
        const SignTestResult sign =
            pohozaev_sign_test(weight, config.params, *solution.grid, spec->kind());
        json sign_json = json::object();
        sign_json["verdict"] = to_string(sign.verdict);
        sign_json["identically_zero"] = sign.identically_zero;
        sign_json["min"] = sign.min_value;
        sign_json["max"] = sign.max_value;
        diagnostics["pohozaev_sign_test"] = sign_json;
    } else {
        diagnostics["pohozaev_sign_test"] = "skipped: non-power nonlinearity";
    }

    diagnostics["negative_part_seminorm"] = negative_part_seminorm(*kernel, solution);

    if (static_cast<double>(config.params.dim) > config.params.sp() &&
        solution.max_abs() > 0.0) {
        diagnostics["sobolev_ratio"] = sobolev_ratio(solution, *kernel, config.params);
    } else {
        diagnostics["sobolev_ratio"] =
            solution.max_abs() == 0.0 ? "skipped: zero field" : "skipped: N <= s*p";
    }

    const long violations =
        fuzz_negative_part_inequality(config.params.p, 100000, config.solver.seed);
    diagnostics["fuzz_violations"] = violations;

    const ResidualStats residual =
        distributional_residual(solution, ctx, config.residual_probes, config.solver.seed);
    json residual_json = json::object();
    residual_json["max"] = residual.max_residual;
    residual_json["mean"] = residual.mean_residual;
    residual_json["max_probe_l1"] = residual.max_probe_l1;
    residual_json["probes"] = residual.probe_count;
    diagnostics["weak_form_residual"] = residual_json;

    const fs::path dir = prepare_out_dir(config);
    const fs::path report_path = dir / "report.json";
    json root = json::object();
    if (fs::exists(report_path)) {
        std::ifstream in(report_path);
        try {
            root = json::parse(in);
        } catch (const json::parse_error&) {
            throw IoError("diagnose: existing report.json is not valid JSON");
        }
    } else {
        root["config"] = config_json(config);
    }
    root["diagnostics"] = diagnostics;
    write_json(report_path, root);

    std::cout << "diagnostics appended to " << report_path.string() << '\n';
    return 0;
}

int command_fuzz(double p_single, const std::string& p_list, long trials,
                 std::uint64_t seed) {
    std::vector<double> exponents;
    if (!p_list.empty()) {
        std::stringstream stream(p_list);
        std::string token;
        while (std::getline(stream, token, ','))
            if (!token.empty()) exponents.push_back(std::stod(token));
    } else if (p_single > 0.0) {
        exponents.push_back(p_single);
    } else {
        exponents = {1.5, 2.0, 3.0, 4.7};
    }

    long total = 0;
    for (double p : exponents) {
        const long violations = fuzz_negative_part_inequality(p, trials, seed);
        total += violations;
        std::cout << "p = " << format_double(p) << ": " << violations << " violation(s) in "
                  << trials << " trials\n";
    }
    return total == 0 ? 0 : kExitSolver;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Desk-scale solver for the weighted fractional p-Laplacian problem"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string solution_path;
    double fuzz_p = 0.0;
    std::string fuzz_p_list;
    long fuzz_trials = 100000;
    std::int64_t fuzz_seed = 42;

    const auto add_common = [&](CLI::App* cmd, bool needs_config) {
        if (needs_config)
            cmd->add_option("--config", flags.config_path, "run configuration file")
                ->required();
        cmd->add_option("--out", flags.out_dir, "output directory (overrides output.dir)");
        cmd->add_option("--seed", flags.seed, "seed override");
        cmd->add_option("--threads", flags.threads, "worker thread count")
            ->envname("FRACPVAR_THREADS");
    };

    auto* check = app.add_subcommand("check", "verify the hypotheses and exit");
    add_common(check, true);
    auto* solve = app.add_subcommand("solve", "solve on the first configured ball");
    add_common(solve, true);
    auto* exhaust = app.add_subcommand("exhaust", "solve across the exhausting balls");
    add_common(exhaust, true);
    auto* diagnose = app.add_subcommand("diagnose", "run diagnostics on a solution file");
    add_common(diagnose, true);
    diagnose->add_option("--solution", solution_path, "solution CSV to diagnose")->required();
    auto* fuzz = app.add_subcommand("fuzz", "fuzz the negative-part inequality");
    fuzz->add_option("--p", fuzz_p, "single exponent p > 1");
    fuzz->add_option("--p-list", fuzz_p_list, "comma list of exponents");
    fuzz->add_option("--trials", fuzz_trials, "samples per exponent");
    fuzz->add_option("--seed", fuzz_seed, "fuzzer seed");
    fuzz->add_option("--threads", flags.threads, "worker thread count")
        ->envname("FRACPVAR_THREADS");

    CLI11_PARSE(app, argc, argv);
    if (flags.threads > 0) set_threads(flags.threads);

    try {
        if (check->parsed()) return command_check(flags);
        if (solve->parsed()) return run_pipeline(flags, false);
        if (exhaust->parsed()) return run_pipeline(flags, true);
        if (diagnose->parsed()) return command_diagnose(flags, solution_path);
        if (fuzz->parsed())
            return command_fuzz(fuzz_p, fuzz_p_list, fuzz_trials,
                                static_cast<std::uint64_t>(fuzz_seed));
    } catch (const HypothesisError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitHypothesis;
    } catch (const SolverError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitSolver;
    } catch (const IoError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitHypothesis;
    }
    return 0;
}
