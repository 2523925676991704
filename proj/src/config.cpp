#include "fracpvar/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fracpvar/errors.hpp"
#include "fracpvar/io.hpp"

namespace fracpvar {
namespace {

std::string trim(std::string_view text) {
    std::size_t begin = 0;
    std::size_t end = text.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
    return std::string(text.substr(begin, end - begin));
}

double to_double(const std::string& value, const std::string& key) {
    try {
        std::size_t used = 0;
        const double parsed = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        throw IoError("config: key '" + key + "' has a malformed number '" + value + "'");
    }
}

std::int64_t to_int(const std::string& value, const std::string& key) {
    std::int64_t parsed = 0;
    const auto result = std::from_chars(value.data(), value.data() + value.size(), parsed);
    if (result.ec != std::errc{} || result.ptr != value.data() + value.size())
        throw IoError("config: key '" + key + "' has a malformed integer '" + value + "'");
    return parsed;
}

bool to_bool(const std::string& value, const std::string& key) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw IoError("config: key '" + key + "' must be true or false");
}

std::vector<double> to_double_list(const std::string& value, const std::string& key) {
    std::vector<double> out;
    std::stringstream stream(value);
    std::string token;
    while (std::getline(stream, token, ',')) {
        const std::string item = trim(token);
        if (!item.empty()) out.push_back(to_double(item, key));
    }
    return out;
}

std::string format_list(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ',';
        out += format_double(values[i]);
    }
    return out;
}

void apply_shape_key(ShapeConfig& shape, const std::string& field,
                     const std::string& value, const std::string& key) {
    if (field == "kind") {
        if (value != "ball" && value != "box")
            throw IoError("config: key '" + key + "' must be ball or box");
        shape.kind = value;
    } else if (field == "center") {
        const auto list = to_double_list(value, key);
        if (list.empty() || list.size() > 2)
            throw IoError("config: key '" + key + "' needs 1 or 2 coordinates");
        shape.center = {list[0], list.size() == 2 ? list[1] : 0.0};
    } else if (field == "radius") {
        shape.radius = to_double(value, key);
    } else if (field == "lo") {
        const auto list = to_double_list(value, key);
        if (list.empty() || list.size() > 2)
            throw IoError("config: key '" + key + "' needs 1 or 2 coordinates");
        shape.lo = {list[0], list.size() == 2 ? list[1] : 0.0};
    } else if (field == "hi") {
        const auto list = to_double_list(value, key);
        if (list.empty() || list.size() > 2)
            throw IoError("config: key '" + key + "' needs 1 or 2 coordinates");
        shape.hi = {list[0], list.size() == 2 ? list[1] : 0.0};
    } else {
        throw IoError("config: unknown key '" + key + "'");
    }
}

} // namespace

Shape ShapeConfig::to_shape() const {
    if (kind == "ball") return Shape::ball(center, radius);
    return Shape::box(lo, hi);
}

RunConfig RunConfig::parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str(), path.string());
}

RunConfig RunConfig::parse(std::string_view text, const std::string& source) {
    RunConfig config;
    config.Omega.radius = 1.0;

    std::size_t line_number = 0;
    std::size_t cursor = 0;
    while (cursor <= text.size()) {
        const std::size_t newline = text.find('\n', cursor);
        std::string_view raw = text.substr(
            cursor, newline == std::string_view::npos ? text.size() - cursor
                                                      : newline - cursor);
        cursor = newline == std::string_view::npos ? text.size() + 1 : newline + 1;
        ++line_number;

        const std::size_t hash = raw.find('#');
        if (hash != std::string_view::npos) raw = raw.substr(0, hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;

        const std::size_t equals = line.find('=');
        if (equals == std::string::npos) {
            std::ostringstream what;
            what << "config " << source << ":" << line_number << ": expected 'key = value'";
            throw IoError(what.str());
        }
        const std::string key = trim(std::string_view(line).substr(0, equals));
        const std::string value = trim(std::string_view(line).substr(equals + 1));

        if (key == "params.p") config.params.p = to_double(value, key);
        else if (key == "params.s") config.params.s = to_double(value, key);
        else if (key == "params.dim") config.params.dim = static_cast<int>(to_int(value, key));
        else if (key == "params.q") config.params.q = to_double(value, key);
        else if (key == "params.m") config.params.m = to_double(value, key);
        else if (key == "params.mu") config.params.mu = to_double(value, key);
        else if (key == "params.c_growth") config.params.c_growth = to_double(value, key);
        else if (key == "params.C_f3") config.params.C_f3 = to_double(value, key);
        else if (key == "grid.radii") config.radii = to_double_list(value, key);
        else if (key == "grid.spacing") config.spacing = to_double(value, key);
        else if (key == "weight.kind") config.weight_kind = value;
        else if (key == "weight.beta") config.beta = to_double(value, key);
        else if (key == "weight.value") config.weight_value = to_double(value, key);
        else if (key.rfind("weight.omega.", 0) == 0)
            apply_shape_key(config.omega, key.substr(13), value, key);
        else if (key.rfind("weight.Omega.", 0) == 0)
            apply_shape_key(config.Omega, key.substr(13), value, key);
        else if (key == "nonlinearity.kind") config.nonlinearity_kind = value;
        else if (key == "nonlinearity.table") config.table_path = value;
        else if (key == "solver.tol") config.solver.tol = to_double(value, key);
        else if (key == "solver.max_iterations")
            config.solver.max_iterations = to_int(value, key);
        else if (key == "solver.max_sweeps") config.solver.max_sweeps = to_int(value, key);
        else if (key == "solver.path_nodes")
            config.solver.path_nodes = static_cast<int>(to_int(value, key));
        else if (key == "solver.seed")
            config.solver.seed = static_cast<std::uint64_t>(to_int(value, key));
        else if (key == "solver.probe_count")
            config.solver.probe_count = static_cast<int>(to_int(value, key));
        else if (key == "solver.chain_slack") config.solver.chain_slack = to_double(value, key);
        else if (key == "exhaustion.warm_start") config.warm_start = to_bool(value, key);
        else if (key == "exhaustion.residual_probes")
            config.residual_probes = static_cast<int>(to_int(value, key));
        else if (key == "output.dir") config.output_dir = value;
        else throw IoError("config " + source + ": unknown key '" + key + "'");
    }
    return config;
}

void RunConfig::validate() const {
    params.validate();
    params.regime();

    if (radii.empty()) throw HypothesisError("config: grid.radii must not be empty");
    if (!(spacing > 0.0)) throw HypothesisError("config: grid.spacing must be positive");
    for (std::size_t n = 0; n < radii.size(); ++n) {
        const double ratio = radii[n] / spacing;
        if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio))
            throw HypothesisError("config: every radius must be an integer multiple of spacing");
        if (n > 0 && !(radii[n] > radii[n - 1]))
            throw HypothesisError("config: grid.radii must increase strictly");
    }

    if (weight_kind != "plateau" && weight_kind != "constant")
        throw HypothesisError("config: weight.kind must be plateau or constant");
    const WeightSpec weight = make_weight(); // validates omega strictly inside Omega
    if (weight.Omega().bounding_radius() > radii.front())
        throw HypothesisError(
            "hypothesis violated: Omega must be contained in the smallest ball");

    if (nonlinearity_kind != "power" && nonlinearity_kind != "paper_piecewise" &&
        nonlinearity_kind != "tabulated")
        throw HypothesisError(
            "config: nonlinearity.kind must be power, paper_piecewise or tabulated");
    if (nonlinearity_kind == "paper_piecewise" && !params.m.has_value())
        throw HypothesisError("config: paper_piecewise needs params.m");
    if (nonlinearity_kind == "tabulated" && table_path.empty())
        throw HypothesisError("config: tabulated nonlinearity needs nonlinearity.table");

    if (!(solver.tol > 0.0))
        throw HypothesisError("config: solver.tol = 0 is unreachable; it must be positive");
    if (solver.max_iterations < 1 || solver.max_sweeps < 1)
        throw HypothesisError("config: iteration caps must be positive");
    if (solver.path_nodes < 2)
        throw HypothesisError("config: solver.path_nodes must be at least 2");
    if (solver.probe_count < 1)
        throw HypothesisError("config: solver.probe_count must be positive");
    if (residual_probes < 1)
        throw HypothesisError("config: exhaustion.residual_probes must be positive");
}

WeightSpec RunConfig::make_weight() const {
    if (weight_kind == "constant")
        return WeightSpec::constant(weight_value, omega.to_shape(), Omega.to_shape());
    return WeightSpec::plateau(omega.to_shape(), Omega.to_shape(), beta, params.dim);
}

std::shared_ptr<const NonlinearitySpec> RunConfig::make_nonlinearity() const {
    if (nonlinearity_kind == "power")
        return std::make_shared<const NonlinearitySpec>(NonlinearitySpec::power(params.q));
    if (nonlinearity_kind == "paper_piecewise")
        return std::make_shared<const NonlinearitySpec>(
            NonlinearitySpec::paper_piecewise(params.q, params.subcritical_m()));
    auto [abscissae, values] = read_table_csv(table_path);
    return std::make_shared<const NonlinearitySpec>(
        NonlinearitySpec::tabulated(std::move(abscissae), std::move(values)));
}

ExhaustionSetup RunConfig::make_setup() const {
    ExhaustionSetup setup;
    setup.params = params;
    setup.radii = radii;
    setup.spacing = spacing;
    setup.weight = make_weight();
    setup.nonlinearity = make_nonlinearity();
    setup.solver = solver;
    setup.warm_start = warm_start;
    setup.residual_probes = residual_probes;
    return setup;
}

std::map<std::string, std::string> RunConfig::echo() const {
    std::map<std::string, std::string> out;
    out["params.p"] = format_double(params.p);
    out["params.s"] = format_double(params.s);
    out["params.dim"] = std::to_string(params.dim);
    out["params.q"] = format_double(params.q);
    if (params.m.has_value()) out["params.m"] = format_double(*params.m);
    out["params.mu"] = format_double(params.mu);
    out["params.c_growth"] = format_double(params.c_growth);
    out["params.C_f3"] = format_double(params.C_f3);
    out["grid.radii"] = format_list(radii);
    out["grid.spacing"] = format_double(spacing);
    out["weight.kind"] = weight_kind;
    if (weight_kind == "plateau") out["weight.beta"] = format_double(beta);
    if (weight_kind == "constant") out["weight.value"] = format_double(weight_value);
    const auto echo_shape = [&out](const std::string& prefix, const ShapeConfig& shape) {
        out[prefix + ".kind"] = shape.kind;
        if (shape.kind == "ball") {
            out[prefix + ".center"] =
                format_double(shape.center[0]) + "," + format_double(shape.center[1]);
            out[prefix + ".radius"] = format_double(shape.radius);
        } else {
            out[prefix + ".lo"] = format_double(shape.lo[0]) + "," + format_double(shape.lo[1]);
            out[prefix + ".hi"] = format_double(shape.hi[0]) + "," + format_double(shape.hi[1]);
        }
    };
    echo_shape("weight.omega", omega);
    echo_shape("weight.Omega", Omega);
    out["nonlinearity.kind"] = nonlinearity_kind;
    if (!table_path.empty()) out["nonlinearity.table"] = table_path;
    out["solver.tol"] = format_double(solver.tol);
    out["solver.max_iterations"] = std::to_string(solver.max_iterations);
    out["solver.max_sweeps"] = std::to_string(solver.max_sweeps);
    out["solver.path_nodes"] = std::to_string(solver.path_nodes);
    out["solver.seed"] = std::to_string(solver.seed);
    out["solver.probe_count"] = std::to_string(solver.probe_count);
    out["solver.chain_slack"] = format_double(solver.chain_slack);
    out["exhaustion.warm_start"] = warm_start ? "true" : "false";
    out["exhaustion.residual_probes"] = std::to_string(residual_probes);
    out["output.dir"] = output_dir;
    return out;
}

} // namespace fracpvar
