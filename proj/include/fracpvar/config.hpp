#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fracpvar/exhaustion.hpp"
#include "fracpvar/model.hpp"
#include "fracpvar/params.hpp"
#include "fracpvar/solvers.hpp"

namespace fracpvar {

struct ShapeConfig {
    std::string kind = "ball"; // ball | box
    std::array<double, 2> center{0.0, 0.0};
    double radius = 0.5;
    std::array<double, 2> lo{0.0, 0.0};
    std::array<double, 2> hi{0.0, 0.0};

    Shape to_shape() const;
};

// One flat dotted-key file per run, e.g. `params.p = 2.0`. Unknown keys are
// rejected so typos fail loudly.
struct RunConfig {
    HypothesisParams params;
    std::vector<double> radii{2.0, 4.0, 8.0};
    double spacing = 0.125;

    std::string weight_kind = "plateau"; // plateau | constant
    ShapeConfig omega;
    ShapeConfig Omega;
    double beta = 1.0;
    double weight_value = 1.0;

    std::string nonlinearity_kind = "power"; // power | paper_piecewise | tabulated
    std::string table_path;

    SolverOptions solver;
    bool warm_start = true;
    int residual_probes = 16;
    std::string output_dir = "out";

    static RunConfig parse_file(const std::filesystem::path& path);
    static RunConfig parse(std::string_view text, const std::string& source);

    // Fail-fast validation: throws with the first violated hypothesis named,
    // before any compute starts.
    void validate() const;

    WeightSpec make_weight() const;
    std::shared_ptr<const NonlinearitySpec> make_nonlinearity() const;
    ExhaustionSetup make_setup() const;

    // Resolved configuration, one value per dotted key; embedded in
    // report.json so every run is self-describing.
    std::map<std::string, std::string> echo() const;
};

} // namespace fracpvar
