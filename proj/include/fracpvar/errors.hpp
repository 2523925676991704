#pragma once

#include <stdexcept>

namespace fracpvar {

// Failure families the CLI maps to exit codes: hypothesis violations (2),
// solver failures (3), I/O and config-syntax problems (4). Precondition
// misuse inside the library throws std::invalid_argument.
struct HypothesisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace fracpvar
