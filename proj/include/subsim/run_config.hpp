#pragma once

#include "subsim/model.hpp"
#include "subsim/optimize.hpp"

#include <optional>
#include <string>
#include <vector>

namespace subsim {

struct SweepAxis {
    std::string parameter; // lambda | alpha_sq | alpha_prime_sq | gamma_sq | gamma_prime_sq
    double min = 0.0, max = 0.0;
    int steps = 2;
};

struct OptimizeSpec {
    std::vector<FreeParam> free;
    bool mirror_arms = false;
    GridSpec grid;
    std::optional<ParamBounds> lambda_bounds;
};

struct LinearGrid {
    double min = 0.0, max = 0.0;
    int steps = 2;
    std::vector<double> values() const;
};

struct CompareSpec {
    std::vector<Strategy> strategies;
    std::optional<LinearGrid> lambda_grid;               // mode A: per-squeezing comparison
    std::optional<LinearGrid> loss_grid, loss_grid_prime; // mode B: loss-cell frontier
    GridSpec grid{16, 6, 5, 4.0};
    std::optional<ParamBounds> lambda_bounds;
    bool pin_unsubtracted = true;
};

// Parsed command-line run file. The physics block is always present;
// sweep/optimize/compare sections appear when the matching subcommand is
// used.
struct RunConfig {
    Config config;
    std::vector<SweepAxis> axes;
    std::optional<OptimizeSpec> optimize;
    std::optional<CompareSpec> compare;
};

// Strict parser: unknown keys anywhere are config errors, as are malformed
// values. Throws config_error with the offending key in the message.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

} // namespace subsim
