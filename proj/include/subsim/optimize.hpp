#pragma once

#include "subsim/entanglement.hpp"
#include "subsim/model.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace subsim {

enum class FreeParam { lambda, alpha2, alpha2_prime };

struct ParamBounds {
    double lo = 0.0;
    double hi = 1.0;
};

// Deterministic search schedule: a coarse scan then local grids shrinking
// around the incumbent by `shrink` per round.
struct GridSpec {
    int coarse_points = 64;
    int refine_rounds = 6;
    int refine_points = 9;
    double shrink = 4.0;
};

struct OptimizationProblem {
    enum class Objective { rate, gain };

    Config base;                       // fixed parameters; free ones overwritten
    std::vector<FreeParam> free;
    bool mirror_arms = false;          // alpha2 drives both arms (equal-arm search)
    GridSpec grid;
    std::optional<ParamBounds> lambda_bounds;
    std::optional<ParamBounds> alpha2_bounds;
    std::optional<ParamBounds> alpha2_prime_bounds;
    Objective objective = Objective::rate;
};

struct OptimizationResult {
    double lambda_opt = 0.0;
    double alpha2_opt = 0.0;
    double alpha2_prime_opt = 0.0;
    Metrics metrics;
    Strategy strategy;
    double gamma2 = 0.0, gamma2_prime = 0.0;
    bool below_threshold = false;
    long evaluations = 0;
};

// Grid-plus-refinement maximisation of the objective over the free
// parameters. Infeasible points (zero-probability conditioning, empty
// parameter combinations) score minus infinity. Ties break toward smaller
// alpha2, then smaller lambda. Fully deterministic.
OptimizationResult maximize_rate(const OptimizationProblem& problem);

// Same schedule but seeded: refinement rounds around a known-good starting
// point, first window covering `window` of each range. Used for
// continuation across neighbouring loss cells.
OptimizationResult maximize_rate_seeded(const OptimizationProblem& problem,
                                        const OptimizationResult& seed,
                                        double window = 0.25);

enum class LossDirection { symmetric, arm, arm_prime };

// Largest equal-arm (or single-arm) loss for which some (lambda, alpha2)
// still yields positive gain, by bisection of the maximised gain.
double loss_threshold(const Strategy& strategy,
                      LossDirection direction = LossDirection::symmetric,
                      double tol = 1e-3);

struct FrontierCell {
    double gamma2 = 0.0, gamma2_prime = 0.0;
    std::vector<OptimizationResult> per_strategy;
    int best = 0;              // index into per_strategy
    double rate_diff = 0.0;    // strategies[0] minus strategies[1] when present
};

struct FrontierRequest {
    std::vector<Strategy> strategies;
    std::vector<double> gamma2_grid;
    std::vector<double> gamma2_prime_grid;
    Config base;
    GridSpec cell_grid{16, 6, 5, 4.0};
    std::optional<ParamBounds> lambda_bounds;
    // Arms heralded on zero detections keep their full transmission
    // (alpha^2 = 1 - gamma^2) instead of entering the search.
    bool pin_unsubtracted = true;
};

// Optimised comparison across a loss grid, sweeping cells in raster order
// and warm-starting each from its predecessor.
std::vector<FrontierCell> strategy_frontier(const FrontierRequest& req);

} // namespace subsim
