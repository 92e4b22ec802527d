#include "subsim/optimize.hpp"

#include "subsim/analytic.hpp"
#include "subsim/errors.hpp"
#include "subsim/evaluate.hpp"
#include "subsim/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace subsim {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Point {
    double lambda, alpha2, alpha2_prime;
};

struct Scored {
    double value = kNegInf;
    Point p{0, 0, 0};
    Metrics metrics;
    bool feasible = false;
};

// Tie-break toward smaller alpha2 then smaller lambda.
bool better(const Scored& a, const Scored& b) {
    if (!b.feasible) return a.feasible;
    if (!a.feasible) return false;
    if (a.value != b.value) return a.value > b.value;
    if (a.p.alpha2 != b.p.alpha2) return a.p.alpha2 < b.p.alpha2;
    return a.p.lambda < b.p.lambda;
}

class Search {
public:
    explicit Search(const OptimizationProblem& prob) : prob_(prob) {
        has_[0] = has_[1] = has_[2] = false;
        for (FreeParam f : prob.free) has_[static_cast<int>(f)] = true;
        bounds_[0] = prob.lambda_bounds.value_or(ParamBounds{0.01, 0.99});
        bounds_[1] = prob.alpha2_bounds.value_or(
            ParamBounds{0.0, 1.0 - prob.base.arm.gamma2});
        bounds_[2] = prob.alpha2_prime_bounds.value_or(
            ParamBounds{0.0, 1.0 - prob.base.arm_prime.gamma2});
        start_ = Point{prob.base.lambda, prob.base.arm.alpha2,
                       prob.base.arm_prime.alpha2};
    }

    Scored evaluate(Point p) {
        Config cfg = prob_.base;
        cfg.lambda = p.lambda;
        double g2 = cfg.arm.gamma2, g2p = cfg.arm_prime.gamma2;
        double a2 = has_[1] ? p.alpha2 : cfg.arm.alpha2;
        double a2p = has_[2] ? p.alpha2_prime : cfg.arm_prime.alpha2;
        if (prob_.mirror_arms) a2p = a2;
        Scored s;
        s.p = Point{cfg.lambda, a2, a2p};
        if (a2 + g2 > 1.0 || a2p + g2p > 1.0) return s;
        try {
            cfg.arm = ModeParams::from_fractions(a2, g2);
            cfg.arm_prime = ModeParams::from_fractions(a2p, g2p);
            Metrics m = (prob_.objective == OptimizationProblem::Objective::gain)
                            ? gain_metrics(cfg)
                            : evaluate_config(cfg);
            s.metrics = m;
            s.value = (prob_.objective == OptimizationProblem::Objective::gain)
                          ? m.gain
                          : m.rate;
            s.feasible = std::isfinite(s.value);
        } catch (const impossible_event&) {
        } catch (const std::domain_error&) {
        }
        return s;
    }

    // Gain only: tolerate zero heralding probability (the log-negativity is
    // still defined as the conditioned limit) by scoring the closed form
    // where available.
    Metrics gain_metrics(const Config& cfg) {
        if (cfg.strategy.kind == Strategy::Kind::pnrd &&
            cfg.strategy.t == cfg.strategy.t_prime && cfg.equal_arms())
            return lossy_symmetric(cfg, cfg.strategy.t);
        return evaluate_config(cfg);
    }

    Scored scan(const std::vector<Point>& pts, long& evals) {
        std::vector<Scored> scored(pts.size());
        parallel_for(static_cast<int>(pts.size()),
                     [&](int i) { scored[i] = evaluate(pts[i]); });
        evals += static_cast<long>(pts.size());
        Scored best;
        for (const auto& s : scored)
            if (better(s, best)) best = s;
        return best;
    }

    std::vector<double> axis_grid(int dim, double centre, double halfwidth,
                                  int points) const {
        const ParamBounds& b = bounds_[dim];
        double lo = std::max(b.lo, centre - halfwidth);
        double hi = std::min(b.hi, centre + halfwidth);
        std::vector<double> g;
        if (points <= 1 || hi <= lo) {
            g.push_back(std::clamp(centre, b.lo, b.hi));
            return g;
        }
        for (int k = 0; k < points; ++k)
            g.push_back(lo + (hi - lo) * k / (points - 1));
        return g;
    }

    std::vector<Point> mesh(const std::vector<double>& gl,
                            const std::vector<double>& ga,
                            const std::vector<double>& gp) const {
        std::vector<Point> pts;
        pts.reserve(gl.size() * ga.size() * gp.size());
        for (double l : gl)
            for (double a : ga)
                for (double p : gp) pts.push_back(Point{l, a, p});
        return pts;
    }

    std::vector<double> full_axis(int dim, int points) const {
        if (!has_[dim]) return {fixed_value(dim)};
        return axis_grid(dim, 0.5 * (bounds_[dim].lo + bounds_[dim].hi),
                         0.5 * (bounds_[dim].hi - bounds_[dim].lo), points);
    }

    double fixed_value(int dim) const {
        switch (dim) {
            case 0: return start_.lambda;
            case 1: return start_.alpha2;
            default: return start_.alpha2_prime;
        }
    }

    double range_width(int dim) const { return bounds_[dim].hi - bounds_[dim].lo; }

    OptimizationResult run(std::optional<Point> seed, double seed_window) {
        long evals = 0;
        Scored best;

        if (seed) {
            best = evaluate(*seed);
            ++evals;
        } else {
            auto pts = mesh(full_axis(0, prob_.grid.coarse_points),
                            full_axis(1, prob_.grid.coarse_points),
                            full_axis(2, prob_.grid.coarse_points));
            best = scan(pts, evals);
        }

        double frac = seed ? seed_window
                           : 2.0 / std::max(1, prob_.grid.coarse_points - 1);
        for (int round = 0; round < prob_.grid.refine_rounds; ++round) {
            auto gl = has_[0] ? axis_grid(0, best.p.lambda, 0.5 * frac * range_width(0),
                                          prob_.grid.refine_points)
                              : std::vector<double>{fixed_value(0)};
            auto ga = has_[1] ? axis_grid(1, best.p.alpha2, 0.5 * frac * range_width(1),
                                          prob_.grid.refine_points)
                              : std::vector<double>{fixed_value(1)};
            auto gp = has_[2]
                          ? axis_grid(2, best.p.alpha2_prime,
                                      0.5 * frac * range_width(2),
                                      prob_.grid.refine_points)
                          : std::vector<double>{fixed_value(2)};
            Scored cand = scan(mesh(gl, ga, gp), evals);
            if (better(cand, best)) best = cand;
            frac /= prob_.grid.shrink;
        }

        OptimizationResult r;
        r.lambda_opt = best.p.lambda;
        r.alpha2_opt = best.p.alpha2;
        r.alpha2_prime_opt = best.p.alpha2_prime;
        r.metrics = best.metrics;
        r.strategy = prob_.base.strategy;
        r.gamma2 = prob_.base.arm.gamma2;
        r.gamma2_prime = prob_.base.arm_prime.gamma2;
        r.below_threshold = !best.feasible || best.metrics.gain <= 0.0;
        r.evaluations = evals;
        if (!best.feasible)
            throw impossible_event(
                "no feasible point in the search region for strategy " +
                prob_.base.strategy.label());
        return r;
    }

private:
    const OptimizationProblem& prob_;
    bool has_[3];
    ParamBounds bounds_[3];
    Point start_;
};

} // namespace

OptimizationResult maximize_rate(const OptimizationProblem& problem) {
    Search s(problem);
    return s.run(std::nullopt, 0.0);
}

OptimizationResult maximize_rate_seeded(const OptimizationProblem& problem,
                                        const OptimizationResult& seed,
                                        double window) {
    Search s(problem);
    return s.run(Point{seed.lambda_opt, seed.alpha2_opt, seed.alpha2_prime_opt},
                 window);
}

double loss_threshold(const Strategy& strategy, LossDirection direction, double tol) {
    auto max_gain = [&](double gamma2) {
        OptimizationProblem p;
        p.base.strategy = strategy;
        double g2 = (direction != LossDirection::arm_prime) ? gamma2 : 0.0;
        double g2p = (direction != LossDirection::arm) ? gamma2 : 0.0;
        p.base.arm = ModeParams::from_fractions(std::min(0.5, 1.0 - g2), g2);
        p.base.arm_prime = ModeParams::from_fractions(std::min(0.5, 1.0 - g2p), g2p);
        p.free = {FreeParam::lambda, FreeParam::alpha2};
        p.mirror_arms = (direction == LossDirection::symmetric);
        if (!p.mirror_arms) p.free.push_back(FreeParam::alpha2_prime);
        p.objective = OptimizationProblem::Objective::gain;
        p.grid = GridSpec{48, 4, 9, 4.0};
        p.lambda_bounds = ParamBounds{1e-3, 0.95};
        OptimizationResult r = maximize_rate(p);
        return r.metrics.gain;
    };

    if (max_gain(0.0) <= 0.0) return 0.0;
    double lo = 0.0, hi = 0.999;
    if (max_gain(hi) > 0.0) return hi;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        (max_gain(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

// Strategies heralding on zero detections on one arm make that arm's tap
// pointless; full transmission is optimal there.
bool subtracts_unprimed(const Strategy& s) {
    return s.kind == Strategy::Kind::pnrd ? s.t > 0 : s.click;
}
bool subtracts_primed(const Strategy& s) {
    return s.kind == Strategy::Kind::pnrd ? s.t_prime > 0 : s.click_prime;
}

} // namespace

std::vector<FrontierCell> strategy_frontier(const FrontierRequest& req) {
    if (req.strategies.size() < 2)
        throw std::domain_error("strategy_frontier: needs at least two strategies");

    std::vector<FrontierCell> cells;
    cells.reserve(req.gamma2_grid.size() * req.gamma2_prime_grid.size());

    const size_t cols = req.gamma2_prime_grid.size();
    std::vector<std::vector<OptimizationResult>> prev_row(
        req.strategies.size(), std::vector<OptimizationResult>(cols));
    std::vector<char> prev_row_valid(cols, 0);

    for (size_t gi = 0; gi < req.gamma2_grid.size(); ++gi) {
        double g2 = req.gamma2_grid[gi];
        std::vector<std::vector<OptimizationResult>> this_row(
            req.strategies.size(), std::vector<OptimizationResult>(cols));
        std::vector<char> this_row_valid(cols, 0);

        for (size_t gj = 0; gj < cols; ++gj) {
            double g2p = req.gamma2_prime_grid[gj];
            FrontierCell cell;
            cell.gamma2 = g2;
            cell.gamma2_prime = g2p;

            for (size_t si = 0; si < req.strategies.size(); ++si) {
                const Strategy& st = req.strategies[si];
                OptimizationProblem p;
                p.base = req.base;
                p.base.strategy = st;
                p.base.arm = ModeParams::from_fractions(
                    std::min(req.base.arm.alpha2, 1.0 - g2), g2);
                p.base.arm_prime = ModeParams::from_fractions(
                    std::min(req.base.arm_prime.alpha2, 1.0 - g2p), g2p);
                p.free = {FreeParam::lambda};
                if (!req.pin_unsubtracted || subtracts_unprimed(st))
                    p.free.push_back(FreeParam::alpha2);
                else
                    p.base.arm = ModeParams::from_fractions(1.0 - g2, g2);
                if (!req.pin_unsubtracted || subtracts_primed(st))
                    p.free.push_back(FreeParam::alpha2_prime);
                else
                    p.base.arm_prime = ModeParams::from_fractions(1.0 - g2p, g2p);
                p.grid = req.cell_grid;
                p.lambda_bounds = req.lambda_bounds;

                const OptimizationResult* seed = nullptr;
                if (gj > 0 && this_row_valid[gj - 1]) seed = &this_row[si][gj - 1];
                else if (prev_row_valid[gj]) seed = &prev_row[si][gj];

                OptimizationResult r = seed ? maximize_rate_seeded(p, *seed)
                                            : maximize_rate(p);
                cell.per_strategy.push_back(r);
                this_row[si][gj] = r;
            }
            this_row_valid[gj] = 1;

            cell.best = 0;
            for (size_t si = 1; si < cell.per_strategy.size(); ++si)
                if (cell.per_strategy[si].metrics.rate >
                    cell.per_strategy[cell.best].metrics.rate)
                    cell.best = static_cast<int>(si);
            cell.rate_diff = cell.per_strategy[0].metrics.rate -
                             cell.per_strategy[1].metrics.rate;
            cells.push_back(std::move(cell));
        }
        prev_row.swap(this_row);
        prev_row_valid.swap(this_row_valid);
    }
    return cells;
}

} // namespace subsim
