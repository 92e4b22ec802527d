#include "subsim/commands.hpp"

#include "subsim/analytic.hpp"
#include "subsim/errors.hpp"
#include "subsim/evaluate.hpp"
#include "subsim/parallel.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <vector>

namespace subsim {

namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// CSV cells carry 12 significant digits.
std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string column_label(const Strategy& s) {
    std::string raw = s.label(), out;
    for (char c : raw) {
        if (c == '(' || c == ',') out.push_back('_');
        else if (c != ')') out.push_back(c);
    }
    return out;
}

json metrics_json(const Metrics& m) {
    return json{{"log_negativity_bits", m.log_negativity},
                {"gain", m.gain},
                {"probability", m.probability},
                {"rate", m.rate},
                {"baseline_log_negativity", m.baseline}};
}

Config apply_parameter(Config cfg, const std::string& parameter, double v) {
    if (parameter == "lambda") {
        cfg.lambda = v;
    } else if (parameter == "alpha_sq") {
        cfg.arm = ModeParams::from_fractions(v, cfg.arm.gamma2);
    } else if (parameter == "gamma_sq") {
        cfg.arm = ModeParams::from_fractions(cfg.arm.alpha2, v);
    } else if (parameter == "alpha_prime_sq") {
        cfg.arm_prime = ModeParams::from_fractions(v, cfg.arm_prime.gamma2);
    } else if (parameter == "gamma_prime_sq") {
        cfg.arm_prime = ModeParams::from_fractions(cfg.arm_prime.alpha2, v);
    } else {
        throw config_error("unknown sweep parameter: " + parameter);
    }
    return cfg;
}

OptimizationProblem problem_from(const Config& base, const OptimizeSpec& spec) {
    OptimizationProblem p;
    p.base = base;
    p.free = spec.free;
    p.mirror_arms = spec.mirror_arms;
    p.grid = spec.grid;
    p.lambda_bounds = spec.lambda_bounds;
    return p;
}

json optimization_json(const OptimizationResult& r) {
    return json{{"lambda_opt", r.lambda_opt},
                {"alpha2_opt", r.alpha2_opt},
                {"alpha2_prime_opt", r.alpha2_prime_opt},
                {"metrics", metrics_json(r.metrics)},
                {"strategy", r.strategy.label()},
                {"below_threshold", r.below_threshold},
                {"evaluations", r.evaluations}};
}

// Free parameters for one strategy at fixed lambda: every subtracting arm's
// tap is searched; non-subtracting arms keep full transmission.
OptimizationProblem per_strategy_problem(const Config& base, const Strategy& st,
                                         const CompareSpec& spec) {
    OptimizationProblem p;
    p.base = base;
    p.base.strategy = st;
    p.grid = spec.grid;
    p.lambda_bounds = spec.lambda_bounds;
    bool sub_a = st.kind == Strategy::Kind::pnrd ? st.t > 0 : st.click;
    bool sub_b = st.kind == Strategy::Kind::pnrd ? st.t_prime > 0 : st.click_prime;
    if (spec.pin_unsubtracted) {
        if (!sub_a)
            p.base.arm = ModeParams::from_fractions(1.0 - base.arm.gamma2, base.arm.gamma2);
        if (!sub_b)
            p.base.arm_prime = ModeParams::from_fractions(1.0 - base.arm_prime.gamma2,
                                                          base.arm_prime.gamma2);
    }
    bool arms_equal = base.arm.alpha2 == base.arm_prime.alpha2 &&
                      base.arm.gamma2 == base.arm_prime.gamma2;
    if (st.symmetric() && sub_a && sub_b && arms_equal) {
        p.mirror_arms = true;
        p.free = {FreeParam::alpha2};
    } else {
        if (sub_a || !spec.pin_unsubtracted) p.free.push_back(FreeParam::alpha2);
        if (sub_b || !spec.pin_unsubtracted) p.free.push_back(FreeParam::alpha2_prime);
    }
    return p;
}

} // namespace

OutputFormat parse_format(const std::string& name) {
    if (name == "json") return OutputFormat::json;
    if (name == "csv") return OutputFormat::csv;
    throw config_error("unknown output format: " + name);
}

int cmd_evaluate(const RunConfig& rc, OutputFormat fmt, std::ostream& out) {
    Metrics m = evaluate_config(rc.config);
    bool below = m.gain <= 0.0;
    if (fmt == OutputFormat::json) {
        json j = metrics_json(m);
        j["below_threshold"] = below;
        out << j.dump(2) << "\n";
    } else {
        out << "E_N,gain,probability,rate,baseline,below_threshold\n";
        out << csv_number(m.log_negativity) << ',' << csv_number(m.gain) << ','
            << csv_number(m.probability) << ',' << csv_number(m.rate) << ','
            << csv_number(m.baseline) << ',' << (below ? 1 : 0) << "\n";
    }
    return below ? 2 : 0;
}

int cmd_sweep(const RunConfig& rc, OutputFormat fmt, std::ostream& out) {
    if (rc.axes.empty() || rc.axes.size() > 2)
        throw config_error("sweep: need one or two axes");

    std::vector<std::vector<double>> axis_values;
    for (const auto& ax : rc.axes) {
        std::vector<double> v;
        if (ax.steps == 1) v.push_back(ax.min);
        else
            for (int k = 0; k < ax.steps; ++k)
                v.push_back(ax.min + (ax.max - ax.min) * k / (ax.steps - 1));
        axis_values.push_back(std::move(v));
    }
    size_t rows = axis_values[0].size() * (rc.axes.size() == 2 ? axis_values[1].size() : 1);

    struct Row {
        double a0 = 0, a1 = 0;
        Metrics m;
        bool ok = false;
    };
    std::vector<Row> table(rows);
    parallel_for(static_cast<int>(rows), [&](int idx) {
        Row& r = table[idx];
        size_t inner = rc.axes.size() == 2 ? axis_values[1].size() : 1;
        r.a0 = axis_values[0][idx / inner];
        if (rc.axes.size() == 2) r.a1 = axis_values[1][idx % inner];
        try {
            Config cfg = apply_parameter(rc.config, rc.axes[0].parameter, r.a0);
            if (rc.axes.size() == 2) cfg = apply_parameter(cfg, rc.axes[1].parameter, r.a1);
            r.m = evaluate_config(cfg);
            r.ok = true;
        } catch (const impossible_event&) {
        } catch (const std::domain_error&) {
        }
    });

    if (fmt == OutputFormat::csv) {
        out << rc.axes[0].parameter;
        if (rc.axes.size() == 2) out << ',' << rc.axes[1].parameter;
        out << ",E_N,gain,probability,rate\n";
        for (const Row& r : table) {
            out << csv_number(r.a0);
            if (rc.axes.size() == 2) out << ',' << csv_number(r.a1);
            const Metrics m = r.ok ? r.m : Metrics{kNaN, kNaN, kNaN, kNaN, kNaN, kNaN};
            out << ',' << csv_number(m.log_negativity) << ',' << csv_number(m.gain) << ','
                << csv_number(m.probability) << ',' << csv_number(m.rate) << "\n";
        }
    } else {
        json arr = json::array();
        for (const Row& r : table) {
            json row;
            row[rc.axes[0].parameter] = r.a0;
            if (rc.axes.size() == 2) row[rc.axes[1].parameter] = r.a1;
            if (r.ok) {
                row["E_N"] = r.m.log_negativity;
                row["gain"] = r.m.gain;
                row["probability"] = r.m.probability;
                row["rate"] = r.m.rate;
            } else {
                row["E_N"] = nullptr;
            }
            arr.push_back(row);
        }
        out << arr.dump(2) << "\n";
    }
    return 0;
}

int cmd_optimize(const RunConfig& rc, OutputFormat fmt, std::ostream& out) {
    if (!rc.optimize) throw config_error("optimize: missing \"optimize\" section");
    OptimizationResult r = maximize_rate(problem_from(rc.config, *rc.optimize));
    if (fmt == OutputFormat::json) {
        out << optimization_json(r).dump(2) << "\n";
    } else {
        out << "lambda_opt,alpha2_opt,alpha2_prime_opt,E_N,gain,probability,rate,"
               "below_threshold\n";
        out << csv_number(r.lambda_opt) << ',' << csv_number(r.alpha2_opt) << ','
            << csv_number(r.alpha2_prime_opt) << ',' << csv_number(r.metrics.log_negativity)
            << ',' << csv_number(r.metrics.gain) << ',' << csv_number(r.metrics.probability)
            << ',' << csv_number(r.metrics.rate) << ',' << (r.below_threshold ? 1 : 0)
            << "\n";
    }
    return r.below_threshold ? 2 : 0;
}

int cmd_compare(const RunConfig& rc, OutputFormat fmt, std::ostream& out) {
    if (!rc.compare) throw config_error("compare: missing \"compare\" section");
    const CompareSpec& spec = *rc.compare;

    struct Row {
        std::vector<double> keys;
        std::vector<OptimizationResult> results;
        int best = 0;
    };
    std::vector<Row> rows;
    std::vector<std::string> key_names;

    if (spec.lambda_grid) {
        key_names = {"lambda"};
        for (double lam : spec.lambda_grid->values()) {
            Row row;
            row.keys = {lam};
            for (const Strategy& st : spec.strategies) {
                OptimizationProblem p = per_strategy_problem(rc.config, st, spec);
                p.base.lambda = lam;
                row.results.push_back(maximize_rate(p));
            }
            for (size_t i = 1; i < row.results.size(); ++i)
                if (row.results[i].metrics.rate > row.results[row.best].metrics.rate)
                    row.best = static_cast<int>(i);
            rows.push_back(std::move(row));
        }
    } else {
        if (spec.strategies.size() < 2)
            throw config_error("compare: a loss grid needs at least two strategies");
        key_names = {"gamma_sq", "gamma_prime_sq"};
        FrontierRequest req;
        req.strategies = spec.strategies;
        req.gamma2_grid = spec.loss_grid->values();
        req.gamma2_prime_grid = spec.loss_grid_prime->values();
        req.base = rc.config;
        req.cell_grid = spec.grid;
        req.lambda_bounds = spec.lambda_bounds;
        req.pin_unsubtracted = spec.pin_unsubtracted;
        for (const FrontierCell& cell : strategy_frontier(req)) {
            Row row;
            row.keys = {cell.gamma2, cell.gamma2_prime};
            row.results = cell.per_strategy;
            row.best = cell.best;
            rows.push_back(std::move(row));
        }
    }

    bool with_diff = spec.strategies.size() == 2;
    if (fmt == OutputFormat::csv) {
        for (size_t i = 0; i < key_names.size(); ++i) out << (i ? "," : "") << key_names[i];
        for (const Strategy& st : spec.strategies) {
            std::string l = column_label(st);
            out << ',' << l << "_gain," << l << "_probability," << l << "_rate";
        }
        out << ",best_strategy";
        if (with_diff) out << ",rate_diff";
        out << "\n";
        for (const Row& row : rows) {
            for (size_t i = 0; i < row.keys.size(); ++i)
                out << (i ? "," : "") << csv_number(row.keys[i]);
            for (const auto& r : row.results)
                out << ',' << csv_number(r.metrics.gain) << ','
                    << csv_number(r.metrics.probability) << ',' << csv_number(r.metrics.rate);
            out << ',' << spec.strategies[row.best].label();
            if (with_diff)
                out << ','
                    << csv_number(row.results[0].metrics.rate - row.results[1].metrics.rate);
            out << "\n";
        }
    } else {
        json arr = json::array();
        for (const Row& row : rows) {
            json jr;
            for (size_t i = 0; i < key_names.size(); ++i) jr[key_names[i]] = row.keys[i];
            json per = json::object();
            for (size_t i = 0; i < row.results.size(); ++i)
                per[spec.strategies[i].label()] = optimization_json(row.results[i]);
            jr["strategies"] = per;
            jr["best_strategy"] = spec.strategies[row.best].label();
            if (with_diff)
                jr["rate_diff"] =
                    row.results[0].metrics.rate - row.results[1].metrics.rate;
            arr.push_back(jr);
        }
        out << arr.dump(2) << "\n";
    }
    return 0;
}

} // namespace subsim
