#include "subsim/run_config.hpp"

#include "subsim/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace subsim {

namespace {

using nlohmann::json;

void require_keys(const json& j, const std::string& where,
                  const std::set<std::string>& allowed) {
    if (!j.is_object())
        throw config_error(where + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw config_error(where + ": unknown key \"" + it.key() + "\"");
}

double get_number(const json& j, const std::string& where, const std::string& key) {
    if (!j.contains(key)) throw config_error(where + ": missing \"" + key + "\"");
    if (!j[key].is_number()) throw config_error(where + "." + key + ": expected a number");
    return j[key].get<double>();
}

double get_number_or(const json& j, const std::string& where, const std::string& key,
                     double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) throw config_error(where + "." + key + ": expected a number");
    return j[key].get<double>();
}

int get_int_or(const json& j, const std::string& where, const std::string& key,
               int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer())
        throw config_error(where + "." + key + ": expected an integer");
    return j[key].get<int>();
}

bool get_bool_or(const json& j, const std::string& where, const std::string& key,
                 bool fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_boolean()) throw config_error(where + "." + key + ": expected a boolean");
    return j[key].get<bool>();
}

ModeParams parse_arm(const json& j, const std::string& where) {
    if (j.contains("alpha_sq") || j.contains("gamma_sq")) {
        require_keys(j, where, {"alpha_sq", "gamma_sq"});
        double a2 = get_number(j, where, "alpha_sq");
        double g2 = get_number_or(j, where, "gamma_sq", 0.0);
        try {
            return ModeParams::from_fractions(a2, g2);
        } catch (const std::domain_error& e) {
            throw config_error(where + ": " + e.what());
        }
    }
    require_keys(j, where, {"t1_sq", "t2_sq", "t3_sq", "t4_sq"});
    try {
        auto arm = ArmTransmissivities::from_intensities(
            get_number_or(j, where, "t1_sq", 1.0), get_number_or(j, where, "t2_sq", 1.0),
            get_number_or(j, where, "t3_sq", 1.0), get_number_or(j, where, "t4_sq", 1.0));
        return mode_coefficients(arm);
    } catch (const std::domain_error& e) {
        throw config_error(where + ": " + e.what());
    }
}

Strategy parse_strategy(const json& j, const std::string& where) {
    if (j.is_string()) {
        try {
            return Strategy::parse(j.get<std::string>());
        } catch (const std::domain_error& e) {
            throw config_error(where + ": " + e.what());
        }
    }
    require_keys(j, where, {"kind", "t", "t_prime", "pattern"});
    if (!j.contains("kind")) throw config_error(where + ": missing \"kind\"");
    std::string kind = j["kind"].get<std::string>();
    if (kind == "pnrd") {
        int t = get_int_or(j, where, "t", 1);
        int tp = get_int_or(j, where, "t_prime", t);
        if (t < 0 || tp < 0) throw config_error(where + ": photon counts must be >= 0");
        return Strategy::pnrd(t, tp);
    }
    if (kind == "apd") {
        if (!j.contains("pattern")) throw config_error(where + ": missing \"pattern\"");
        std::string pat = j["pattern"].get<std::string>();
        try {
            return Strategy::parse("apd(" + pat + ")");
        } catch (const std::domain_error&) {
            throw config_error(where + ".pattern: expected \"on,on\", \"on,off\", "
                                       "\"off,on\" or \"off,off\"");
        }
    }
    throw config_error(where + ".kind: expected \"pnrd\" or \"apd\"");
}

TruncationPolicy parse_truncation(const json& j, const std::string& where) {
    require_keys(j, where, {"k_max", "term_rel_tol", "block_tail_tol", "n_max"});
    TruncationPolicy t;
    t.k_max = get_int_or(j, where, "k_max", t.k_max);
    t.term_rel_tol = get_number_or(j, where, "term_rel_tol", t.term_rel_tol);
    t.block_tail_tol = get_number_or(j, where, "block_tail_tol", t.block_tail_tol);
    t.n_max = get_int_or(j, where, "n_max", t.n_max);
    try {
        t.validate();
    } catch (const std::domain_error& e) {
        throw config_error(where + ": " + e.what());
    }
    return t;
}

GridSpec parse_grid(const json& j, const std::string& where, GridSpec g) {
    g.coarse_points = get_int_or(j, where, "coarse_points", g.coarse_points);
    g.refine_rounds = get_int_or(j, where, "refine_rounds", g.refine_rounds);
    g.refine_points = get_int_or(j, where, "refine_points", g.refine_points);
    if (g.coarse_points < 2 || g.refine_points < 2 || g.refine_rounds < 0)
        throw config_error(where + ": grid sizes out of range");
    return g;
}

std::optional<ParamBounds> parse_lambda_bounds(const json& j, const std::string& where) {
    if (!j.contains("lambda_min") && !j.contains("lambda_max")) return std::nullopt;
    ParamBounds b{0.01, 0.99};
    b.lo = get_number_or(j, where, "lambda_min", b.lo);
    b.hi = get_number_or(j, where, "lambda_max", b.hi);
    if (!(b.lo >= 0.0 && b.hi < 1.0 && b.lo < b.hi))
        throw config_error(where + ": lambda bounds must satisfy 0 <= min < max < 1");
    return b;
}

FreeParam parse_free_param(const std::string& name, const std::string& where) {
    if (name == "lambda") return FreeParam::lambda;
    if (name == "alpha_sq") return FreeParam::alpha2;
    if (name == "alpha_prime_sq") return FreeParam::alpha2_prime;
    throw config_error(where + ": unknown free parameter \"" + name + "\"");
}

LinearGrid parse_linear_grid(const json& j, const std::string& where) {
    require_keys(j, where, {"min", "max", "steps"});
    LinearGrid g;
    g.min = get_number(j, where, "min");
    g.max = get_number(j, where, "max");
    g.steps = get_int_or(j, where, "steps", 2);
    if (g.steps < 1 || g.max < g.min)
        throw config_error(where + ": need steps >= 1 and max >= min");
    return g;
}

} // namespace

std::vector<double> LinearGrid::values() const {
    std::vector<double> v;
    if (steps == 1) {
        v.push_back(min);
        return v;
    }
    for (int k = 0; k < steps; ++k) v.push_back(min + (max - min) * k / (steps - 1));
    return v;
}

RunConfig parse_run_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw config_error(std::string("invalid JSON: ") + e.what());
    }
    require_keys(j, "config",
                 {"lambda", "arm", "arm_prime", "strategy", "truncation", "sweep",
                  "optimize", "compare"});

    RunConfig rc;
    rc.config.lambda = get_number(j, "config", "lambda");
    if (!j.contains("arm")) throw config_error("config: missing \"arm\"");
    rc.config.arm = parse_arm(j["arm"], "arm");
    rc.config.arm_prime =
        j.contains("arm_prime") ? parse_arm(j["arm_prime"], "arm_prime") : rc.config.arm;
    if (!j.contains("strategy")) throw config_error("config: missing \"strategy\"");
    rc.config.strategy = parse_strategy(j["strategy"], "strategy");
    if (j.contains("truncation"))
        rc.config.truncation = parse_truncation(j["truncation"], "truncation");
    try {
        rc.config.validate();
    } catch (const config_error&) {
        throw;
    } catch (const std::domain_error& e) {
        throw config_error(std::string("config: ") + e.what());
    }

    if (j.contains("sweep")) {
        const json& s = j["sweep"];
        if (!s.is_array() || s.empty())
            throw config_error("sweep: expected a non-empty array of axes");
        if (s.size() > 2) throw config_error("sweep: at most two axes are supported");
        static const std::set<std::string> params = {
            "lambda", "alpha_sq", "alpha_prime_sq", "gamma_sq", "gamma_prime_sq"};
        for (size_t i = 0; i < s.size(); ++i) {
            std::string where = "sweep[" + std::to_string(i) + "]";
            require_keys(s[i], where, {"parameter", "min", "max", "steps"});
            SweepAxis ax;
            if (!s[i].contains("parameter"))
                throw config_error(where + ": missing \"parameter\"");
            ax.parameter = s[i]["parameter"].get<std::string>();
            if (!params.count(ax.parameter))
                throw config_error(where + ": unknown parameter \"" + ax.parameter + "\"");
            ax.min = get_number(s[i], where, "min");
            ax.max = get_number(s[i], where, "max");
            ax.steps = get_int_or(s[i], where, "steps", 2);
            if (ax.steps < 1) throw config_error(where + ": steps must be >= 1");
            if (ax.steps == 1 && ax.min != ax.max)
                throw config_error(where + ": a single-point axis needs min == max");
            rc.axes.push_back(ax);
        }
    }

    if (j.contains("optimize")) {
        const json& o = j["optimize"];
        require_keys(o, "optimize",
                     {"free", "mirror_arms", "coarse_points", "refine_rounds",
                      "refine_points", "lambda_min", "lambda_max"});
        OptimizeSpec spec;
        if (!o.contains("free") || !o["free"].is_array() || o["free"].empty())
            throw config_error("optimize: missing non-empty \"free\" array");
        for (const auto& f : o["free"])
            spec.free.push_back(parse_free_param(f.get<std::string>(), "optimize.free"));
        spec.mirror_arms = get_bool_or(o, "optimize", "mirror_arms", false);
        spec.grid = parse_grid(o, "optimize", GridSpec{});
        spec.lambda_bounds = parse_lambda_bounds(o, "optimize");
        rc.optimize = spec;
    }

    if (j.contains("compare")) {
        const json& c = j["compare"];
        require_keys(c, "compare",
                     {"strategies", "lambda_grid", "loss_grid", "loss_grid_prime",
                      "coarse_points", "refine_rounds", "refine_points", "lambda_min",
                      "lambda_max", "pin_unsubtracted"});
        CompareSpec spec;
        if (!c.contains("strategies") || !c["strategies"].is_array() ||
            c["strategies"].size() < 1)
            throw config_error("compare: missing \"strategies\" array");
        for (const auto& s : c["strategies"]) {
            try {
                spec.strategies.push_back(Strategy::parse(s.get<std::string>()));
            } catch (const std::domain_error& e) {
                throw config_error(std::string("compare.strategies: ") + e.what());
            }
        }
        if (c.contains("lambda_grid"))
            spec.lambda_grid = parse_linear_grid(c["lambda_grid"], "compare.lambda_grid");
        if (c.contains("loss_grid"))
            spec.loss_grid = parse_linear_grid(c["loss_grid"], "compare.loss_grid");
        if (c.contains("loss_grid_prime"))
            spec.loss_grid_prime =
                parse_linear_grid(c["loss_grid_prime"], "compare.loss_grid_prime");
        if (spec.loss_grid && !spec.loss_grid_prime) spec.loss_grid_prime = spec.loss_grid;
        if (!spec.lambda_grid && !spec.loss_grid)
            throw config_error("compare: need \"lambda_grid\" or \"loss_grid\"");
        if (spec.lambda_grid && spec.loss_grid)
            throw config_error("compare: \"lambda_grid\" and \"loss_grid\" are exclusive");
        spec.grid = parse_grid(c, "compare", spec.grid);
        spec.lambda_bounds = parse_lambda_bounds(c, "compare");
        spec.pin_unsubtracted = get_bool_or(c, "compare", "pin_unsubtracted", true);
        rc.compare = spec;
    }

    return rc;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str());
}

} // namespace subsim
