#include "nlrd/config.hpp"

#include <json.hpp>

#include <fstream>
#include <set>

namespace nlrd {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::string& where,
                    const std::set<std::string>& allowed) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (!allowed.count(key))
            throw ParameterError("unknown config key '" + where + key +
                                 "'; allowed keys here: " +
                                 [&] {
                                     std::string s;
                                     for (const auto& k : allowed) s += k + " ";
                                     return s;
                                 }());
    }
}

double get_num(const json& obj, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number())
        throw ParameterError(std::string("config key '") + key + "' must be a number");
    return obj[key].get<double>();
}

} // namespace

Problem RunConfig::problem() const {
    BistableNonlinearity nl = BistableNonlinearity::cubic(a);
    Kernel k;
    if (kernel_kind == "exponential")
        k = Kernel::exponential();
    else if (kernel_kind == "gaussian")
        k = Kernel::gaussian();
    else
        throw ParameterError("unknown kernel kind '" + kernel_kind +
                             "' (expected exponential or gaussian)");
    return Problem{nl, k, d};
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open config: " + path.string());
    json root;
    try {
        root = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParameterError("config parse error in " + path.string() + ": " + e.what());
    }
    RunConfig cfg;
    reject_unknown(root, "",
                   {"nonlinearity", "kernel", "d", "grid", "scheme", "classify", "out",
                    "jobs"});
    if (root.contains("nonlinearity")) {
        const json& nl = root["nonlinearity"];
        reject_unknown(nl, "nonlinearity.", {"kind", "a"});
        if (nl.contains("kind")) cfg.nonlinearity_kind = nl["kind"].get<std::string>();
        cfg.a = get_num(nl, "a", cfg.a);
    }
    if (root.contains("kernel")) {
        const json& k = root["kernel"];
        reject_unknown(k, "kernel.", {"kind"});
        if (k.contains("kind")) cfg.kernel_kind = k["kind"].get<std::string>();
    }
    cfg.d = get_num(root, "d", cfg.d);
    if (root.contains("grid")) {
        const json& g = root["grid"];
        reject_unknown(g, "grid.", {"N", "L"});
        cfg.grid.n = static_cast<int>(get_num(g, "N", cfg.grid.n));
        cfg.grid.half_width = get_num(g, "L", cfg.grid.half_width);
    }
    if (root.contains("scheme")) {
        const json& s = root["scheme"];
        reject_unknown(s, "scheme.", {"dt", "method", "reaction_substeps"});
        cfg.scheme.dt = get_num(s, "dt", cfg.scheme.dt);
        if (s.contains("method")) {
            const std::string m = s["method"].get<std::string>();
            if (m == "strang")
                cfg.scheme.scheme = Scheme::Strang;
            else if (m == "richardson4")
                cfg.scheme.scheme = Scheme::Richardson4;
            else
                throw ParameterError("scheme.method must be strang or richardson4, got '" +
                                     m + "'");
        }
        cfg.scheme.reaction_substeps =
            static_cast<int>(get_num(s, "reaction_substeps", cfg.scheme.reaction_substeps));
    }
    if (root.contains("classify")) {
        const json& c = root["classify"];
        reject_unknown(c, "classify.",
                       {"Tf", "check_window", "eps_zero", "eps_one", "eps_steady",
                        "prop_interval_halfwidth", "cadence", "ell_tol_rel"});
        cfg.classify.T_f = get_num(c, "Tf", cfg.classify.T_f);
        cfg.classify.check_window = get_num(c, "check_window", cfg.classify.check_window);
        cfg.classify.eps_zero = get_num(c, "eps_zero", cfg.classify.eps_zero);
        cfg.classify.eps_one = get_num(c, "eps_one", cfg.classify.eps_one);
        cfg.classify.eps_steady = get_num(c, "eps_steady", cfg.classify.eps_steady);
        cfg.classify.prop_interval_halfwidth =
            get_num(c, "prop_interval_halfwidth", cfg.classify.prop_interval_halfwidth);
        cfg.classify.cadence = static_cast<int>(get_num(c, "cadence", cfg.classify.cadence));
        cfg.ell_tol_rel = get_num(c, "ell_tol_rel", cfg.ell_tol_rel);
    }
    if (root.contains("out")) cfg.out_dir = root["out"].get<std::string>();
    if (root.contains("jobs")) cfg.jobs = static_cast<int>(get_num(root, "jobs", 0));
    return cfg;
}

void apply_preset(RunConfig& cfg, const std::string& name) {
    if (name == "paper") {
        cfg.grid.n = 1 << 14;
        cfg.grid.half_width = 10.0 * M_PI;
        cfg.scheme.dt = 0.01;
        cfg.classify.T_f = 500.0;
    } else if (name == "desk") {
        cfg.grid.n = 1 << 12;
        cfg.grid.half_width = 10.0 * M_PI;
        cfg.scheme.dt = 0.01;
        cfg.classify.T_f = 200.0;
    } else {
        throw ParameterError("unknown preset '" + name + "' (expected paper or desk)");
    }
}

void validate(const RunConfig& cfg) {
    if (cfg.nonlinearity_kind != "cubic")
        throw ParameterError("nonlinearity.kind must be 'cubic' in config files (custom "
                             "nonlinearities are a library-level feature)");
    if (!(cfg.a > 0.0 && cfg.a < 0.5))
        throw ParameterError("nonlinearity.a must satisfy 0 < a < 1/2, got " +
                             std::to_string(cfg.a));
    if (!(cfg.d > 0.0))
        throw ParameterError("d must be positive, got " + std::to_string(cfg.d));
    validate(cfg.grid);
    validate(cfg.scheme);
    const Problem p = cfg.problem();
    validate(p);
    validate(cfg.classify, p);
    if (!(cfg.ell_tol_rel > 0.0 && cfg.ell_tol_rel < 0.1))
        throw ParameterError("classify.ell_tol_rel must lie in (0, 0.1)");
    if (cfg.jobs < 0) throw ParameterError("jobs must be >= 0");
}

std::string to_json_string(const RunConfig& cfg) {
    json root;
    root["nonlinearity"] = {{"kind", cfg.nonlinearity_kind}, {"a", cfg.a}};
    root["kernel"] = {{"kind", cfg.kernel_kind}};
    root["d"] = cfg.d;
    root["grid"] = {{"N", cfg.grid.n}, {"L", cfg.grid.half_width}};
    root["scheme"] = {
        {"dt", cfg.scheme.dt},
        {"method", cfg.scheme.scheme == Scheme::Strang ? "strang" : "richardson4"},
        {"reaction_substeps", cfg.scheme.reaction_substeps}};
    root["classify"] = {{"Tf", cfg.classify.T_f},
                        {"check_window", cfg.classify.check_window},
                        {"eps_zero", cfg.classify.eps_zero},
                        {"eps_one", cfg.classify.eps_one},
                        {"eps_steady", cfg.classify.eps_steady},
                        {"prop_interval_halfwidth", cfg.classify.prop_interval_halfwidth},
                        {"cadence", cfg.classify.cadence},
                        {"ell_tol_rel", cfg.ell_tol_rel}};
    root["out"] = cfg.out_dir;
    root["jobs"] = cfg.jobs;
    return root.dump(2);
}

} // namespace nlrd
