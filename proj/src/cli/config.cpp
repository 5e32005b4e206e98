#include "pdmsusy/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <set>

#include "pdmsusy/error.hpp"

namespace pdmsusy::cli {

using nlohmann::json;

const std::vector<std::string>& known_checks() {
    static const std::vector<std::string> checks{
        "symmetry", "riccati",  "delta_v", "delta_u",           "u0_routes",   "reductions", "eigenvalues",
        "spectrum_match", "pseudo", "cpt", "susy", "conjugate_closure", "convergence",
    };
    return checks;
}

const std::map<std::string, double>& default_tolerances() {
    static const std::map<std::string, double> tolerances{
        {"identity", 1e-9},   {"symmetry", 1e-12}, {"slope_min", 1.7},
        {"slope_max", 2.3},   {"eigen_match", 5e-3}, {"closure", 1e-6},
    };
    return tolerances;
}

ModelSpec RunConfig::model() const {
    ModelSpec spec;
    spec.order = order;
    spec.mass = MassFn(mass, grid.xmin, grid.xmax);
    spec.superpotential = {superpotential_kind, superpotential};
    spec.susy_constants = susy_constants;
    spec.ambiguity = ambiguity;
    spec.params = params;
    return spec;
}

double RunConfig::tol(const std::string& name) const {
    const auto it = tolerances.find(name);
    if (it == tolerances.end()) throw ConfigError("unknown tolerance '" + name + "'");
    return it->second;
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw ConfigError(path + ": " + what); }

void reject_unknown_keys(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, value] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            fail(path.empty() ? key : path + "." + key, "unknown key");
        }
    }
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key)) fail(path.empty() ? key : path + "." + key, "missing required field");
    return obj.at(key);
}

double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    return v.get<double>();
}

std::string as_string(const json& v, const std::string& path) {
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
}

// A real number or a [re, im] pair.
Complex as_complex(const json& v, const std::string& path) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        return {v[0].get<double>(), v[1].get<double>()};
    }
    fail(path, "expected a number or a [re, im] pair");
}

Expr parse_field(const std::string& source, const std::string& path) {
    try {
        return parse(source);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what(), e.offset());
    }
}

void collect_parameters(const Expr& e, std::set<std::string>& out) {
    if (e.kind() == Expr::Kind::Parameter) out.insert(e.name());
    for (const Expr& child : e.children()) collect_parameters(child, out);
}

void require_bound(const Expr& e, const ParamEnv& env, const std::string& path) {
    std::set<std::string> names;
    collect_parameters(e, names);
    for (const auto& name : names) {
        if (!env.contains(name)) fail(path, "parameter '" + name + "' is not bound in params");
    }
}

}  // namespace

RunConfig config_from_json(const json& doc) {
    if (!doc.is_object()) fail("<root>", "expected an object");
    reject_unknown_keys(doc, "",
                        {"order", "mass", "superpotential", "params", "susy_constants", "ambiguity", "grid",
                         "boundary", "checks", "tolerances", "output"});
    RunConfig cfg;

    const json& order = require(doc, "order", "");
    if (!order.is_number_integer() || order.get<long>() < 1) fail("order", "expected an integer >= 1");
    cfg.order = order.get<int>();

    cfg.mass_source = as_string(require(doc, "mass", ""), "mass");
    cfg.mass = parse_field(cfg.mass_source, "mass");

    const json& sp = require(doc, "superpotential", "");
    if (!sp.is_object()) fail("superpotential", "expected an object");
    reject_unknown_keys(sp, "superpotential", {"kind", "expr"});
    const std::string kind = as_string(require(sp, "kind", "superpotential"), "superpotential.kind");
    if (kind == "constant_mass") {
        cfg.superpotential_kind = SuperpotentialKind::ConstantMass;
    } else if (kind == "deformed") {
        cfg.superpotential_kind = SuperpotentialKind::Deformed;
    } else {
        fail("superpotential.kind", "expected \"constant_mass\" or \"deformed\"");
    }
    cfg.superpotential_source = as_string(require(sp, "expr", "superpotential"), "superpotential.expr");
    cfg.superpotential = parse_field(cfg.superpotential_source, "superpotential.expr");

    if (doc.contains("params")) {
        const json& params = doc.at("params");
        if (!params.is_object()) fail("params", "expected an object");
        std::map<std::string, Complex> values;
        for (const auto& [name, value] : params.items()) {
            if (name == "x" || name == "i" || name == "pi" || func_from_name(name)) {
                fail("params." + name, "reserved name");
            }
            values[name] = as_complex(value, "params." + name);
        }
        cfg.params = ParamEnv(std::move(values));
    }

    const json& l = require(doc, "susy_constants", "");
    if (!l.is_array()) fail("susy_constants", "expected an array");
    for (std::size_t k = 0; k < l.size(); ++k) {
        cfg.susy_constants.push_back(as_complex(l[k], "susy_constants[" + std::to_string(k) + "]"));
    }
    if (static_cast<int>(cfg.susy_constants.size()) != cfg.order) {
        fail("susy_constants", "expected " + std::to_string(cfg.order) + " values (one per order), got " +
                                   std::to_string(cfg.susy_constants.size()));
    }

    if (doc.contains("ambiguity")) {
        const json& amb = doc.at("ambiguity");
        if (!amb.is_object()) fail("ambiguity", "expected an object");
        reject_unknown_keys(amb, "ambiguity", {"a", "b"});
        if (amb.contains("a")) cfg.ambiguity.a = as_number(amb.at("a"), "ambiguity.a");
        if (amb.contains("b")) cfg.ambiguity.b = as_number(amb.at("b"), "ambiguity.b");
    }

    if (doc.contains("grid")) {
        const json& grid = doc.at("grid");
        if (!grid.is_object()) fail("grid", "expected an object");
        reject_unknown_keys(grid, "grid", {"xmin", "xmax", "points"});
        cfg.grid.xmin = as_number(require(grid, "xmin", "grid"), "grid.xmin");
        cfg.grid.xmax = as_number(require(grid, "xmax", "grid"), "grid.xmax");
        const json& points = require(grid, "points", "grid");
        if (!points.is_number_integer()) fail("grid.points", "expected an integer");
        cfg.grid.points = points.get<int>();
    }
    if (!(cfg.grid.xmin < cfg.grid.xmax)) fail("grid", "xmin must be less than xmax");
    if (cfg.grid.points < 16) fail("grid.points", "must be >= 16");

    if (doc.contains("boundary")) {
        cfg.boundary = as_string(doc.at("boundary"), "boundary");
        if (cfg.boundary != "dirichlet") fail("boundary", "only \"dirichlet\" is supported");
    }

    if (doc.contains("checks")) {
        const json& checks = doc.at("checks");
        if (!checks.is_array()) fail("checks", "expected an array");
        std::set<std::string> seen;
        for (std::size_t k = 0; k < checks.size(); ++k) {
            const std::string path = "checks[" + std::to_string(k) + "]";
            const std::string name = as_string(checks[k], path);
            const auto& known = known_checks();
            if (std::find(known.begin(), known.end(), name) == known.end()) {
                std::string list;
                for (const auto& c : known) list += (list.empty() ? "" : ", ") + c;
                fail(path, "unknown check '" + name + "'; valid checks: " + list);
            }
            if (seen.insert(name).second) cfg.checks.push_back(name);
        }
    }

    cfg.tolerances = default_tolerances();
    if (doc.contains("tolerances")) {
        const json& tols = doc.at("tolerances");
        if (!tols.is_object()) fail("tolerances", "expected an object");
        for (const auto& [name, value] : tols.items()) {
            if (!cfg.tolerances.count(name)) fail("tolerances." + name, "unknown tolerance");
            cfg.tolerances[name] = as_number(value, "tolerances." + name);
        }
    }

    if (doc.contains("output")) {
        const json& out = doc.at("output");
        if (!out.is_object()) fail("output", "expected an object");
        reject_unknown_keys(out, "output", {"report", "curves"});
        if (out.contains("report")) cfg.report_path = as_string(out.at("report"), "output.report");
        if (out.contains("curves")) cfg.curves_path = as_string(out.at("curves"), "output.curves");
    }

    require_bound(cfg.mass, cfg.params, "mass");
    require_bound(cfg.superpotential, cfg.params, "superpotential.expr");
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return config_from_json(doc);
}

void apply_tolerance_override(RunConfig& config, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) throw ConfigError("--tol expects name=value, got '" + std::string(assignment) + "'");
    const std::string name(assignment.substr(0, eq));
    const std::string_view text = assignment.substr(eq + 1);
    if (!config.tolerances.count(name)) throw ConfigError("--tol: unknown tolerance '" + name + "'");
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError("--tol: '" + std::string(text) + "' is not a number");
    }
    config.tolerances[name] = value;
}

}  // namespace pdmsusy::cli
