#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "pdmsusy/expr.hpp"
#include "pdmsusy/model.hpp"

namespace pdmsusy::cli {

/// Every check a config may request.
const std::vector<std::string>& known_checks();

/// Tolerance names with their defaults.
const std::map<std::string, double>& default_tolerances();

struct GridConfig {
    double xmin = -1.0;
    double xmax = 1.0;
    int points = 201;
};

struct RunConfig {
    int order = 1;
    std::string mass_source;
    Expr mass;
    SuperpotentialKind superpotential_kind = SuperpotentialKind::Deformed;
    std::string superpotential_source;
    Expr superpotential;
    ParamEnv params;
    std::vector<Complex> susy_constants;
    Ambiguity ambiguity;
    GridConfig grid;
    std::string boundary = "dirichlet";
    std::vector<std::string> checks;
    std::map<std::string, double> tolerances;
    std::string report_path;
    std::string curves_path;

    /// The model on the grid window.
    ModelSpec model() const;
    double tol(const std::string& name) const;
};

/// Validates a parsed document. Errors name the offending field path.
RunConfig config_from_json(const nlohmann::json& doc);

/// Reads and validates a config file.
RunConfig load_config(const std::filesystem::path& path);

/// Applies a "name=value" override; throws ConfigError for unknown names.
void apply_tolerance_override(RunConfig& config, std::string_view assignment);

}  // namespace pdmsusy::cli
