#pragma once

#include <vector>

#include "json.hpp"

#include "pdmsusy/expr.hpp"

namespace pdmsusy::cli {

inline nlohmann::json to_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

inline nlohmann::json to_json(const std::vector<Complex>& zs) {
    nlohmann::json out = nlohmann::json::array();
    for (const Complex z : zs) out.push_back(to_json(z));
    return out;
}

inline nlohmann::json to_json(const ParamEnv& env) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [name, value] : env.values()) out[name] = to_json(value);
    return out;
}

}  // namespace pdmsusy::cli
