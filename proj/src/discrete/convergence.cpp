#include "pdmsusy/discrete/convergence.hpp"

#include <cmath>

#include "pdmsusy/error.hpp"

namespace pdmsusy::discrete {

double log_log_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw ConfigError("slope fit needs matching samples, at least two");
    const double count = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = count * sxx - sx * sx;
    if (denom == 0.0) throw ConfigError("slope fit needs distinct abscissae");
    return (count * sxy - sx * sy) / denom;
}

std::vector<Grid> refinement_sequence(const Grid& coarse, int refinements) {
    if (refinements < 0) throw ConfigError("refinements must be >= 0");
    std::vector<Grid> grids{coarse};
    for (int k = 0; k < refinements; ++k) grids.push_back(grids.back().refined());
    return grids;
}

std::map<std::string, ConvergenceResult> convergence_study(const ResidualBuilder& builder,
                                                           const std::vector<Grid>& grids) {
    if (grids.size() < 3) throw ConfigError("convergence study needs at least three grids");
    for (std::size_t i = 1; i < grids.size(); ++i) {
        const double ratio = grids[i - 1].spacing() / grids[i].spacing();
        if (std::abs(ratio - 2.0) > 1e-9) throw ConfigError("convergence study grids must halve h successively");
    }

    std::map<std::string, ConvergenceResult> out;
    for (const Grid& g : grids) {
        for (const auto& [name, value] : builder(g)) {
            auto& r = out[name];
            r.spacings.push_back(g.spacing());
            r.residuals.push_back(value);
        }
    }
    for (auto& [name, r] : out) {
        if (r.residuals.size() != grids.size()) throw ConfigError("residual '" + name + "' missing on some grid");
        for (double v : r.residuals) {
            if (!(v >= kResidualFloor)) r.at_floor = true;
        }
        if (!r.at_floor) r.order = log_log_slope(r.spacings, r.residuals);
    }
    return out;
}

}  // namespace pdmsusy::discrete
