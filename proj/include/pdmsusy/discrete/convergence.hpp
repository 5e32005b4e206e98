#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "pdmsusy/discrete/grid.hpp"

namespace pdmsusy::discrete {

/// Residuals below this are treated as converged to round-off.
inline constexpr double kResidualFloor = 1e-14;

struct ConvergenceResult {
    std::vector<double> spacings;
    std::vector<double> residuals;
    /// Least-squares slope of log(residual) against log(h).
    double order = 0.0;
    /// Some residual fell below kResidualFloor; the slope is not meaningful.
    bool at_floor = false;
};

/// Slope of the least-squares line through (log x, log y).
double log_log_slope(std::span<const double> x, std::span<const double> y);

/// Grids in order: `coarse`, then `refinements` successive halvings.
std::vector<Grid> refinement_sequence(const Grid& coarse, int refinements);

using ResidualBuilder = std::function<std::map<std::string, double>(const Grid&)>;

/// Runs `builder` on each grid and fits an order per residual name.
/// Requires at least three grids, each halving the spacing of the previous
/// one; throws ConfigError otherwise.
std::map<std::string, ConvergenceResult> convergence_study(const ResidualBuilder& builder,
                                                           const std::vector<Grid>& grids);

}  // namespace pdmsusy::discrete
