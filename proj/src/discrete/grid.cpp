#include "pdmsusy/discrete/grid.hpp"

#include <algorithm>
#include <cmath>

#include "pdmsusy/error.hpp"

namespace pdmsusy::discrete {

Grid::Grid(double x_min, double x_max, int points) : x_min_(x_min), x_max_(x_max), points_(points) {
    if (!(x_min < x_max)) throw ConfigError("grid requires xmin < xmax");
    if (points < 16) throw ConfigError("grid.points must be >= 16");
    h_ = (x_max - x_min) / (points - 1);
}

std::vector<double> Grid::nodes() const {
    std::vector<double> xs(static_cast<std::size_t>(points_));
    for (int i = 0; i < points_; ++i) xs[static_cast<std::size_t>(i)] = node(i);
    return xs;
}

bool Grid::symmetric() const noexcept {
    return std::abs(x_min_ + x_max_) <= 1e-14 * std::max(1.0, std::abs(x_max_));
}

}  // namespace pdmsusy::discrete
