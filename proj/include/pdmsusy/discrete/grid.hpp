#pragma once

#include <vector>

namespace pdmsusy::discrete {

/// Uniform grid x_i = x_min + i h, i = 0..points-1, h = (x_max - x_min)/(points - 1).
class Grid {
public:
    /// Throws ConfigError unless x_min < x_max and points >= 16.
    Grid(double x_min, double x_max, int points);

    double x_min() const noexcept { return x_min_; }
    double x_max() const noexcept { return x_max_; }
    int points() const noexcept { return points_; }
    double spacing() const noexcept { return h_; }
    double node(int i) const noexcept { return x_min_ + i * h_; }
    std::vector<double> nodes() const;
    /// x_min = -x_max to 1e-14.
    bool symmetric() const noexcept;
    /// Same interval with half the spacing (2 points - 1 nodes).
    Grid refined() const { return Grid(x_min_, x_max_, 2 * points_ - 1); }

    friend bool operator==(const Grid& a, const Grid& b) noexcept {
        return a.x_min_ == b.x_min_ && a.x_max_ == b.x_max_ && a.points_ == b.points_;
    }

private:
    double x_min_;
    double x_max_;
    int points_;
    double h_;
};

}  // namespace pdmsusy::discrete
