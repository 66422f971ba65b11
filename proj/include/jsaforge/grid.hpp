#pragma once

#include <Eigen/Core>

#include "jsaforge/errors.hpp"

namespace jsaforge {

/// Uniform one-dimensional grid over a dimensionless frequency interval.
struct Grid1D {
  double min = -8.0;
  double max = 8.0;
  int n_points = 512;

  Grid1D() = default;
  Grid1D(double lo, double hi, int n) : min(lo), max(hi), n_points(n) {
    if (!(lo < hi)) throw DomainError("Grid1D: min must be < max");
    if (n < 2) throw DomainError("Grid1D: need at least 2 points");
  }

  double step() const { return (max - min) / (n_points - 1); }
  double point(int i) const { return min + i * step(); }

  Eigen::VectorXd points() const {
    return Eigen::VectorXd::LinSpaced(n_points, min, max);
  }

  bool operator==(const Grid1D& o) const {
    return min == o.min && max == o.max && n_points == o.n_points;
  }
};

/// Default grid pair for a JSA at group-velocity parameters (r, s).
/// The window shrinks as 1/|r| (resp. 1/|s|) so the narrow direction of
/// the phase-matching function stays resolved.
inline std::pair<Grid1D, Grid1D> default_grids(double r, double s, int n_points = 512) {
  const double wx = 8.0 / std::max(std::abs(r), 1.0);
  const double wy = 8.0 / std::max(std::abs(s), 1.0);
  return {Grid1D(-wx, wx, n_points), Grid1D(-wy, wy, n_points)};
}

}  // namespace jsaforge
