#pragma once

#include <string>

#include <Eigen/Core>

#include "jsaforge/grid.hpp"
#include "jsaforge/spectral_fn.hpp"

namespace jsaforge {

/// Two-variable complex amplitude sampled on a rectangular (x, y) grid.
/// values(i, j) = Psi(x_i, y_j).
struct JointAmplitude {
  Eigen::MatrixXcd values;
  Grid1D x_grid;
  Grid1D y_grid;
  /// Set when the amplitude at the grid boundary exceeds 1e-6 of the peak,
  /// i.e. the window is too small for the tails.
  bool boundary_warning = false;

  double dx() const { return x_grid.step(); }
  double dy() const { return y_grid.step(); }

  /// Discrete L2 norm  sqrt(sum |values|^2 dx dy).
  double norm() const;
  void renormalize();

  /// CSV with header and columns x,y,re,im (row-major over the grid).
  void save_csv(const std::string& path) const;
  static JointAmplitude load_csv(const std::string& path);

  /// Single-line JSON header followed by raw little-endian float64 pairs
  /// (re, im), row-major.
  void save_binary(const std::string& path) const;
  static JointAmplitude load_binary(const std::string& path);
};

}  // namespace jsaforge
