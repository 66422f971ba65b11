#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <string>

#include <Eigen/Core>

#include "jsaforge/grid.hpp"

namespace jsaforge {

using Complex = std::complex<double>;

/// sin(x)/x with sinc(0) = 1.
double sinc(double x);

/// One-dimensional complex spectral amplitude: either a closed-form shape
/// (L2-normalized by construction) or a sampled/callable function.
class SpectralFn {
public:
  enum class Kind { Gaussian, Sinc, Sech, HermiteGauss, Sampled, Custom };

  /// exp(-(1+i*chirp) x^2/2) / pi^(1/4)
  static SpectralFn gaussian(double chirp = 0.0);
  /// sinc(x/alpha) / sqrt(alpha*pi)
  static SpectralFn sinc_fn(double alpha = 1.0);
  /// sech(x) / sqrt(2)
  static SpectralFn sech();
  /// n-th harmonic-oscillator eigenfunction psi_n(x)
  static SpectralFn hermite_gauss(int n);
  /// Values sampled on a grid; linear interpolation in between, zero outside.
  static SpectralFn sampled(const Grid1D& grid, Eigen::VectorXcd values);
  static SpectralFn custom(std::function<Complex(double)> fn, std::string label = "custom");

  Complex operator()(double x) const;
  Eigen::VectorXcd evaluate(const Eigen::VectorXd& xs) const;

  Kind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  double chirp() const { return chirp_; }
  bool closed_form() const { return kind_ != Kind::Sampled && kind_ != Kind::Custom; }
  const std::string& label() const { return label_; }

  /// Trapezoid L2 norm on the function's natural window (sampled grid when
  /// available, otherwise [-half_width, half_width]).
  double l2_norm(double half_width = 40.0, int n_points = 40001) const;

  /// Copy rescaled to unit L2 norm (no-op for closed forms).
  SpectralFn normalized() const;

  /// Throws InvalidSpectralFn unless the function is L2-normalized.
  void require_normalized(double tol = 1e-6) const;

private:
  SpectralFn() = default;
  Kind kind_ = Kind::Custom;
  double alpha_ = 1.0;
  double chirp_ = 0.0;
  int hermite_n_ = 0;
  std::string label_;
  // sampled payload
  std::shared_ptr<const Eigen::VectorXcd> samples_;
  Grid1D sample_grid_;
  std::function<Complex(double)> fn_;
};

}  // namespace jsaforge
