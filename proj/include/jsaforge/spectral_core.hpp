#pragma once

#include <vector>

#include <Eigen/Core>

#include "jsaforge/joint_amplitude.hpp"
#include "jsaforge/spectral_fn.hpp"

namespace jsaforge {

/// Schmidt spectrum of a joint amplitude: normalized coefficients
/// (descending), purity = sum lambda^4 and Schmidt number 1/purity.
struct SchmidtResult {
  Eigen::VectorXd singular_values;
  double purity = 0.0;
  double schmidt_number = 0.0;

  std::string to_json() const;
};

/// Full Schmidt decomposition. Columns of modes_x / modes_y are the
/// continuum-normalized mode functions u_k(x), v_k(y) so that
/// Psi(x, y) = sum_k coefficients[k] u_k(x) v_k(y).
struct SchmidtModes {
  Eigen::MatrixXcd modes_x;
  Eigen::MatrixXcd modes_y;
  Eigen::VectorXd coefficients;
};

/// Psi(x, y) = sqrt|r - s| * pmf(r x + s y) * pump(x + y), renormalized on
/// the grid. Throws DegenerateGroupVelocities when r == s.
JointAmplitude build_jsa(const SpectralFn& pmf, const SpectralFn& pump, double r, double s,
                         const Grid1D& gx, const Grid1D& gy);

/// Frequency-conversion transfer function
/// sqrt|r - s| * pmf(r x - s y) * conj(pump(x - y)).
JointAmplitude to_frequency_conversion(const SpectralFn& pmf, const SpectralFn& pump, double r,
                                       double s, const Grid1D& gx, const Grid1D& gy);

/// Purity via singular values of the measure-weighted sample matrix.
SchmidtResult purity_schmidt(const JointAmplitude& j);

/// Purity via direct double quadrature of the reduced one-body kernel
/// rho(x, x') = Int dy Psi(x, y) conj(Psi(x', y)). Independent of the SVD
/// route; kept brute-force on purpose.
double purity_integral(const JointAmplitude& j);

/// Angle of the phase-matching contours against the y = 0 axis:
/// atan(-s/r). Throws UndefinedAngle for r = 0.
double pmf_angle(double r, double s);

SchmidtModes schmidt_decompose(const JointAmplitude& j);

}  // namespace jsaforge
