#pragma once

namespace jsaforge {

/// Quadratic-form coefficients of the Gaussian-Gaussian joint amplitude:
/// c11 = 1+r^2, c12 = 1+rs, c22 = 1+s^2.
struct CorrelationMatrix {
  double c11;
  double c12;
  double c22;
};

CorrelationMatrix gaussian_correlation_matrix(double r, double s);

/// Exact purity for Gaussian pump and phase matching:
/// |r-s| / sqrt((1+r^2)(1+s^2)). Throws DegenerateGroupVelocities at r = s.
double gaussian_purity(double r, double s);

/// True iff |rs + 1| <= tol, the exact-separability condition.
bool separability_condition(double r, double s, double tol = 1e-9);

/// Large-r limit 1 - 1/(2 r^2) of the s = 0 Gaussian purity.
double asymptotic_gaussian_purity(double r);

/// PMF angle atan(s^2) on the separability manifold rs = -1.
double separable_pmf_angle(double s);

}  // namespace jsaforge
