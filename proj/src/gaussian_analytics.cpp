#include "jsaforge/gaussian_analytics.hpp"

#include <cmath>
#include <string>

#include "jsaforge/errors.hpp"

namespace jsaforge {

CorrelationMatrix gaussian_correlation_matrix(double r, double s) {
  return {1.0 + r * r, 1.0 + r * s, 1.0 + s * s};
}

double gaussian_purity(double r, double s) {
  if (std::abs(r - s) <= 1e-12)
    throw DegenerateGroupVelocities("gaussian_purity undefined for r == s (r = " +
                                    std::to_string(r) + ")");
  return std::abs(r - s) / std::sqrt((1.0 + r * r) * (1.0 + s * s));
}

bool separability_condition(double r, double s, double tol) {
  return std::abs(r * s + 1.0) <= tol;
}

double asymptotic_gaussian_purity(double r) {
  if (r == 0.0) throw DomainError("asymptotic_gaussian_purity: r must be nonzero");
  return 1.0 - 1.0 / (2.0 * r * r);
}

double separable_pmf_angle(double s) { return std::atan(s * s); }

}  // namespace jsaforge
