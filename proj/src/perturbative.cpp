#include "jsaforge/perturbative.hpp"

#include <cmath>

#include "jsaforge/errors.hpp"

namespace jsaforge {

Moments moments(const FockKet& k) {
  const int n = k.n_trunc();
  const double total = k.coeffs.squaredNorm();
  if (!(total > 0)) throw DomainError("moments: zero ket");
  Complex disp = 0.0;
  for (int i = 0; i + 1 < n; ++i)
    disp += std::sqrt(i + 1.0) * std::conj(k.coeffs(i)) * k.coeffs(i + 1);
  disp /= total;
  if (std::abs(disp) > 1e-8)
    throw DisplacementError("moments: ket has nonzero displacement |<a>| = " +
                            std::to_string(std::abs(disp)));
  Moments m;
  for (int i = 0; i < n; ++i) m.n += i * std::norm(k.coeffs(i));
  for (int i = 0; i + 2 < n; ++i)
    m.m += std::sqrt((i + 1.0) * (i + 2.0)) * std::conj(k.coeffs(i)) * k.coeffs(i + 2);
  m.n /= total;
  m.m /= total;
  return m;
}

Moments squeeze_moments(const Moments& in, double nu) {
  if (!(nu > 0)) throw DomainError("squeeze_moments: nu must be positive");
  const double rho = std::log(nu);
  const double ch = std::cosh(rho), sh = std::sinh(rho);
  Moments out;
  out.n = (ch * ch + sh * sh) * in.n + sh * sh - 2.0 * ch * sh * in.m.real();
  out.m = ch * ch * in.m + sh * sh * std::conj(in.m) - ch * sh * (2.0 * in.n + 1.0);
  return out;
}

double purity_small_theta(double theta, const Moments& phi, const Moments& gamma_prime) {
  const double bracket = phi.n * gamma_prime.n + 0.5 * (gamma_prime.n + phi.n) -
                         (std::conj(gamma_prime.m) * phi.m).real();
  return 1.0 - 4.0 * theta * theta * bracket;
}

OptimalPump optimal_pump_n(const Moments& phi) {
  const double n = phi.n;
  const double am = std::abs(phi.m);
  const double bound = std::sqrt(n * (n + 1.0));
  if (am > bound + 1e-9)
    throw DomainError("optimal_pump_n: moments violate |m| <= sqrt(n(n+1))");
  const double am2 = std::min(am * am, n * (n + 1.0));
  const double q = 2.0 * n + 1.0;
  const double den = 8.0 * am2 - 2.0 * q * q;
  double n_opt;
  if (std::abs(den) < 1e-12) {
    // only reachable at the squeezed-state boundary; the limit value is n
    throw DegenerateOptimum("optimal_pump_n: degenerate denominator");
  } else {
    const double root = std::sqrt(q * q * (q * q - 4.0 * am2));
    n_opt = (1.0 + 4.0 * n * (n + 1.0) - 4.0 * am2 - root) / den;
  }
  if (n_opt < 0) n_opt = 0;
  OptimalPump out;
  out.n = n_opt;
  // mu < 1 orients the squeeze so that m is positive real
  out.mu = std::exp(-std::asinh(std::sqrt(n_opt)));
  return out;
}

double asymptotic_purity_general(double r, const Moments& phi, const Moments& gamma) {
  if (r == 0.0) throw DomainError("asymptotic_purity_general: r must be nonzero");
  const double g_term = 1.0 - 2.0 * gamma.m.real() + 2.0 * gamma.n;
  const double p_term = 1.0 + 2.0 * phi.m.real() + 2.0 * phi.n;
  if (!(g_term > 0.0) || !(p_term > 0.0))
    throw DomainError("asymptotic_purity_general: bracket factors must be positive");
  return 1.0 - (g_term * p_term) / (2.0 * r * r);
}

}  // namespace jsaforge
