#pragma once

#include <complex>

#include "jsaforge/fock.hpp"

namespace jsaforge {

/// Second moments of a zero-displacement single-mode state:
/// n = <a^dag a>, m = <a^2>. The uncertainty principle bounds
/// |m| <= sqrt(n(n+1)), with equality only for squeezed vacua.
struct Moments {
  double n = 0.0;
  Complex m = 0.0;
};

/// Ladder-algebra moments of a ket. Throws DisplacementError when <a> is
/// not zero (the closed-form results below assume zero displacement).
Moments moments(const FockKet& k);

/// Moments after squeezing by S(nu).
Moments squeeze_moments(const Moments& in, double nu);

/// Small-theta purity
/// 1 - (2 theta)^2 (n_phi n_gp + (n_gp + n_phi)/2 - Re[conj(m_gp) m_phi]).
/// Accurate to O(theta^4); intended for |theta| < ~0.3.
double purity_small_theta(double theta, const Moments& phi, const Moments& gamma_prime);

struct OptimalPump {
  /// Optimal mean photon number of the pump ket.
  double n;
  /// Squeeze parameter with sinh^2(ln mu) = n and the orientation that
  /// matches a positive-real m.
  double mu;
};

/// Closed-form pump photon number maximizing the small-theta purity for a
/// fixed phase-matching ket.
OptimalPump optimal_pump_n(const Moments& phi);

/// Asymptotic purity for |r| >> 1, s -> 0:
/// 1 - (1/(2 r^2)) (1 - 2 Re m_g + 2 n_g)(1 + 2 Re m_p + 2 n_p).
double asymptotic_purity_general(double r, const Moments& phi, const Moments& gamma);

}  // namespace jsaforge
