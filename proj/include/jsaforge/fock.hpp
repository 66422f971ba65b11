#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "jsaforge/joint_amplitude.hpp"
#include "jsaforge/spectral_fn.hpp"

namespace jsaforge {

/// Finite coefficient vector over number states |0..N-1>.
struct FockKet {
  Eigen::VectorXcd coeffs;
  /// Set when a projection or operator application left more than 1% of the
  /// weight in the top truncation levels.
  bool truncation_warning = false;

  FockKet() = default;
  explicit FockKet(Eigen::VectorXcd c) : coeffs(std::move(c)) {}

  int n_trunc() const { return static_cast<int>(coeffs.size()); }
  double norm() const { return coeffs.norm(); }
  void normalize();

  /// Weight in the top `levels` coefficients; truncation quality diagnostic.
  double tail_weight(int levels = 5) const;

  std::string to_json() const;
  static FockKet from_json(const std::string& text);
};

/// Harmonic-oscillator eigenfunction psi_n(x), evaluated by the three-term
/// recurrence on the normalized functions.
double hermite_wavefunction(int n, double x);

/// Table psi_n(x_i) for n < n_max; shape (xs.size(), n_max).
Eigen::MatrixXd hermite_table(const Eigen::VectorXd& xs, int n_max);

/// Coefficients c_n = Int psi_n(x) f(x) dx of a spectral function, renormalized.
FockKet project_to_fock(const SpectralFn& f, int n_trunc);

/// Position wavefunction sum_n c_n psi_n(x) of a ket on a grid.
Eigen::VectorXcd synthesize_wavefunction(const FockKet& k, const Grid1D& g);

/// Matrix of exp((ln mu / 2)(a^2 - a^dag^2)) in the truncated number basis.
/// Built at n_trunc + buffer levels and cropped, so the interior block is
/// unitary to high accuracy. mu > 1 narrows the position wavefunction.
Eigen::MatrixXd squeeze_operator(double mu, int n_trunc, int buffer = 20);

/// Squeezed vacuum S(mu)|0>, optionally with a squeezing phase applied to
/// the two-photon generator.
FockKet squeezed_vacuum(double mu, int n_trunc, double phase = 0.0);

/// cn -> (-1)^n cn; position-space inversion.
FockKet parity_apply(const FockKet& k);

/// Two-mode coefficient matrix, coeffs(n, m) = amplitude of |n> x |m>.
struct TwoModeFockState {
  Eigen::MatrixXcd coeffs;
};

/// Two-mode rotation exp(theta (a^dag b - a b^dag)). Conserves total photon
/// number, so it is applied block-by-block per total-number sector; each
/// block is the exact matrix exponential of its generator block.
class BeamSplitter {
public:
  BeamSplitter(double theta, int n_trunc);

  double theta() const { return theta_; }
  int n_trunc() const { return n_trunc_; }

  /// Apply to a coefficient matrix of any square size; exact within the
  /// represented sectors. `leak` (optional) receives the weight rotated
  /// past the truncation box.
  Eigen::MatrixXcd apply(const Eigen::MatrixXcd& x, double* leak = nullptr) const;
  /// Apply the inverse rotation (theta -> -theta).
  Eigen::MatrixXcd apply_inverse(const Eigen::MatrixXcd& x, double* leak = nullptr) const;

  /// Dense matrix on the |n> x |m> product basis, index n * n_trunc + m.
  Eigen::MatrixXd dense() const;

  /// Materialize all sector rotations up to the given total photon number.
  /// apply() is only safe to share across threads after this has covered
  /// every sector the calls will touch.
  void precompute(int max_total) const;

private:
  const Eigen::MatrixXd& block(int total) const;
  Eigen::MatrixXcd apply_impl(const Eigen::MatrixXcd& x, bool inverse, double* leak) const;

  double theta_;
  int n_trunc_;
  mutable std::vector<Eigen::MatrixXd> blocks_;
};

/// Dense two-mode beam-splitter matrix (convenience wrapper).
Eigen::MatrixXd beamsplitter_operator(double theta, int n_trunc);

/// Parameter bundle of the oscillator construction of the JSA.
struct BeamSplitterMap {
  double theta;
  double kappa;
  double sigma;
  double nu;
  double mu = 1.0;
  /// True when (r, s) were exchanged to enforce |r| >= |s|; the synthesized
  /// axes are swapped accordingly.
  bool swapped = false;
  /// True for r < 0 (after any swap): the construction then applies to the
  /// parity-reflected PMF ket, which leaves the amplitude unchanged up to a
  /// global sign for odd kets.
  bool reflected = false;
};

/// kappa = sqrt(r(r-s)), sigma = sqrt(s(s-r)), nu = 1/sqrt(-rs),
/// tan(theta) = sqrt(-s/r). Requires rs < 0.
BeamSplitterMap map_params(double r, double s);

/// Runs (S(kappa) x S(sigma)) U_BS(theta) (I x S(nu)) |phi> x |gamma> in the
/// truncated basis and synthesizes the position wavefunction on the grid.
JointAmplitude synthesize_jsa_from_fock(const FockKet& phi, const FockKet& gamma,
                                        const BeamSplitterMap& map, const Grid1D& gx,
                                        const Grid1D& gy);

/// Purity of the reduced state of one mode: sum of fourth powers of the
/// normalized singular values of the coefficient matrix.
double two_mode_purity(const TwoModeFockState& psi);

struct SqueezedFit {
  double mu;
  double phase;
  double fidelity;
};

/// Best overlap |<k|S_phase(mu)|0>|^2 over mu in [1/20, 20] (log-spaced scan
/// plus golden-section refinement) and squeezing phase.
SqueezedFit squeezed_fidelity(const FockKet& k);

}  // namespace jsaforge
