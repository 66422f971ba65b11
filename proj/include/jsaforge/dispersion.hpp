#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "jsaforge/joint_amplitude.hpp"
#include "jsaforge/spectral_fn.hpp"

namespace jsaforge {

/// One-pole Sellmeier form n^2 = A + B/(lambda^2 - C) - D lambda^2,
/// lambda in micrometers.
struct SellmeierModel {
  double A = 1.0;
  double B = 0.0;
  double C = 0.0;
  double D = 0.0;
  double valid_lo_um = 0.3;
  double valid_hi_um = 5.0;

  double refractive_index(double lambda_um) const;
  /// n_g = n - lambda dn/dlambda, from the analytic derivative of the form.
  double group_index(double lambda_um) const;
  void check_range(double lambda_um) const;
};

/// Refractive-index models for pump (0), signal (1) and idler (2) plus an
/// optional poling period.
struct DispersionModel {
  std::array<SellmeierModel, 3> modes;
  std::optional<double> poling_period_m;
  std::string source;

  static DispersionModel from_json(const std::string& text);
  static DispersionModel load(const std::string& path);
  std::string to_json() const;

  /// Non-dispersive model with constant index n_i per mode.
  static DispersionModel constant(double n0, double n1, double n2);

  /// Built-in KTP-like model used by the bundled examples.
  static DispersionModel ktp_like();
};

struct ProcessGeometry {
  double length_m;
  double tau_s;
  /// Central wavelengths; lambda0 is the pump. Energy conservation
  /// 1/lambda0 = 1/lambda1 + 1/lambda2 is enforced to 1e-6 relative.
  double lambda0_m;
  double lambda1_m;
  double lambda2_m;

  ProcessGeometry(double L, double tau, double l0, double l1, double l2);

  /// Degenerate geometry: lambda1 = lambda2 = 2 lambda0.
  static ProcessGeometry degenerate(double L, double tau, double lambda0);

  double omega(int mode) const;
};

/// k(omega) = n(lambda) omega / c for one mode.
double wavevector(const DispersionModel& model, int mode, double omega);

/// Group velocity (dk/domega)^-1 from the analytic model derivative.
double group_velocity(const DispersionModel& model, int mode, double omega);

struct RSResult {
  double r;
  double s;
  /// |r - s| is below 1e-3 of max(|r|, |s|): the linear JSA degenerates.
  bool degenerate;
};

/// r = (L/tau)(1/(2 v1) - 1/(2 v0)), s likewise with v2.
RSResult rs_from_physics(const DispersionModel& model, const ProcessGeometry& geom);

/// Dimensionless mismatch (k0(w0) - k1(w1) - k2(w2)) L/2, minus pi L/Lambda
/// when the model carries a poling period.
double phase_mismatch_full(const DispersionModel& model, const ProcessGeometry& geom,
                           double omega0, double omega1, double omega2);

enum class PmfProfile { TopHat, Gaussian };

struct GvdOptions {
  PmfProfile profile = PmfProfile::TopHat;
  /// Square the pump amplitude before use (single-pump third-order process).
  bool chi3 = false;
};

/// JSA with the full (curved) phase mismatch in the PMF argument; the pump
/// stays an exact function of x + y. Grids are in dimensionless (x, y).
JointAmplitude build_jsa_gvd(const DispersionModel& model, const ProcessGeometry& geom,
                             const SpectralFn& pump, const Grid1D& gx, const Grid1D& gy,
                             const GvdOptions& opts = {});

struct SweepRow {
  double r;
  double purity_gvd;
  double purity_linear;
};

/// Purity with and without GVD across a tau sweep (each tau maps to one r).
/// The linear column uses the closed form for a Gaussian profile and the
/// grid purity of the linearized JSA for a top-hat profile.
std::vector<SweepRow> purity_vs_r_sweep(const DispersionModel& model,
                                        const ProcessGeometry& base_geom,
                                        const std::vector<double>& taus, const SpectralFn& pump,
                                        const GvdOptions& opts = {}, int n_points = 512);

/// CSV with header r,purity_gvd,purity_linear.
void save_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path,
                    const std::string& config_echo = "");

}  // namespace jsaforge
