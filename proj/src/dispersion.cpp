#include "jsaforge/dispersion.hpp"

#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "jsaforge/errors.hpp"
#include "jsaforge/gaussian_analytics.hpp"
#include "jsaforge/spectral_core.hpp"

namespace jsaforge {

namespace {
constexpr double kC = 299792458.0;  // m/s
constexpr double kPi = 3.14159265358979323846;

double lambda_um_of(double omega) { return 2.0 * kPi * kC / omega * 1e6; }
}  // namespace

double SellmeierModel::refractive_index(double lambda_um) const {
  const double l2 = lambda_um * lambda_um;
  const double n2 = A + B / (l2 - C) - D * l2;
  if (!(n2 >= 1.0))
    throw ModelRangeError("refractive index not physical at lambda = " +
                          std::to_string(lambda_um) + " um");
  return std::sqrt(n2);
}

double SellmeierModel::group_index(double lambda_um) const {
  const double n = refractive_index(lambda_um);
  const double l2 = lambda_um * lambda_um;
  const double den = l2 - C;
  // n_g = n + lambda^2 (B/(lambda^2-C)^2 + D) / n
  return n + l2 * (B / (den * den) + D) / n;
}

void SellmeierModel::check_range(double lambda_um) const {
  if (lambda_um < valid_lo_um || lambda_um > valid_hi_um)
    throw ModelRangeError("wavelength " + std::to_string(lambda_um) +
                          " um outside model validity window [" + std::to_string(valid_lo_um) +
                          ", " + std::to_string(valid_hi_um) + "]");
}

namespace {

SellmeierModel mode_from_json(const nlohmann::json& j) {
  SellmeierModel m;
  const std::string form = j.value("form", "sellmeier-1pole");
  if (form != "sellmeier-1pole")
    throw ValidationError("unsupported dispersion model form: " + form);
  m.A = j.at("A").get<double>();
  m.B = j.at("B").get<double>();
  m.C = j.at("C").get<double>();
  m.D = j.at("D").get<double>();
  if (j.contains("valid_um")) {
    m.valid_lo_um = j["valid_um"][0].get<double>();
    m.valid_hi_um = j["valid_um"][1].get<double>();
  }
  return m;
}

nlohmann::json mode_to_json(const SellmeierModel& m) {
  return {{"form", "sellmeier-1pole"}, {"A", m.A},
          {"B", m.B},                  {"C", m.C},
          {"D", m.D},                  {"valid_um", {m.valid_lo_um, m.valid_hi_um}}};
}

}  // namespace

DispersionModel DispersionModel::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  DispersionModel model;
  const char* keys[3] = {"mode0", "mode1", "mode2"};
  for (int i = 0; i < 3; ++i) model.modes[i] = mode_from_json(j.at(keys[i]));
  if (j.contains("poling_period_m") && !j["poling_period_m"].is_null())
    model.poling_period_m = j["poling_period_m"].get<double>();
  model.source = j.value("source", "");
  return model;
}

DispersionModel DispersionModel::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open dispersion model file " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return from_json(text);
}

std::string DispersionModel::to_json() const {
  nlohmann::json j;
  j["mode0"] = mode_to_json(modes[0]);
  j["mode1"] = mode_to_json(modes[1]);
  j["mode2"] = mode_to_json(modes[2]);
  if (poling_period_m)
    j["poling_period_m"] = *poling_period_m;
  else
    j["poling_period_m"] = nullptr;
  j["source"] = source;
  return j.dump(2);
}

DispersionModel DispersionModel::constant(double n0, double n1, double n2) {
  DispersionModel m;
  const double ns[3] = {n0, n1, n2};
  for (int i = 0; i < 3; ++i) {
    m.modes[i].A = ns[i] * ns[i];
    m.modes[i].B = 0.0;
    m.modes[i].C = 0.0;
    m.modes[i].D = 0.0;
    m.modes[i].valid_lo_um = 0.01;
    m.modes[i].valid_hi_um = 1e6;
  }
  m.source = "constant index";
  return m;
}

DispersionModel DispersionModel::ktp_like() {
  // One-pole fit in the style of flux-grown KTP data; signal/idler D and A
  // adjusted so that the idler is group-matched to a 1211 nm pump and the
  // signal walks off by Delta(1/v) = 6.786e-11 s/m.
  DispersionModel m;
  m.modes[0] = {3.3134, 0.05694, 0.05658, 0.01682, 0.4, 4.0};
  m.modes[1] = {3.3588587262609164, 0.05694, 0.05658, 0.024569416179672284, 0.4, 4.0};
  m.modes[2] = {3.1865091870089857, 0.04154, 0.04547, 0.040197796303119024, 0.4, 4.0};
  m.poling_period_m = 1.8123651278246452e-05;
  m.source = "KTP-like one-pole Sellmeier fit (data/ktp_like.json)";
  return m;
}

ProcessGeometry::ProcessGeometry(double L, double tau, double l0, double l1, double l2)
    : length_m(L), tau_s(tau), lambda0_m(l0), lambda1_m(l1), lambda2_m(l2) {
  if (!(L > 0) || !(tau > 0)) throw ValidationError("geometry: L and tau must be positive");
  if (!(l0 > 0) || !(l1 > 0) || !(l2 > 0))
    throw ValidationError("geometry: wavelengths must be positive");
  const double w0 = 1.0 / l0, w12 = 1.0 / l1 + 1.0 / l2;
  if (std::abs(w0 - w12) > 1e-6 * w0)
    throw ValidationError("geometry: central frequencies violate energy conservation");
}

ProcessGeometry ProcessGeometry::degenerate(double L, double tau, double lambda0) {
  return ProcessGeometry(L, tau, lambda0, 2.0 * lambda0, 2.0 * lambda0);
}

double ProcessGeometry::omega(int mode) const {
  const double l = mode == 0 ? lambda0_m : (mode == 1 ? lambda1_m : lambda2_m);
  return 2.0 * kPi * kC / l;
}

double wavevector(const DispersionModel& model, int mode, double omega) {
  if (mode < 0 || mode > 2) throw DomainError("wavevector: mode must be 0, 1 or 2");
  if (!(omega > 0)) throw ModelRangeError("wavevector: omega must be positive");
  const double lum = lambda_um_of(omega);
  model.modes[mode].check_range(lum);
  return model.modes[mode].refractive_index(lum) * omega / kC;
}

double group_velocity(const DispersionModel& model, int mode, double omega) {
  if (mode < 0 || mode > 2) throw DomainError("group_velocity: mode must be 0, 1 or 2");
  const double lum = lambda_um_of(omega);
  model.modes[mode].check_range(lum);
  return kC / model.modes[mode].group_index(lum);
}

RSResult rs_from_physics(const DispersionModel& model, const ProcessGeometry& geom) {
  const double v0 = group_velocity(model, 0, geom.omega(0));
  const double v1 = group_velocity(model, 1, geom.omega(1));
  const double v2 = group_velocity(model, 2, geom.omega(2));
  const double lt = geom.length_m / geom.tau_s;
  RSResult res;
  res.r = lt * (0.5 / v1 - 0.5 / v0);
  res.s = lt * (0.5 / v2 - 0.5 / v0);
  const double scale = std::max(std::abs(res.r), std::abs(res.s));
  res.degenerate = scale == 0.0 || std::abs(res.r - res.s) < 1e-3 * scale;
  return res;
}

double phase_mismatch_full(const DispersionModel& model, const ProcessGeometry& geom,
                           double omega0, double omega1, double omega2) {
  double arg = (wavevector(model, 0, omega0) - wavevector(model, 1, omega1) -
                wavevector(model, 2, omega2)) *
               geom.length_m / 2.0;
  if (model.poling_period_m) arg -= kPi * geom.length_m / *model.poling_period_m;
  return arg;
}

JointAmplitude build_jsa_gvd(const DispersionModel& model, const ProcessGeometry& geom,
                             const SpectralFn& pump, const Grid1D& gx, const Grid1D& gy,
                             const GvdOptions& opts) {
  pump.require_normalized();
  const RSResult rs = rs_from_physics(model, geom);
  if (rs.degenerate)
    throw DegenerateGroupVelocities("build_jsa_gvd: group velocities are degenerate (r = " +
                                    std::to_string(rs.r) + ", s = " + std::to_string(rs.s) + ")");
  const double w1 = geom.omega(1), w2 = geom.omega(2);
  JointAmplitude j;
  j.x_grid = gx;
  j.y_grid = gy;
  j.values.resize(gx.n_points, gy.n_points);
  for (int i = 0; i < gx.n_points; ++i) {
    const double x = gx.point(i);
    const double om1 = w1 + x / geom.tau_s;
    for (int k = 0; k < gy.n_points; ++k) {
      const double y = gy.point(k);
      const double om2 = w2 + y / geom.tau_s;
      const double arg = phase_mismatch_full(model, geom, om1 + om2, om1, om2);
      const double pmf = opts.profile == PmfProfile::TopHat ? sinc(arg) : std::exp(-0.5 * arg * arg);
      Complex p = pump(x + y);
      if (opts.chi3) p *= p;
      j.values(i, k) = pmf * p;
    }
  }
  if (!j.values.allFinite()) throw NumericalFailure("build_jsa_gvd: non-finite amplitude");
  j.renormalize();
  const double peak = j.values.cwiseAbs().maxCoeff();
  double edge = std::max(j.values.row(0).cwiseAbs().maxCoeff(),
                         j.values.row(gx.n_points - 1).cwiseAbs().maxCoeff());
  edge = std::max({edge, j.values.col(0).cwiseAbs().maxCoeff(),
                   j.values.col(gy.n_points - 1).cwiseAbs().maxCoeff()});
  j.boundary_warning = edge > 1e-6 * peak;
  return j;
}

std::vector<SweepRow> purity_vs_r_sweep(const DispersionModel& model,
                                        const ProcessGeometry& base_geom,
                                        const std::vector<double>& taus, const SpectralFn& pump,
                                        const GvdOptions& opts, int n_points) {
  std::vector<SweepRow> rows;
  rows.reserve(taus.size());
  for (const double tau : taus) {
    const ProcessGeometry geom(base_geom.length_m, tau, base_geom.lambda0_m, base_geom.lambda1_m,
                               base_geom.lambda2_m);
    const RSResult rs = rs_from_physics(model, geom);
    auto [gx, gy] = default_grids(rs.r, rs.s, n_points);
    const JointAmplitude gvd = build_jsa_gvd(model, geom, pump, gx, gy, opts);
    SweepRow row;
    row.r = rs.r;
    row.purity_gvd = purity_schmidt(gvd).purity;
    if (opts.profile == PmfProfile::Gaussian && !opts.chi3 &&
        pump.kind() == SpectralFn::Kind::Gaussian && pump.chirp() == 0.0) {
      row.purity_linear = gaussian_purity(rs.r, rs.s);
    } else {
      SpectralFn pmf = opts.profile == PmfProfile::TopHat ? SpectralFn::sinc_fn(1.0)
                                                          : SpectralFn::gaussian();
      SpectralFn p2 = pump;
      if (opts.chi3) {
        SpectralFn base = pump;
        p2 = SpectralFn::custom([base](double u) {
               const Complex v = base(u);
               return v * v;
             }).normalized();
      }
      row.purity_linear = purity_schmidt(build_jsa(pmf, p2, rs.r, rs.s, gx, gy)).purity;
    }
    rows.push_back(row);
  }
  return rows;
}

void save_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path,
                    const std::string& config_echo) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  if (!config_echo.empty()) out << "# " << config_echo << '\n';
  out << "r,purity_gvd,purity_linear\n";
  out.precision(12);
  for (const auto& row : rows)
    out << row.r << ',' << row.purity_gvd << ',' << row.purity_linear << '\n';
}

}  // namespace jsaforge
