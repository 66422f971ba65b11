#include "jsaforge/spectral_core.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "jsaforge/errors.hpp"

namespace jsaforge {

namespace {

JointAmplitude build_product(const SpectralFn& pmf, const SpectralFn& pump, double r, double s,
                             const Grid1D& gx, const Grid1D& gy, bool conjugate_pump,
                             bool flip_y) {
  if (std::abs(r - s) <= 1e-12)
    throw DegenerateGroupVelocities("joint amplitude vanishes for r == s (r = " +
                                    std::to_string(r) + ")");
  pmf.require_normalized();
  pump.require_normalized();

  JointAmplitude j;
  j.x_grid = gx;
  j.y_grid = gy;
  j.values.resize(gx.n_points, gy.n_points);
  const double pref = std::sqrt(std::abs(r - s));
  const double ysign = flip_y ? -1.0 : 1.0;
  for (int i = 0; i < gx.n_points; ++i) {
    const double x = gx.point(i);
    for (int k = 0; k < gy.n_points; ++k) {
      const double y = ysign * gy.point(k);
      Complex p = pump(x + y);
      if (conjugate_pump) p = std::conj(p);
      j.values(i, k) = pref * pmf(r * x + s * y) * p;
    }
  }
  if (!j.values.allFinite()) throw InvalidSpectralFn("joint amplitude has non-finite entries");
  j.renormalize();

  const double peak = j.values.cwiseAbs().maxCoeff();
  double edge = 0.0;
  edge = std::max(edge, j.values.row(0).cwiseAbs().maxCoeff());
  edge = std::max(edge, j.values.row(gx.n_points - 1).cwiseAbs().maxCoeff());
  edge = std::max(edge, j.values.col(0).cwiseAbs().maxCoeff());
  edge = std::max(edge, j.values.col(gy.n_points - 1).cwiseAbs().maxCoeff());
  j.boundary_warning = edge > 1e-6 * peak;
  return j;
}

Eigen::VectorXd singular_values(const Eigen::MatrixXcd& a) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
  if (svd.info() != Eigen::Success) {
    // rare BDC breakdown; Jacobi is slower but does not give up
    Eigen::JacobiSVD<Eigen::MatrixXcd> jac(a);
    if (jac.info() != Eigen::Success) throw NumericalFailure("SVD did not converge");
    return jac.singularValues();
  }
  return svd.singularValues();
}

}  // namespace

JointAmplitude build_jsa(const SpectralFn& pmf, const SpectralFn& pump, double r, double s,
                         const Grid1D& gx, const Grid1D& gy) {
  return build_product(pmf, pump, r, s, gx, gy, /*conjugate_pump=*/false, /*flip_y=*/false);
}

JointAmplitude to_frequency_conversion(const SpectralFn& pmf, const SpectralFn& pump, double r,
                                       double s, const Grid1D& gx, const Grid1D& gy) {
  return build_product(pmf, pump, r, s, gx, gy, /*conjugate_pump=*/true, /*flip_y=*/true);
}

SchmidtResult purity_schmidt(const JointAmplitude& j) {
  if (!j.values.allFinite()) throw NumericalFailure("purity_schmidt: non-finite amplitude");
  const double w = std::sqrt(j.dx() * j.dy());
  Eigen::VectorXd sv = singular_values(j.values * w);
  const double s2 = sv.squaredNorm();
  if (!(s2 > 0)) throw NumericalFailure("purity_schmidt: zero amplitude");
  SchmidtResult res;
  res.singular_values = sv / std::sqrt(s2);
  res.purity = res.singular_values.array().pow(4).sum();
  res.schmidt_number = 1.0 / res.purity;
  return res;
}

double purity_integral(const JointAmplitude& j) {
  if (!j.values.allFinite()) throw NumericalFailure("purity_integral: non-finite amplitude");
  // rho(x, x') = Int dy Psi(x, y) conj(Psi(x', y))
  const Eigen::MatrixXcd rho = j.values * j.values.adjoint() * j.dy();
  return rho.squaredNorm() * j.dx() * j.dx();
}

double pmf_angle(double r, double s) {
  if (r == 0.0) throw UndefinedAngle("pmf_angle: r = 0");
  return std::atan(-s / r);
}

SchmidtModes schmidt_decompose(const JointAmplitude& j) {
  if (!j.values.allFinite()) throw NumericalFailure("schmidt_decompose: non-finite amplitude");
  const double w = std::sqrt(j.dx() * j.dy());
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(j.values * w, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) throw NumericalFailure("schmidt_decompose: SVD failed");
  SchmidtModes m;
  const double s2 = svd.singularValues().squaredNorm();
  m.coefficients = svd.singularValues() / std::sqrt(s2);
  m.modes_x = svd.matrixU() / std::sqrt(j.dx());
  m.modes_y = svd.matrixV().conjugate() / std::sqrt(j.dy());
  return m;
}

std::string SchmidtResult::to_json() const {
  nlohmann::json out;
  out["purity"] = purity;
  out["schmidt_number"] = schmidt_number;
  // the tail is numerical noise; keep the JSON readable
  const int keep = static_cast<int>(std::min<Eigen::Index>(singular_values.size(), 64));
  out["singular_values"] = std::vector<double>(singular_values.data(),
                                               singular_values.data() + keep);
  return out.dump(2);
}

}  // namespace jsaforge
