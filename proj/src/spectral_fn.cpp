#include "jsaforge/spectral_fn.hpp"

#include <cmath>

#include "jsaforge/errors.hpp"
#include "jsaforge/fock.hpp"

namespace jsaforge {

namespace {
constexpr double kPi = 3.14159265358979323846;
const double kQuarticRootPi = std::pow(kPi, 0.25);
}  // namespace

double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

SpectralFn SpectralFn::gaussian(double chirp) {
  SpectralFn f;
  f.kind_ = Kind::Gaussian;
  f.chirp_ = chirp;
  f.label_ = chirp == 0.0 ? "gaussian" : "gaussian(chirp=" + std::to_string(chirp) + ")";
  return f;
}

SpectralFn SpectralFn::sinc_fn(double alpha) {
  if (!(alpha > 0)) throw InvalidSpectralFn("sinc: alpha must be positive");
  SpectralFn f;
  f.kind_ = Kind::Sinc;
  f.alpha_ = alpha;
  f.label_ = "sinc(alpha=" + std::to_string(alpha) + ")";
  return f;
}

SpectralFn SpectralFn::sech() {
  SpectralFn f;
  f.kind_ = Kind::Sech;
  f.label_ = "sech";
  return f;
}

SpectralFn SpectralFn::hermite_gauss(int n) {
  if (n < 0) throw InvalidSpectralFn("hermite_gauss: order must be >= 0");
  SpectralFn f;
  f.kind_ = Kind::HermiteGauss;
  f.hermite_n_ = n;
  f.label_ = "hermite(" + std::to_string(n) + ")";
  return f;
}

SpectralFn SpectralFn::sampled(const Grid1D& grid, Eigen::VectorXcd values) {
  if (values.size() != grid.n_points)
    throw InvalidSpectralFn("sampled: value count does not match the grid");
  if (!values.allFinite()) throw InvalidSpectralFn("sampled: non-finite values");
  SpectralFn f;
  f.kind_ = Kind::Sampled;
  f.sample_grid_ = grid;
  f.samples_ = std::make_shared<const Eigen::VectorXcd>(std::move(values));
  f.label_ = "sampled";
  return f;
}

SpectralFn SpectralFn::custom(std::function<Complex(double)> fn, std::string label) {
  if (!fn) throw InvalidSpectralFn("custom: empty callable");
  SpectralFn f;
  f.kind_ = Kind::Custom;
  f.fn_ = std::move(fn);
  f.label_ = std::move(label);
  return f;
}

Complex SpectralFn::operator()(double x) const {
  switch (kind_) {
    case Kind::Gaussian: {
      const Complex arg(-0.5 * x * x, -0.5 * chirp_ * x * x);
      return std::exp(arg) / kQuarticRootPi;
    }
    case Kind::Sinc:
      return sinc(x / alpha_) / std::sqrt(alpha_ * kPi);
    case Kind::Sech:
      return 1.0 / (std::cosh(x) * std::sqrt(2.0));
    case Kind::HermiteGauss:
      return hermite_wavefunction(hermite_n_, x);
    case Kind::Sampled: {
      const auto& v = *samples_;
      const double t = (x - sample_grid_.min) / sample_grid_.step();
      if (t < 0 || t > sample_grid_.n_points - 1) return 0.0;
      const int i = std::min(static_cast<int>(t), sample_grid_.n_points - 2);
      const double w = t - i;
      return (1.0 - w) * v(i) + w * v(i + 1);
    }
    case Kind::Custom:
      return fn_(x);
  }
  return 0.0;
}

Eigen::VectorXcd SpectralFn::evaluate(const Eigen::VectorXd& xs) const {
  Eigen::VectorXcd out(xs.size());
  for (Eigen::Index i = 0; i < xs.size(); ++i) out(i) = (*this)(xs(i));
  return out;
}

double SpectralFn::l2_norm(double half_width, int n_points) const {
  if (kind_ == Kind::Sampled) {
    const double dx = sample_grid_.step();
    const auto& v = *samples_;
    double acc = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const double w = (i == 0 || i == v.size() - 1) ? 0.5 : 1.0;
      acc += w * std::norm(v(i));
    }
    return std::sqrt(acc * dx);
  }
  const Grid1D g(-half_width, half_width, n_points);
  const double dx = g.step();
  double acc = 0.0;
  for (int i = 0; i < g.n_points; ++i) {
    const double w = (i == 0 || i == g.n_points - 1) ? 0.5 : 1.0;
    acc += w * std::norm((*this)(g.point(i)));
  }
  return std::sqrt(acc * dx);
}

SpectralFn SpectralFn::normalized() const {
  if (closed_form()) return *this;
  const double nrm = l2_norm();
  if (!(nrm > 0) || !std::isfinite(nrm))
    throw InvalidSpectralFn("normalized: function is not L2-normalizable");
  if (kind_ == Kind::Sampled) {
    return sampled(sample_grid_, *samples_ / nrm);
  }
  auto base = fn_;
  return custom([base, nrm](double x) { return base(x) / nrm; }, label_ + "/norm");
}

void SpectralFn::require_normalized(double tol) const {
  // Closed forms are unit-norm by construction; sinc tails converge too
  // slowly for a windowed quadrature check.
  if (closed_form()) return;
  const double nrm = l2_norm();
  if (!std::isfinite(nrm) || std::abs(nrm - 1.0) > tol)
    throw InvalidSpectralFn("spectral function is not L2-normalized (|f| = " +
                            std::to_string(nrm) + ")");
}

}  // namespace jsaforge
