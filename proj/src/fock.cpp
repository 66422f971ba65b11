#include "jsaforge/fock.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include "jsaforge/errors.hpp"

namespace jsaforge {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTailWarnLevel = 0.01;
}  // namespace

void FockKet::normalize() {
  const double n = coeffs.norm();
  if (!(n > 0) || !std::isfinite(n))
    throw NumericalFailure("FockKet: cannot normalize zero or non-finite ket");
  coeffs /= n;
}

double FockKet::tail_weight(int levels) const {
  const int n = n_trunc();
  const int lo = std::max(0, n - levels);
  double acc = 0.0;
  for (int i = lo; i < n; ++i) acc += std::norm(coeffs(i));
  const double total = coeffs.squaredNorm();
  return total > 0 ? acc / total : 0.0;
}

std::string FockKet::to_json() const {
  nlohmann::json out;
  out["n_trunc"] = n_trunc();
  auto arr = nlohmann::json::array();
  for (int i = 0; i < n_trunc(); ++i)
    arr.push_back({coeffs(i).real(), coeffs(i).imag()});
  out["coeffs"] = arr;
  out["truncation_warning"] = truncation_warning;
  return out.dump(2);
}

FockKet FockKet::from_json(const std::string& text) {
  auto in = nlohmann::json::parse(text);
  const int n = in.at("n_trunc").get<int>();
  FockKet k;
  k.coeffs.resize(n);
  const auto& arr = in.at("coeffs");
  if (static_cast<int>(arr.size()) != n) throw Error("FockKet JSON: coeff count mismatch");
  for (int i = 0; i < n; ++i)
    k.coeffs(i) = Complex(arr[i][0].get<double>(), arr[i][1].get<double>());
  k.truncation_warning = in.value("truncation_warning", false);
  return k;
}

double hermite_wavefunction(int n, double x) {
  if (n < 0) throw DomainError("hermite_wavefunction: n must be >= 0");
  const double psi0 = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
  if (n == 0) return psi0;
  double pm1 = psi0;
  double p = std::sqrt(2.0) * x * psi0;
  for (int k = 2; k <= n; ++k) {
    const double next = std::sqrt(2.0 / k) * x * p - std::sqrt((k - 1.0) / k) * pm1;
    pm1 = p;
    p = next;
  }
  return p;
}

Eigen::MatrixXd hermite_table(const Eigen::VectorXd& xs, int n_max) {
  if (n_max < 1) throw DomainError("hermite_table: need n_max >= 1");
  Eigen::MatrixXd h(xs.size(), n_max);
  for (Eigen::Index i = 0; i < xs.size(); ++i) {
    const double x = xs(i);
    h(i, 0) = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
    if (n_max > 1) h(i, 1) = std::sqrt(2.0) * x * h(i, 0);
    for (int n = 2; n < n_max; ++n)
      h(i, n) = std::sqrt(2.0 / n) * x * h(i, n - 1) - std::sqrt((n - 1.0) / n) * h(i, n - 2);
  }
  return h;
}

FockKet project_to_fock(const SpectralFn& f, int n_trunc) {
  if (n_trunc < 1) throw DomainError("project_to_fock: n_trunc must be >= 1");
  f.require_normalized();
  // Simpson rule on a window wide enough for both the oscillator functions
  // (support ~ sqrt(2N+1)) and the spectral function tails.
  const double half = std::max(2.0 * std::sqrt(2.0 * n_trunc + 1.0), 25.0);
  const int n_pts = 24001;  // odd
  const Grid1D g(-half, half, n_pts);
  const double h = g.step();
  Eigen::VectorXd w(n_pts);
  for (int i = 0; i < n_pts; ++i) w(i) = (i == 0 || i == n_pts - 1) ? 1.0 : (i % 2 ? 4.0 : 2.0);
  w *= h / 3.0;
  const Eigen::VectorXd xs = g.points();
  const Eigen::MatrixXd psi = hermite_table(xs, n_trunc);
  const Eigen::VectorXcd fx = f.evaluate(xs);
  FockKet k;
  k.coeffs = psi.transpose() * fx.cwiseProduct(w.cast<Complex>());
  k.truncation_warning = k.tail_weight() > kTailWarnLevel;
  k.normalize();
  return k;
}

Eigen::VectorXcd synthesize_wavefunction(const FockKet& k, const Grid1D& g) {
  const Eigen::MatrixXd psi = hermite_table(g.points(), k.n_trunc());
  return psi * k.coeffs;
}

Eigen::MatrixXd squeeze_operator(double mu, int n_trunc, int buffer) {
  if (!(mu > 0)) throw DomainError("squeeze_operator: mu must be positive");
  if (n_trunc < 1) throw DomainError("squeeze_operator: n_trunc must be >= 1");
  const int m = n_trunc + std::max(buffer, 0);
  // generator (ln mu / 2)(a^2 - a^dag^2); real antisymmetric
  Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(m, m);
  const double c = 0.5 * std::log(mu);
  for (int n = 2; n < m; ++n) {
    const double v = c * std::sqrt(double(n) * (n - 1));
    gen(n - 2, n) = v;
    gen(n, n - 2) = -v;
  }
  const Eigen::MatrixXd full = gen.exp();
  return full.topLeftCorner(n_trunc, n_trunc);
}

FockKet squeezed_vacuum(double mu, int n_trunc, double phase) {
  if (!(mu > 0)) throw DomainError("squeezed_vacuum: mu must be positive");
  const double rho = std::log(mu);
  const Complex t = std::tanh(rho) * std::exp(Complex(0.0, phase));
  FockKet k;
  k.coeffs = Eigen::VectorXcd::Zero(n_trunc);
  // c_{2k} = (-t/2)^k sqrt((2k)!)/k! / sqrt(cosh rho)
  Complex term = 1.0;
  for (int q = 0; 2 * q < n_trunc; ++q) {
    if (q > 0) term *= (-t / 2.0) * std::sqrt(double(2 * q) * (2 * q - 1)) / double(q);
    k.coeffs(2 * q) = term;
  }
  k.coeffs /= std::sqrt(std::cosh(rho));
  k.truncation_warning = k.tail_weight() > kTailWarnLevel;
  k.normalize();
  return k;
}

FockKet parity_apply(const FockKet& k) {
  FockKet out = k;
  for (int n = 1; n < out.n_trunc(); n += 2) out.coeffs(n) = -out.coeffs(n);
  return out;
}

BeamSplitter::BeamSplitter(double theta, int n_trunc) : theta_(theta), n_trunc_(n_trunc) {
  if (n_trunc < 1) throw DomainError("BeamSplitter: n_trunc must be >= 1");
}

const Eigen::MatrixXd& BeamSplitter::block(int total) const {
  if (total >= static_cast<int>(blocks_.size())) {
    blocks_.reserve(total + 1);
    for (int t = static_cast<int>(blocks_.size()); t <= total; ++t) {
      Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(t + 1, t + 1);
      for (int n = 0; n < t; ++n) {
        // |n, t-n> -> |n+1, t-n-1> with amplitude sqrt((n+1)(t-n))
        const double c = theta_ * std::sqrt(double(n + 1) * (t - n));
        gen(n + 1, n) = c;
        gen(n, n + 1) = -c;
      }
      blocks_.push_back(gen.exp());
    }
  }
  return blocks_[total];
}

Eigen::MatrixXcd BeamSplitter::apply_impl(const Eigen::MatrixXcd& x, bool inverse,
                                          double* leak) const {
  if (x.rows() != x.cols()) throw DomainError("BeamSplitter::apply: matrix must be square");
  const int w = static_cast<int>(x.rows());
  Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(w, w);
  double lost = 0.0;
  Eigen::VectorXcd v, out;
  for (int t = 0; t <= 2 * (w - 1); ++t) {
    const int lo = std::max(0, t - w + 1);
    const int hi = std::min(t, w - 1);
    v = Eigen::VectorXcd::Zero(t + 1);
    for (int n = lo; n <= hi; ++n) v(n) = x(n, t - n);
    if (v.isZero(0.0)) continue;
    const Eigen::MatrixXd& r = block(t);
    if (inverse)
      out = r.transpose() * v;
    else
      out = r * v;
    for (int n = 0; n <= t; ++n) {
      if (n >= lo && n <= hi)
        y(n, t - n) = out(n);
      else
        lost += std::norm(out(n));
    }
  }
  if (leak) *leak = lost;
  return y;
}

Eigen::MatrixXcd BeamSplitter::apply(const Eigen::MatrixXcd& x, double* leak) const {
  return apply_impl(x, false, leak);
}

Eigen::MatrixXcd BeamSplitter::apply_inverse(const Eigen::MatrixXcd& x, double* leak) const {
  return apply_impl(x, true, leak);
}

Eigen::MatrixXd BeamSplitter::dense() const {
  const int n = n_trunc_;
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(n * n, n * n);
  for (int t = 0; t <= 2 * (n - 1); ++t) {
    const Eigen::MatrixXd& r = block(t);
    const int lo = std::max(0, t - n + 1);
    const int hi = std::min(t, n - 1);
    for (int a = lo; a <= hi; ++a)
      for (int b = lo; b <= hi; ++b) u(a * n + (t - a), b * n + (t - b)) = r(a, b);
  }
  return u;
}

void BeamSplitter::precompute(int max_total) const { block(max_total); }

Eigen::MatrixXd beamsplitter_operator(double theta, int n_trunc) {
  return BeamSplitter(theta, n_trunc).dense();
}

BeamSplitterMap map_params(double r, double s) {
  if (!(r * s < 0))
    throw MappingDomainError("map_params requires r*s < 0 (got r = " + std::to_string(r) +
                             ", s = " + std::to_string(s) + ")");
  BeamSplitterMap m;
  m.swapped = std::abs(r) < std::abs(s);
  if (m.swapped) std::swap(r, s);
  m.reflected = r < 0;
  if (m.reflected) {
    r = -r;
    s = -s;
  }
  m.kappa = std::sqrt(r * (r - s));
  m.sigma = std::sqrt(s * (s - r));
  m.nu = 1.0 / std::sqrt(-r * s);
  m.mu = 1.0;
  m.theta = std::atan2(m.sigma, m.kappa);
  return m;
}

namespace {

// Weight remaining in the top 5 levels of each axis of a two-mode matrix.
double matrix_tail(const Eigen::MatrixXcd& x, int levels = 5) {
  const int n = static_cast<int>(x.rows());
  const int lo = std::max(0, n - levels);
  const double total = x.squaredNorm();
  if (!(total > 0)) return 0.0;
  double acc = x.bottomRows(n - lo).squaredNorm() + x.rightCols(n - lo).squaredNorm() -
               x.bottomRightCorner(n - lo, n - lo).squaredNorm();
  return acc / total;
}

}  // namespace

JointAmplitude synthesize_jsa_from_fock(const FockKet& phi, const FockKet& gamma,
                                        const BeamSplitterMap& map, const Grid1D& gx,
                                        const Grid1D& gy) {
  const int n = std::max(phi.n_trunc(), gamma.n_trunc());
  const int w = n + 20;  // working dimension; absorbs squeeze leakage

  Eigen::VectorXcd phi_w = Eigen::VectorXcd::Zero(w);
  phi_w.head(phi.n_trunc()) = phi.coeffs;
  if (map.reflected)
    for (int i = 1; i < w; i += 2) phi_w(i) = -phi_w(i);
  Eigen::VectorXcd gam_w = Eigen::VectorXcd::Zero(w);
  gam_w.head(gamma.n_trunc()) = gamma.coeffs;

  const Eigen::MatrixXd s_nu = squeeze_operator(map.nu, w);
  const Eigen::MatrixXd s_mu = squeeze_operator(map.mu, w);
  gam_w = s_nu * gam_w;
  phi_w = s_mu * phi_w;

  double max_tail = std::max(FockKet(phi_w).tail_weight(), FockKet(gam_w).tail_weight());

  Eigen::MatrixXcd state = phi_w * gam_w.transpose();
  double leak = 0.0;
  const BeamSplitter bs(map.theta, w);
  state = bs.apply(state, &leak);
  max_tail = std::max(max_tail, leak);

  const Eigen::MatrixXd s_kappa = squeeze_operator(map.kappa, w);
  const Eigen::MatrixXd s_sigma = squeeze_operator(map.sigma, w);
  state = s_kappa * state * s_sigma.transpose();
  max_tail = std::max(max_tail, matrix_tail(state));

  if (max_tail > 0.05)
    throw TruncationError("synthesize_jsa_from_fock: truncation tail " +
                          std::to_string(max_tail) + " exceeds 0.05; increase n_trunc");

  JointAmplitude j;
  j.x_grid = gx;
  j.y_grid = gy;
  const Eigen::MatrixXd hx = hermite_table(gx.points(), w);
  const Eigen::MatrixXd hy = hermite_table(gy.points(), w);
  if (map.swapped)
    j.values = hx * state.transpose() * hy.transpose();
  else
    j.values = hx * state * hy.transpose();
  j.renormalize();
  j.boundary_warning = max_tail > 1e-4;
  return j;
}

double two_mode_purity(const TwoModeFockState& psi) {
  if (!psi.coeffs.allFinite()) throw NumericalFailure("two_mode_purity: non-finite state");
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(psi.coeffs);
  const Eigen::VectorXd sv = svd.singularValues();
  const double s2 = sv.squaredNorm();
  if (!(s2 > 0)) throw NumericalFailure("two_mode_purity: zero state");
  return sv.array().pow(4).sum() / (s2 * s2);
}

namespace {

double sv_overlap(const FockKet& k, double mu, double phase) {
  const FockKet sv = squeezed_vacuum(mu, k.n_trunc(), phase);
  return std::norm(sv.coeffs.dot(k.coeffs));  // dot conjugates the left factor
}

// golden-section maximization of f over [lo, hi]
template <typename F>
double golden_max(F f, double lo, double hi, int iters = 60) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

SqueezedFit squeezed_fidelity(const FockKet& k) {
  FockKet kn = k;
  kn.normalize();
  const int n_mu = 240;
  const int n_ph = 48;
  double best_f = -1.0, best_mu = 1.0, best_ph = 0.0;
  for (int i = 0; i < n_mu; ++i) {
    const double mu = std::exp(std::log(1.0 / 20.0) +
                               (std::log(20.0) - std::log(1.0 / 20.0)) * i / (n_mu - 1.0));
    for (int p = 0; p < n_ph; ++p) {
      const double ph = 2.0 * kPi * p / n_ph;
      const double f = sv_overlap(kn, mu, ph);
      if (f > best_f) {
        best_f = f;
        best_mu = mu;
        best_ph = ph;
      }
    }
  }
  // coordinate refinement: golden section in log(mu), then in phase
  for (int round = 0; round < 3; ++round) {
    const double l = std::log(best_mu);
    const double lw = 2.0 * (std::log(20.0) - std::log(1.0 / 20.0)) / (n_mu - 1.0);
    best_mu = std::exp(golden_max(
        [&](double lm) { return sv_overlap(kn, std::exp(lm), best_ph); },
        std::max(l - lw, std::log(1.0 / 20.0)), std::min(l + lw, std::log(20.0))));
    const double pw = 2.0 * 2.0 * kPi / n_ph;
    best_ph = golden_max([&](double ph) { return sv_overlap(kn, best_mu, ph); },
                         best_ph - pw, best_ph + pw);
  }
  best_f = sv_overlap(kn, best_mu, best_ph);
  if (best_ph < 0) best_ph += 2.0 * kPi;
  if (best_ph >= 2.0 * kPi) best_ph -= 2.0 * kPi;
  return {best_mu, best_ph, best_f};
}

}  // namespace jsaforge
