#include "jsaforge/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "jsaforge/errors.hpp"
#include "jsaforge/perturbative.hpp"
#include "jsaforge/threading.hpp"

namespace jsaforge {

namespace {

Eigen::VectorXcd params_to_ket(const Eigen::VectorXd& params) {
  const int n = static_cast<int>(params.size()) / 2;
  if (2 * n != params.size()) throw DomainError("params must have even length (u, v)");
  Eigen::VectorXcd g(n);
  for (int i = 0; i < n; ++i) g(i) = Complex(params(i), params(n + i));
  return g;
}

Eigen::MatrixXcd lowering_matrix(int n) {
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) b(i - 1, i) = std::sqrt(double(i));
  return b;
}

// Shared state for the objective
// F = purity(U_BS(phi x g')) - lambda |<g'|b|g'>|^2 / <g'|g'>^2,
// evaluated in the n_trunc x n_trunc product-basis box.
struct CostEvaluator {
  Eigen::VectorXcd phi;
  BeamSplitter bs;
  Eigen::MatrixXcd lower;
  double lambda;

  CostEvaluator(const FockKet& phi_in, const OptimizerConfig& cfg)
      : phi(Eigen::VectorXcd::Zero(cfg.n_trunc)),
        bs(cfg.theta, cfg.n_trunc),
        lower(lowering_matrix(cfg.n_trunc)),
        lambda(cfg.lambda) {
    if (phi_in.n_trunc() > cfg.n_trunc)
      throw DomainError("optimize: phi ket longer than the configured truncation");
    phi.head(phi_in.n_trunc()) = phi_in.coeffs;
    const double nrm = phi.norm();
    if (!(nrm > 0)) throw DomainError("optimize: zero phi ket");
    phi /= nrm;
    bs.precompute(2 * (cfg.n_trunc - 1));
  }

  double value(const Eigen::VectorXcd& g, Eigen::VectorXcd* grad) const {
    const double w2 = g.squaredNorm();
    if (!(w2 > 1e-300)) throw DomainError("cost: zero parameter vector");
    const Eigen::MatrixXcd m = bs.apply(phi * g.transpose());
    const Eigen::MatrixXcd mmh = m * m.adjoint();
    const double s2 = mmh.real().trace();
    const double s4 = mmh.squaredNorm();
    const double purity = s4 / (s2 * s2);

    const Eigen::VectorXcd bg = lower * g;
    const Complex d = g.dot(bg) / w2;  // <g|b|g>, normalized
    const double f = purity - lambda * std::norm(d);

    if (grad) {
      // dP/d conj(M) = 2 (M M^H) M / s2^2 - 2 s4 M / s2^3
      const Eigen::MatrixXcd gm = (2.0 / (s2 * s2)) * (mmh * m) - (2.0 * s4 / (s2 * s2 * s2)) * m;
      const Eigen::MatrixXcd back = bs.apply_inverse(gm);
      Eigen::VectorXcd gp = back.transpose() * phi.conjugate();
      // displacement term: D = |<g|b|g>|^2 / w2^2 with raw inner products
      const Complex d_raw = g.dot(bg);
      const Eigen::VectorXcd gd =
          (std::conj(d_raw) * bg + d_raw * (lower.adjoint() * g)) / (w2 * w2) -
          (2.0 * std::norm(d_raw) / (w2 * w2 * w2)) * g;
      *grad = gp - lambda * gd;
    }
    return f;
  }

  double purity_of(const Eigen::VectorXcd& g) const {
    const Eigen::MatrixXcd m = bs.apply(phi * g.normalized().transpose());
    return two_mode_purity(TwoModeFockState{m});
  }
};

Eigen::VectorXd real_gradient(const Eigen::VectorXcd& g) {
  const int n = static_cast<int>(g.size());
  Eigen::VectorXd out(2 * n);
  for (int i = 0; i < n; ++i) {
    out(i) = 2.0 * g(i).real();
    out(n + i) = 2.0 * g(i).imag();
  }
  return out;
}

// Deterministic standard normals independent of the standard library's
// distribution implementation.
class NormalSource {
public:
  explicit NormalSource(std::uint64_t seed) : rng_(seed) {}
  double next() {
    if (have_) {
      have_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(a);
    have_ = true;
    return r * std::cos(a);
  }

private:
  double uniform() { return (rng_() >> 11) * 0x1.0p-53; }
  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool have_ = false;
};

struct RestartOutcome {
  RestartRecord record;
  Eigen::VectorXcd ket;
};

RestartOutcome run_restart(const CostEvaluator& ev, Eigen::VectorXd p,
                           const OptimizerConfig& cfg, int index) {
  p /= p.norm();
  Eigen::VectorXcd g = params_to_ket(p);
  Eigen::VectorXcd cgrad;
  double f = ev.value(g, &cgrad);
  Eigen::VectorXd grad = real_gradient(cgrad);

  double t = 1.0;
  Eigen::VectorXd s_prev, y_prev;
  bool have_pair = false;
  int it = 0;
  bool converged = false;
  for (; it < cfg.max_iters; ++it) {
    const double gn = grad.norm();
    if (gn <= cfg.grad_tol) {
      converged = true;
      break;
    }
    if (have_pair) {
      const double sy = s_prev.dot(y_prev);
      if (sy > 1e-300) t = s_prev.squaredNorm() / sy;
      if (!(t > 0) || !std::isfinite(t)) t = 1.0;
    }
    bool accepted = false;
    Eigen::VectorXd p_new;
    Eigen::VectorXcd g_new, cgrad_new;
    double f_new = f;
    for (int bt = 0; bt < 60; ++bt) {
      p_new = p + t * grad;
      g_new = params_to_ket(p_new);
      f_new = ev.value(g_new, &cgrad_new);
      if (f_new >= f + 1e-4 * t * gn * gn) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;  // line search stalled below representable progress
    const Eigen::VectorXd grad_new = real_gradient(cgrad_new);
    s_prev = p_new - p;
    y_prev = grad - grad_new;  // ascent curvature pair
    have_pair = true;
    p = p_new;
    f = f_new;
    grad = grad_new;
    const double pn = p.norm();
    if (pn < 0.25 || pn > 4.0) {
      p /= pn;
      ev.value(params_to_ket(p), &cgrad);
      grad = real_gradient(cgrad);
      have_pair = false;
    }
  }
  RestartOutcome out;
  Eigen::VectorXcd ket = params_to_ket(p);
  ket.normalize();
  out.ket = ket;
  out.record = {index, ev.purity_of(ket), it, grad.norm(), converged};
  return out;
}

Eigen::VectorXd random_params(int n_trunc, std::uint64_t seed) {
  NormalSource src(seed);
  Eigen::VectorXd p(2 * n_trunc);
  for (int i = 0; i < 2 * n_trunc; ++i) p(i) = src.next();
  return p;
}

std::uint64_t restart_seed(std::uint64_t base, int index) {
  // splitmix-style mixing keeps streams independent across restarts
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

double cost(const Eigen::VectorXd& params, const FockKet& phi, const OptimizerConfig& cfg) {
  const CostEvaluator ev(phi, cfg);
  return ev.value(params_to_ket(params), nullptr);
}

Eigen::VectorXd gradient(const Eigen::VectorXd& params, const FockKet& phi,
                         const OptimizerConfig& cfg) {
  const CostEvaluator ev(phi, cfg);
  Eigen::VectorXcd cgrad;
  ev.value(params_to_ket(params), &cgrad);
  return real_gradient(cgrad);
}

OptimizationResult optimize_pump(const FockKet& phi, const OptimizerConfig& cfg) {
  if (cfg.restarts < 1) throw DomainError("optimize_pump: need at least one restart");
  if (!(cfg.lambda > 0)) throw DomainError("optimize_pump: lambda must be positive");
  const CostEvaluator ev(phi, cfg);

  std::vector<Eigen::VectorXd> starts(cfg.restarts);
  for (int i = 0; i < cfg.restarts; ++i)
    starts[i] = random_params(cfg.n_trunc, restart_seed(cfg.seed, i));
  if (cfg.warm_start) {
    // candidate from the small-theta analysis: squeezed vacuum at the
    // closed-form optimal photon number, orientation matched to phi
    try {
      FockKet phi_n;
      phi_n.coeffs = ev.phi;
      const Moments mp = moments(phi_n);
      const OptimalPump opt = optimal_pump_n(mp);
      const double phase = std::abs(mp.m) > 0 ? std::arg(mp.m) : 0.0;
      const FockKet warm = squeezed_vacuum(opt.mu, cfg.n_trunc, phase);
      Eigen::VectorXd p(2 * cfg.n_trunc);
      for (int i = 0; i < cfg.n_trunc; ++i) {
        p(i) = warm.coeffs(i).real();
        p(cfg.n_trunc + i) = warm.coeffs(i).imag();
      }
      starts[0] = p;
    } catch (const ValidationError&) {
      // displaced or degenerate phi: keep the random start
    }
  }

  std::vector<RestartOutcome> outcomes(cfg.restarts);
  parallel_for(
      cfg.restarts, [&](int i) { outcomes[i] = run_restart(ev, starts[i], cfg, i); },
      cfg.threads);

  OptimizationResult res;
  res.restart_trace.reserve(cfg.restarts);
  int best = 0;
  bool any_converged = false;
  for (int i = 0; i < cfg.restarts; ++i) {
    res.restart_trace.push_back(outcomes[i].record);
    any_converged = any_converged || outcomes[i].record.converged;
    if (outcomes[i].record.final_purity > outcomes[best].record.final_purity) best = i;
  }
  if (!any_converged)
    throw OptimizationFailure("optimize_pump: no restart reached the gradient tolerance (best purity " +
                              std::to_string(outcomes[best].record.final_purity) + ")");
  res.best_index = best;
  res.best_ket = FockKet(outcomes[best].ket);
  res.best_purity = outcomes[best].record.final_purity;
  res.squeezed_fit = squeezed_fidelity(res.best_ket);
  return res;
}

SpectralFn recover_physical_pump(const FockKet& gamma_prime, const BeamSplitterMap& map,
                                 const Grid1D& g) {
  const int n = gamma_prime.n_trunc();
  const int w = n + 20;
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(w);
  c.head(n) = gamma_prime.coeffs;
  c = squeeze_operator(1.0 / map.nu, w) * c;
  FockKet k(c);
  if (k.tail_weight() > 0.05)
    throw TruncationError("recover_physical_pump: truncation tail " +
                          std::to_string(k.tail_weight()) + " exceeds 0.05");
  k.normalize();
  Eigen::VectorXcd vals = synthesize_wavefunction(k, g);
  SpectralFn f = SpectralFn::sampled(g, std::move(vals));
  return f.normalized();
}

std::string OptimizerConfig::to_json() const {
  nlohmann::json out;
  out["n_trunc"] = n_trunc;
  out["lambda"] = lambda;
  out["restarts"] = restarts;
  out["theta"] = theta;
  out["max_iters"] = max_iters;
  out["grad_tol"] = grad_tol;
  out["seed"] = seed;
  out["warm_start"] = warm_start;
  out["threads"] = threads;
  return out.dump(2);
}

std::string OptimizationResult::to_json() const {
  nlohmann::json out;
  out["best_purity"] = best_purity;
  out["best_index"] = best_index;
  out["best_ket"] = nlohmann::json::parse(best_ket.to_json());
  out["squeezed_fit"] = {{"mu", squeezed_fit.mu},
                         {"phase", squeezed_fit.phase},
                         {"fidelity", squeezed_fit.fidelity}};
  auto trace = nlohmann::json::array();
  for (const auto& r : restart_trace)
    trace.push_back({{"seed_index", r.seed_index},
                     {"final_purity", r.final_purity},
                     {"iterations", r.iterations},
                     {"grad_norm", r.grad_norm},
                     {"converged", r.converged}});
  out["restart_trace"] = trace;
  return out.dump(2);
}

}  // namespace jsaforge
