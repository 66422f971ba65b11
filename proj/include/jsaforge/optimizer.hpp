#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jsaforge/fock.hpp"

namespace jsaforge {

struct OptimizerConfig {
  int n_trunc = 30;
  /// Weight of the zero-displacement penalty in the cost.
  double lambda = 10.0;
  int restarts = 80;
  double theta = 0.0;
  int max_iters = 2000;
  double grad_tol = 1e-8;
  std::uint64_t seed = 0;
  /// Seed restart 0 with the squeezed vacuum predicted by the small-theta
  /// analysis instead of a random draw.
  bool warm_start = true;
  /// 0 = use all cores (capped by JSA_FORGE_THREADS).
  int threads = 0;

  std::string to_json() const;
};

struct RestartRecord {
  int seed_index;
  double final_purity;
  int iterations;
  double grad_norm;
  bool converged;
};

struct OptimizationResult {
  FockKet best_ket;
  double best_purity;
  SqueezedFit squeezed_fit;
  std::vector<RestartRecord> restart_trace;
  int best_index;

  std::string to_json() const;
};

/// Scale-invariant objective
/// F = (P{U_BS(theta)(|phi> x |gamma'>)} - lambda |<gamma'|b|gamma'>|^2) / <gamma'|gamma'>^2
/// with |gamma'> = sum (u_n + i v_n)|n> given by params = (u, v).
double cost(const Eigen::VectorXd& params, const FockKet& phi, const OptimizerConfig& cfg);

/// Analytic gradient of `cost` with respect to params.
Eigen::VectorXd gradient(const Eigen::VectorXd& params, const FockKet& phi,
                         const OptimizerConfig& cfg);

/// Multi-restart gradient ascent with backtracking line search. Restarts are
/// independent, deterministically seeded and run in parallel.
OptimizationResult optimize_pump(const FockKet& phi, const OptimizerConfig& cfg);

/// Undo the nu-squeeze and synthesize the physical pump amplitude on a grid.
SpectralFn recover_physical_pump(const FockKet& gamma_prime, const BeamSplitterMap& map,
                                 const Grid1D& g);

}  // namespace jsaforge
