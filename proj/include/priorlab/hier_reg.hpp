#pragma once

#include <cstdint>
#include <vector>

#include "priorlab/dist.hpp"
#include "priorlab/linalg.hpp"
#include "priorlab/rng.hpp"

namespace priorlab {

// m independent regressions y_j = X_j β_j + ε_j, ε_j ~ N(0, τ²_j I).
struct HierData {
  std::vector<Mat> X;  // n_j x k, first column ones
  std::vector<Vec> y;

  std::size_t m() const noexcept { return X.size(); }
  std::size_t k() const noexcept { return X.empty() ? 0 : X.front().cols(); }
};

// Independent priors on the standard deviations S_i (LogNormal or Gamma).
struct SPriorSpec {
  std::vector<DistSpec> coords;

  static SPriorSpec lognormal(std::size_t k, double mu, double sigma);
  static SPriorSpec gamma(std::size_t k, double shape, double rate);
};

struct HierHyper {
  InverseGamma tau2_prior{3.0, 1.0};
  double betabar_var = 1000.0;  // β̄ ~ N(0, betabar_var · I)
  SPriorSpec s_prior;           // correlation r ~ Uniform(−1, 1) when k = 2
};

struct HierState {
  Mat beta;  // m x k
  Vec betabar;
  Vec tau2;
  Vec S;
  double r = 0.0;

  // diag(S) R diag(S); R is [[1, r], [r, 1]] for k = 2 and [1] for k = 1.
  Mat sigma() const;
};

struct GibbsConfig {
  std::size_t iterations = 100'000;
  std::size_t burnin = 10'000;
  std::uint64_t seed = 1;
  Vec s_scales;  // per-coordinate log-S step sd; empty = 0.5 each
  double r_scale = 0.5;
  bool adapt = true;
  // Joint-distribution check mode: redraw every y_j from its sampling
  // distribution after each sweep and start from a prior draw.
  bool resimulate_data = false;
};

struct HierChains {
  std::vector<Mat> beta;  // per regression: kept x k
  Mat betabar;            // kept x k
  Mat tau2;               // kept x m
  Mat S;                  // kept x k
  Vec r;                  // kept
  Vec s_accept_rate;
  double r_accept_rate = 0;
  Vec s_scales;
  double r_scale = 0;
};

struct SimulatedHier {
  HierData data;
  Mat true_beta;  // m x k
};

SimulatedHier simulate_hier_data(RngStream& rng, std::span<const double> true_betabar,
                                 const Mat& true_sigma, std::span<const double> true_tau2,
                                 std::size_t m, std::size_t n_j);

struct GaussianConditional {
  Vec mean;
  Mat cov;
};

// β_j | rest ~ N(V (X_jᵀy_j/τ²_j + Σ⁻¹β̄), V), V = (X_jᵀX_j/τ²_j + Σ⁻¹)⁻¹.
GaussianConditional beta_j_conditional(std::size_t j, const HierState& state,
                                       const HierData& data);
Vec cond_beta_j(std::size_t j, const HierState& state, const HierData& data, RngStream& rng);

// β̄ | rest ~ N(V Σ⁻¹ Σ_j β_j, V), V = (m Σ⁻¹ + I/betabar_var)⁻¹.
GaussianConditional betabar_conditional(const HierState& state, const HierHyper& hyper);
Vec cond_betabar(const HierState& state, const HierHyper& hyper, RngStream& rng);

// τ²_j | rest ~ IG(a₀ + n_j/2, b₀ + ‖y_j − X_jβ_j‖²/2).
InverseGamma tau2_conditional(std::size_t j, const HierState& state, const HierData& data,
                              const HierHyper& hyper);
double cond_tau2(std::size_t j, const HierState& state, const HierData& data,
                 const HierHyper& hyper, RngStream& rng);

// Σ_j log N(β_j; β̄, Σ) for the given Σ.
double beta_log_density(const HierState& state, const Mat& sigma);

// Coordinate-wise random walk on log S_i; returns one accept flag per coordinate.
std::vector<bool> mwg_update_S(HierState& state, const HierHyper& hyper, RngStream& rng,
                               std::span<const double> scales);

// Random walk on atanh(r) under the uniform prior on (−1, 1).
bool mwg_update_R(HierState& state, RngStream& rng, double scale);

// Systematic scan β_j → β̄ → τ² → S → r.
HierChains run_gibbs(const HierData& data, const HierHyper& hyper, const GibbsConfig& config);

// Draw of the full parameter vector from the prior (k = m rows of beta).
HierState draw_from_prior(const HierHyper& hyper, std::size_t m, std::size_t k, RngStream& rng);

}  // namespace priorlab
