#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "priorlab/linalg.hpp"

namespace priorlab {

// Binary response with a single covariate.
struct BinaryDataset {
  std::vector<int> y;
  Vec x;

  std::size_t n() const noexcept { return y.size(); }
};

// Validates lengths and y ∈ {0,1}; throws DomainError / LengthMismatch.
BinaryDataset make_dataset(std::vector<int> y, Vec x);

// n x 2 design [1, x].
Mat design_matrix(const BinaryDataset& data);
Mat design_matrix(std::span<const double> x);

struct Theta {
  double alpha = 0.0;
  double beta = 0.0;
};

struct IidNormalPrior {
  double sigma;
};
// (α, β) | X ~ N₂(0, g (XᵀX)⁻¹).
struct GPrior {
  double g;
};
struct FlatPrior {};
// ∝ det(XᵀWX)^½ with W = diag(ρᵢ(1 − ρᵢ)).
struct JeffreysPrior {};

using LogisticPrior = std::variant<IidNormalPrior, GPrior, FlatPrior, JeffreysPrior>;

std::string prior_name(const LogisticPrior& prior);
void validate(const LogisticPrior& prior);

struct GlmFit {
  Theta theta_hat;
  Mat fisher_info;  // XᵀWX at theta_hat
  int iterations = 0;
  bool converged = false;
};

struct MHConfig {
  std::size_t iterations = 11'000;
  std::size_t burnin = 1'000;
  std::uint64_t seed = 1;
  std::optional<double> proposal_scale;  // nullopt = AUTO
  bool adapt = true;
  // Drops the likelihood from the target so the kernel samples the prior; the
  // proposal is then built from the prior's moments (proper priors only).
  bool prior_only = false;
};

struct Chain {
  Mat draws;               // (iterations - burnin) x 2, columns (α, β)
  Vec log_target;          // target log-density of each kept draw
  double accept_rate = 0;  // over kept iterations
  double final_scale = 0;  // proposal scale in force after burn-in
  LogisticPrior prior;
  MHConfig config;

  Vec column(std::size_t j) const;
};

// Σ [yᵢ ηᵢ − log(1 + exp ηᵢ)], ηᵢ = α + β xᵢ.
double loglik(const Theta& theta, const BinaryDataset& data);

// XᵀWX for the [1, x] design.
Mat fisher_information(const Theta& theta, std::span<const double> x);

// det(XᵀWX) via the weighted-centred form Σw · Σw (x − x̄_w)², which avoids the
// cancellation of the textbook 2x2 formula when the covariate sits far from 0.
double jeffreys_determinant(const Theta& theta, std::span<const double> x);

// Newton-Raphson (IRLS) until the max-norm of the score is below 1e-8.
// Throws Separation when |θ| exceeds 1e6 and NotConverged after 100 steps.
GlmFit fit_mle(const BinaryDataset& data);

// Prior log-density up to an additive constant.  `design` is the n x 2 [1, x]
// matrix; required by GPrior and JeffreysPrior.  Jeffreys returns -inf when the
// information determinant is exactly zero.
double log_prior(const LogisticPrior& prior, const Theta& theta, const Mat& design);

// Unnormalised posterior, caching what the samplers evaluate repeatedly.
class LogisticPosterior {
 public:
  LogisticPosterior(const BinaryDataset& data, LogisticPrior prior, bool prior_only = false);

  double log_prior(const Theta& theta) const;
  double log_target(const Theta& theta) const;

  const BinaryDataset& data() const noexcept { return data_; }

 private:
  const BinaryDataset& data_;
  LogisticPrior prior_;
  Mat gram_;
  bool prior_only_;
};

// Gaussian random walk started at the MLE with covariance c²·I(θ̂)⁻¹,
// c = 2.38/√2 unless given.  With `adapt`, c is rescaled in batches of 50
// during burn-in towards 20–50% acceptance and then frozen.
Chain rw_metropolis(const BinaryDataset& data, const LogisticPrior& prior,
                    const MHConfig& config);

// Independence Metropolis-Hastings with proposal N(θ̂, c²·I(θ̂)⁻¹), c = 1
// unless given.
Chain fisher_proposal_mh(const BinaryDataset& data, const LogisticPrior& prior,
                         const MHConfig& config);

}  // namespace priorlab
