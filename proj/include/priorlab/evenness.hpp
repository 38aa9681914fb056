#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "priorlab/linalg.hpp"
#include "priorlab/rng.hpp"

namespace priorlab {

struct DirichletParams {
  Vec gamma;

  static DirichletParams symmetric(std::size_t k, double g);
};

struct CountData {
  std::vector<std::uint64_t> n;

  std::uint64_t total() const;
};

enum class DrawSource { Prior, Posterior };

struct EvennessDraws {
  Vec values;
  DrawSource source = DrawSource::Prior;
  Vec gamma;
  std::uint64_t N = 0;
};

// Default generating proportions, evenness ≈ 0.398 for K = 8.
Vec default_theta_true();

// −Σ θᵢ log θᵢ / log K with 0·log 0 = 0.  Requires K ≥ 2, θᵢ ≥ 0 and
// |Σθᵢ − 1| ≤ 1e-9.
double evenness(std::span<const double> theta);

// γᵢ + nᵢ.
DirichletParams posterior_params(const DirichletParams& prior, const CountData& counts);

// Multinomial(N, θ) by sequential conditional binomials.
CountData sample_counts(RngStream& rng, std::span<const double> theta_true, std::uint64_t N);

EvennessDraws evenness_draws(const DirichletParams& params, std::size_t ndraws, RngStream& rng,
                             DrawSource source, std::uint64_t N);

struct SweepCell {
  double gamma = 0;
  std::uint64_t N = 0;
  double mean = 0;
  double sd = 0;
  CountData counts;
  EvennessDraws draws;
};

// One multinomial dataset per N (child stream n of `rng`), shared by every γ;
// then for each (γ, N) the conjugate posterior and `ndraws` evenness draws from
// child stream |Ns| + g·|Ns| + n.  Cells do not depend on evaluation order.
std::vector<SweepCell> sweep_table(std::span<const double> gammas,
                                   std::span<const std::uint64_t> Ns,
                                   std::span<const double> theta_true, RngStream& rng,
                                   std::size_t ndraws = 10'000);

}  // namespace priorlab
