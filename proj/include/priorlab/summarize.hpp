#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>

#include "priorlab/linalg.hpp"

namespace priorlab {

struct SummaryRow {
  std::string label;
  double mean = 0;
  double sd = 0;  // n − 1 denominator
  double q10 = 0;
  double q50 = 0;
  double q90 = 0;
  double mode = 0;  // argmax of the Gaussian KDE
  double ess = 0;   // effective sample size (n when fewer than 100 draws)
  std::size_t n_draws = 0;
};

struct DensityGrid {
  Vec grid;
  Vec density;
  double bandwidth = 0;

  double integral() const;  // trapezoid rule
};

// Linear interpolation between order statistics (R's type 7).
double sample_quantile(std::span<const double> draws, double p);

SummaryRow summary_stats(std::span<const double> draws, std::string label = "",
                         std::optional<double> mode_bandwidth = std::nullopt);

// 1.06 · sd · n^(-1/5).
double silverman_bandwidth(std::span<const double> draws);

// Gaussian KDE evaluated on `grid` (increasing).  Kernels are truncated at
// ±9 bandwidths; the omitted mass is below 1e-18.
DensityGrid kde_density(std::span<const double> draws, std::span<const double> grid,
                        std::optional<double> bandwidth = std::nullopt);

// `points` equally spaced values covering mean ± 4 sd and the data range
// padded by three bandwidths.
Vec density_grid_for(std::span<const double> draws, std::size_t points = 512);

// n / (1 + 2 Σ ρ̂ₖ) with Geyer's initial positive sequence truncation, capped
// at n.  Constant draws return n.
double effective_sample_size(std::span<const double> draws);

// sd / √ESS.
double mcse_mean(std::span<const double> draws);

}  // namespace priorlab

namespace priorlab {

// sup_x |F̂ₙ(x) − F(x)| for a continuous reference cdf F.
double ks_distance(std::span<const double> draws, const std::function<double(double)>& cdf);

}  // namespace priorlab
