#include "priorlab/summarize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "priorlab/error.hpp"

namespace priorlab {

namespace {

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sd_of(std::span<const double> v, double m) {
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

double quantile_sorted(const Vec& s, double p) {
  const double h = p * static_cast<double>(s.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, s.size() - 1);
  return s[lo] + (h - static_cast<double>(lo)) * (s[hi] - s[lo]);
}

}  // namespace

double DensityGrid::integral() const {
  double s = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i)
    s += 0.5 * (density[i] + density[i - 1]) * (grid[i] - grid[i - 1]);
  return s;
}

double sample_quantile(std::span<const double> draws, double p) {
  if (draws.empty()) throw TooFewDraws("sample_quantile", "no draws");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("sample_quantile", "p must lie in [0,1]");
  Vec s(draws.begin(), draws.end());
  std::sort(s.begin(), s.end());
  return quantile_sorted(s, p);
}

SummaryRow summary_stats(std::span<const double> draws, std::string label,
                         std::optional<double> mode_bandwidth) {
  if (draws.size() < 2) throw TooFewDraws("summary_stats", "need at least 2 draws");
  SummaryRow row;
  row.label = std::move(label);
  row.n_draws = draws.size();
  row.mean = mean_of(draws);
  row.sd = sd_of(draws, row.mean);
  Vec s(draws.begin(), draws.end());
  std::sort(s.begin(), s.end());
  row.q10 = quantile_sorted(s, 0.10);
  row.q50 = quantile_sorted(s, 0.50);
  row.q90 = quantile_sorted(s, 0.90);
  if (row.sd == 0.0 || s.size() < 10) {
    row.mode = row.q50;
  } else {
    // Central 99.8% for large samples so heavy tails do not stretch the grid.
    double lo = s.size() >= 1000 ? quantile_sorted(s, 0.001) : s.front();
    double hi = s.size() >= 1000 ? quantile_sorted(s, 0.999) : s.back();
    if (!(hi > lo)) {
      lo = s.front();
      hi = s.back();
    }
    Vec grid(512);
    for (std::size_t i = 0; i < grid.size(); ++i)
      grid[i] = lo + (hi - lo) * static_cast<double>(i) / 511.0;
    const DensityGrid d = kde_density(s, grid, mode_bandwidth);
    row.mode = grid[static_cast<std::size_t>(
        std::max_element(d.density.begin(), d.density.end()) - d.density.begin())];
  }
  row.ess = draws.size() >= 100 ? effective_sample_size(draws)
                                : static_cast<double>(draws.size());
  return row;
}

double silverman_bandwidth(std::span<const double> draws) {
  if (draws.size() < 2) throw TooFewDraws("silverman_bandwidth", "need at least 2 draws");
  const double sd = sd_of(draws, mean_of(draws));
  return 1.06 * sd * std::pow(static_cast<double>(draws.size()), -0.2);
}

DensityGrid kde_density(std::span<const double> draws, std::span<const double> grid,
                        std::optional<double> bandwidth) {
  if (draws.size() < 10) throw TooFewDraws("kde_density", "need at least 10 draws");
  if (grid.empty()) throw EmptyGrid("kde_density", "grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw DomainError("kde_density", "grid must be increasing");
  const double h = bandwidth.value_or(silverman_bandwidth(draws));
  if (!(h > 0.0)) throw DomainError("kde_density", "bandwidth must be positive");

  Vec s(draws.begin(), draws.end());
  std::sort(s.begin(), s.end());
  DensityGrid out{Vec(grid.begin(), grid.end()), Vec(grid.size(), 0.0), h};
  const double norm = 1.0 / (static_cast<double>(s.size()) * h * std::sqrt(2.0 * std::numbers::pi));
  const double reach = 9.0 * h;
  auto first = s.begin();
  for (std::size_t g = 0; g < grid.size(); ++g) {
    first = std::lower_bound(first, s.end(), grid[g] - reach);
    double acc = 0.0;
    for (auto it = first; it != s.end() && *it <= grid[g] + reach; ++it) {
      const double z = (grid[g] - *it) / h;
      acc += std::exp(-0.5 * z * z);
    }
    out.density[g] = acc * norm;
  }
  return out;
}

Vec density_grid_for(std::span<const double> draws, std::size_t points) {
  if (draws.size() < 2) throw TooFewDraws("density_grid_for", "need at least 2 draws");
  if (points < 2) throw EmptyGrid("density_grid_for", "need at least 2 grid points");
  const double m = mean_of(draws);
  const double sd = sd_of(draws, m);
  const auto [mn, mx] = std::minmax_element(draws.begin(), draws.end());
  const double h = sd > 0 ? silverman_bandwidth(draws) : 1.0;
  double lo = std::min(m - 4.0 * sd, *mn - 3.0 * h);
  double hi = std::max(m + 4.0 * sd, *mx + 3.0 * h);
  Vec grid(points);
  for (std::size_t i = 0; i < points; ++i)
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  return grid;
}

double effective_sample_size(std::span<const double> draws) {
  const std::size_t n = draws.size();
  if (n < 100) throw TooFewDraws("effective_sample_size", "need at least 100 draws");
  const double m = mean_of(draws);
  Vec c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = draws[i] - m;
  const double gamma0 = dot(c, c) / static_cast<double>(n);
  const double nd = static_cast<double>(n);
  if (gamma0 <= 0.0) return nd;

  const auto rho = [&](std::size_t lag) {
    double s = 0.0;
    for (std::size_t i = 0; i + lag < n; ++i) s += c[i] * c[i + lag];
    return s / nd / gamma0;
  };
  // τ = −1 + 2 Σₖ (ρ₂ₖ + ρ₂ₖ₊₁), stopping at the first nonpositive pair.
  double tau = -1.0;
  for (std::size_t k = 0; 2 * k + 1 < n; ++k) {
    const double pair = (k == 0 ? 1.0 : rho(2 * k)) + rho(2 * k + 1);
    if (pair <= 0.0) break;
    tau += 2.0 * pair;
  }
  return std::min(nd, nd / std::max(tau, 1e-12));
}

double mcse_mean(std::span<const double> draws) {
  const double m = mean_of(draws);
  return sd_of(draws, m) / std::sqrt(effective_sample_size(draws));
}

double ks_distance(std::span<const double> draws, const std::function<double(double)>& cdf) {
  if (draws.empty()) throw TooFewDraws("ks_distance", "no draws");
  Vec s(draws.begin(), draws.end());
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double f = cdf(s[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return d;
}

}  // namespace priorlab
