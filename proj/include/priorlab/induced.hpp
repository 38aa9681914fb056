#pragma once

#include <optional>

#include "priorlab/dist.hpp"
#include "priorlab/linalg.hpp"
#include "priorlab/logistic.hpp"
#include "priorlab/rng.hpp"

namespace priorlab {

// Logistic cdf curves x ↦ ρ(x) traced by prior draws of (α, β).
struct CurveSet {
  Vec xgrid;
  Mat curves;  // ndraws x xgrid.size()
  Mat thetas;  // ndraws x 2
  LogisticPrior prior;
};

// 20, 21, …, 100.
Vec default_age_grid();

// g such that the g-prior over the design [1, x] gives α + βx a prior
// variance of target_sd² averaged over `anchors` (ages 20 and 100 by default).
double calibrated_g(std::span<const double> xgrid, std::span<const double> anchors,
                    double target_sd);

// Curves for `ndraws` prior draws.  GPrior needs `design`; Flat and Jeffreys
// are improper and throw UnsimulablePrior.
CurveSet prior_cdf_curves(const LogisticPrior& prior, const std::optional<Mat>& design,
                          std::span<const double> xgrid, std::size_t ndraws, RngStream& rng);

// Fraction of curves with no grid value inside (eps, 1 − eps).
double saturation_fraction(const CurveSet& curves, double eps = 0.01);

struct PteDraws {
  Vec values;  // 1 − b₁ / b₂
  Normal prior1;
  Normal prior2;
};

// Independent b₁ ~ prior1, b₂ ~ prior2; b₂ is redrawn while |b₂| < 1e-300.
PteDraws pte_induced(const Normal& prior1, const Normal& prior2, std::size_t ndraws,
                     RngStream& rng);

}  // namespace priorlab
