#include "priorlab/induced.hpp"

#include <cmath>

#include "priorlab/error.hpp"

namespace priorlab {

Vec default_age_grid() {
  Vec g;
  for (int a = 20; a <= 100; ++a) g.push_back(a);
  return g;
}

double calibrated_g(std::span<const double> xgrid, std::span<const double> anchors,
                    double target_sd) {
  if (anchors.empty()) throw DomainError("calibrated_g", "need at least one anchor");
  const Mat inv = spd_inverse(gram(design_matrix(xgrid)));
  double lev = 0.0;
  for (double a : anchors) {
    const Vec v{1.0, a};
    lev += dot(v, inv * v);
  }
  lev /= static_cast<double>(anchors.size());
  return target_sd * target_sd / lev;
}

CurveSet prior_cdf_curves(const LogisticPrior& prior, const std::optional<Mat>& design,
                          std::span<const double> xgrid, std::size_t ndraws, RngStream& rng) {
  validate(prior);
  if (xgrid.empty()) throw EmptyGrid("prior_cdf_curves", "x grid is empty");
  for (std::size_t i = 1; i < xgrid.size(); ++i)
    if (!(xgrid[i] > xgrid[i - 1]))
      throw DomainError("prior_cdf_curves", "x grid must be strictly increasing");

  Mat chol;
  if (const auto* n = std::get_if<IidNormalPrior>(&prior)) {
    chol = Mat::diagonal(Vec{n->sigma, n->sigma});
  } else if (const auto* g = std::get_if<GPrior>(&prior)) {
    if (!design) throw DomainError("prior_cdf_curves", "g-prior needs a design matrix");
    chol = cholesky(g->g * spd_inverse(gram(*design)));
  } else {
    throw UnsimulablePrior("prior_cdf_curves", prior_name(prior) + " prior is improper");
  }

  CurveSet out{Vec(xgrid.begin(), xgrid.end()), Mat(ndraws, xgrid.size()), Mat(ndraws, 2), prior};
  for (std::size_t d = 0; d < ndraws; ++d) {
    const Vec th = mvn_sample_chol(Vec{0.0, 0.0}, chol, rng);
    out.thetas(d, 0) = th[0];
    out.thetas(d, 1) = th[1];
    for (std::size_t i = 0; i < xgrid.size(); ++i)
      out.curves(d, i) = logit_inv(th[0] + th[1] * xgrid[i]);
  }
  return out;
}

double saturation_fraction(const CurveSet& curves, double eps) {
  if (!(eps > 0.0 && eps < 0.5)) throw DomainError("saturation_fraction", "eps must lie in (0, 0.5)");
  const std::size_t n = curves.curves.rows();
  if (n == 0) return 0.0;
  std::size_t saturated = 0;
  for (std::size_t d = 0; d < n; ++d) {
    bool inside = false;
    for (double v : curves.curves.row(d)) {
      if (v > eps && v < 1.0 - eps) {
        inside = true;
        break;
      }
    }
    saturated += !inside;
  }
  return static_cast<double>(saturated) / static_cast<double>(n);
}

PteDraws pte_induced(const Normal& prior1, const Normal& prior2, std::size_t ndraws,
                     RngStream& rng) {
  validate(prior1);
  validate(prior2);
  PteDraws out{Vec(ndraws), prior1, prior2};
  for (double& v : out.values) {
    const double b1 = dist_sample(prior1, rng);
    double b2;
    do {
      b2 = dist_sample(prior2, rng);
    } while (std::abs(b2) < 1e-300);
    v = 1.0 - b1 / b2;
  }
  return out;
}

}  // namespace priorlab
