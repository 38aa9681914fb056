#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "priorlab/dist.hpp"
#include "priorlab/error.hpp"
#include "priorlab/induced.hpp"
#include "priorlab/summarize.hpp"

using namespace priorlab;

namespace {

CurveSet constant_curves(std::size_t n, std::size_t saturated) {
  CurveSet cs;
  cs.xgrid = default_age_grid();
  cs.curves = Mat(n, cs.xgrid.size());
  cs.thetas = Mat(n, 2);
  cs.prior = IidNormalPrior{1};
  for (std::size_t d = 0; d < n; ++d) {
    const double alpha = d < saturated ? (d % 2 ? 1000.0 : -1000.0) : 0.0;
    cs.thetas(d, 0) = alpha;
    for (std::size_t j = 0; j < cs.xgrid.size(); ++j) cs.curves(d, j) = logit_inv(alpha);
  }
  return cs;
}

}  // namespace

TEST_CASE("age grid") {
  const Vec g = default_age_grid();
  REQUIRE(g.size() == 81);
  CHECK(g.front() == 20);
  CHECK(g.back() == 100);
}

TEST_CASE("a degenerate prior gives flat one-half curves") {
  RngStream rng(1);
  const Vec g = default_age_grid();
  const auto cs = prior_cdf_curves(IidNormalPrior{1e-12}, std::nullopt, g, 200, rng);
  CHECK(cs.curves.rows() == 200);
  for (std::size_t d = 0; d < 200; ++d)
    for (std::size_t j = 0; j < g.size(); ++j) CHECK(std::abs(cs.curves(d, j) - 0.5) < 1e-6);
  CHECK(saturation_fraction(cs) == 0.0);
}

TEST_CASE("saturation of constructed curve sets") {
  CHECK(saturation_fraction(constant_curves(100, 0)) == 0.0);
  CHECK(saturation_fraction(constant_curves(100, 100)) == 1.0);
  CHECK(saturation_fraction(constant_curves(100, 30)) == 0.30);
  CHECK_THROWS_AS(saturation_fraction(constant_curves(10, 3), 0.0), DomainError);
  CHECK_THROWS_AS(saturation_fraction(constant_curves(10, 3), 0.5), DomainError);
}

TEST_CASE("saturation is invariant under row permutation") {
  RngStream rng(2);
  const Vec g = default_age_grid();
  auto cs = prior_cdf_curves(IidNormalPrior{3}, std::nullopt, g, 500, rng);
  const double before = saturation_fraction(cs);
  Mat shuffled(cs.curves.rows(), cs.curves.cols());
  for (std::size_t d = 0; d < 500; ++d)
    for (std::size_t j = 0; j < g.size(); ++j) shuffled(d, j) = cs.curves((d * 7 + 3) % 500, j);
  cs.curves = shuffled;
  CHECK(saturation_fraction(cs) == before);
}

TEST_CASE("calibrated g matches the offline oracle") {
  const Vec g = default_age_grid();
  const Vec anchors = {20, 100};
  CHECK(calibrated_g(g, anchors, 5.0) == doctest::Approx(515.6832298136645).epsilon(1e-10));
}

TEST_CASE("iid N(0, 25^2) curves saturate, calibrated g-prior curves do not") {
  const Vec g = default_age_grid();
  const Vec anchors = {20, 100};
  RngStream r1(3), r2(4);
  const auto iid = prior_cdf_curves(IidNormalPrior{25}, std::nullopt, g, 10'000, r1);
  const auto gp = prior_cdf_curves(GPrior{calibrated_g(g, anchors, 5.0)}, design_matrix(g), g,
                                   10'000, r2);
  const double a = saturation_fraction(iid);
  const double b = saturation_fraction(gp);
  CHECK(a >= 0.5);
  CHECK(a == doctest::Approx(0.982799).epsilon(0.005));
  CHECK(b == doctest::Approx(0.012173).scale(1).epsilon(0.005));
  CHECK(a - b >= 0.2);
}

TEST_CASE("curves are monotone in the direction of beta and lie in (0,1)") {
  RngStream rng(5);
  const Vec g = default_age_grid();
  const auto cs = prior_cdf_curves(IidNormalPrior{0.05}, std::nullopt, g, 1000, rng);
  for (std::size_t d = 0; d < 1000; ++d) {
    const double beta = cs.thetas(d, 1);
    for (std::size_t j = 0; j < g.size(); ++j) {
      REQUIRE(cs.curves(d, j) > 0.0);
      REQUIRE(cs.curves(d, j) < 1.0);
      if (j == 0) continue;
      if (beta > 0) REQUIRE(cs.curves(d, j) >= cs.curves(d, j - 1));
      if (beta < 0) REQUIRE(cs.curves(d, j) <= cs.curves(d, j - 1));
    }
  }
}

TEST_CASE("improper priors cannot be simulated") {
  RngStream rng(6);
  const Vec g = default_age_grid();
  CHECK_THROWS_AS(prior_cdf_curves(FlatPrior{}, std::nullopt, g, 10, rng), UnsimulablePrior);
  CHECK_THROWS_AS(prior_cdf_curves(JeffreysPrior{}, design_matrix(g), g, 10, rng),
                  UnsimulablePrior);
  CHECK_THROWS(prior_cdf_curves(GPrior{10}, std::nullopt, g, 10, rng));
}

TEST_CASE("PTE under standard normal priors is Cauchy(1, 1)") {
  RngStream rng(7);
  const auto d = pte_induced(Normal{0, 1}, Normal{0, 1}, 1'000'000, rng);
  REQUIRE(d.values.size() == 1'000'000);
  CHECK(std::abs(sample_quantile(d.values, 0.5) - 1.0) < 0.005);
  CHECK(std::abs(sample_quantile(d.values, 0.25) - 0.0) < 0.01);
  CHECK(std::abs(sample_quantile(d.values, 0.75) - 2.0) < 0.01);
  const double inside =
      std::count_if(d.values.begin(), d.values.end(), [](double v) { return v > 0 && v < 1; }) /
      1e6;
  CHECK(std::abs(inside - 0.25) < 0.005);
  CHECK(std::abs((1 - inside) - 0.75) < 0.005);
  for (double v : d.values) REQUIRE(std::isfinite(v));

  Vec ratio(d.values.size());
  for (std::size_t i = 0; i < ratio.size(); ++i) ratio[i] = 1.0 - d.values[i];
  CHECK(ks_distance(ratio, [](double x) { return dist_cdf(Cauchy{0, 1}, x); }) < 0.005);
}
