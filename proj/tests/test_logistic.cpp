#include <doctest.h>

#include <cmath>
#include <numeric>

#include "priorlab/dist.hpp"
#include "priorlab/error.hpp"
#include "priorlab/io.hpp"
#include "priorlab/logistic.hpp"
#include "priorlab/rng.hpp"
#include "priorlab/summarize.hpp"

using namespace priorlab;

namespace {

// Synthetic stand-in with banknote-like scale: lengths ~ N(214.9, 0.38),
// y ~ Bernoulli(logit⁻¹(233.26 − 1.0855 x)).
BinaryDataset synthetic_notes(std::uint64_t seed, std::size_t n = 200) {
  RngStream rng(seed);
  std::vector<int> y(n);
  Vec x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = 214.9 + 0.38 * rng.normal();
    y[i] = rng.uniform01() < logit_inv(233.26 - 1.0855 * x[i]);
  }
  return make_dataset(std::move(y), std::move(x));
}

BinaryDataset fixture20() {
  return load_binary_csv(std::string(PRIORLAB_TEST_DATA) + "/fixture20.csv");
}

double mean_of(const Vec& v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); }

}  // namespace

TEST_CASE("loglik at zero is n log 1/2") {
  const auto d = fixture20();
  CHECK(loglik({0, 0}, d) == doctest::Approx(20 * std::log(0.5)).epsilon(1e-14));
}

TEST_CASE("loglik single point") {
  const auto d = make_dataset({1}, {0.0});
  CHECK(loglik({2, 5}, d) == doctest::Approx(2 - std::log1p(std::exp(2.0))).epsilon(1e-14));
}

TEST_CASE("loglik matches long double summation and stays finite far out") {
  const auto d = synthetic_notes(11);
  const auto fit = fit_mle(d);
  long double s = 0;
  for (std::size_t i = 0; i < d.n(); ++i) {
    const long double eta = fit.theta_hat.alpha + fit.theta_hat.beta * (long double)d.x[i];
    s += d.y[i] * eta - std::log1p(std::exp(eta));
  }
  CHECK(std::abs(loglik(fit.theta_hat, d) - (double)s) < 1e-9);
  const double far = loglik({5000, -10}, d);
  CHECK(std::isfinite(far));
  CHECK(far <= 0.0);
}

TEST_CASE("fit_mle balanced data gives zero") {
  const auto d = make_dataset({0, 1, 0, 1}, {-1, -1, 1, 1});
  const auto fit = fit_mle(d);
  CHECK(fit.converged);
  CHECK(std::abs(fit.theta_hat.alpha) < 1e-10);
  CHECK(std::abs(fit.theta_hat.beta) < 1e-10);
}

TEST_CASE("fit_mle beats a fine grid on the 20-row fixture") {
  const auto d = fixture20();
  const auto fit = fit_mle(d);
  REQUIRE(fit.converged);
  const double best = loglik(fit.theta_hat, d);
  double grid_best = -1e300;
  for (int i = -100; i <= 100; ++i)
    for (int j = -100; j <= 100; ++j) {
      const Theta t{fit.theta_hat.alpha + i * 0.5, fit.theta_hat.beta + j * 0.5 / 214.8};
      grid_best = std::max(grid_best, loglik(t, d));
    }
  CHECK(grid_best <= best + 1e-6);

  const Mat& I = fit.fisher_info;
  CHECK(I(0, 1) == I(1, 0));
  CHECK(I(0, 0) > 0);
  CHECK(I(0, 0) * I(1, 1) - I(0, 1) * I(1, 0) > 0);
  const Mat direct = fisher_information(fit.theta_hat, d.x);
  CHECK((direct - I).max_abs() < 1e-9 * I.max_abs());
}

TEST_CASE("fit_mle recovers the generating line on a large synthetic sample") {
  const auto d = synthetic_notes(5, 20000);
  const auto fit = fit_mle(d);
  CHECK(fit.theta_hat.alpha == doctest::Approx(233.26).epsilon(0.1));
  CHECK(fit.theta_hat.beta == doctest::Approx(-1.0855).epsilon(0.1));
}

TEST_CASE("prior-only sampling rejects improper priors") {
  MHConfig cfg;
  cfg.prior_only = true;
  CHECK_THROWS_AS(rw_metropolis(fixture20(), FlatPrior{}, cfg), UnsimulablePrior);
  CHECK_THROWS_AS(fisher_proposal_mh(fixture20(), JeffreysPrior{}, cfg), UnsimulablePrior);
}

TEST_CASE("fit_mle errors") {
  CHECK_THROWS_AS(fit_mle(make_dataset({0, 0, 1, 1}, {1, 2, 3, 4})), Separation);
  CHECK_THROWS_AS(fit_mle(make_dataset({0, 0, 0}, {1, 2, 3})), DomainError);
  CHECK_THROWS_AS(fit_mle(make_dataset({0, 1, 0}, {2, 2, 2})), DomainError);
  CHECK_THROWS_AS(make_dataset({0, 2}, {1, 2}), DomainError);
  CHECK_THROWS_AS(make_dataset({0, 1}, {1}), LengthMismatch);
}

TEST_CASE("log_prior closed forms") {
  const auto d = fixture20();
  const Mat X = design_matrix(d);
  const Theta t{1.5, -0.25};
  CHECK(log_prior(FlatPrior{}, t, X) == 0.0);
  CHECK(log_prior(IidNormalPrior{2}, t, X) ==
        doctest::Approx(-(1.5 * 1.5 + 0.25 * 0.25) / 8).epsilon(1e-14));
  const Mat G = gram(X);
  const double q = G(0, 0) * 1.5 * 1.5 + 2 * G(0, 1) * 1.5 * -0.25 + G(1, 1) * 0.0625;
  CHECK(log_prior(GPrior{20}, t, X) == doctest::Approx(-q / 40).epsilon(1e-10));
  CHECK_THROWS_AS(validate(LogisticPrior{IidNormalPrior{0}}), DomainError);
  CHECK_THROWS_AS(validate(LogisticPrior{GPrior{-1}}), DomainError);
}

TEST_CASE("Jeffreys on a single observation is minus infinity") {
  const Mat X = design_matrix(Vec{3.0});
  const double lp = log_prior(JeffreysPrior{}, {0.2, 0.1}, X);
  CHECK(std::isinf(lp));
  CHECK(lp < 0);
}

TEST_CASE("Jeffreys matches a direct 2x2 determinant") {
  RngStream rng(99);
  for (int rep = 0; rep < 20; ++rep) {
    Vec x(25);
    for (double& v : x) v = 3 * rng.normal();
    const Theta t{rng.normal(), 0.5 * rng.normal()};
    double a = 0, b = 0, c = 0;
    for (double xi : x) {
      const double p = 1 / (1 + std::exp(-(t.alpha + t.beta * xi)));
      const double w = p * (1 - p);
      a += w;
      b += w * xi;
      c += w * xi * xi;
    }
    const double det = a * c - b * b;
    const double lp = log_prior(JeffreysPrior{}, t, design_matrix(x));
    CHECK(std::exp(lp) == doctest::Approx(std::sqrt(det)).epsilon(1e-8));
  }
}

TEST_CASE("Jeffreys determinant is invariant under recentering") {
  RngStream rng(7);
  Vec x(30);
  for (double& v : x) v = 214.9 + 0.4 * rng.normal();
  const Theta t{200.0, -0.93};
  const double c = 214.9;
  Vec xc(x);
  for (double& v : xc) v -= c;
  const double d1 = jeffreys_determinant(t, x);
  const double d2 = jeffreys_determinant({t.alpha + t.beta * c, t.beta}, xc);
  CHECK(d1 == doctest::Approx(d2).epsilon(1e-8));
}

TEST_CASE("prior-only sampling recovers N(0,1)") {
  const auto d = fixture20();
  MHConfig cfg;
  cfg.iterations = 60'000;
  cfg.burnin = 2'000;
  cfg.seed = 4;
  cfg.prior_only = true;
  for (int kernel = 0; kernel < 2; ++kernel) {
    const Chain ch = kernel == 0 ? rw_metropolis(d, IidNormalPrior{1}, cfg)
                                 : fisher_proposal_mh(d, IidNormalPrior{1}, cfg);
    for (std::size_t j = 0; j < 2; ++j) {
      const auto s = summary_stats(ch.column(j));
      CHECK(std::abs(s.mean) < 0.05);
      CHECK(std::abs(s.sd - 1) < 0.05);
    }
  }
}

TEST_CASE("chain shape, acceptance and determinism") {
  const auto d = synthetic_notes(3);
  MHConfig cfg;
  cfg.iterations = 3000;
  cfg.burnin = 500;
  cfg.seed = 12;
  for (const LogisticPrior& p : {LogisticPrior{IidNormalPrior{100}}, LogisticPrior{GPrior{200}},
                                 LogisticPrior{FlatPrior{}}, LogisticPrior{JeffreysPrior{}}}) {
    for (int kernel = 0; kernel < 2; ++kernel) {
      const Chain a = kernel ? fisher_proposal_mh(d, p, cfg) : rw_metropolis(d, p, cfg);
      const Chain b = kernel ? fisher_proposal_mh(d, p, cfg) : rw_metropolis(d, p, cfg);
      CHECK(a.draws.rows() == 2500);
      CHECK(a.draws.cols() == 2);
      CHECK(a.accept_rate > 0);
      CHECK(a.accept_rate <= 1);
      for (double lt : a.log_target) CHECK(std::isfinite(lt));
      CHECK(a.draws == b.draws);
    }
  }
  MHConfig bad = cfg;
  bad.burnin = bad.iterations;
  CHECK_THROWS_AS(rw_metropolis(d, FlatPrior{}, bad), DomainError);
  bad = cfg;
  bad.proposal_scale = 0.0;
  CHECK_THROWS_AS(rw_metropolis(d, FlatPrior{}, bad), DomainError);
}

TEST_CASE("adaptation lands in the target acceptance band") {
  const auto d = synthetic_notes(21);
  MHConfig cfg;
  cfg.seed = 8;
  cfg.proposal_scale = 20.0;
  const Chain ch = rw_metropolis(d, FlatPrior{}, cfg);
  CHECK(ch.final_scale < 20.0);
  CHECK(ch.accept_rate > 0.15);
  CHECK(ch.accept_rate < 0.55);
}

TEST_CASE("posterior means move with sigma on synthetic notes") {
  const auto d = synthetic_notes(1);
  std::vector<double> alpha, beta, se_a, se_b;
  for (double sigma : {10.0, 25.0, 100.0, 900.0}) {
    MHConfig cfg;
    cfg.seed = 100 + static_cast<std::uint64_t>(sigma);
    const Chain ch = rw_metropolis(d, IidNormalPrior{sigma}, cfg);
    alpha.push_back(mean_of(ch.column(0)));
    beta.push_back(mean_of(ch.column(1)));
    se_a.push_back(mcse_mean(ch.column(0)));
    se_b.push_back(mcse_mean(ch.column(1)));
  }
  for (std::size_t i = 0; i + 1 < alpha.size(); ++i) {
    CHECK(alpha[i + 1] - alpha[i] > 3 * std::hypot(se_a[i], se_a[i + 1]));
    CHECK(beta[i] - beta[i + 1] > 3 * std::hypot(se_b[i], se_b[i + 1]));
  }
}

TEST_CASE("flat prior: kernels agree and the best draw sits at the MLE") {
  const auto d = synthetic_notes(2);
  const auto fit = fit_mle(d);
  MHConfig cfg;
  cfg.iterations = 41'000;
  cfg.seed = 31;
  const Chain rw = rw_metropolis(d, FlatPrior{}, cfg);
  const Chain fi = fisher_proposal_mh(d, FlatPrior{}, cfg);
  for (std::size_t j = 0; j < 2; ++j) {
    const double diff = mean_of(rw.column(j)) - mean_of(fi.column(j));
    const double se = std::hypot(mcse_mean(rw.column(j)), mcse_mean(fi.column(j)));
    CHECK(std::abs(diff) < 3 * se);
  }
  const auto best = static_cast<std::size_t>(
      std::max_element(fi.log_target.begin(), fi.log_target.end()) - fi.log_target.begin());
  const double sd_a = summary_stats(fi.column(0)).sd;
  const double sd_b = summary_stats(fi.column(1)).sd;
  CHECK(std::abs(fi.draws(best, 0) - fit.theta_hat.alpha) < 0.05 * sd_a);
  CHECK(std::abs(fi.draws(best, 1) - fit.theta_hat.beta) < 0.05 * sd_b);
}

TEST_CASE("g-prior, flat and Jeffreys posteriors stay close on synthetic notes") {
  const auto d = synthetic_notes(4);
  MHConfig cfg;
  cfg.iterations = 51'000;
  cfg.seed = 77;
  std::vector<Chain> chains;
  for (const LogisticPrior& p : {LogisticPrior{GPrior{200}}, LogisticPrior{FlatPrior{}},
                                 LogisticPrior{JeffreysPrior{}}})
    chains.push_back(fisher_proposal_mh(d, p, cfg));
  // The g-prior pull toward zero scales with |θ̂|/g, and this sample's θ̂ sits
  // further out than the banknote fit, so that pair gets twice the room.
  for (std::size_t a = 0; a < chains.size(); ++a)
    for (std::size_t b = a + 1; b < chains.size(); ++b)
      for (std::size_t j = 0; j < 2; ++j) {
        const double sd = summary_stats(chains[a].column(j)).sd;
        const double tol = a == 0 ? 0.2 : 0.1;
        CHECK(std::abs(mean_of(chains[a].column(j)) - mean_of(chains[b].column(j))) < tol * sd);
      }
}
