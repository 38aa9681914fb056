#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "priorlab/dist.hpp"
#include "priorlab/error.hpp"
#include "priorlab/evenness.hpp"
#include "priorlab/summarize.hpp"

using namespace priorlab;

namespace {

const std::vector<std::uint64_t> kNs = {50, 100, 250, 1000, 10000};

double spread(const std::vector<SweepCell>& cells, std::uint64_t N) {
  double lo = 1, hi = 0;
  for (const auto& c : cells)
    if (c.N == N) {
      lo = std::min(lo, c.mean);
      hi = std::max(hi, c.mean);
    }
  return hi - lo;
}

}  // namespace

TEST_CASE("analytic evenness values") {
  CHECK(evenness(Vec(8, 0.125)) == 1.0);
  CHECK(evenness(Vec{1, 0, 0, 0, 0, 0, 0, 0}) == 0.0);
  CHECK(evenness(Vec{0.5, 0.5, 0, 0, 0, 0, 0, 0}) == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(evenness(Vec{0.5, 0.5}) == 1.0);
  CHECK(evenness(default_theta_true()) == doctest::Approx(0.39833).epsilon(1e-4));
}

TEST_CASE("evenness rejects points off the simplex") {
  CHECK_THROWS_AS(evenness(Vec{0.5, 0.6}), DomainError);
  CHECK_THROWS_AS(evenness(Vec{1.2, -0.2}), DomainError);
  CHECK_THROWS_AS(evenness(Vec{1.0}), DomainError);
  CHECK_NOTHROW(evenness(Vec{0.5 + 4e-10, 0.5}));
}

TEST_CASE("evenness is 1 only at the uniform point") {
  RngStream rng(1);
  for (int i = 0; i < 2000; ++i) {
    const Vec th = dirichlet_sample(Vec(8, 2.0), rng);
    const double h = evenness(th);
    CHECK(h >= 0.0);
    CHECK(h < 1.0);
  }
}

TEST_CASE("posterior_params is exact addition") {
  const auto prior = DirichletParams::symmetric(8, 1.0);
  CHECK(posterior_params(prior, CountData{std::vector<std::uint64_t>(8, 0)}).gamma == prior.gamma);
  CHECK(posterior_params(prior, CountData{{3, 0, 0, 0, 0, 0, 0, 0}}).gamma ==
        Vec{4, 1, 1, 1, 1, 1, 1, 1});
  CHECK_THROWS_AS(posterior_params(prior, CountData{{1, 2}}), LengthMismatch);

  RngStream rng(2);
  for (int rep = 0; rep < 500; ++rep) {
    const std::size_t k = 2 + rng.next_u64() % 10;
    Vec g(k);
    CountData c;
    for (std::size_t i = 0; i < k; ++i) {
      g[i] = 0.01 + 5 * rng.uniform01();
      c.n.push_back(rng.next_u64() % 1000);
    }
    const auto post = posterior_params(DirichletParams{g}, c);
    for (std::size_t i = 0; i < k; ++i) CHECK(post.gamma[i] == g[i] + static_cast<double>(c.n[i]));
  }
}

TEST_CASE("two-cell posterior mean equals the beta-binomial mean") {
  const double a = 0.7, b = 2.3;
  const std::uint64_t n1 = 13, n2 = 29;
  const auto post = posterior_params(DirichletParams{{a, b}}, CountData{{n1, n2}});
  const double mean = post.gamma[0] / (post.gamma[0] + post.gamma[1]);
  CHECK(mean == (a + 13.0) / (a + b + 42.0));
}

TEST_CASE("sample_counts") {
  RngStream rng(3);
  const Vec th = default_theta_true();
  CHECK(sample_counts(rng, th, 0).n == std::vector<std::uint64_t>(8, 0));
  const auto deg = sample_counts(rng, Vec{0, 0, 1, 0}, 500);
  CHECK(deg.n == std::vector<std::uint64_t>{0, 0, 500, 0});
  for (std::uint64_t N : {1ull, 7ull, 50ull, 12345ull}) CHECK(sample_counts(rng, th, N).total() == N);
  const auto big = sample_counts(rng, th, 1'000'000);
  for (std::size_t i = 0; i < th.size(); ++i)
    CHECK(std::abs(static_cast<double>(big.n[i]) / 1e6 - th[i]) < 0.005);
}

TEST_CASE("induced priors on evenness") {
  RngStream rng(4);
  const auto flat = evenness_draws(DirichletParams::symmetric(8, 1.0), 100'000, rng,
                                   DrawSource::Prior, 0);
  CHECK(flat.values.size() == 100'000);
  const double frac =
      std::count_if(flat.values.begin(), flat.values.end(), [](double h) { return h > 0.5; }) /
      1e5;
  CHECK(frac > 0.9);
  CHECK(frac == doctest::Approx(0.99867).epsilon(0.001));
  const auto sparse = evenness_draws(DirichletParams::symmetric(8, 0.1), 100'000, rng,
                                     DrawSource::Prior, 0);
  CHECK(sample_quantile(sparse.values, 0.5) < sample_quantile(flat.values, 0.5));
  for (const auto* d : {&flat, &sparse})
    for (double h : d->values) REQUIRE((h >= 0.0 && h <= 1.0));
}

TEST_CASE("posterior of H concentrates on H(theta*)") {
  RngStream rng(5);
  const Vec th = default_theta_true();
  const auto counts = sample_counts(rng, th, 10'000);
  const auto post = posterior_params(DirichletParams::symmetric(8, 0.125), counts);
  const auto d = evenness_draws(post, 10'000, rng, DrawSource::Posterior, 10'000);
  CHECK(d.source == DrawSource::Posterior);
  CHECK(d.N == 10'000);
  const double m = std::accumulate(d.values.begin(), d.values.end(), 0.0) / 1e4;
  CHECK(std::abs(m - evenness(th)) < 0.01);
}

TEST_CASE("sweep table patterns") {
  RngStream rng(6);
  const Vec gammas = {0.1, 0.25, 0.5, 1.0};
  const auto cells = sweep_table(gammas, kNs, default_theta_true(), rng);
  REQUIRE(cells.size() == gammas.size() * kNs.size());
  CHECK(spread(cells, 10'000) < 0.02);
  CHECK(spread(cells, 10'000) < spread(cells, 50));

  for (double g : gammas) {
    std::vector<double> sds;
    for (auto N : kNs)
      for (const auto& c : cells)
        if (c.gamma == g && c.N == N) sds.push_back(c.sd);
    int violations = 0;
    for (std::size_t i = 0; i + 1 < sds.size(); ++i)
      if (sds[i + 1] > sds[i]) {
        ++violations;
        CHECK(sds[i + 1] <= 1.1 * sds[i]);
      }
    CHECK(violations <= 1);
    CHECK(sds.front() >= 5 * sds.back());
  }
  for (const auto& c : cells) CHECK(c.counts.total() == c.N);

  RngStream again(6);
  const auto cells2 = sweep_table(gammas, kNs, default_theta_true(), again);
  for (std::size_t i = 0; i < cells.size(); ++i) CHECK(cells[i].draws.values == cells2[i].draws.values);
}

TEST_CASE("cells sharing N share their counts") {
  RngStream rng(7);
  const Vec gammas = {0.125, 1.0};
  const std::vector<std::uint64_t> Ns = {0, 100};
  const auto cells = sweep_table(gammas, Ns, default_theta_true(), rng, 100);
  for (const auto& a : cells)
    for (const auto& b : cells)
      if (a.N == b.N) CHECK(a.counts.n == b.counts.n);
  for (const auto& c : cells)
    CHECK((c.draws.source == DrawSource::Prior) == (c.N == 0));
}

TEST_CASE("huge N pins the posterior mean") {
  RngStream rng(8);
  const Vec gammas = {0.1, 1.0};
  const std::vector<std::uint64_t> Ns = {1'000'000};
  for (const auto& c : sweep_table(gammas, Ns, default_theta_true(), rng, 2000))
    CHECK(std::abs(c.mean - evenness(default_theta_true())) < 0.005);
}
