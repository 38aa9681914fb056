#include "priorlab/evenness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "priorlab/dist.hpp"
#include "priorlab/error.hpp"

namespace priorlab {

namespace {

// Binomial(n, p) by inversion for small n·min(p,1−p), otherwise via the
// beta-splitting recursion (exact, O(log n) levels).
std::uint64_t binomial(RngStream& rng, std::uint64_t n, double p) {
  if (n == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return n;
  if (n < 64) {
    std::uint64_t c = 0;
    for (std::uint64_t i = 0; i < n; ++i) c += rng.uniform01() < p;
    return c;
  }
  // The median order statistic of n uniforms is Beta(a, b) with a + b = n + 1.
  const std::uint64_t a = n / 2 + 1;
  const std::uint64_t b = n + 1 - a;
  const double ga = rng.gamma(static_cast<double>(a));
  const double gb = rng.gamma(static_cast<double>(b));
  const double x = ga / (ga + gb);
  if (p < x) return binomial(rng, a - 1, p / x);
  return a + binomial(rng, b - 1, (p - x) / (1.0 - x));
}

}  // namespace

DirichletParams DirichletParams::symmetric(std::size_t k, double g) {
  return DirichletParams{Vec(k, g)};
}

std::uint64_t CountData::total() const {
  return std::accumulate(n.begin(), n.end(), std::uint64_t{0});
}

Vec default_theta_true() { return {0.80, 0.08, 0.04, 0.03, 0.02, 0.015, 0.01, 0.005}; }

double evenness(std::span<const double> theta) {
  if (theta.size() < 2) throw DomainError("evenness", "need K >= 2");
  double sum = 0.0, h = 0.0;
  for (double t : theta) {
    if (!(t >= 0.0)) throw DomainError("evenness", "proportions must be nonnegative");
    sum += t;
    if (t > 0.0) h -= t * std::log(t);
  }
  if (std::abs(sum - 1.0) > 1e-9) throw DomainError("evenness", "proportions must sum to 1");
  const double v = h / std::log(static_cast<double>(theta.size()));
  return std::clamp(v, 0.0, 1.0);
}

DirichletParams posterior_params(const DirichletParams& prior, const CountData& counts) {
  if (prior.gamma.size() != counts.n.size())
    throw LengthMismatch("posterior_params", "gamma and counts differ in length");
  DirichletParams post = prior;
  for (std::size_t i = 0; i < post.gamma.size(); ++i)
    post.gamma[i] += static_cast<double>(counts.n[i]);
  return post;
}

CountData sample_counts(RngStream& rng, std::span<const double> theta_true, std::uint64_t N) {
  double sum = 0.0;
  for (double t : theta_true) {
    if (!(t >= 0.0)) throw DomainError("sample_counts", "theta must be nonnegative");
    sum += t;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw DomainError("sample_counts", "theta must sum to 1");
  CountData out{std::vector<std::uint64_t>(theta_true.size(), 0)};
  std::uint64_t left = N;
  double mass = 1.0;
  for (std::size_t i = 0; i + 1 < theta_true.size() && left > 0; ++i) {
    const double p = mass > 0.0 ? std::min(1.0, theta_true[i] / mass) : 0.0;
    out.n[i] = binomial(rng, left, p);
    left -= out.n[i];
    mass -= theta_true[i];
  }
  out.n.back() += left;
  return out;
}

EvennessDraws evenness_draws(const DirichletParams& params, std::size_t ndraws, RngStream& rng,
                             DrawSource source, std::uint64_t N) {
  if (ndraws < 1) throw DomainError("evenness_draws", "need ndraws >= 1");
  EvennessDraws out{Vec(ndraws), source, params.gamma, N};
  for (double& v : out.values) v = evenness(dirichlet_sample(params.gamma, rng));
  return out;
}

std::vector<SweepCell> sweep_table(std::span<const double> gammas,
                                   std::span<const std::uint64_t> Ns,
                                   std::span<const double> theta_true, RngStream& rng,
                                   std::size_t ndraws) {
  const std::size_t K = theta_true.size();
  std::vector<CountData> datasets;
  for (std::size_t n = 0; n < Ns.size(); ++n) {
    RngStream data_rng = rng.child(n);
    datasets.push_back(sample_counts(data_rng, theta_true, Ns[n]));
  }
  std::vector<SweepCell> cells;
  for (std::size_t g = 0; g < gammas.size(); ++g) {
    for (std::size_t n = 0; n < Ns.size(); ++n) {
      RngStream cell_rng = rng.child(Ns.size() + g * Ns.size() + n);
      SweepCell cell;
      cell.gamma = gammas[g];
      cell.N = Ns[n];
      cell.counts = datasets[n];
      const DirichletParams post =
          posterior_params(DirichletParams::symmetric(K, gammas[g]), cell.counts);
      EvennessDraws d = evenness_draws(post, ndraws, cell_rng,
                                       Ns[n] ? DrawSource::Posterior : DrawSource::Prior, Ns[n]);
      const double m = std::accumulate(d.values.begin(), d.values.end(), 0.0) /
                       static_cast<double>(ndraws);
      double ss = 0.0;
      for (double v : d.values) ss += (v - m) * (v - m);
      cell.mean = m;
      cell.sd = ndraws > 1 ? std::sqrt(ss / static_cast<double>(ndraws - 1)) : 0.0;
      cell.draws = std::move(d);
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

}  // namespace priorlab
