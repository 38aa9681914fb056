#include "priorlab/hier_reg.hpp"

#include <cmath>

#include "priorlab/error.hpp"

namespace priorlab {

namespace {

Vec row_of(const Mat& m, std::size_t i) {
  const auto r = m.row(i);
  return Vec(r.begin(), r.end());
}

void check_state(const HierState& s, const char* op) {
  for (double v : s.S)
    if (!(v > 0.0)) throw DomainError(op, "S must be positive");
  if (s.S.size() == 2 && !(std::abs(s.r) < 1.0)) throw DomainError(op, "|r| must be < 1");
}

Vec ols(const Mat& x, const Vec& y) {
  return cholesky_solve(cholesky(gram(x)), x.transpose() * y);
}

}  // namespace

SPriorSpec SPriorSpec::lognormal(std::size_t k, double mu, double sigma) {
  return SPriorSpec{std::vector<DistSpec>(k, LogNormal{mu, sigma})};
}

SPriorSpec SPriorSpec::gamma(std::size_t k, double shape, double rate) {
  return SPriorSpec{std::vector<DistSpec>(k, Gamma{shape, rate})};
}

Mat HierState::sigma() const {
  const std::size_t k = S.size();
  if (k > 2) throw DomainError("HierState::sigma", "only k <= 2 is supported");
  Mat s(k, k);
  for (std::size_t i = 0; i < k; ++i) s(i, i) = S[i] * S[i];
  if (k == 2) s(0, 1) = s(1, 0) = r * S[0] * S[1];
  return s;
}

SimulatedHier simulate_hier_data(RngStream& rng, std::span<const double> true_betabar,
                                 const Mat& true_sigma, std::span<const double> true_tau2,
                                 std::size_t m, std::size_t n_j) {
  const std::size_t k = true_betabar.size();
  if (true_tau2.size() != m) throw LengthMismatch("simulate_hier_data", "need m tau2 values");
  if (true_sigma.rows() != k) throw LengthMismatch("simulate_hier_data", "Sigma is not k x k");
  const Mat chol = cholesky(true_sigma);
  SimulatedHier out;
  out.true_beta = Mat(m, k);
  for (std::size_t j = 0; j < m; ++j) {
    Mat x(n_j, k);
    for (std::size_t i = 0; i < n_j; ++i) {
      x(i, 0) = 1.0;
      for (std::size_t c = 1; c < k; ++c) x(i, c) = rng.normal();
    }
    const Vec b = mvn_sample_chol(true_betabar, chol, rng);
    for (std::size_t c = 0; c < k; ++c) out.true_beta(j, c) = b[c];
    Vec y = x * b;
    const double sd = std::sqrt(true_tau2[j]);
    for (double& v : y) v += sd * rng.normal();
    out.data.X.push_back(std::move(x));
    out.data.y.push_back(std::move(y));
  }
  return out;
}

GaussianConditional beta_j_conditional(std::size_t j, const HierState& state,
                                       const HierData& data) {
  const Mat sigma_inv = spd_inverse(state.sigma());
  const Mat& x = data.X[j];
  const double t2 = state.tau2[j];
  const Mat prec = (1.0 / t2) * gram(x) + sigma_inv;
  const Mat cov = spd_inverse(prec);
  Vec rhs = x.transpose() * data.y[j];
  const Vec prior_part = sigma_inv * state.betabar;
  for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = rhs[i] / t2 + prior_part[i];
  return {cholesky_solve(cholesky(prec), rhs), cov};
}

Vec cond_beta_j(std::size_t j, const HierState& state, const HierData& data, RngStream& rng) {
  const auto c = beta_j_conditional(j, state, data);
  return mvn_sample(c.mean, c.cov, rng);
}

GaussianConditional betabar_conditional(const HierState& state, const HierHyper& hyper) {
  const std::size_t k = state.S.size();
  const std::size_t m = state.beta.rows();
  const Mat sigma_inv = spd_inverse(state.sigma());
  const Mat prec = static_cast<double>(m) * sigma_inv + (1.0 / hyper.betabar_var) * Mat::identity(k);
  Vec sum(k, 0.0);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < k; ++i) sum[i] += state.beta(j, i);
  return {cholesky_solve(cholesky(prec), sigma_inv * sum), spd_inverse(prec)};
}

Vec cond_betabar(const HierState& state, const HierHyper& hyper, RngStream& rng) {
  const auto c = betabar_conditional(state, hyper);
  return mvn_sample(c.mean, c.cov, rng);
}

InverseGamma tau2_conditional(std::size_t j, const HierState& state, const HierData& data,
                              const HierHyper& hyper) {
  const Mat& x = data.X[j];
  const Vec fitted = x * row_of(state.beta, j);
  double rss = 0.0;
  for (std::size_t i = 0; i < fitted.size(); ++i) {
    const double e = data.y[j][i] - fitted[i];
    rss += e * e;
  }
  return InverseGamma{hyper.tau2_prior.shape + 0.5 * static_cast<double>(x.rows()),
                      hyper.tau2_prior.scale + 0.5 * rss};
}

double cond_tau2(std::size_t j, const HierState& state, const HierData& data,
                 const HierHyper& hyper, RngStream& rng) {
  return dist_sample(tau2_conditional(j, state, data, hyper), rng);
}

double beta_log_density(const HierState& state, const Mat& sigma) {
  const std::size_t m = state.beta.rows();
  const std::size_t k = state.betabar.size();
  const Mat chol = cholesky(sigma);
  double quad = 0.0;
  Vec d(k);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < k; ++i) d[i] = state.beta(j, i) - state.betabar[i];
    quad += dot(d, cholesky_solve(chol, d));
  }
  return -0.5 * static_cast<double>(m) * cholesky_log_det(chol) - 0.5 * quad;
}

std::vector<bool> mwg_update_S(HierState& state, const HierHyper& hyper, RngStream& rng,
                               std::span<const double> scales) {
  check_state(state, "mwg_update_S");
  const std::size_t k = state.S.size();
  if (scales.size() != k || hyper.s_prior.coords.size() != k)
    throw LengthMismatch("mwg_update_S", "need one scale and one prior per coordinate");
  std::vector<bool> accepted(k, false);
  double cur_ll = beta_log_density(state, state.sigma());
  for (std::size_t i = 0; i < k; ++i) {
    const double s_old = state.S[i];
    const double s_new = s_old * std::exp(scales[i] * rng.normal());
    HierState prop = state;
    prop.S[i] = s_new;
    double prop_ll;
    try {
      prop_ll = beta_log_density(prop, prop.sigma());
    } catch (const NotPositiveDefinite&) {
      (void)rng.uniform01();
      continue;
    }
    const DistSpec& prior = hyper.s_prior.coords[i];
    const double log_ratio = (prop_ll - cur_ll) + dist_log_pdf(prior, s_new) -
                             dist_log_pdf(prior, s_old) + std::log(s_new / s_old);
    if (std::log(rng.uniform_open()) < log_ratio) {
      state.S[i] = s_new;
      cur_ll = prop_ll;
      accepted[i] = true;
    }
  }
  return accepted;
}

bool mwg_update_R(HierState& state, RngStream& rng, double scale) {
  check_state(state, "mwg_update_R");
  if (state.S.size() != 2) return true;
  const double r_old = state.r;
  const double step = scale * rng.normal();
  const double r_new = step == 0.0 ? r_old : std::tanh(std::atanh(r_old) + step);
  if (!(std::abs(r_new) < 1.0)) {
    (void)rng.uniform01();
    return false;
  }
  HierState prop = state;
  prop.r = r_new;
  double log_ratio;
  try {
    log_ratio = beta_log_density(prop, prop.sigma()) - beta_log_density(state, state.sigma()) +
                std::log1p(-r_new * r_new) - std::log1p(-r_old * r_old);
  } catch (const NotPositiveDefinite&) {
    (void)rng.uniform01();
    return false;
  }
  if (std::log(rng.uniform_open()) < log_ratio) {
    state.r = r_new;
    return true;
  }
  return false;
}

HierState draw_from_prior(const HierHyper& hyper, std::size_t m, std::size_t k, RngStream& rng) {
  HierState s;
  s.S.resize(k);
  for (std::size_t i = 0; i < k; ++i) s.S[i] = dist_sample(hyper.s_prior.coords[i], rng);
  s.r = k == 2 ? dist_sample(Uniform{-1.0, 1.0}, rng) : 0.0;
  s.betabar.resize(k);
  for (double& b : s.betabar) b = std::sqrt(hyper.betabar_var) * rng.normal();
  s.tau2.resize(m);
  for (double& t : s.tau2) t = dist_sample(hyper.tau2_prior, rng);
  s.beta = Mat(m, k);
  const Mat chol = cholesky(s.sigma());
  for (std::size_t j = 0; j < m; ++j) {
    const Vec b = mvn_sample_chol(s.betabar, chol, rng);
    for (std::size_t i = 0; i < k; ++i) s.beta(j, i) = b[i];
  }
  return s;
}

HierChains run_gibbs(const HierData& data_in, const HierHyper& hyper, const GibbsConfig& config) {
  const std::size_t m = data_in.m();
  const std::size_t k = data_in.k();
  if (m == 0) throw DomainError("run_gibbs", "need at least one regression");
  if (k < 1 || k > 2) throw DomainError("run_gibbs", "only k = 1 or 2 is supported");
  if (hyper.s_prior.coords.size() != k) throw LengthMismatch("run_gibbs", "S prior needs k entries");
  if (config.burnin >= config.iterations)
    throw DomainError("run_gibbs", "burnin must be smaller than iterations");
  for (std::size_t j = 0; j < m; ++j) {
    if (data_in.X[j].rows() < k || data_in.y[j].size() != data_in.X[j].rows())
      throw DomainError("run_gibbs", "each regression needs n_j >= k rows and matching y");
  }
  for (const auto& d : hyper.s_prior.coords) validate(d);

  RngStream rng(config.seed);
  HierData data = data_in;
  HierState state;
  if (config.resimulate_data) {
    state = draw_from_prior(hyper, m, k, rng);
  } else {
    state.beta = Mat(m, k);
    state.tau2.assign(m, 1.0);
    state.betabar.assign(k, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
      const Vec b = ols(data.X[j], data.y[j]);
      for (std::size_t i = 0; i < k; ++i) {
        state.beta(j, i) = b[i];
        state.betabar[i] += b[i] / static_cast<double>(m);
      }
    }
    state.S.resize(k);
    for (std::size_t i = 0; i < k; ++i) state.S[i] = dist_quantile(hyper.s_prior.coords[i], 0.5);
    state.r = 0.0;
  }

  Vec s_scales = config.s_scales.empty() ? Vec(k, 0.5) : config.s_scales;
  if (s_scales.size() != k) throw LengthMismatch("run_gibbs", "need k S step scales");
  double r_scale = config.r_scale;

  const std::size_t kept = config.iterations - config.burnin;
  HierChains out;
  out.beta.assign(m, Mat(kept, k));
  out.betabar = Mat(kept, k);
  out.tau2 = Mat(kept, m);
  out.S = Mat(kept, k);
  out.r.resize(kept);
  Vec s_acc(k, 0.0), s_batch(k, 0.0);
  double r_acc = 0.0, r_batch = 0.0;
  std::size_t batch_len = 0;

  for (std::size_t t = 0; t < config.iterations; ++t) {
    for (std::size_t j = 0; j < m; ++j) {
      const Vec b = cond_beta_j(j, state, data, rng);
      for (std::size_t i = 0; i < k; ++i) state.beta(j, i) = b[i];
    }
    state.betabar = cond_betabar(state, hyper, rng);
    for (std::size_t j = 0; j < m; ++j) state.tau2[j] = cond_tau2(j, state, data, hyper, rng);
    const auto s_flags = mwg_update_S(state, hyper, rng, s_scales);
    const bool r_flag = k == 2 ? mwg_update_R(state, rng, r_scale) : false;

    if (config.resimulate_data) {
      for (std::size_t j = 0; j < m; ++j) {
        Vec y = data.X[j] * row_of(state.beta, j);
        const double sd = std::sqrt(state.tau2[j]);
        for (double& v : y) v += sd * rng.normal();
        data.y[j] = std::move(y);
      }
    }

    if (t < config.burnin) {
      if (!config.adapt) continue;
      for (std::size_t i = 0; i < k; ++i) s_batch[i] += s_flags[i];
      r_batch += r_flag;
      if (++batch_len == 100) {
        const auto tune = [](double& scale, double rate) {
          if (rate < 0.2) scale *= 0.8;
          if (rate > 0.5) scale *= 1.25;
        };
        for (std::size_t i = 0; i < k; ++i) tune(s_scales[i], s_batch[i] / 100.0);
        tune(r_scale, r_batch / 100.0);
        std::fill(s_batch.begin(), s_batch.end(), 0.0);
        r_batch = 0.0;
        batch_len = 0;
      }
      continue;
    }

    const std::size_t row = t - config.burnin;
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t i = 0; i < k; ++i) out.beta[j](row, i) = state.beta(j, i);
    for (std::size_t i = 0; i < k; ++i) {
      out.betabar(row, i) = state.betabar[i];
      out.S(row, i) = state.S[i];
      s_acc[i] += s_flags[i];
    }
    for (std::size_t j = 0; j < m; ++j) out.tau2(row, j) = state.tau2[j];
    out.r[row] = state.r;
    r_acc += r_flag;
  }
  out.s_accept_rate.resize(k);
  for (std::size_t i = 0; i < k; ++i) out.s_accept_rate[i] = s_acc[i] / static_cast<double>(kept);
  out.r_accept_rate = r_acc / static_cast<double>(kept);
  out.s_scales = s_scales;
  out.r_scale = r_scale;
  return out;
}

}  // namespace priorlab
