#include "priorlab/logistic.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "priorlab/dist.hpp"
#include "priorlab/error.hpp"
#include "priorlab/rng.hpp"

namespace priorlab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

// ρ(1 − ρ) = e^{-|η|} / (1 + e^{-|η|})².
double logistic_weight(double eta) {
  const double e = std::exp(-std::abs(eta));
  return e / ((1.0 + e) * (1.0 + e));
}

void check_config(const MHConfig& config, const char* op) {
  if (config.burnin >= config.iterations)
    throw DomainError(op, "burnin must be smaller than iterations");
  if (config.proposal_scale && !(*config.proposal_scale > 0.0))
    throw DomainError(op, "proposal scale must be positive");
}

// Proposal centre and covariance factor: the MLE and inverse Fisher
// information, or the prior's own moments when the likelihood is dropped.
struct Anchor {
  Theta center;
  Mat chol;
};

Anchor sampler_anchor(const BinaryDataset& data, const LogisticPrior& prior, bool prior_only,
                      const char* op) {
  Mat cov;
  Theta center{};
  if (prior_only) {
    if (const auto* n = std::get_if<IidNormalPrior>(&prior))
      cov = Mat::diagonal(Vec{n->sigma * n->sigma, n->sigma * n->sigma});
    else if (const auto* g = std::get_if<GPrior>(&prior))
      cov = g->g * spd_inverse(gram(design_matrix(data)));
    else
      throw UnsimulablePrior(op, "prior-only sampling needs a proper prior");
  } else {
    const GlmFit fit = fit_mle(data);
    center = fit.theta_hat;
    cov = spd_inverse(fit.fisher_info);
  }
  try {
    return {center, cholesky(cov)};
  } catch (const NotPositiveDefinite& e) {
    throw DegenerateProposal(op, e.what());
  }
}

Chain make_chain(const LogisticPrior& prior, const MHConfig& config) {
  Chain chain;
  chain.draws = Mat(config.iterations - config.burnin, 2);
  chain.log_target.reserve(config.iterations - config.burnin);
  chain.prior = prior;
  chain.config = config;
  return chain;
}

}  // namespace

BinaryDataset make_dataset(std::vector<int> y, Vec x) {
  if (y.size() != x.size()) throw LengthMismatch("make_dataset", "y and x differ in length");
  if (y.empty()) throw DomainError("make_dataset", "dataset is empty");
  for (int v : y)
    if (v != 0 && v != 1) throw DomainError("make_dataset", "y must be 0 or 1");
  for (double v : x)
    if (!std::isfinite(v)) throw DomainError("make_dataset", "x must be finite");
  return BinaryDataset{std::move(y), std::move(x)};
}

Mat design_matrix(std::span<const double> x) {
  Mat d(x.size(), 2);
  for (std::size_t i = 0; i < x.size(); ++i) {
    d(i, 0) = 1.0;
    d(i, 1) = x[i];
  }
  return d;
}

Mat design_matrix(const BinaryDataset& data) { return design_matrix(data.x); }

std::string prior_name(const LogisticPrior& prior) {
  const auto g = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return std::string(buf);
  };
  return std::visit(overloaded{
                        [&](const IidNormalPrior& p) { return "normal(sigma=" + g(p.sigma) + ")"; },
                        [&](const GPrior& p) { return "gprior(g=" + g(p.g) + ")"; },
                        [](const FlatPrior&) { return std::string("flat"); },
                        [](const JeffreysPrior&) { return std::string("jeffreys"); },
                    },
                    prior);
}

void validate(const LogisticPrior& prior) {
  if (const auto* p = std::get_if<IidNormalPrior>(&prior); p && !(p->sigma > 0))
    throw DomainError("LogisticPrior", "sigma must be > 0");
  if (const auto* p = std::get_if<GPrior>(&prior); p && !(p->g > 0))
    throw DomainError("LogisticPrior", "g must be > 0");
}

Vec Chain::column(std::size_t j) const {
  Vec out(draws.rows());
  for (std::size_t i = 0; i < draws.rows(); ++i) out[i] = draws(i, j);
  return out;
}

double loglik(const Theta& theta, const BinaryDataset& data) {
  double s = 0.0;
  for (std::size_t i = 0; i < data.n(); ++i) {
    const double eta = theta.alpha + theta.beta * data.x[i];
    s += (data.y[i] ? eta : 0.0) - log1p_exp(eta);
  }
  return s;
}

Mat fisher_information(const Theta& theta, std::span<const double> x) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0;
  for (double xi : x) {
    const double w = logistic_weight(theta.alpha + theta.beta * xi);
    s0 += w;
    s1 += w * xi;
    s2 += w * xi * xi;
  }
  return Mat{{s0, s1}, {s1, s2}};
}

double jeffreys_determinant(const Theta& theta, std::span<const double> x) {
  if (x.empty()) return 0.0;
  Vec w(x.size());
  double sw = 0.0, swd = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    w[i] = logistic_weight(theta.alpha + theta.beta * x[i]);
    sw += w[i];
    swd += w[i] * (x[i] - x[0]);
  }
  if (sw == 0.0) return 0.0;
  const double dbar = swd / sw;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = (x[i] - x[0]) - dbar;
    ss += w[i] * d * d;
  }
  return sw * ss;
}

GlmFit fit_mle(const BinaryDataset& data) {
  if (data.n() < 2) throw DomainError("fit_mle", "need at least two observations");
  bool has0 = false, has1 = false;
  for (int v : data.y) (v ? has1 : has0) = true;
  if (!has0 || !has1) throw DomainError("fit_mle", "both response classes must be present");
  double xmin = data.x[0], xmax = data.x[0];
  for (double v : data.x) {
    xmin = std::min(xmin, v);
    xmax = std::max(xmax, v);
  }
  if (xmin == xmax) throw DomainError("fit_mle", "covariate is constant");
  // With one covariate the classes are (quasi-)separated exactly when their
  // x ranges do not overlap; the likelihood then has no maximiser.
  double lo0 = INFINITY, hi0 = -INFINITY, lo1 = INFINITY, hi1 = -INFINITY;
  for (std::size_t i = 0; i < data.n(); ++i) {
    double& lo = data.y[i] ? lo1 : lo0;
    double& hi = data.y[i] ? hi1 : hi0;
    lo = std::min(lo, data.x[i]);
    hi = std::max(hi, data.x[i]);
  }
  if (hi0 <= lo1 || hi1 <= lo0)
    throw Separation("fit_mle", "response classes are separated by x");

  GlmFit fit;
  Theta theta{};
  double ll = loglik(theta, data);
  for (int it = 1; it <= 100; ++it) {
    double g0 = 0.0, g1 = 0.0;
    for (std::size_t i = 0; i < data.n(); ++i) {
      const double r = data.y[i] - logit_inv(theta.alpha + theta.beta * data.x[i]);
      g0 += r;
      g1 += r * data.x[i];
    }
    fit.iterations = it - 1;
    if (std::max(std::abs(g0), std::abs(g1)) < 1e-8) {
      fit.converged = true;
      break;
    }
    const Mat info = fisher_information(theta, data.x);
    Vec step;
    try {
      step = cholesky_solve(cholesky(info), Vec{g0, g1});
    } catch (const NotPositiveDefinite&) {
      throw Separation("fit_mle", "information matrix became singular (separated data)");
    }
    // Step halving keeps the log-likelihood nondecreasing.
    double t = 1.0;
    Theta next{theta.alpha + step[0], theta.beta + step[1]};
    double ll_next = loglik(next, data);
    while (ll_next < ll - 1e-12 * std::abs(ll) && t > 1e-10) {
      t *= 0.5;
      next = Theta{theta.alpha + t * step[0], theta.beta + t * step[1]};
      ll_next = loglik(next, data);
    }
    theta = next;
    ll = ll_next;
    if (std::abs(theta.alpha) > 1e6 || std::abs(theta.beta) > 1e6)
      throw Separation("fit_mle", "|theta| exceeded 1e6 (complete separation)");
  }
  if (!fit.converged) throw NotConverged("fit_mle", "no convergence after 100 iterations");
  fit.theta_hat = theta;
  fit.fisher_info = fisher_information(theta, data.x);
  return fit;
}

double log_prior(const LogisticPrior& prior, const Theta& theta, const Mat& design) {
  return std::visit(
      overloaded{
          [&](const IidNormalPrior& p) {
            return -(theta.alpha * theta.alpha + theta.beta * theta.beta) /
                   (2.0 * p.sigma * p.sigma);
          },
          [&](const GPrior& p) {
            if (design.cols() != 2) throw DomainError("log_prior", "g-prior needs an n x 2 design");
            const Mat g = gram(design);
            const Vec th{theta.alpha, theta.beta};
            return -dot(th, g * th) / (2.0 * p.g);
          },
          [&](const FlatPrior&) { return 0.0; },
          [&](const JeffreysPrior&) {
            if (design.cols() != 2)
              throw DomainError("log_prior", "Jeffreys prior needs an n x 2 design");
            Vec x(design.rows());
            for (std::size_t i = 0; i < x.size(); ++i) x[i] = design(i, 1);
            const double det = jeffreys_determinant(theta, x);
            if (det == 0.0) return kNegInf;
            if (!(det > 0.0) || !std::isfinite(det))
              throw DomainError("log_prior", "Jeffreys determinant is not positive");
            return 0.5 * std::log(det);
          },
      },
      prior);
}

LogisticPosterior::LogisticPosterior(const BinaryDataset& data, LogisticPrior prior,
                                     bool prior_only)
    : data_(data), prior_(std::move(prior)), prior_only_(prior_only) {
  validate(prior_);
  gram_ = gram(design_matrix(data_));
}

double LogisticPosterior::log_prior(const Theta& theta) const {
  return std::visit(
      overloaded{
          [&](const GPrior& p) {
            const Vec th{theta.alpha, theta.beta};
            return -dot(th, gram_ * th) / (2.0 * p.g);
          },
          [&](const JeffreysPrior&) {
            const double det = jeffreys_determinant(theta, data_.x);
            return det > 0.0 ? 0.5 * std::log(det) : kNegInf;
          },
          [&](const auto& other) { return priorlab::log_prior(other, theta, Mat()); },
      },
      prior_);
}

double LogisticPosterior::log_target(const Theta& theta) const {
  const double lp = log_prior(theta);
  if (prior_only_ || lp == kNegInf) return lp;
  return lp + loglik(theta, data_);
}

Chain rw_metropolis(const BinaryDataset& data, const LogisticPrior& prior,
                    const MHConfig& config) {
  check_config(config, "rw_metropolis");
  const auto [start, chol] = sampler_anchor(data, prior, config.prior_only, "rw_metropolis");
  const LogisticPosterior post(data, prior, config.prior_only);
  RngStream rng(config.seed);

  double scale = config.proposal_scale.value_or(2.38 / std::sqrt(2.0));
  Theta cur = start;
  double lp = post.log_target(cur);
  Chain chain = make_chain(prior, config);
  std::size_t accepted = 0, batch_accepted = 0, batch_len = 0, kept = 0;

  for (std::size_t t = 0; t < config.iterations; ++t) {
    const Vec step = mvn_sample_chol(Vec{0.0, 0.0}, chol, rng);
    const Theta prop{cur.alpha + scale * step[0], cur.beta + scale * step[1]};
    const double lp_prop = post.log_target(prop);
    const bool accept = std::log(rng.uniform_open()) < lp_prop - lp;
    if (accept) {
      cur = prop;
      lp = lp_prop;
    }
    if (t < config.burnin) {
      if (config.adapt) {
        batch_accepted += accept;
        if (++batch_len == 50) {
          const double rate = static_cast<double>(batch_accepted) / 50.0;
          if (rate < 0.2) scale *= 0.8;
          if (rate > 0.5) scale *= 1.25;
          batch_accepted = batch_len = 0;
        }
      }
      continue;
    }
    accepted += accept;
    chain.draws(kept, 0) = cur.alpha;
    chain.draws(kept, 1) = cur.beta;
    chain.log_target.push_back(lp);
    ++kept;
  }
  chain.accept_rate = static_cast<double>(accepted) / static_cast<double>(kept);
  chain.final_scale = scale;
  return chain;
}

Chain fisher_proposal_mh(const BinaryDataset& data, const LogisticPrior& prior,
                         const MHConfig& config) {
  check_config(config, "fisher_proposal_mh");
  const auto [center, chol] = sampler_anchor(data, prior, config.prior_only, "fisher_proposal_mh");
  const LogisticPosterior post(data, prior, config.prior_only);
  RngStream rng(config.seed);

  const double scale = config.proposal_scale.value_or(1.0);
  Mat scaled = scale * chol;
  // Proposal log-density up to a constant: −½ zᵀz where θ = θ̂ + c L z.
  const auto log_q = [&](const Theta& th) {
    const double d0 = th.alpha - center.alpha;
    const double d1 = th.beta - center.beta;
    const double z0 = d0 / scaled(0, 0);
    const double z1 = (d1 - scaled(1, 0) * z0) / scaled(1, 1);
    return -0.5 * (z0 * z0 + z1 * z1);
  };

  Theta cur = center;
  double lp = post.log_target(cur);
  double lq = log_q(cur);
  Chain chain = make_chain(prior, config);
  std::size_t accepted = 0, kept = 0;

  for (std::size_t t = 0; t < config.iterations; ++t) {
    const Vec v = mvn_sample_chol(Vec{center.alpha, center.beta}, scaled, rng);
    const Theta prop{v[0], v[1]};
    const double lp_prop = post.log_target(prop);
    const double lq_prop = log_q(prop);
    const bool accept = std::log(rng.uniform_open()) < (lp_prop - lq_prop) - (lp - lq);
    if (accept) {
      cur = prop;
      lp = lp_prop;
      lq = lq_prop;
    }
    if (t < config.burnin) continue;
    accepted += accept;
    chain.draws(kept, 0) = cur.alpha;
    chain.draws(kept, 1) = cur.beta;
    chain.log_target.push_back(lp);
    ++kept;
  }
  chain.accept_rate = static_cast<double>(accepted) / static_cast<double>(kept);
  chain.final_scale = scale;
  return chain;
}

}  // namespace priorlab
