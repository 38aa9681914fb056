#pragma once

#include <span>
#include <string>
#include <variant>

#include "priorlab/linalg.hpp"
#include "priorlab/rng.hpp"

namespace priorlab {

struct Normal {
  double mu;
  double sigma;
};
// log X ~ Normal(mu, sigma).
struct LogNormal {
  double mu;
  double sigma;
};
// Shape-rate: density ∝ x^(a-1) exp(-b x), mean a/b.
struct Gamma {
  double shape;
  double rate;
};
// Density ∝ x^(-a-1) exp(-b/x).
struct InverseGamma {
  double shape;
  double scale;
};
struct Uniform {
  double lo;
  double hi;
};
struct Cauchy {
  double loc;
  double scale;
};

using DistSpec = std::variant<Normal, LogNormal, Gamma, InverseGamma, Uniform, Cauchy>;

// Throws DomainError unless every parameter constraint holds.
void validate(const DistSpec& d);
std::string describe(const DistSpec& d);

double dist_cdf(const DistSpec& d, double x);
double dist_log_pdf(const DistSpec& d, double x);

// Inverse cdf.  Normal uses Acklam's rational approximation refined by one
// Halley step; LogNormal, Uniform and Cauchy are closed forms on top of it;
// Gamma and InverseGamma bisect the cdf (Boost incomplete gamma) to a
// relative width of 1e-12.
double dist_quantile(const DistSpec& d, double p);

double dist_sample(const DistSpec& d, RngStream& rng);

// Standard normal quantile (same approximation as dist_quantile(Normal)).
double normal_quantile(double p);

// Dirichlet(gamma) draw, computed from log-gamma variates so that very small
// concentrations do not underflow.
Vec dirichlet_sample(std::span<const double> gamma, RngStream& rng);

// mean + L z with L = cholesky(cov).
Vec mvn_sample(std::span<const double> mean, const Mat& cov, RngStream& rng);
Vec mvn_sample_chol(std::span<const double> mean, const Mat& chol, RngStream& rng);

// exp(u) / (1 + exp(u)) without overflow.
double logit_inv(double u);

// log(1 + exp(u)) without overflow.
double log1p_exp(double u);

}  // namespace priorlab
