#include "priorlab/dist.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "priorlab/error.hpp"

namespace priorlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_log_pdf(double z) {
  return -0.5 * z * z - 0.5 * std::log(2.0 * std::numbers::pi);
}

// Bisection on a nondecreasing cdf over (0, inf).
template <class Cdf>
double positive_quantile(Cdf cdf, double p) {
  double lo = 1.0, hi = 1.0;
  while (cdf(hi) < p) hi *= 2.0;
  while (lo > 1e-300 && cdf(lo) >= p) lo *= 0.5;
  for (int it = 0; it < 2000 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = (lo > 0.0 && hi / lo > 4.0) ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    if (cdf(mid) < p)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

void validate(const DistSpec& d) {
  const auto require = [](bool ok, const char* what) {
    if (!ok) throw DomainError("DistSpec", what);
  };
  std::visit(overloaded{
                 [&](const Normal& n) { require(n.sigma > 0, "Normal sigma must be > 0"); },
                 [&](const LogNormal& n) { require(n.sigma > 0, "LogNormal sigma must be > 0"); },
                 [&](const Gamma& g) {
                   require(g.shape > 0 && g.rate > 0, "Gamma shape and rate must be > 0");
                 },
                 [&](const InverseGamma& g) {
                   require(g.shape > 0 && g.scale > 0, "InverseGamma shape and scale must be > 0");
                 },
                 [&](const Uniform& u) { require(u.lo < u.hi, "Uniform needs lo < hi"); },
                 [&](const Cauchy& c) { require(c.scale > 0, "Cauchy scale must be > 0"); },
             },
             d);
}

std::string describe(const DistSpec& d) {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const Normal& n) { os << "Normal(" << n.mu << "," << n.sigma << ")"; },
                 [&](const LogNormal& n) { os << "LogNormal(" << n.mu << "," << n.sigma << ")"; },
                 [&](const Gamma& g) { os << "Gamma(" << g.shape << "," << g.rate << ")"; },
                 [&](const InverseGamma& g) {
                   os << "InverseGamma(" << g.shape << "," << g.scale << ")";
                 },
                 [&](const Uniform& u) { os << "Uniform(" << u.lo << "," << u.hi << ")"; },
                 [&](const Cauchy& c) { os << "Cauchy(" << c.loc << "," << c.scale << ")"; },
             },
             d);
  return os.str();
}

double dist_cdf(const DistSpec& d, double x) {
  return std::visit(
      overloaded{
          [&](const Normal& n) { return normal_cdf((x - n.mu) / n.sigma); },
          [&](const LogNormal& n) {
            return x <= 0 ? 0.0 : normal_cdf((std::log(x) - n.mu) / n.sigma);
          },
          [&](const Gamma& g) {
            return x <= 0 ? 0.0 : boost::math::gamma_p(g.shape, g.rate * x);
          },
          [&](const InverseGamma& g) {
            return x <= 0 ? 0.0 : boost::math::gamma_q(g.shape, g.scale / x);
          },
          [&](const Uniform& u) {
            return x <= u.lo ? 0.0 : x >= u.hi ? 1.0 : (x - u.lo) / (u.hi - u.lo);
          },
          [&](const Cauchy& c) {
            return 0.5 + std::atan((x - c.loc) / c.scale) / std::numbers::pi;
          },
      },
      d);
}

double dist_log_pdf(const DistSpec& d, double x) {
  constexpr double ninf = -std::numeric_limits<double>::infinity();
  return std::visit(
      overloaded{
          [&](const Normal& n) { return normal_log_pdf((x - n.mu) / n.sigma) - std::log(n.sigma); },
          [&](const LogNormal& n) {
            if (x <= 0) return ninf;
            const double lx = std::log(x);
            return normal_log_pdf((lx - n.mu) / n.sigma) - std::log(n.sigma) - lx;
          },
          [&](const Gamma& g) {
            if (x <= 0) return ninf;
            return g.shape * std::log(g.rate) - std::lgamma(g.shape) +
                   (g.shape - 1.0) * std::log(x) - g.rate * x;
          },
          [&](const InverseGamma& g) {
            if (x <= 0) return ninf;
            return g.shape * std::log(g.scale) - std::lgamma(g.shape) -
                   (g.shape + 1.0) * std::log(x) - g.scale / x;
          },
          [&](const Uniform& u) {
            return (x > u.lo && x < u.hi) ? -std::log(u.hi - u.lo) : ninf;
          },
          [&](const Cauchy& c) {
            const double z = (x - c.loc) / c.scale;
            return -std::log(std::numbers::pi * c.scale * (1.0 + z * z));
          },
      },
      d);
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("dist_quantile", "p must lie in (0,1)");
  // P. J. Acklam's rational approximation (relative error < 1.15e-9).
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double plow = 0.02425;
  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // One Halley step brings the error to machine precision.
  const double e = normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

double dist_quantile(const DistSpec& d, double p) {
  validate(d);
  if (!(p > 0.0 && p < 1.0)) throw DomainError("dist_quantile", "p must lie in (0,1)");
  return std::visit(
      overloaded{
          [&](const Normal& n) { return p == 0.5 ? n.mu : n.mu + n.sigma * normal_quantile(p); },
          [&](const LogNormal& n) {
            return std::exp(p == 0.5 ? n.mu : n.mu + n.sigma * normal_quantile(p));
          },
          [&](const Gamma& g) {
            return positive_quantile([&](double x) { return dist_cdf(g, x); }, p);
          },
          [&](const InverseGamma& g) {
            return positive_quantile([&](double x) { return dist_cdf(g, x); }, p);
          },
          [&](const Uniform& u) { return u.lo + p * (u.hi - u.lo); },
          [&](const Cauchy& c) {
            return c.loc + c.scale * std::tan(std::numbers::pi * (p - 0.5));
          },
      },
      d);
}

double dist_sample(const DistSpec& d, RngStream& rng) {
  return std::visit(
      overloaded{
          [&](const Normal& n) { return n.mu + n.sigma * rng.normal(); },
          [&](const LogNormal& n) { return std::exp(n.mu + n.sigma * rng.normal()); },
          [&](const Gamma& g) {
            double x;
            do {
              x = rng.gamma(g.shape) / g.rate;
            } while (!(x > 0.0));
            return x;
          },
          [&](const InverseGamma& g) {
            double x;
            do {
              x = g.scale / rng.gamma(g.shape);
            } while (!(x > 0.0 && std::isfinite(x)));
            return x;
          },
          [&](const Uniform& u) {
            double x;
            do {
              x = u.lo + (u.hi - u.lo) * rng.uniform_open();
            } while (!(x > u.lo && x < u.hi));
            return x;
          },
          [&](const Cauchy& c) {
            return c.loc + c.scale * std::tan(std::numbers::pi * (rng.uniform_open() - 0.5));
          },
      },
      d);
}

Vec dirichlet_sample(std::span<const double> gamma, RngStream& rng) {
  if (gamma.empty()) throw DomainError("dirichlet_sample", "empty parameter vector");
  for (double g : gamma)
    if (!(g > 0.0)) throw DomainError("dirichlet_sample", "all gamma_i must be > 0");
  Vec logs(gamma.size());
  double mx = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    logs[i] = rng.log_gamma_variate(gamma[i]);
    mx = std::max(mx, logs[i]);
  }
  double total = 0.0;
  for (double& l : logs) {
    l = std::exp(l - mx);
    total += l;
  }
  for (double& l : logs) l /= total;
  return logs;
}

Vec mvn_sample_chol(std::span<const double> mean, const Mat& chol, RngStream& rng) {
  const std::size_t k = mean.size();
  Vec z(k);
  for (double& v : z) v = rng.normal();
  Vec out(mean.begin(), mean.end());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j <= i; ++j) out[i] += chol(i, j) * z[j];
  return out;
}

Vec mvn_sample(std::span<const double> mean, const Mat& cov, RngStream& rng) {
  if (cov.rows() != mean.size()) throw LengthMismatch("mvn_sample", "mean/cov size mismatch");
  return mvn_sample_chol(mean, cholesky(cov), rng);
}

double logit_inv(double u) {
  if (u >= 0.0) return 1.0 / (1.0 + std::exp(-u));
  const double e = std::exp(u);
  return e / (1.0 + e);
}

double log1p_exp(double u) {
  if (u > 0.0) return u + std::log1p(std::exp(-u));
  return std::log1p(std::exp(u));
}

}  // namespace priorlab
