#include "priorlab/rng.hpp"

#include <cmath>

namespace priorlab {

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform01() - 1.0;
    v = 2.0 * uniform01() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

namespace {

// Marsaglia & Tsang (2000), valid for shape >= 1.
double gamma_mt(RngStream& rng, double shape) {
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform_open();
    if (u < 1.0 - 0.0331 * (x * x) * (x * x)) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace

double RngStream::gamma(double shape) {
  if (shape >= 1.0) return gamma_mt(*this, shape);
  return std::exp(log_gamma_variate(shape));
}

double RngStream::log_gamma_variate(double shape) {
  if (shape >= 1.0) return std::log(gamma_mt(*this, shape));
  const double g = gamma_mt(*this, shape + 1.0);
  return std::log(g) + std::log(uniform_open()) / shape;
}

}  // namespace priorlab
