#include "priorlab/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "priorlab/error.hpp"

namespace priorlab {

Mat::Mat(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw LengthMismatch("Mat", "ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Mat Mat::identity(std::size_t k) {
  Mat m(k, k);
  for (std::size_t i = 0; i < k; ++i) m(i, i) = 1.0;
  return m;
}

Mat Mat::diagonal(std::span<const double> d) {
  Mat m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Mat::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols_ != b.rows_) throw LengthMismatch("Mat::operator*", "inner dimensions differ");
  Mat c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Mat operator+(const Mat& a, const Mat& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw LengthMismatch("Mat::operator+", "shapes differ");
  Mat c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

Mat operator-(const Mat& a, const Mat& b) { return a + (-1.0) * b; }

Mat operator*(double s, const Mat& a) {
  Mat c = a;
  for (double& v : c.data_) v *= s;
  return c;
}

Vec operator*(const Mat& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw LengthMismatch("Mat::operator*", "vector length differs");
  Vec y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
  return y;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Mat gram(const Mat& x) {
  const std::size_t p = x.cols();
  Mat g(p, p);
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j <= i; ++j) g(i, j) += x(r, i) * x(r, j);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < i; ++j) g(j, i) = g(i, j);
  return g;
}

Mat cholesky(const Mat& a) {
  const std::size_t k = a.rows();
  if (a.cols() != k) throw DomainError("cholesky", "matrix is not square");
  if (k > 64) throw DomainError("cholesky", "dimension exceeds 64");
  const double scale = a.max_abs();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(a(i, j) - a(j, i)) > 1e-12 * scale)
        throw DomainError("cholesky", "matrix is not symmetric");

  Mat l(k, k);
  const double tiny = 1e-13 * scale;
  for (std::size_t j = 0; j < k; ++j) {
    double d = a(j, j);
    for (std::size_t p = 0; p < j; ++p) d -= l(j, p) * l(j, p);
    if (!(d > tiny))
      throw NotPositiveDefinite("cholesky", "pivot " + std::to_string(j) +
                                                " not positive");
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < k; ++i) {
      double s = a(i, j);
      for (std::size_t p = 0; p < j; ++p) s -= l(i, p) * l(j, p);
      l(i, j) = s / ljj;
    }
  }
  return l;
}

Vec cholesky_solve(const Mat& l, std::span<const double> b) {
  const std::size_t k = l.rows();
  Vec y(b.begin(), b.end());
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t p = 0; p < i; ++p) y[i] -= l(i, p) * y[p];
    y[i] /= l(i, i);
  }
  for (std::size_t ii = k; ii-- > 0;) {
    for (std::size_t p = ii + 1; p < k; ++p) y[ii] -= l(p, ii) * y[p];
    y[ii] /= l(ii, ii);
  }
  return y;
}

Mat spd_inverse(const Mat& a) {
  const Mat l = cholesky(a);
  const std::size_t k = a.rows();
  Mat inv(k, k);
  Vec e(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    std::fill(e.begin(), e.end(), 0.0);
    e[j] = 1.0;
    const Vec col = cholesky_solve(l, e);
    for (std::size_t i = 0; i < k; ++i) inv(i, j) = col[i];
  }
  // Symmetrize away rounding so the result passes cholesky() again.
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      const double m = 0.5 * (inv(i, j) + inv(j, i));
      inv(i, j) = inv(j, i) = m;
    }
  return inv;
}

double cholesky_log_det(const Mat& l) {
  double s = 0.0;
  for (std::size_t i = 0; i < l.rows(); ++i) s += std::log(l(i, i));
  return 2.0 * s;
}

}  // namespace priorlab
