#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace priorlab {

using Vec = std::vector<double>;

// Small dense row-major matrix.  Sized for the 2x2 / k x k problems of the
// samplers and the n x 2 designs of the logistic model; not a BLAS.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Mat(std::initializer_list<std::initializer_list<double>> rows);

  static Mat identity(std::size_t k);
  static Mat diagonal(std::span<const double> d);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  Mat transpose() const;
  double max_abs() const;

  friend Mat operator*(const Mat& a, const Mat& b);
  friend Mat operator+(const Mat& a, const Mat& b);
  friend Mat operator-(const Mat& a, const Mat& b);
  friend Mat operator*(double s, const Mat& a);
  friend bool operator==(const Mat&, const Mat&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Vec operator*(const Mat& a, std::span<const double> x);

double dot(std::span<const double> a, std::span<const double> b);

// XᵀX.
Mat gram(const Mat& x);

// Lower-triangular L with L·Lᵀ = A.  Throws NotPositiveDefinite when a pivot
// falls to 1e-13·max|A| or below, DomainError when A is not symmetric to
// 1e-12·max|A| or exceeds 64x64.
Mat cholesky(const Mat& a);

// Solves L·Lᵀ x = b given the Cholesky factor L.
Vec cholesky_solve(const Mat& l, std::span<const double> b);

// A⁻¹ for symmetric positive-definite A.
Mat spd_inverse(const Mat& a);

// log det A from the Cholesky factor of A.
double cholesky_log_det(const Mat& l);

}  // namespace priorlab
