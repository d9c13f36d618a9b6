#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace twophase {

/// Raised when a caller breaks an operation's precondition (shape mismatch,
/// empty input, out-of-domain argument).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void require(bool condition, const char* what) {
  if (!condition) throw ContractViolation(what);
}

/// Dense vector of doubles. The length is fixed at construction; every
/// binary operation requires equal lengths.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t n, double fill = 0.0) : values_(n, fill) {}
  Vector(std::initializer_list<double> values) : values_(values) {}
  explicit Vector(std::vector<double> values) : values_(std::move(values)) {}

  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] bool empty() const noexcept { return values_.empty(); }

  double& operator[](std::size_t i) noexcept { return values_[i]; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  [[nodiscard]] double* data() noexcept { return values_.data(); }
  [[nodiscard]] const double* data() const noexcept { return values_.data(); }

  auto begin() noexcept { return values_.begin(); }
  auto end() noexcept { return values_.end(); }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  [[nodiscard]] std::span<double> span() noexcept { return values_; }
  [[nodiscard]] std::span<const double> span() const noexcept { return values_; }
  [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }

  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  std::vector<double> values_;
};

// Sums accumulate left to right in index order; results are bit-identical
// between runs and builds at the same optimization level.

inline double dot(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), "dot: dimension mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

inline double dot(const Vector& a, const Vector& b) { return dot(a.span(), b.span()); }

inline double norm(const Vector& a) { return std::sqrt(dot(a, a)); }

/// y + alpha * x
inline Vector axpy(double alpha, const Vector& x, const Vector& y) {
  require(x.size() == y.size(), "axpy: dimension mismatch");
  Vector out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] + alpha * x[i];
  return out;
}

inline void axpy_inplace(double alpha, const Vector& x, Vector& y) {
  require(x.size() == y.size(), "axpy: dimension mismatch");
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

inline Vector scaled(double alpha, const Vector& x) {
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = alpha * x[i];
  return out;
}

inline Vector operator-(const Vector& a, const Vector& b) { return axpy(-1.0, b, a); }
inline Vector operator+(const Vector& a, const Vector& b) { return axpy(1.0, b, a); }

inline Vector basis(std::size_t n, std::size_t k) {
  require(k < n, "basis: index out of range");
  Vector e(n);
  e[k] = 1.0;
  return e;
}

inline bool all_finite(const Vector& a) {
  for (double v : a)
    if (!std::isfinite(v)) return false;
  return true;
}

/// Row-major dense matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) noexcept { return values_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return values_[r * cols_ + c]; }

  [[nodiscard]] std::span<double> row(std::size_t r) noexcept {
    return {values_.data() + r * cols_, cols_};
  }
  [[nodiscard]] std::span<const double> row(std::size_t r) const noexcept {
    return {values_.data() + r * cols_, cols_};
  }

  [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

}  // namespace twophase
