#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "fracrh/error.hpp"

namespace fracrh {

/// Dense row-major square matrix. Used with double (float mode) and
/// mpq_class (exact mode).
template <class T>
class Matrix {
 public:
  Matrix() = default;

  explicit Matrix(std::size_t order) : order_(order), data_(order * order, T(0)) {}

  Matrix(std::initializer_list<std::initializer_list<T>> rows) : order_(rows.size()) {
    data_.reserve(order_ * order_);
    for (const auto& row : rows) {
      if (row.size() != order_) {
        fail(ErrorCode::DimensionMismatch, "matrix literal is not square");
      }
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t order) {
    Matrix m(order);
    for (std::size_t i = 0; i < order; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t order() const noexcept { return order_; }
  bool empty() const noexcept { return order_ == 0; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * order_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * order_ + c]; }

  std::span<const T> row(std::size_t r) const {
    return std::span<const T>(data_).subspan(r * order_, order_);
  }
  std::span<const T> data() const noexcept { return data_; }

  /// Top-left k×k block.
  Matrix leading_block(std::size_t k) const {
    Matrix out(k);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) out(r, c) = (*this)(r, c);
    return out;
  }

  Matrix& operator+=(const Matrix& other) {
    require_same_order(other);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
  }

  friend Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }

  friend Matrix operator*(const T& scalar, Matrix m) {
    for (auto& v : m.data_) v *= scalar;
    return m;
  }

  friend Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
    lhs.require_same_order(rhs);
    const std::size_t n = lhs.order_;
    Matrix out(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const T& a = lhs(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < n; ++j) out(i, j) += a * rhs(k, j);
      }
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.order_ == b.order_ && a.data_ == b.data_;
  }

 private:
  void require_same_order(const Matrix& other) const {
    if (other.order_ != order_) {
      fail(ErrorCode::DimensionMismatch, "matrix orders differ: " + std::to_string(order_) +
                                             " vs " + std::to_string(other.order_));
    }
  }

  std::size_t order_ = 0;
  std::vector<T> data_;
};

using SquareMatrix = Matrix<double>;
using RationalMatrix = Matrix<mpq_class>;

/// Throws InputError when any entry is NaN or infinite.
void require_finite(const SquareMatrix& m, const char* what = "matrix");

/// Exact conversion: every finite double is a binary rational.
RationalMatrix to_rational(const SquareMatrix& m);
SquareMatrix to_double(const RationalMatrix& m);

/// Parses "p/q", integers and decimal literals ("0.25") exactly.
mpq_class parse_rational(const std::string& text);

}  // namespace fracrh
