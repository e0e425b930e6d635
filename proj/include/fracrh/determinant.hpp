#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "fracrh/matrix.hpp"

namespace fracrh {

/// Determinant by fraction-free Bareiss elimination with row pivoting on
/// zero pivots. Exact for mpq_class.
template <class T>
T bareiss_determinant(Matrix<T> m) {
  const std::size_t n = m.order();
  if (n == 0) return T(1);
  T sign = T(1);
  T prev = T(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return T(0);
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(swap_row, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(k, k) * m(i, j) - m(i, k) * m(k, j)) / prev;
      }
      m(i, k) = T(0);
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

/// All nested leading principal minors [det(M_1), ..., det(M_n)] in one
/// Bareiss pass: without row exchanges the k-th pivot equals the k-th
/// leading minor. When a pivot vanishes the pass cannot continue, and the
/// remaining minors are evaluated one by one with pivoting.
template <class T>
std::vector<T> bareiss_leading_minors(const Matrix<T>& input) {
  const std::size_t n = input.order();
  std::vector<T> minors;
  minors.reserve(n);
  Matrix<T> m = input;
  T prev = T(1);
  std::size_t k = 0;
  for (; k < n; ++k) {
    minors.push_back(m(k, k));
    if (m(k, k) == 0) break;
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(k, k) * m(i, j) - m(i, k) * m(k, j)) / prev;
      }
      m(i, k) = T(0);
    }
    prev = m(k, k);
  }
  for (std::size_t size = minors.size() + 1; size <= n; ++size) {
    minors.push_back(bareiss_determinant(input.leading_block(size)));
  }
  return minors;
}

struct LuDeterminant {
  double value = 0.0;
  /// max|u_ii| / min|u_ii|; infinity for an exactly singular block.
  double pivot_ratio = 0.0;
};

/// Partial-pivoted LU determinant (float mode).
LuDeterminant lu_determinant(const SquareMatrix& m);

}  // namespace fracrh
