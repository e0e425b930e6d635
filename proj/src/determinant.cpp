#include "fracrh/determinant.hpp"

#include <limits>

namespace fracrh {

LuDeterminant lu_determinant(const SquareMatrix& input) {
  SquareMatrix m = input;
  const std::size_t n = m.order();
  double det = 1.0;
  double largest = 0.0;
  double smallest = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(m(i, k)) > std::abs(m(pivot, k))) pivot = i;
    }
    if (m(pivot, k) == 0.0) return {0.0, std::numeric_limits<double>::infinity()};
    if (pivot != k) {
      for (std::size_t j = k; j < n; ++j) std::swap(m(k, j), m(pivot, j));
      det = -det;
    }
    const double p = m(k, k);
    det *= p;
    largest = std::max(largest, std::abs(p));
    smallest = std::min(smallest, std::abs(p));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double factor = m(i, k) / p;
      if (factor == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= factor * m(k, j);
    }
  }
  return {det, n == 0 ? 1.0 : largest / smallest};
}

}  // namespace fracrh
