#pragma once

// Hand-rolled random generators for the property tests. Every suite seeds
// its own engine so failures reproduce from the seed alone.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "fracrh/matrix.hpp"
#include "fracrh/polynomial.hpp"

namespace fracrh::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  double alpha() { return uniform(1.0, 2.0 - 1e-9); }

  std::complex<double> complex_in_disc(double radius) {
    const double r = radius * std::sqrt(uniform(0.0, 1.0));
    const double t = uniform(-std::numbers::pi, std::numbers::pi);
    return std::polar(r, t);
  }

  /// Monic polynomial with coefficients a_1..a_n in [-spread, spread].
  RealPolynomial monic(std::size_t n, double spread = 5.0) {
    std::vector<double> c{1.0};
    for (std::size_t j = 0; j < n; ++j) c.push_back(uniform(-spread, spread));
    return RealPolynomial(std::move(c));
  }

  /// Polynomial with a_0 in [0.5, 3] and random sign pattern elsewhere.
  RealPolynomial scaled(std::size_t n, double spread = 5.0) {
    std::vector<double> c{uniform(0.5, 3.0)};
    for (std::size_t j = 0; j < n; ++j) c.push_back(uniform(-spread, spread));
    return RealPolynomial(std::move(c));
  }

  /// Monic polynomial whose roots are drawn around the negative real axis,
  /// so both stable and unstable cases appear for α in [1, 2).
  RealPolynomial from_random_roots(std::size_t n) {
    std::vector<std::complex<double>> p{1.0};
    auto multiply = [&](std::complex<double> r) {
      std::vector<std::complex<double>> q(p.size() + 1, 0.0);
      for (std::size_t i = 0; i < p.size(); ++i) {
        q[i] += p[i];
        q[i + 1] -= r * p[i];
      }
      p = std::move(q);
    };
    std::size_t k = 0;
    while (k < n) {
      const double mag = uniform(0.3, 3.0);
      const double ang = uniform(0.2, std::numbers::pi);
      if (k + 1 < n && coin()) {
        multiply(std::polar(mag, ang));
        multiply(std::polar(mag, -ang));
        k += 2;
      } else {
        multiply(coin() ? -mag : mag);
        k += 1;
      }
    }
    std::vector<double> c;
    for (const auto& z : p) c.push_back(z.real());
    return RealPolynomial(std::move(c));
  }

  SquareMatrix matrix(std::size_t n, double spread = 3.0) {
    SquareMatrix m(n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m(r, c) = uniform(-spread, spread);
    return m;
  }

  /// Small-integer rationals p/q with |p| <= 9, 1 <= q <= 5 (about a third
  /// of the entries zero, to exercise pivoting).
  RationalMatrix rational_matrix(std::size_t n) {
    RationalMatrix m(n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        if (integer(0, 2) == 0) continue;
        mpq_class v(integer(-9, 9), integer(1, 5));
        v.canonicalize();
        m(r, c) = v;
      }
    }
    return m;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace fracrh::testing
