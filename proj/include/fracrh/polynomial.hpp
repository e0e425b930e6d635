#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "fracrh/error.hpp"
#include "fracrh/matrix.hpp"

namespace fracrh {

/// Real polynomial a_0 λ^n + a_1 λ^{n-1} + ... + a_n, stored in descending
/// powers so that index j holds a_j.
template <class T>
class BasicPolynomial {
 public:
  BasicPolynomial() : coeffs_{T(1)} {}

  explicit BasicPolynomial(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) fail(ErrorCode::InputError, "polynomial needs at least one coefficient");
    if (coeffs_.front() == 0) fail(ErrorCode::InputError, "leading coefficient is zero");
    if constexpr (std::is_floating_point_v<T>) {
      for (const T& c : coeffs_) {
        if (!std::isfinite(c)) fail(ErrorCode::InputError, "non-finite polynomial coefficient");
      }
    }
  }

  std::size_t degree() const noexcept { return coeffs_.size() - 1; }
  std::span<const T> coeffs() const noexcept { return coeffs_; }
  const T& operator[](std::size_t j) const { return coeffs_[j]; }
  bool is_monic() const { return coeffs_.front() == 1; }

  friend bool operator==(const BasicPolynomial&, const BasicPolynomial&) = default;

 private:
  std::vector<T> coeffs_;
};

using RealPolynomial = BasicPolynomial<double>;
using RationalPolynomial = BasicPolynomial<mpq_class>;

RealPolynomial to_double(const RationalPolynomial& p);

/// Coefficient pair of a complex polynomial written as
///   real(z) + i·imag(z),  real = [b_0..b_n], imag = [a_0..a_n]
/// which is the layout fed to the generalized Hurwitz matrix.
template <class T>
class BasicComplexPair {
 public:
  BasicComplexPair(std::vector<T> real_part, std::vector<T> imag_part)
      : real_(std::move(real_part)), imag_(std::move(imag_part)) {
    if (real_.size() != imag_.size()) {
      fail(ErrorCode::DimensionMismatch, "real and imaginary coefficient sequences differ in length");
    }
    if (real_.empty()) fail(ErrorCode::InputError, "empty coefficient pair");
  }

  std::size_t degree() const noexcept { return real_.size() - 1; }
  std::span<const T> real_part() const noexcept { return real_; }
  std::span<const T> imag_part() const noexcept { return imag_; }

 private:
  std::vector<T> real_;
  std::vector<T> imag_;
};

using ComplexPairPolynomial = BasicComplexPair<double>;
using RationalComplexPair = BasicComplexPair<mpq_class>;

/// cos(kθ) and sin(kθ) for k = 0..max_multiple, generated by the Chebyshev
/// three-term recurrence from (cos θ, sin θ).
class MultipleAngleTable {
 public:
  MultipleAngleTable(double theta, std::size_t max_multiple);

  double cos_k(std::size_t k) const { return cos_[k]; }
  double sin_k(std::size_t k) const { return sin_[k]; }
  std::size_t max_multiple() const noexcept { return cos_.size() - 1; }

 private:
  std::vector<double> cos_;
  std::vector<double> sin_;
};

/// θ = απ/2.
double half_pi_angle(double alpha);

/// Throws DomainError unless 1 <= α < 2.
void require_alpha_in_range(double alpha);

/// det(λI − A) via Hessenberg reduction and the Hessenberg determinant
/// recurrence. Monic.
RealPolynomial char_poly(const SquareMatrix& a);

/// det(λI − A) via Faddeev–LeVerrier over the rationals. Exact.
RationalPolynomial char_poly_exact(const RationalMatrix& a);

/// Frobenius companion matrix: first row −a_1/a_0 .. −a_n/a_0, ones on the
/// subdiagonal.
SquareMatrix companion_matrix(const RealPolynomial& f);
RationalMatrix companion_matrix(const RationalPolynomial& f);

/// Coefficients of f(λ·e^{iαπ/2}): real part a_j cos((n−j)απ/2),
/// imaginary part a_j sin((n−j)απ/2).
ComplexPairPolynomial rotate_decompose(const RealPolynomial& f, double alpha);

/// Horner evaluation.
std::complex<double> eval_complex(const RealPolynomial& f, std::complex<double> z);

/// realPart(λ) + i·imagPart(λ).
std::complex<double> eval_pair(const ComplexPairPolynomial& pair, std::complex<double> z);

/// For a complex-coefficient f(z) given in descending powers, returns the
/// pair describing f(iz).
ComplexPairPolynomial substitute_imaginary_axis(std::span<const std::complex<double>> coeffs);

}  // namespace fracrh
