#include "fracrh/polynomial.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace fracrh {

void require_finite(const SquareMatrix& m, const char* what) {
  for (double v : m.data()) {
    if (!std::isfinite(v)) fail(ErrorCode::InputError, std::string(what) + " has a non-finite entry");
  }
}

RationalMatrix to_rational(const SquareMatrix& m) {
  require_finite(m);
  RationalMatrix out(m.order());
  for (std::size_t r = 0; r < m.order(); ++r)
    for (std::size_t c = 0; c < m.order(); ++c) out(r, c) = mpq_class(m(r, c));
  return out;
}

SquareMatrix to_double(const RationalMatrix& m) {
  SquareMatrix out(m.order());
  for (std::size_t r = 0; r < m.order(); ++r)
    for (std::size_t c = 0; c < m.order(); ++c) out(r, c) = m(r, c).get_d();
  return out;
}

mpq_class parse_rational(const std::string& text) {
  auto bad = [&] { fail(ErrorCode::ParseError, "not a rational literal: '" + text + "'"); };
  if (text.empty()) bad();

  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    mpz_class num, den;
    if (num.set_str(text.substr(0, slash), 10) != 0 || den.set_str(text.substr(slash + 1), 10) != 0) bad();
    if (den == 0) fail(ErrorCode::ParseError, "zero denominator in '" + text + "'");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }

  // Decimal literal with optional exponent, converted exactly.
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') negative = text[pos++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_point = false;
  bool seen_digit = false;
  for (; pos < text.size(); ++pos) {
    const char ch = text[pos];
    if (ch >= '0' && ch <= '9') {
      digits.push_back(ch);
      seen_digit = true;
      if (seen_point) --scale;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) bad();
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') bad();
    try {
      std::size_t used = 0;
      scale += std::stol(text.substr(pos + 1), &used);
      if (pos + 1 + used != text.size()) bad();
    } catch (const std::logic_error&) {
      bad();
    }
  }
  mpz_class mantissa(digits, 10);
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  mpq_class q = scale < 0 ? mpq_class(mantissa, power) : mpq_class(mantissa * power);
  q.canonicalize();
  return negative ? mpq_class(-q) : q;
}

RealPolynomial to_double(const RationalPolynomial& p) {
  std::vector<double> c;
  c.reserve(p.coeffs().size());
  for (const auto& q : p.coeffs()) c.push_back(q.get_d());
  return RealPolynomial(std::move(c));
}

MultipleAngleTable::MultipleAngleTable(double theta, std::size_t max_multiple)
    : cos_(max_multiple + 1), sin_(max_multiple + 1) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  cos_[0] = 1.0;
  sin_[0] = 0.0;
  if (max_multiple >= 1) {
    cos_[1] = c;
    sin_[1] = s;
  }
  for (std::size_t k = 2; k <= max_multiple; ++k) {
    cos_[k] = 2.0 * c * cos_[k - 1] - cos_[k - 2];
    sin_[k] = 2.0 * c * sin_[k - 1] - sin_[k - 2];
  }
}

double half_pi_angle(double alpha) { return alpha * std::numbers::pi / 2.0; }

void require_alpha_in_range(double alpha) {
  if (!(alpha >= 1.0 && alpha < 2.0)) {
    fail(ErrorCode::DomainError, "fractional order alpha = " + std::to_string(alpha) + " is outside [1, 2)");
  }
}

namespace {

// Similarity reduction to upper Hessenberg form by Gaussian elimination
// with partial pivoting (stabilized elementary transformations).
void reduce_to_hessenberg(SquareMatrix& h) {
  const std::size_t n = h.order();
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t pivot = m;
    double best = 0.0;
    for (std::size_t j = m; j < n; ++j) {
      if (std::abs(h(j, m - 1)) > best) {
        best = std::abs(h(j, m - 1));
        pivot = j;
      }
    }
    if (pivot != m) {
      for (std::size_t j = 0; j < n; ++j) std::swap(h(pivot, j), h(m, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(h(i, pivot), h(i, m));
    }
    const double x = h(m, m - 1);
    if (x == 0.0) continue;
    for (std::size_t i = m + 1; i < n; ++i) {
      double y = h(i, m - 1);
      if (y == 0.0) continue;
      y /= x;
      h(i, m - 1) = 0.0;
      for (std::size_t j = m; j < n; ++j) h(i, j) -= y * h(m, j);
      for (std::size_t j = 0; j < n; ++j) h(j, m) += y * h(j, i);
    }
  }
}

}  // namespace

RealPolynomial char_poly(const SquareMatrix& a) {
  require_finite(a);
  const std::size_t n = a.order();
  if (n == 0) fail(ErrorCode::InputError, "char_poly of an empty matrix");

  SquareMatrix h = a;
  reduce_to_hessenberg(h);

  // p[k] is the characteristic polynomial of the leading k×k block,
  // ascending powers, length k + 1.
  std::vector<std::vector<double>> p(n + 1);
  p[0] = {1.0};
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<double> next(k + 1, 0.0);
    const auto& prev = p[k - 1];
    const double diag = h(k - 1, k - 1);
    for (std::size_t i = 0; i < prev.size(); ++i) {
      next[i + 1] += prev[i];
      next[i] -= diag * prev[i];
    }
    double sub_product = 1.0;
    for (std::size_t i = k - 1; i-- > 0;) {
      sub_product *= h(i + 1, i);
      if (sub_product == 0.0) break;
      const double weight = h(i, k - 1) * sub_product;
      for (std::size_t j = 0; j < p[i].size(); ++j) next[j] -= weight * p[i][j];
    }
    p[k] = std::move(next);
  }

  std::vector<double> desc(p[n].rbegin(), p[n].rend());
  return RealPolynomial(std::move(desc));
}

RationalPolynomial char_poly_exact(const RationalMatrix& a) {
  const std::size_t n = a.order();
  if (n == 0) fail(ErrorCode::InputError, "char_poly of an empty matrix");

  // M_1 = I, c_1 = -tr(A)/1; M_k = A M_{k-1} + c_{k-1} I, c_k = -tr(A M_k)/k.
  std::vector<mpq_class> coeffs(n + 1);
  coeffs[0] = 1;
  RationalMatrix m = RationalMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    if (k > 1) {
      m = a * m;
      for (std::size_t i = 0; i < n; ++i) m(i, i) += coeffs[k - 1];
    }
    const RationalMatrix am = a * m;
    mpq_class trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += am(i, i);
    coeffs[k] = -trace / static_cast<long>(k);
  }
  return RationalPolynomial(std::move(coeffs));
}

template <class T>
static Matrix<T> companion_impl(const BasicPolynomial<T>& f) {
  const std::size_t n = f.degree();
  if (n == 0) fail(ErrorCode::DomainError, "companion matrix of a constant polynomial");
  Matrix<T> c(n);
  for (std::size_t j = 0; j < n; ++j) c(0, j) = -f[j + 1] / f[0];
  for (std::size_t i = 1; i < n; ++i) c(i, i - 1) = T(1);
  return c;
}

SquareMatrix companion_matrix(const RealPolynomial& f) { return companion_impl(f); }
RationalMatrix companion_matrix(const RationalPolynomial& f) { return companion_impl(f); }

ComplexPairPolynomial rotate_decompose(const RealPolynomial& f, double alpha) {
  require_alpha_in_range(alpha);
  const std::size_t n = f.degree();
  const MultipleAngleTable trig(half_pi_angle(alpha), n);
  std::vector<double> re(n + 1), im(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    re[j] = f[j] * trig.cos_k(n - j);
    im[j] = f[j] * trig.sin_k(n - j);
  }
  return ComplexPairPolynomial(std::move(re), std::move(im));
}

std::complex<double> eval_complex(const RealPolynomial& f, std::complex<double> z) {
  std::complex<double> acc = 0.0;
  for (double c : f.coeffs()) acc = acc * z + c;
  return acc;
}

std::complex<double> eval_pair(const ComplexPairPolynomial& pair, std::complex<double> z) {
  std::complex<double> re = 0.0, im = 0.0;
  for (std::size_t j = 0; j <= pair.degree(); ++j) {
    re = re * z + pair.real_part()[j];
    im = im * z + pair.imag_part()[j];
  }
  return re + std::complex<double>(0.0, 1.0) * im;
}

ComplexPairPolynomial substitute_imaginary_axis(std::span<const std::complex<double>> coeffs) {
  if (coeffs.empty()) fail(ErrorCode::InputError, "empty complex polynomial");
  const std::size_t n = coeffs.size() - 1;
  std::vector<double> re(n + 1), im(n + 1);
  // i^k cycles through 1, i, -1, -i.
  static constexpr std::complex<double> kPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (std::size_t j = 0; j <= n; ++j) {
    const std::complex<double> v = coeffs[j] * kPowers[(n - j) % 4];
    re[j] = v.real();
    im[j] = v.imag();
  }
  return ComplexPairPolynomial(std::move(re), std::move(im));
}

}  // namespace fracrh
