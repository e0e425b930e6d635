#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace fracrh {

/// Sparse multivariate polynomial with exact rational coefficients over a
/// fixed, ordered variable list. Zero coefficients are never stored.
class SymbolicPoly {
 public:
  using Exponents = std::vector<std::uint16_t>;
  using Terms = std::map<Exponents, mpq_class>;

  SymbolicPoly() = default;
  explicit SymbolicPoly(std::vector<std::string> variables);

  static SymbolicPoly constant(std::vector<std::string> variables, const mpq_class& value);
  static SymbolicPoly variable(std::vector<std::string> variables, std::string_view name);

  const std::vector<std::string>& variables() const noexcept { return vars_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Index of `name` in variables(), or -1.
  int variable_index(std::string_view name) const;

  /// Adds c·monomial, dropping the term if it cancels.
  void add_term(const Exponents& exponents, const mpq_class& coefficient);

  SymbolicPoly& operator+=(const SymbolicPoly& rhs);
  SymbolicPoly& operator-=(const SymbolicPoly& rhs);
  SymbolicPoly& operator*=(const mpq_class& scalar);
  friend SymbolicPoly operator+(SymbolicPoly a, const SymbolicPoly& b) { return a += b; }
  friend SymbolicPoly operator-(SymbolicPoly a, const SymbolicPoly& b) { return a -= b; }
  friend SymbolicPoly operator*(const SymbolicPoly& a, const SymbolicPoly& b);
  friend SymbolicPoly operator*(SymbolicPoly a, const mpq_class& s) { return a *= s; }
  SymbolicPoly operator-() const;
  SymbolicPoly pow(unsigned exponent) const;

  friend bool operator==(const SymbolicPoly& a, const SymbolicPoly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  unsigned degree_in(std::size_t var) const;

  /// [P_0, P_1, ...] with P = Σ_k P_k·x^k, x = variables()[var].
  std::vector<SymbolicPoly> coefficients_in(std::size_t var) const;
  static SymbolicPoly from_coefficients(std::size_t var, const std::vector<SymbolicPoly>& coeffs,
                                        const std::vector<std::string>& variables);

  /// True when every term has an even power of variables()[var].
  bool is_even_in(std::size_t var) const;

  /// Replaces x^{2k} by y^k where x = variables()[var]; the variable is
  /// renamed to `new_name`. Requires is_even_in(var).
  SymbolicPoly halve_exponent(std::size_t var, std::string new_name) const;

  /// Exact division by variables()[var]^1. Requires every term to contain it.
  bool divisible_by_variable(std::size_t var) const;
  SymbolicPoly divide_by_variable(std::size_t var) const;

  /// Positive rational content: gcd of numerators over lcm of denominators.
  mpq_class content() const;

  double evaluate(std::span<const double> values) const;
  mpq_class evaluate(std::span<const mpq_class> values) const;

  /// Σ |c_m| |x|^m: the magnitude scale used when deciding whether a value
  /// is numerically zero.
  double evaluate_abs(std::span<const double> values) const;

  /// Same polynomial over a different variable list (variables missing from
  /// `variables` must not occur).
  SymbolicPoly reindexed(const std::vector<std::string>& variables) const;

  /// Canonical text: monomials sorted by descending degree in the last
  /// variable, then descending exponent vector; explicit signs, '*' and '^'.
  std::string to_string() const;

 private:
  std::vector<std::string> vars_;
  Terms terms_;
};

/// Parses +, -, *, integer powers '^', parentheses, decimal or integer
/// literals, and division by a nonzero constant. Identifiers must belong to
/// `variables`.
SymbolicPoly parse_polynomial(std::string_view text, const std::vector<std::string>& variables);

/// Collects identifiers appearing in `text`, in order of first appearance.
std::vector<std::string> identifiers_in(std::string_view text);

/// Chebyshev polynomials T_k and U_k as SymbolicPoly in variables()[var].
SymbolicPoly chebyshev_t(unsigned k, std::size_t var, const std::vector<std::string>& variables);
SymbolicPoly chebyshev_u(int k, std::size_t var, const std::vector<std::string>& variables);

}  // namespace fracrh
