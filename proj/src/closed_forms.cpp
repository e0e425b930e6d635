#include "fracrh/closed_forms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace fracrh {

double s_from_alpha(double alpha) {
  require_alpha_in_range(alpha);
  const double c = std::cos(half_pi_angle(alpha));
  return c * c;
}

namespace {

// Running value of a sum of monomials plus the sum of their magnitudes.
struct TermSum {
  double value = 0.0;
  double magnitude = 0.0;

  TermSum& operator+=(double term) {
    value += term;
    magnitude += std::abs(term);
    return *this;
  }
  TermSum& operator-=(double term) { return *this += -term; }
};

StabilityVerdict closed_form_result(const std::vector<TermSum>& sums, const VerdictOptions& options) {
  StabilityVerdict v;
  v.method = Method::ClosedForm;
  v.tolerance = options.minor_tolerance;
  for (const auto& t : sums) {
    v.values.push_back(t.value);
    v.scales.push_back(std::max(1.0, t.magnitude));
  }
  v.outcome = classify(v.values, v.scales, v.tolerance);
  return v;
}

TermSum second_condition(double a1, double a2, double a3, double s) {
  TermSum e;
  e += 4 * a1 * a3 * s;
  e -= 4 * a2 * a2 * s;
  e += a1 * a1 * a2;
  e -= a1 * a3;
  return e;
}

}  // namespace

StabilityVerdict closed_form_n2(double a1, double a2, double s, const VerdictOptions& options) {
  TermSum e1, e2;
  e1 += a1;
  e2 += a2 * a1 * a1;
  e2 -= 4 * a2 * a2 * s;
  return closed_form_result({e1, e2}, options);
}

StabilityVerdict closed_form_n3(double a1, double a2, double a3, double s, const VerdictOptions& options) {
  TermSum e1;
  e1 += a1;
  const TermSum e2 = second_condition(a1, a2, a3, s);

  const double s2 = s * s, s3 = s2 * s;
  TermSum e3;
  // Sign of ∇_3 itself; the commonly printed form carries an extra overall −1.
  e3 -= a3 * 64 * a3 * a3 * s3;
  e3 += a3 * 16 * a1 * a2 * a3 * s2;
  e3 += a3 * 48 * a3 * a3 * s2;
  e3 -= a3 * 4 * a1 * a1 * a1 * a3 * s;
  e3 += a3 * 4 * a1 * a2 * a3 * s;
  e3 -= a3 * 4 * a2 * a2 * a2 * s;
  e3 -= a3 * 12 * a3 * a3 * s;
  e3 += a3 * a1 * a1 * a2 * a2;
  e3 -= a3 * 2 * a1 * a2 * a3;
  e3 += a3 * a3 * a3;
  return closed_form_result({e1, e2, e3}, options);
}

StabilityVerdict closed_form_n4(double a1, double a2, double a3, double a4, double s,
                                const VerdictOptions& options) {
  TermSum e1;
  e1 += a1;
  const TermSum e2 = second_condition(a1, a2, a3, s);

  const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s, s6 = s5 * s;
  const double a1_2 = a1 * a1, a1_3 = a1_2 * a1, a1_4 = a1_3 * a1;
  const double a2_2 = a2 * a2, a2_3 = a2_2 * a2, a2_4 = a2_3 * a2;
  const double a3_2 = a3 * a3, a3_3 = a3_2 * a3, a3_4 = a3_3 * a3;
  const double a4_2 = a4 * a4, a4_3 = a4_2 * a4;

  // Third condition as produced by derive_reduced_conditions(4).
  TermSum e3;
  e3 -= 64 * a1 * a4_2 * s3;
  e3 += 128 * a2 * a3 * a4 * s3;
  e3 -= 64 * a3_3 * s3;
  e3 -= 16 * a1_2 * a3 * a4 * s2;
  e3 -= 16 * a1 * a2_2 * a4 * s2;
  e3 += 16 * a1 * a2 * a3_2 * s2;
  e3 += 64 * a1 * a4_2 * s2;
  e3 -= 96 * a2 * a3 * a4 * s2;
  e3 += 48 * a3_3 * s2;
  e3 += 4 * a1_3 * a2 * a4 * s;
  e3 -= 4 * a1_3 * a3_2 * s;
  e3 += 8 * a1_2 * a3 * a4 * s;
  e3 += 4 * a1 * a2_2 * a4 * s;
  e3 += 4 * a1 * a2 * a3_2 * s;
  e3 -= 16 * a1 * a4_2 * s;
  e3 -= 4 * a2_3 * a3 * s;
  e3 += 16 * a2 * a3 * a4 * s;
  e3 -= 12 * a3_3 * s;
  e3 -= a1_3 * a2 * a4;
  e3 += a1_2 * a2_2 * a3;
  e3 += a1_2 * a3 * a4;
  e3 -= 2 * a1 * a2 * a3_2;
  e3 += a3_3;

  // Fourth condition: a_4 times the bracket below.
  TermSum e4;
  auto add = [&](double term) { e4 += a4 * term; };
  add(4096 * a4_3 * s6);
  add(-1024 * a1 * a3 * a4_2 * s5);
  add(-8192 * a4_3 * s5);
  add(256 * a1_2 * a2 * a4_2 * s4);
  add(1536 * a1 * a3 * a4_2 * s4);
  add(-512 * a2_2 * a4_2 * s4);
  add(256 * a2 * a3_2 * a4 * s4);
  add(6144 * a4_3 * s4);
  add(-64 * a1_4 * a4_2 * s3);
  add(-64 * a1_2 * a2 * a4_2 * s3);
  add(-64 * a1 * a2_2 * a3 * a4 * s3);
  add(-1024 * a1 * a3 * a4_2 * s3);
  add(512 * a2_2 * a4_2 * s3);
  add(-64 * a2 * a3_2 * a4 * s3);
  add(-64 * a3_4 * s3);
  add(-2048 * a4_3 * s3);
  add(48 * a1_4 * a4_2 * s2);
  add(16 * a1_3 * a2 * a3 * a4 * s2);
  add(-64 * a1_2 * a2 * a4_2 * s2);
  add(-16 * a1_2 * a3_2 * a4 * s2);
  add(-32 * a1 * a2_2 * a3 * a4 * s2);
  add(16 * a1 * a2 * a3_3 * s2);
  add(16 * a2_4 * a4 * s2);
  add(384 * a1 * a3 * a4_2 * s2);
  add(-128 * a2_2 * a4_2 * s2);
  add(-64 * a2 * a3_2 * a4 * s2);
  add(48 * a3_4 * s2);
  add(256 * a4_3 * s2);
  add(-12 * a1_4 * a4_2 * s);
  add(4 * a1_3 * a2 * a3 * a4 * s);
  add(-4 * a1_3 * a3_3 * s);
  add(-4 * a1_2 * a2_3 * a4 * s);
  add(16 * a1_2 * a2 * a4_2 * s);
  add(8 * a1_2 * a3_2 * a4 * s);
  add(16 * a1 * a2_2 * a3 * a4 * s);
  add(4 * a1 * a2 * a3_3 * s);
  add(-4 * a2_3 * a3_2 * s);
  add(-64 * a1 * a3 * a4_2 * s);
  add(16 * a2 * a3_2 * a4 * s);
  add(-12 * a3_4 * s);
  add(a1_4 * a4_2);
  add(-2 * a1_3 * a2 * a3 * a4);
  add(a1_2 * a2_2 * a3_2);
  add(2 * a1_2 * a3_2 * a4);
  add(-2 * a1 * a2 * a3_3);
  add(a3_4);
  return closed_form_result({e1, e2, e3, e4}, options);
}

StabilityVerdict closed_form_verdict(const RealPolynomial& f, double alpha, const VerdictOptions& options) {
  const double s = s_from_alpha(alpha);
  std::vector<double> a(f.coeffs().begin(), f.coeffs().end());
  for (double& c : a) c /= f[0];
  switch (f.degree()) {
    case 2: return closed_form_n2(a[1], a[2], s, options);
    case 3: return closed_form_n3(a[1], a[2], a[3], s, options);
    case 4: return closed_form_n4(a[1], a[2], a[3], a[4], s, options);
    default:
      fail(ErrorCode::Unsupported,
           "closed forms exist for degree 2..4, got degree " + std::to_string(f.degree()));
  }
}

// ---------------------------------------------------------------------------
// Symbolic derivation

namespace {

std::vector<std::string> coefficient_names(unsigned n) {
  std::vector<std::string> names;
  for (unsigned j = 1; j <= n; ++j) names.push_back("a_" + std::to_string(j));
  return names;
}

// Exact division by (1 − x²); returns false (leaving `p` untouched) when
// the division leaves a remainder.
bool divide_by_one_minus_square(SymbolicPoly& p, std::size_t var) {
  if (p.is_zero()) return false;
  std::vector<SymbolicPoly> r = p.coefficients_in(var);
  if (r.size() < 3) return false;
  const std::size_t deg = r.size() - 1;
  // P = (x² − 1)·Q + r_1 x + r_0, done by synthetic division from the top.
  std::vector<SymbolicPoly> q(deg - 1, SymbolicPoly(p.variables()));
  for (std::size_t k = deg; k >= 2; --k) {
    q[k - 2] = r[k];
    r[k - 2] += r[k];
  }
  if (!r[0].is_zero() || !r[1].is_zero()) return false;
  p = -SymbolicPoly::from_coefficients(var, q, p.variables());
  return true;
}

}  // namespace

ReducedCondition derive_reduced_conditions(unsigned n) {
  if (n < 1 || n > 5) fail(ErrorCode::Unsupported, "symbolic derivation supports 1 <= n <= 5, got " + std::to_string(n));

  std::vector<std::string> vars = coefficient_names(n);
  vars.push_back("c");
  const std::size_t c_var = n;

  // Coefficient a_j as a polynomial; a_0 = 1.
  auto coeff = [&](unsigned j) {
    return j == 0 ? SymbolicPoly::constant(vars, 1) : SymbolicPoly::variable(vars, vars[j - 1]);
  };

  // H_α with σ divided out of every sine row: sin(kθ)/σ = U_{k−1}(c).
  const std::size_t size = 2 * n;
  std::vector<std::vector<SymbolicPoly>> h(size, std::vector<SymbolicPoly>(size, SymbolicPoly(vars)));
  for (unsigned r = 0; r < n; ++r) {
    for (unsigned j = 0; j <= n && r + j < size; ++j) {
      const int k = static_cast<int>(n - j);
      h[2 * r][r + j] = coeff(j) * chebyshev_u(k - 1, c_var, vars);
      h[2 * r + 1][r + j] = coeff(j) * chebyshev_t(static_cast<unsigned>(k), c_var, vars);
    }
  }

  // Laplace expansion along the last used row, memoized over column sets:
  // det_of[mask] = determinant of rows 0..|mask|−1 restricted to columns in mask.
  const std::size_t masks = std::size_t{1} << size;
  std::vector<SymbolicPoly> det_of(masks, SymbolicPoly(vars));
  det_of[0] = SymbolicPoly::constant(vars, 1);
  for (std::size_t mask = 1; mask < masks; ++mask) {
    const unsigned k = static_cast<unsigned>(std::popcount(mask));
    const std::size_t row = k - 1;
    unsigned position = 0;
    SymbolicPoly acc(vars);
    for (std::size_t col = 0; col < size; ++col) {
      if (!(mask >> col & 1u)) continue;
      const SymbolicPoly& entry = h[row][col];
      const SymbolicPoly& sub = det_of[mask & ~(std::size_t{1} << col)];
      if (!entry.is_zero() && !sub.is_zero()) {
        SymbolicPoly term = entry * sub;
        if ((row + position) % 2 == 1) acc -= term;
        else acc += term;
      }
      ++position;
    }
    det_of[mask] = std::move(acc);
  }

  ReducedCondition out;
  out.degree = n;
  out.variables = coefficient_names(n);
  out.variables.push_back("s");
  for (unsigned p = 1; p <= n; ++p) {
    SymbolicPoly poly = det_of[(std::size_t{1} << (2 * p)) - 1];
    unsigned sin_power = p;
    while (divide_by_one_minus_square(poly, c_var)) sin_power += 2;
    if (!poly.is_even_in(c_var)) {
      fail(ErrorCode::InternalError, "minor " + std::to_string(p) + " keeps an odd power of cos(alpha*pi/2)");
    }
    out.polys.push_back(poly.halve_exponent(c_var, "s"));
    out.sin_power_removed.push_back(sin_power);
  }
  return out;
}

std::vector<SymbolicPoly> reference_conditions(unsigned n) {
  std::vector<std::string> vars = coefficient_names(n);
  vars.push_back("s");
  std::vector<std::string> texts;
  const std::string first = "a_1";
  const std::string second = "(4*a_1*a_3 - 4*a_2^2)*s + a_1^2*a_2 - a_1*a_3";
  switch (n) {
    case 2:
      texts = {first, "a_2*(a_1^2 - 4*a_2*s)"};
      break;
    case 3:
      texts = {first, second,
               "a_3*(64*a_3^2*s^3 - (16*a_1*a_2*a_3 + 48*a_3^2)*s^2"
               " + (4*a_1^3*a_3 - 4*a_1*a_2*a_3 + 4*a_2^3 + 12*a_3^2)*s"
               " - a_1^2*a_2^2 + 2*a_1*a_2*a_3 - a_3^2)"};
      break;
    case 4:
      texts = {
          first, second,
          "(64*a_1*a_4^2 - 128*a_2*a_3*a_4 + 64*a_3^3)*s^3"
          " - (16*a_1^2*a_3*a_4 + 16*a_1*a_2^2*a_4 + 16*a_1*a_2*a_3^2 - 64*a_1*a_4^2"
          " + 96*a_2*a_3*a_4 - 48*a_3^3)*s^2"
          " + (4*a_1^3*a_2*a_4 - 4*a_1^3*a_3^2 + 8*a_1^2*a_3*a_4 + 4*a_1*a_2^2*a_4 + 4*a_1*a_2*a_3^2"
          " - 4*a_2^3*a_3 - 16*a_1*a_4^2 + 16*a_2*a_3*a_4 - 12*a_3^3)*s"
          // The typeset source reads "a_1^2a_3a_42a_1a_2a_3^2" with no operator
          // between the two monomials; juxtaposition means a product.
          " - a_1^3*a_2*a_4 + a_1^2*a_2^2*a_3 + a_1^2*a_3*a_4*2*a_1*a_2*a_3^2 + a_3^3",
          "a_4*(4096*a_4^3*s^6 + (-1024*a_1*a_3*a_4^2 - 8192*a_4^3)*s^5"
          " + (256*a_1^2*a_2*a_4^2 + 1536*a_1*a_3*a_4^2 - 512*a_2^2*a_4^2 + 256*a_2*a_3^2*a_4 + 6144*a_4^3)*s^4"
          " + (-64*a_1^4*a_4^2 - 64*a_1^2*a_2*a_4^2 - 64*a_1*a_2^2*a_3*a_4 - 1024*a_1*a_3*a_4^2"
          " + 512*a_2^2*a_4^2 - 64*a_2*a_3^2*a_4 - 64*a_3^4 - 2048*a_4^3)*s^3"
          " + (48*a_1^4*a_4^2 + 16*a_1^3*a_2*a_3*a_4 - 64*a_1^2*a_2*a_4^2"
          " - 16*a_1^2*a_3^2*a_4 - 32*a_1*a_2^2*a_3*a_4 + 16*a_1*a_2*a_3^3 + 16*a_2^4*a_4 + 384*a_1*a_3*a_4^2"
          " - 128*a_2^2*a_4^2 - 64*a_2*a_3^2*a_4 + 48*a_3^4 + 256*a_4^3)*s^2"
          " + (-12*a_1^4*a_4^2 + 4*a_1^3*a_2*a_3*a_4 - 4*a_1^3*a_3^3 - 4*a_1^2*a_2^3*a_4 + 16*a_1^2*a_2*a_4^2"
          " + 8*a_1^2*a_3^2*a_4 + 16*a_1*a_2^2*a_3*a_4 + 4*a_1*a_2*a_3^3 - 4*a_2^3*a_3^2 - 64*a_1*a_3*a_4^2"
          " + 16*a_2*a_3^2*a_4 - 12*a_3^4)*s"
          " + a_1^4*a_4^2 - 2*a_1^3*a_2*a_3*a_4 + a_1^2*a_2^2*a_3^2 + 2*a_1^2*a_3^2*a_4"
          " - 2*a_1*a_2*a_3^3 + a_3^4)"};
      break;
    default:
      return {};
  }
  std::vector<SymbolicPoly> out;
  for (const auto& t : texts) out.push_back(parse_polynomial(t, vars));
  return out;
}

namespace {

std::string monomial_text(const SymbolicPoly::Exponents& e, const std::vector<std::string>& vars) {
  std::string text;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!text.empty()) text += '*';
    text += vars[i];
    if (e[i] > 1) text += "^" + std::to_string(e[i]);
  }
  return text.empty() ? "1" : text;
}

}  // namespace

ConditionComparison compare_conditions(const SymbolicPoly& derived, const SymbolicPoly& reference) {
  if (derived.variables() != reference.variables()) {
    fail(ErrorCode::InternalError, "comparing conditions over different variables");
  }
  ConditionComparison result;
  if (derived.is_zero() || reference.is_zero()) {
    result.match = derived.is_zero() && reference.is_zero();
  } else {
    // Normal form: divide by content, make the lexicographically leading
    // coefficient positive.
    const auto leading_sign = [](const SymbolicPoly& p) { return sgn(p.terms().rbegin()->second); };
    const SymbolicPoly lhs = derived * (leading_sign(derived) / abs(derived.content()));
    const SymbolicPoly rhs = reference * (leading_sign(reference) / abs(reference.content()));
    result.match = lhs == rhs;
    result.sign_flipped = result.match && leading_sign(derived) != leading_sign(reference);
    if (!result.match) {
      const auto& dt = derived.terms();
      const auto& rt = reference.terms();
      std::vector<SymbolicPoly::Exponents> keys;
      for (const auto& [e, c] : dt) keys.push_back(e);
      for (const auto& [e, c] : rt) {
        if (!dt.count(e)) keys.push_back(e);
      }
      std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) { return a > b; });
      for (const auto& e : keys) {
        const auto d = dt.find(e);
        const auto r = rt.find(e);
        const mpq_class dc = d == dt.end() ? mpq_class(0) : d->second;
        const mpq_class rc = r == rt.end() ? mpq_class(0) : r->second;
        if (dc != rc) {
          result.diffs.push_back({monomial_text(e, derived.variables()), dc.get_str(), rc.get_str()});
        }
      }
    }
  }
  return result;
}

std::string display_condition(const SymbolicPoly& poly, std::size_t degree) {
  if (degree >= 1 && poly.divisible_by_variable(degree - 1)) {
    const SymbolicPoly rest = poly.divide_by_variable(degree - 1);
    if (rest.term_count() > 1) return poly.variables()[degree - 1] + "*(" + rest.to_string() + ")";
  }
  return poly.to_string();
}

std::string format_derivation(const ReducedCondition& conditions) {
  std::ostringstream out;
  const std::size_t n = conditions.degree;
  out << "degree " << n << ", s = cos^2(alpha*pi/2), sigma = sin(alpha*pi/2) > 0\n";
  const auto reference = reference_conditions(static_cast<unsigned>(n));
  std::size_t mismatches = 0;
  for (std::size_t p = 0; p < conditions.polys.size(); ++p) {
    const SymbolicPoly& poly = conditions.polys[p];
    out << "nabla_" << p + 1 << " = sigma^" << conditions.sin_power_removed[p] << " * P_" << p + 1 << "\n";
    out << "  P_" << p + 1 << " = " << display_condition(poly, n) << "\n";
    out << "  monomials: " << poly.term_count() << "\n";
    if (p < reference.size()) {
      const ConditionComparison cmp = compare_conditions(poly, reference[p]);
      out << "  reference: " << (cmp.match ? "match" : "mismatch")
          << (cmp.sign_flipped ? " (printed with opposite overall sign)" : "") << "\n";
      if (!cmp.match) ++mismatches;
      for (const auto& d : cmp.diffs) {
        out << "    " << d.monomial << ": derived " << d.derived << ", reference " << d.reference << "\n";
      }
    }
  }
  if (!reference.empty()) {
    out << "reference comparison: " << (conditions.polys.size() - mismatches) << " of " << conditions.polys.size()
        << " match\n";
  }
  return out.str();
}

}  // namespace fracrh
