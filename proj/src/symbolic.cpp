#include "fracrh/symbolic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "fracrh/error.hpp"
#include "fracrh/matrix.hpp"

namespace fracrh {

SymbolicPoly::SymbolicPoly(std::vector<std::string> variables) : vars_(std::move(variables)) {}

SymbolicPoly SymbolicPoly::constant(std::vector<std::string> variables, const mpq_class& value) {
  SymbolicPoly p(std::move(variables));
  p.add_term(Exponents(p.vars_.size(), 0), value);
  return p;
}

SymbolicPoly SymbolicPoly::variable(std::vector<std::string> variables, std::string_view name) {
  SymbolicPoly p(std::move(variables));
  const int index = p.variable_index(name);
  if (index < 0) fail(ErrorCode::InputError, "unknown variable '" + std::string(name) + "'");
  Exponents e(p.vars_.size(), 0);
  e[static_cast<std::size_t>(index)] = 1;
  p.add_term(e, 1);
  return p;
}

int SymbolicPoly::variable_index(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i] == name) return static_cast<int>(i);
  }
  return -1;
}

void SymbolicPoly::add_term(const Exponents& exponents, const mpq_class& coefficient) {
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponents, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

SymbolicPoly& SymbolicPoly::operator+=(const SymbolicPoly& rhs) {
  if (rhs.vars_ != vars_) fail(ErrorCode::InternalError, "adding polynomials over different variables");
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

SymbolicPoly& SymbolicPoly::operator-=(const SymbolicPoly& rhs) {
  if (rhs.vars_ != vars_) fail(ErrorCode::InternalError, "subtracting polynomials over different variables");
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

SymbolicPoly& SymbolicPoly::operator*=(const mpq_class& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= scalar;
  return *this;
}

SymbolicPoly operator*(const SymbolicPoly& a, const SymbolicPoly& b) {
  if (a.vars_ != b.vars_) fail(ErrorCode::InternalError, "multiplying polynomials over different variables");
  SymbolicPoly out(a.vars_);
  SymbolicPoly::Exponents e(a.vars_.size());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

SymbolicPoly SymbolicPoly::operator-() const {
  SymbolicPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

SymbolicPoly SymbolicPoly::pow(unsigned exponent) const {
  SymbolicPoly result = constant(vars_, 1);
  SymbolicPoly base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

unsigned SymbolicPoly::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max<unsigned>(d, e[var]);
  return d;
}

std::vector<SymbolicPoly> SymbolicPoly::coefficients_in(std::size_t var) const {
  std::vector<SymbolicPoly> out(degree_in(var) + 1, SymbolicPoly(vars_));
  for (const auto& [e, c] : terms_) {
    Exponents stripped = e;
    stripped[var] = 0;
    out[e[var]].add_term(stripped, c);
  }
  return out;
}

SymbolicPoly SymbolicPoly::from_coefficients(std::size_t var, const std::vector<SymbolicPoly>& coeffs,
                                             const std::vector<std::string>& variables) {
  SymbolicPoly out(variables);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    for (const auto& [e, c] : coeffs[k].terms_) {
      Exponents shifted = e;
      shifted[var] = static_cast<std::uint16_t>(shifted[var] + k);
      out.add_term(shifted, c);
    }
  }
  return out;
}

bool SymbolicPoly::is_even_in(std::size_t var) const {
  return std::all_of(terms_.begin(), terms_.end(), [var](const auto& t) { return t.first[var] % 2 == 0; });
}

SymbolicPoly SymbolicPoly::halve_exponent(std::size_t var, std::string new_name) const {
  if (!is_even_in(var)) fail(ErrorCode::InternalError, "odd power of " + vars_[var] + " survives");
  std::vector<std::string> renamed = vars_;
  renamed[var] = std::move(new_name);
  SymbolicPoly out(std::move(renamed));
  for (const auto& [e, c] : terms_) {
    Exponents h = e;
    h[var] = static_cast<std::uint16_t>(h[var] / 2);
    out.add_term(h, c);
  }
  return out;
}

bool SymbolicPoly::divisible_by_variable(std::size_t var) const {
  return !terms_.empty() &&
         std::all_of(terms_.begin(), terms_.end(), [var](const auto& t) { return t.first[var] > 0; });
}

SymbolicPoly SymbolicPoly::divide_by_variable(std::size_t var) const {
  if (!divisible_by_variable(var)) fail(ErrorCode::InternalError, "polynomial not divisible by " + vars_[var]);
  SymbolicPoly out(vars_);
  for (const auto& [e, c] : terms_) {
    Exponents d = e;
    --d[var];
    out.add_term(d, c);
  }
  return out;
}

mpq_class SymbolicPoly::content() const {
  if (terms_.empty()) return 0;
  mpz_class num_gcd = 0, den_lcm = 1;
  for (const auto& [e, c] : terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  mpq_class q(num_gcd, den_lcm);
  q.canonicalize();
  return q;
}

double SymbolicPoly::evaluate(std::span<const double> values) const {
  if (values.size() != vars_.size()) fail(ErrorCode::DimensionMismatch, "wrong number of values for evaluation");
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = c.get_d();
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) term *= std::pow(values[i], e[i]);
    }
    sum += term;
  }
  return sum;
}

mpq_class SymbolicPoly::evaluate(std::span<const mpq_class> values) const {
  if (values.size() != vars_.size()) fail(ErrorCode::DimensionMismatch, "wrong number of values for evaluation");
  mpq_class sum = 0;
  for (const auto& [e, c] : terms_) {
    mpq_class term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (unsigned k = 0; k < e[i]; ++k) term *= values[i];
    }
    sum += term;
  }
  return sum;
}

double SymbolicPoly::evaluate_abs(std::span<const double> values) const {
  if (values.size() != vars_.size()) fail(ErrorCode::DimensionMismatch, "wrong number of values for evaluation");
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = std::abs(c.get_d());
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) term *= std::pow(std::abs(values[i]), e[i]);
    }
    sum += term;
  }
  return sum;
}

SymbolicPoly SymbolicPoly::reindexed(const std::vector<std::string>& variables) const {
  std::vector<int> target(vars_.size(), -1);
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    for (std::size_t j = 0; j < variables.size(); ++j) {
      if (variables[j] == vars_[i]) target[i] = static_cast<int>(j);
    }
  }
  SymbolicPoly out(variables);
  for (const auto& [e, c] : terms_) {
    Exponents mapped(variables.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (target[i] < 0) fail(ErrorCode::InputError, "variable '" + vars_[i] + "' has no counterpart");
      mapped[static_cast<std::size_t>(target[i])] = e[i];
    }
    out.add_term(mapped, c);
  }
  return out;
}

std::string SymbolicPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<const Terms::value_type*> order;
  order.reserve(terms_.size());
  for (const auto& t : terms_) order.push_back(&t);
  const std::size_t last = vars_.size() - 1;
  std::sort(order.begin(), order.end(), [last](const auto* a, const auto* b) {
    if (a->first[last] != b->first[last]) return a->first[last] > b->first[last];
    return a->first > b->first;
  });

  std::ostringstream out;
  bool first = true;
  for (const auto* t : order) {
    const auto& [e, c] = *t;
    const bool negative = c < 0;
    const mpq_class magnitude = abs(c);
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;

    bool wrote = false;
    const bool is_constant = std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; });
    if (magnitude != 1 || is_constant) {
      out << magnitude.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) out << '*';
      out << vars_[i];
      if (e[i] > 1) out << '^' << e[i];
      wrote = true;
    }
  }
  return out.str();
}

SymbolicPoly chebyshev_t(unsigned k, std::size_t var, const std::vector<std::string>& variables) {
  SymbolicPoly prev = SymbolicPoly::constant(variables, 1);
  if (k == 0) return prev;
  const SymbolicPoly x = SymbolicPoly::variable(variables, variables[var]);
  SymbolicPoly curr = x;
  for (unsigned i = 2; i <= k; ++i) {
    SymbolicPoly next = x * curr * mpq_class(2) - prev;
    prev = std::move(curr);
    curr = std::move(next);
  }
  return curr;
}

SymbolicPoly chebyshev_u(int k, std::size_t var, const std::vector<std::string>& variables) {
  if (k < 0) return SymbolicPoly(variables);
  SymbolicPoly prev = SymbolicPoly::constant(variables, 1);
  if (k == 0) return prev;
  const SymbolicPoly x = SymbolicPoly::variable(variables, variables[var]);
  SymbolicPoly curr = x * mpq_class(2);
  for (int i = 2; i <= k; ++i) {
    SymbolicPoly next = x * curr * mpq_class(2) - prev;
    prev = std::move(curr);
    curr = std::move(next);
  }
  return curr;
}

// ---------------------------------------------------------------------------
// Expression parser

namespace {

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& vars) : text_(text), vars_(vars) {}

  SymbolicPoly parse() {
    SymbolicPoly p = expression();
    skip_space();
    if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::ParseError, "in expression '" + std::string(text_) + "' at offset " + std::to_string(pos_) +
                                    ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char ch) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  SymbolicPoly expression() {
    SymbolicPoly acc = term();
    while (true) {
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else return acc;
    }
  }

  SymbolicPoly term() {
    SymbolicPoly acc = unary();
    while (true) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        const SymbolicPoly divisor = unary();
        const auto& t = divisor.terms();
        const bool is_constant = t.size() == 1 && std::all_of(t.begin()->first.begin(), t.begin()->first.end(),
                                                              [](auto x) { return x == 0; });
        if (!is_constant) error("division is only supported by a nonzero constant");
        acc *= 1 / t.begin()->second;
      } else {
        return acc;
      }
    }
  }

  SymbolicPoly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  SymbolicPoly power() {
    SymbolicPoly base = primary();
    if (accept('^')) {
      skip_space();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) error("exponent must be a non-negative integer");
      const unsigned long exponent = std::stoul(std::string(text_.substr(start, pos_ - start)));
      if (exponent > 64) error("exponent too large");
      return base.pow(static_cast<unsigned>(exponent));
    }
    return base;
  }

  SymbolicPoly primary() {
    skip_space();
    if (pos_ >= text_.size()) error("unexpected end of expression");
    const char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      SymbolicPoly inner = expression();
      if (!accept(')')) error("missing ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
        ++pos_;
      }
      if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
        std::size_t look = pos_ + 1;
        if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
        if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
          pos_ = look;
          while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
      }
      return SymbolicPoly::constant(vars_, parse_rational(std::string(text_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string name(text_.substr(start, pos_ - start));
      const auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it == vars_.end()) error("unknown identifier '" + name + "'");
      return SymbolicPoly::variable(vars_, name);
    }
    error("unexpected '" + std::string(1, ch) + "'");
  }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

SymbolicPoly parse_polynomial(std::string_view text, const std::vector<std::string>& variables) {
  return Parser(text, variables).parse();
}

std::vector<std::string> identifiers_in(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char ch = text[i];
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      const std::size_t start = i;
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
      std::string name(text.substr(start, i - start));
      if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(std::move(name));
    } else if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      // Skip numeric literals including an exponent suffix such as 1e-3.
      while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '.')) ++i;
      if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        std::size_t look = i + 1;
        if (look < text.size() && (text[look] == '+' || text[look] == '-')) ++look;
        if (look < text.size() && std::isdigit(static_cast<unsigned char>(text[look]))) {
          i = look;
          while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        }
      }
    } else {
      ++i;
    }
  }
  return out;
}

}  // namespace fracrh
