#pragma once

#include <string>
#include <vector>

#include "fracrh/hurwitz.hpp"
#include "fracrh/polynomial.hpp"
#include "fracrh/symbolic.hpp"

namespace fracrh {

/// s = cos²(απ/2).
double s_from_alpha(double alpha);

/// Explicit stability conditions for monic polynomials of degree 2, 3, 4 in
/// the coefficients a_1..a_n and s. Stable iff every expression is positive.
StabilityVerdict closed_form_n2(double a1, double a2, double s, const VerdictOptions& options = {});
StabilityVerdict closed_form_n3(double a1, double a2, double a3, double s, const VerdictOptions& options = {});
StabilityVerdict closed_form_n4(double a1, double a2, double a3, double a4, double s,
                                const VerdictOptions& options = {});

/// Dispatches on degree (2..4) after normalizing f to be monic.
StabilityVerdict closed_form_verdict(const RealPolynomial& f, double alpha, const VerdictOptions& options = {});

/// Sign-equivalent reductions of the H_α minors: ∇_p = sin(απ/2)^{k_p}·P_p(a, s).
struct ReducedCondition {
  std::size_t degree = 0;
  /// a_1..a_n, s.
  std::vector<std::string> variables;
  std::vector<SymbolicPoly> polys;
  std::vector<unsigned> sin_power_removed;
};

/// Exact symbolic expansion of the even leading minors of H_α with
/// sin(kθ) = σ·U_{k−1}(c), cos(kθ) = T_k(c); factors out σ, checks that
/// only even powers of c remain, and substitutes s = c². 1 <= n <= 5.
ReducedCondition derive_reduced_conditions(unsigned n);

/// The published closed forms for n = 2, 3, 4 over (a_1..a_n, s), exactly
/// as typeset (including the malformed product in the n = 4 third
/// condition, read as juxtaposition). Empty for other n.
std::vector<SymbolicPoly> reference_conditions(unsigned n);

struct MonomialDiff {
  std::string monomial;
  std::string derived;    // coefficient, "0" when absent
  std::string reference;  // coefficient, "0" when absent
};

struct ConditionComparison {
  bool match = false;
  /// Matched only after flipping the sign of the reference.
  bool sign_flipped = false;
  std::vector<MonomialDiff> diffs;
};

/// Match means equal after dividing by the content and making the
/// lexicographically leading coefficient positive. Otherwise the raw
/// coefficients are diffed monomial by monomial.
ConditionComparison compare_conditions(const SymbolicPoly& derived, const SymbolicPoly& reference);

/// Renders "a_n*(...)" when the polynomial carries the factor a_n, else the
/// canonical expanded form.
std::string display_condition(const SymbolicPoly& poly, std::size_t degree);

/// Full text report used by the CLI derive command.
std::string format_derivation(const ReducedCondition& conditions);

}  // namespace fracrh
