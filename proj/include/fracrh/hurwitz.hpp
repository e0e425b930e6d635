#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "fracrh/matrix.hpp"
#include "fracrh/polynomial.hpp"

namespace fracrh {

enum class Outcome { NotStable = 0, Stable = 1, Boundary = 2 };

enum class Method {
  Theorem1,
  ClosedForm,
  ArgumentOracle,
  TavazoeiEmbed,
  GeneralizedRouthHurwitz,
  ClassicalRouthHurwitz,
};

std::string_view to_string(Outcome outcome);
std::string_view to_string(Method method);

struct VerdictOptions {
  /// Relative threshold on minors and closed-form expressions.
  double minor_tolerance = 1e-9;
  /// Angular distance (radians) to the critical line treated as Boundary.
  double angle_tolerance = 1e-9;
  /// |sin(nαπ/2)| below this hands the decision to the argument oracle.
  double degeneracy_tolerance = 1e-12;
};

/// Result of any of the stability deciders. `values` holds the quantity
/// whose signs decide: the ∇_p / δ_k / Δ_i minors, the closed-form
/// expressions, or the angular margins |arg λ_j| − απ/2 for the argument
/// oracle.
struct StabilityVerdict {
  std::vector<double> values;
  /// Per-value magnitude scale; a value is treated as zero when
  /// |value| <= tolerance * scale.
  std::vector<double> scales;
  Outcome outcome = Outcome::NotStable;
  Method method = Method::Theorem1;
  double tolerance = 0.0;
  /// Set when theorem1_verdict handed over to the argument oracle.
  bool delegated = false;
  std::vector<std::string> notes;
};

/// Sign classification shared by every decider. NotStable dominates
/// Boundary.
Outcome classify(const std::vector<double>& values, const std::vector<double>& scales, double tolerance);

/// 2n×2n generalized Hurwitz layout: row 2r carries the imaginary-part
/// sequence shifted right by r, row 2r+1 the real-part sequence (0-based).
template <class T>
struct HurwitzMatrix {
  Matrix<T> entries;
  std::size_t source_degree = 0;
};

using GeneralizedHurwitzMatrix = HurwitzMatrix<double>;
using RationalHurwitzMatrix = HurwitzMatrix<mpq_class>;

struct FracHurwitzMatrix {
  GeneralizedHurwitzMatrix matrix;
  double alpha = 1.0;
};

template <class T>
HurwitzMatrix<T> build_generalized_hurwitz(const BasicComplexPair<T>& pair) {
  const std::size_t n = pair.degree();
  if (n == 0) fail(ErrorCode::DomainError, "generalized Hurwitz matrix needs degree >= 1");
  HurwitzMatrix<T> h{Matrix<T>(2 * n), n};
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t j = 0; j <= n && r + j < 2 * n; ++j) {
      h.entries(2 * r, r + j) = pair.imag_part()[j];
      h.entries(2 * r + 1, r + j) = pair.real_part()[j];
    }
  }
  return h;
}

/// H_α: the generalized Hurwitz matrix of f(λ·e^{iαπ/2}).
FracHurwitzMatrix build_frac_hurwitz(const RealPolynomial& f, double alpha);

/// [det of leading 2×2, 4×4, ..., 2n×2n] by partial-pivoted LU per block.
std::vector<double> even_leading_minors(const GeneralizedHurwitzMatrix& h,
                                        std::vector<std::string>* notes = nullptr);
inline std::vector<double> even_leading_minors(const FracHurwitzMatrix& h,
                                               std::vector<std::string>* notes = nullptr) {
  return even_leading_minors(h.matrix, notes);
}

/// Exact even leading minors from a single Bareiss pass.
std::vector<mpq_class> even_leading_minors(const RationalHurwitzMatrix& h);

/// max(1, product of the row max-norms of the leading k×k block).
double leading_block_scale(const SquareMatrix& m, std::size_t k);

/// Fractional-order Routh–Hurwitz decision for D^α x = Ax with
/// characteristic polynomial f.
StabilityVerdict theorem1_verdict(const RealPolynomial& f, double alpha, const VerdictOptions& options = {});

/// Left-half-plane decision for the complex polynomial described by pair.
/// Throws DegenerateLeadingCoefficient when imagPart[0] vanishes.
StabilityVerdict generalized_rh_verdict(const ComplexPairPolynomial& pair, const VerdictOptions& options = {});

}  // namespace fracrh
