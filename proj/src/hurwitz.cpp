#include "fracrh/hurwitz.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracrh/determinant.hpp"
#include "fracrh/oracles.hpp"

namespace fracrh {

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Stable: return "Stable";
    case Outcome::NotStable: return "NotStable";
    case Outcome::Boundary: return "Boundary";
  }
  return "?";
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::Theorem1: return "Theorem1";
    case Method::ClosedForm: return "ClosedForm";
    case Method::ArgumentOracle: return "ArgumentOracle";
    case Method::TavazoeiEmbed: return "TavazoeiEmbed";
    case Method::GeneralizedRouthHurwitz: return "GeneralizedRouthHurwitz";
    case Method::ClassicalRouthHurwitz: return "ClassicalRouthHurwitz";
  }
  return "?";
}

Outcome classify(const std::vector<double>& values, const std::vector<double>& scales, double tolerance) {
  bool boundary = false;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double threshold = tolerance * (i < scales.size() ? scales[i] : 1.0);
    if (values[i] < -threshold) return Outcome::NotStable;
    if (std::abs(values[i]) <= threshold) boundary = true;
  }
  return boundary ? Outcome::Boundary : Outcome::Stable;
}

FracHurwitzMatrix build_frac_hurwitz(const RealPolynomial& f, double alpha) {
  return {build_generalized_hurwitz(rotate_decompose(f, alpha)), alpha};
}

double leading_block_scale(const SquareMatrix& m, std::size_t k) {
  double product = 1.0;
  for (std::size_t r = 0; r < k; ++r) {
    double row_max = 0.0;
    for (std::size_t c = 0; c < k; ++c) row_max = std::max(row_max, std::abs(m(r, c)));
    product *= row_max;
  }
  return std::max(1.0, product);
}

std::vector<double> even_leading_minors(const GeneralizedHurwitzMatrix& h, std::vector<std::string>* notes) {
  const std::size_t n = h.source_degree;
  std::vector<double> minors;
  minors.reserve(n);
  for (std::size_t p = 1; p <= n; ++p) {
    const LuDeterminant det = lu_determinant(h.entries.leading_block(2 * p));
    minors.push_back(det.value);
    if (notes && std::isfinite(det.pivot_ratio) && det.pivot_ratio > 1e12) {
      std::ostringstream msg;
      msg << "leading block of order " << 2 * p << " is ill-conditioned (pivot ratio " << det.pivot_ratio << ")";
      notes->push_back(msg.str());
    }
  }
  return minors;
}

std::vector<mpq_class> even_leading_minors(const RationalHurwitzMatrix& h) {
  const auto all = bareiss_leading_minors(h.entries);
  std::vector<mpq_class> even;
  even.reserve(h.source_degree);
  for (std::size_t p = 1; p <= h.source_degree; ++p) even.push_back(all[2 * p - 1]);
  return even;
}

namespace {

StabilityVerdict minors_verdict(const GeneralizedHurwitzMatrix& h, Method method, const VerdictOptions& options) {
  StabilityVerdict v;
  v.method = method;
  v.tolerance = options.minor_tolerance;
  v.values = even_leading_minors(h, &v.notes);
  for (std::size_t p = 1; p <= h.source_degree; ++p) {
    v.scales.push_back(leading_block_scale(h.entries, 2 * p));
  }
  v.outcome = classify(v.values, v.scales, v.tolerance);
  return v;
}

}  // namespace

StabilityVerdict theorem1_verdict(const RealPolynomial& f, double alpha, const VerdictOptions& options) {
  require_alpha_in_range(alpha);
  const std::size_t n = f.degree();
  if (n == 0) fail(ErrorCode::DomainError, "theorem1_verdict needs a polynomial of degree >= 1");

  const double leading_sin = MultipleAngleTable(half_pi_angle(alpha), n).sin_k(n);
  if (std::abs(leading_sin) < options.degeneracy_tolerance) {
    StabilityVerdict oracle = argument_oracle(f, alpha, options);
    oracle.delegated = true;
    oracle.notes.push_back("sin(n*alpha*pi/2) vanishes; decided by eigenvalue arguments");
    return oracle;
  }
  return minors_verdict(build_frac_hurwitz(f, alpha).matrix, Method::Theorem1, options);
}

StabilityVerdict generalized_rh_verdict(const ComplexPairPolynomial& pair, const VerdictOptions& options) {
  double magnitude = 0.0;
  for (double x : pair.imag_part()) magnitude = std::max(magnitude, std::abs(x));
  for (double x : pair.real_part()) magnitude = std::max(magnitude, std::abs(x));
  if (std::abs(pair.imag_part()[0]) <= options.degeneracy_tolerance * std::max(1.0, magnitude)) {
    fail(ErrorCode::DegenerateLeadingCoefficient,
         "imaginary part has a vanishing leading coefficient; the generalized Hurwitz test does not apply");
  }
  return minors_verdict(build_generalized_hurwitz(pair), Method::GeneralizedRouthHurwitz, options);
}

}  // namespace fracrh
