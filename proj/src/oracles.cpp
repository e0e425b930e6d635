#include "fracrh/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "fracrh/determinant.hpp"

namespace fracrh {

namespace {

// Parlett–Reinsch diagonal similarity with radix-2 scale factors, so the
// balanced matrix has exactly the same eigenvalues.
void balance(Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  constexpr double kRadix = 2.0;
  constexpr double kRadixSq = kRadix * kRadix;
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(m(j, i));
        r += std::abs(m(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / kRadix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= kRadix;
        c *= kRadixSq;
      }
      g = r * kRadix;
      while (c > g) {
        f /= kRadix;
        c /= kRadixSq;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        m.row(i) /= f;
        m.col(i) *= f;
      }
    }
  }
}

double residual_bound(const RealPolynomial& f, const std::vector<std::complex<double>>& roots) {
  double worst = 0.0;
  for (const auto& z : roots) {
    const double mag = std::abs(z);
    double weight = 0.0;
    for (double c : f.coeffs()) weight = weight * mag + std::abs(c);
    if (weight > 0.0) worst = std::max(worst, std::abs(eval_complex(f, z)) / weight);
  }
  return worst;
}

std::vector<std::complex<double>> eigen_values(const SquareMatrix& a) {
  const auto n = static_cast<Eigen::Index>(a.order());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = a(r, c);
  balance(m);

  Eigen::EigenSolver<Eigen::MatrixXd> solver;
  solver.compute(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::ConvergenceFailure,
         "QR iteration did not converge within " + std::to_string(solver.getMaxIterations() * n) + " iterations");
  }
  std::vector<std::complex<double>> out(solver.eigenvalues().begin(), solver.eigenvalues().end());
  return out;
}

}  // namespace

Spectrum eigenvalues(const SquareMatrix& a) {
  require_finite(a);
  if (a.order() == 0) fail(ErrorCode::InputError, "eigenvalues of an empty matrix");
  Spectrum s;
  s.eigenvalues = eigen_values(a);
  s.residual_bound = residual_bound(char_poly(a), s.eigenvalues);
  return s;
}

Spectrum polynomial_roots(const RealPolynomial& f) {
  if (f.degree() == 0) return {};
  Spectrum s;
  s.eigenvalues = eigen_values(companion_matrix(f));
  s.residual_bound = residual_bound(f, s.eigenvalues);
  return s;
}

double distance_to_critical_line(std::complex<double> z, double alpha) {
  const double radius = std::abs(z);
  if (radius == 0.0) return 0.0;
  const double angle = std::arg(z);
  const double ray = half_pi_angle(alpha);
  double best = radius;
  for (double target : {ray, -ray}) {
    double diff = std::abs(angle - target);
    if (diff > std::numbers::pi) diff = 2.0 * std::numbers::pi - diff;
    if (diff < std::numbers::pi / 2) best = std::min(best, radius * std::sin(diff));
  }
  return best;
}

StabilityVerdict argument_oracle(const Spectrum& spectrum, double alpha, const VerdictOptions& options) {
  require_alpha_in_range(alpha);
  StabilityVerdict v;
  v.method = Method::ArgumentOracle;
  v.tolerance = options.angle_tolerance;

  double spectral_radius = 0.0;
  for (const auto& z : spectrum.eigenvalues) spectral_radius = std::max(spectral_radius, std::abs(z));
  const double zero_radius = options.angle_tolerance * std::max(1.0, spectral_radius);

  const double critical = half_pi_angle(alpha);
  for (const auto& z : spectrum.eigenvalues) {
    if (std::abs(z) <= zero_radius) {
      // arg(0) is undefined; a zero eigenvalue is never asymptotically stable.
      v.values.push_back(0.0);
      v.notes.push_back("eigenvalue at the origin");
    } else {
      v.values.push_back(std::abs(std::arg(z)) - critical);
    }
    v.scales.push_back(1.0);
  }
  v.outcome = classify(v.values, v.scales, v.tolerance);
  return v;
}

StabilityVerdict argument_oracle(const SquareMatrix& a, double alpha, const VerdictOptions& options) {
  return argument_oracle(eigenvalues(a), alpha, options);
}

StabilityVerdict argument_oracle(const RealPolynomial& f, double alpha, const VerdictOptions& options) {
  if (f.degree() == 0) fail(ErrorCode::DomainError, "argument oracle needs a polynomial of degree >= 1");
  return argument_oracle(polynomial_roots(f), alpha, options);
}

SquareMatrix tavazoei_embed(const SquareMatrix& a, double alpha) {
  require_alpha_in_range(alpha);
  const std::size_t n = a.order();
  const double theta = half_pi_angle(alpha);
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  SquareMatrix out(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = a(i, j);
      out(i, j) = v * s;
      out(i, j + n) = v * c;
      out(i + n, j) = -v * c;
      out(i + n, j + n) = v * s;
    }
  }
  return out;
}

SquareMatrix classical_hurwitz_matrix(const RealPolynomial& f) {
  const std::size_t n = f.degree();
  SquareMatrix h(n);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      const long k = 2 * static_cast<long>(j) - static_cast<long>(i);
      if (k >= 0 && k <= static_cast<long>(n)) h(i - 1, j - 1) = f[static_cast<std::size_t>(k)];
    }
  }
  return h;
}

StabilityVerdict classical_rh_verdict(const RealPolynomial& f, const VerdictOptions& options) {
  if (f.degree() == 0) fail(ErrorCode::DomainError, "Routh-Hurwitz test needs degree >= 1");
  if (f[0] <= 0.0) fail(ErrorCode::DomainError, "Routh-Hurwitz test needs a positive leading coefficient");
  const SquareMatrix h = classical_hurwitz_matrix(f);
  StabilityVerdict v;
  v.method = Method::ClassicalRouthHurwitz;
  v.tolerance = options.minor_tolerance;
  for (std::size_t k = 1; k <= h.order(); ++k) {
    v.values.push_back(lu_determinant(h.leading_block(k)).value);
    v.scales.push_back(leading_block_scale(h, k));
  }
  v.outcome = classify(v.values, v.scales, v.tolerance);
  return v;
}

StabilityVerdict tavazoei_verdict(const SquareMatrix& a, double alpha, const VerdictOptions& options) {
  StabilityVerdict v = classical_rh_verdict(char_poly(tavazoei_embed(a, alpha)), options);
  v.method = Method::TavazoeiEmbed;
  return v;
}

SquareMatrix random_test_matrix(std::mt19937_64& rng, std::size_t order) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double scale = 1.0 / std::sqrt(static_cast<double>(order));

  if (unit(rng) < 0.5) {
    SquareMatrix a(order);
    for (std::size_t i = 0; i < order; ++i)
      for (std::size_t j = 0; j < order; ++j) a(i, j) = gauss(rng) * scale;
    const double shift = -0.5 + 2.5 * unit(rng);
    for (std::size_t i = 0; i < order; ++i) a(i, i) -= shift;
    return a;
  }

  // Prescribed spectrum in real block-diagonal form, clustered above a
  // random angle, then hidden by a random similarity.
  const double floor_angle = std::numbers::pi * (0.4 + 0.6 * unit(rng));
  SquareMatrix d(order);
  std::size_t i = 0;
  while (i < order) {
    const double radius = 0.2 + 2.8 * unit(rng);
    const double angle = floor_angle + (std::numbers::pi - floor_angle) * unit(rng);
    if (i + 1 < order && unit(rng) < 0.7) {
      const double re = radius * std::cos(angle);
      const double im = radius * std::sin(angle);
      d(i, i) = re;
      d(i, i + 1) = im;
      d(i + 1, i) = -im;
      d(i + 1, i + 1) = re;
      i += 2;
    } else {
      d(i, i) = unit(rng) < 0.85 ? -radius : radius;
      ++i;
    }
  }

  const auto n = static_cast<Eigen::Index>(order);
  Eigen::MatrixXd t(n, n), dm(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) {
      t(r, c) = (r == c ? 1.0 : 0.0) + 0.5 * gauss(rng) * scale;
      dm(r, c) = d(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
    }
  const Eigen::MatrixXd a = t * dm * t.inverse();
  SquareMatrix out(order);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) out(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = a(r, c);
  return out;
}

OracleComparison compare_oracles(const SquareMatrix& a, double alpha, const VerdictOptions& options,
                                 double exclusion_radius) {
  OracleComparison cmp;
  const Spectrum spectrum = eigenvalues(a);
  cmp.theorem1 = theorem1_verdict(char_poly(a), alpha, options);
  cmp.argument = argument_oracle(spectrum, alpha, options);
  cmp.tavazoei = tavazoei_verdict(a, alpha, options);

  cmp.critical_distance = std::numeric_limits<double>::infinity();
  for (const auto& z : spectrum.eigenvalues) {
    cmp.critical_distance = std::min(cmp.critical_distance, distance_to_critical_line(z, alpha));
  }
  const bool any_boundary = cmp.theorem1.outcome == Outcome::Boundary ||
                            cmp.argument.outcome == Outcome::Boundary ||
                            cmp.tavazoei.outcome == Outcome::Boundary;
  cmp.decidable = !any_boundary && cmp.critical_distance > exclusion_radius;
  cmp.agree = cmp.theorem1.outcome == cmp.argument.outcome && cmp.argument.outcome == cmp.tavazoei.outcome;
  return cmp;
}

BatchComparison compare_oracles_random(std::size_t order, std::size_t count, double alpha, std::uint64_t seed,
                                       const VerdictOptions& options, double exclusion_radius) {
  BatchComparison batch;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const SquareMatrix a = random_test_matrix(rng, order);
    const OracleComparison cmp = compare_oracles(a, alpha, options, exclusion_radius);
    ++batch.cases;
    if (cmp.theorem1.delegated) ++batch.delegated;
    if (!cmp.decidable) {
      ++batch.excluded;
      continue;
    }
    ++batch.compared;
    if (cmp.argument.outcome == Outcome::Stable) ++batch.stable;
    else ++batch.not_stable;
    if (!cmp.agree) batch.disagreements.push_back(i);
  }
  return batch;
}

}  // namespace fracrh
