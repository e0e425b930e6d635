#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "fracrh/hurwitz.hpp"
#include "fracrh/matrix.hpp"
#include "fracrh/polynomial.hpp"

namespace fracrh {

struct Spectrum {
  std::vector<std::complex<double>> eigenvalues;
  /// max_j |f(λ_j)| / Σ_k |a_k| |λ_j|^{n-k}: relative backward error of the
  /// eigenvalues as roots of the characteristic polynomial.
  double residual_bound = 0.0;
};

/// Dense eigensolver: diagonal balancing followed by Hessenberg/QR.
/// Real input yields conjugate-closed output.
Spectrum eigenvalues(const SquareMatrix& a);

/// Eigenvalues of the (balanced) companion matrix.
Spectrum polynomial_roots(const RealPolynomial& f);

/// Euclidean distance from z to the critical line {γ : |arg γ| = απ/2}.
double distance_to_critical_line(std::complex<double> z, double alpha);

/// Stability from eigenvalue arguments: Stable iff every |arg λ_j| exceeds
/// απ/2 by more than the angular tolerance.
StabilityVerdict argument_oracle(const Spectrum& spectrum, double alpha, const VerdictOptions& options = {});
StabilityVerdict argument_oracle(const SquareMatrix& a, double alpha, const VerdictOptions& options = {});
StabilityVerdict argument_oracle(const RealPolynomial& f, double alpha, const VerdictOptions& options = {});

/// [[A sin θ, A cos θ], [−A cos θ, A sin θ]] with θ = απ/2.
SquareMatrix tavazoei_embed(const SquareMatrix& a, double alpha);

/// Classical n×n Hurwitz matrix, entry (i, j) = a_{2j−i} (1-based).
SquareMatrix classical_hurwitz_matrix(const RealPolynomial& f);

/// Integer-order Routh–Hurwitz: all leading minors Δ_1..Δ_n positive.
StabilityVerdict classical_rh_verdict(const RealPolynomial& f, const VerdictOptions& options = {});

/// Integer-order Routh–Hurwitz on the 2n-dimensional embedding.
StabilityVerdict tavazoei_verdict(const SquareMatrix& a, double alpha, const VerdictOptions& options = {});

/// Random real matrix for cross-validation batches: Gaussian entries scaled
/// by 1/sqrt(order), shifted by a random multiple of the identity so that
/// stable and unstable cases both occur.
SquareMatrix random_test_matrix(std::mt19937_64& rng, std::size_t order);

struct OracleComparison {
  StabilityVerdict theorem1;
  StabilityVerdict argument;
  StabilityVerdict tavazoei;
  /// Smallest distance from an eigenvalue to the critical line.
  double critical_distance = 0.0;
  /// True when no method reports Boundary and critical_distance exceeds the
  /// exclusion radius.
  bool decidable = false;
  bool agree = false;
};

OracleComparison compare_oracles(const SquareMatrix& a, double alpha, const VerdictOptions& options = {},
                                 double exclusion_radius = 1e-6);

struct BatchComparison {
  std::size_t cases = 0;
  std::size_t compared = 0;
  std::size_t excluded = 0;
  std::size_t delegated = 0;
  std::size_t stable = 0;
  std::size_t not_stable = 0;
  std::vector<std::size_t> disagreements;
};

/// `count` matrices from random_test_matrix seeded with `seed`.
BatchComparison compare_oracles_random(std::size_t order, std::size_t count, double alpha, std::uint64_t seed,
                                       const VerdictOptions& options = {}, double exclusion_radius = 1e-6);

}  // namespace fracrh
