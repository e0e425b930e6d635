#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fracrh/error.hpp"
#include "fracrh/oracles.hpp"
#include "generators.hpp"
#include "reference.hpp"

using namespace fracrh;
using fracrh::testing::Gen;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

bool contains(const Spectrum& s, std::complex<double> z, double tol) {
  return std::any_of(s.eigenvalues.begin(), s.eigenvalues.end(), [&](auto e) { return std::abs(e - z) < tol; });
}

void require_conjugate_closed(const Spectrum& s) {
  for (const auto& z : s.eigenvalues) CHECK(contains(s, std::conj(z), 1e-9 * (1 + std::abs(z))));
}

}  // namespace

TEST_CASE("eigenvalues of small matrices", "[oracles]") {
  SECTION("rotation") {
    const Spectrum s = eigenvalues(SquareMatrix{{0, 1}, {-1, 0}});
    REQUIRE(s.eigenvalues.size() == 2);
    CHECK(contains(s, {0, 1}, 1e-12));
    CHECK(contains(s, {0, -1}, 1e-12));
  }
  SECTION("triangular") {
    const Spectrum s = eigenvalues(SquareMatrix{{-1, 3}, {0, -1}});
    for (const auto& z : s.eigenvalues) CHECK(std::abs(z + 1.0) < 1e-7);
  }
  SECTION("companion of the Example 2 polynomial") {
    const double alpha = 1.2, beta = 5;
    const RealPolynomial f({1, beta - alpha, 2 * beta, 4});
    const Spectrum s = polynomial_roots(f);
    REQUIRE(s.eigenvalues.size() == 3);
    for (const auto& z : s.eigenvalues) CHECK(std::abs(eval_complex(f, z)) < 1e-8);
    CHECK(s.residual_bound < 1e-8);
  }
}

TEST_CASE("spectrum residual and conjugate closure", "[oracles][property]") {
  Gen gen(301);
  for (int trial = 0; trial < 200; ++trial) {
    const SquareMatrix a = gen.matrix(1 + gen.index(7));
    const Spectrum s = eigenvalues(a);
    REQUIRE(s.eigenvalues.size() == a.order());
    require_conjugate_closed(s);
    CHECK(s.residual_bound < 1e-8);
  }
}

TEST_CASE("distance to the critical line", "[oracles]") {
  CHECK_THAT(distance_to_critical_line({0, 1}, 1.0), WithinAbs(0, 1e-15));
  CHECK_THAT(distance_to_critical_line({-1, 0}, 1.0), WithinAbs(1, 1e-15));
  // Point on the ray at angle 3π/4 for α = 1.5.
  CHECK_THAT(distance_to_critical_line(std::polar(2.0, 0.75 * std::numbers::pi), 1.5), WithinAbs(0, 1e-12));
}

TEST_CASE("argument oracle examples", "[oracles]") {
  CHECK(argument_oracle(SquareMatrix{{-1, 0}, {0, -1}}, 1.9).outcome == Outcome::Stable);
  CHECK(argument_oracle(SquareMatrix{{0, 1}, {-1, 0}}, 1.0).outcome == Outcome::Boundary);
  SECTION("roots at angle +-0.6 pi, alpha = 1.5") {
    const double r = 1.7, t = 0.6 * std::numbers::pi;
    const RealPolynomial f({1, -2 * r * std::cos(t), r * r});
    const StabilityVerdict v = argument_oracle(f, 1.5);
    CHECK(v.outcome == Outcome::NotStable);
    CHECK(v.method == Method::ArgumentOracle);
    // Same roots, but α = 1.1 puts them in the stable sector.
    CHECK(argument_oracle(f, 1.1).outcome == Outcome::Stable);
  }
  SECTION("zero eigenvalue") {
    CHECK(argument_oracle(SquareMatrix{{0, 0}, {0, -1}}, 1.3).outcome == Outcome::Boundary);
  }
  SECTION("alpha out of range") { CHECK_THROWS_AS(argument_oracle(SquareMatrix{{-1}}, 0.5), Error); }
}

TEST_CASE("Tavazoei embedding", "[oracles]") {
  SECTION("A = -I at alpha = 1.5") {
    const SquareMatrix e = tavazoei_embed(SquareMatrix{{-1, 0}, {0, -1}}, 1.5);
    const double h = std::numbers::sqrt2 / 2;
    const double expect[4][4] = {{-h, 0, h, 0}, {0, -h, 0, h}, {-h, 0, -h, 0}, {0, -h, 0, -h}};
    // Blocks [[A s, A c], [-A c, A s]] with s = h, c = -h and A = -I.
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) CHECK_THAT(e(r, c), WithinAbs(expect[r][c], 1e-15));
  }
  SECTION("alpha = 1 gives diag(A, A)") {
    const SquareMatrix a{{1, 2}, {3, 4}};
    const SquareMatrix e = tavazoei_embed(a, 1.0);
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        CHECK_THAT(e(r, c), WithinAbs(a(r, c), 1e-15));
        CHECK_THAT(e(r + 2, c + 2), WithinAbs(a(r, c), 1e-15));
        CHECK_THAT(e(r, c + 2), WithinAbs(0, 1e-15));
        CHECK_THAT(e(r + 2, c), WithinAbs(0, 1e-15));
      }
    }
  }
  SECTION("verdicts") {
    CHECK(tavazoei_verdict(SquareMatrix{{-1, 0}, {0, -1}}, 1.5).outcome == Outcome::Stable);
    CHECK(tavazoei_verdict(SquareMatrix{{-1, 3}, {0, -1}}, 1.5).outcome == Outcome::Stable);
    const double r = 1.7, t = 0.6 * std::numbers::pi;
    const SquareMatrix rot{{r * std::cos(t), -r * std::sin(t)}, {r * std::sin(t), r * std::cos(t)}};
    CHECK(tavazoei_verdict(rot, 1.5).outcome == Outcome::NotStable);
    CHECK(argument_oracle(rot, 1.5).outcome == Outcome::NotStable);
    const StabilityVerdict v = tavazoei_verdict(rot, 1.5);
    CHECK(v.method == Method::TavazoeiEmbed);
    CHECK(v.values.size() == 4);
  }
}

TEST_CASE("classical Routh-Hurwitz", "[oracles]") {
  const StabilityVerdict v = classical_rh_verdict(RealPolynomial({1, 2, 1}));
  REQUIRE(v.values.size() == 2);
  CHECK_THAT(v.values[0], WithinAbs(2, 1e-14));
  CHECK_THAT(v.values[1], WithinAbs(2, 1e-14));
  CHECK(v.outcome == Outcome::Stable);
  CHECK(classical_rh_verdict(RealPolynomial({1, 0, 1})).outcome == Outcome::Boundary);
  CHECK(classical_rh_verdict(RealPolynomial({1, 1, -1})).outcome == Outcome::NotStable);
  CHECK_THROWS_AS(classical_rh_verdict(RealPolynomial({-1, 1})), Error);

  const SquareMatrix h = classical_hurwitz_matrix(RealPolynomial({1, 2, 3, 4}));
  // Entry (i, j) = a_{2j-i}, 1-based.
  CHECK(h == SquareMatrix{{2, 4, 0}, {1, 3, 0}, {0, 2, 4}});
}

TEST_CASE("embedding characteristic polynomial for 2x2 A", "[oracles][property]") {
  Gen gen(302);
  for (int trial = 0; trial < 100; ++trial) {
    const SquareMatrix a = gen.matrix(2);
    const double alpha = gen.alpha();
    const double s = std::sin(alpha * std::numbers::pi / 2);
    const double tr = a(0, 0) + a(1, 1), det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    const RealPolynomial p = char_poly(tavazoei_embed(a, alpha));
    const double expect[] = {1, -2 * tr * s, tr * tr + 2 * det * (2 * s * s - 1), -2 * tr * det * s, det * det};
    for (int k = 0; k < 5; ++k) CHECK_THAT(p[k], WithinAbs(expect[k], 1e-10 * (1 + std::abs(expect[k]))));

    // Δ_4 = a_4 Δ_3 for the classical Hurwitz matrix of this quartic.
    const StabilityVerdict v = classical_rh_verdict(p);
    REQUIRE(v.values.size() == 4);
    CHECK_THAT(v.values[3], WithinAbs(p[4] * v.values[2], 1e-10 * (1 + std::abs(p[4] * v.values[2]))));
  }
}

TEST_CASE("three-way oracle agreement on random matrices", "[oracles][property]") {
  for (std::size_t order : {2, 3, 4, 5}) {
    for (double alpha : {1.05, 1.5, 1.95}) {
      const BatchComparison b = compare_oracles_random(order, 120, alpha, 7000 + order);
      INFO("order " << order << " alpha " << alpha);
      CHECK(b.cases == 120);
      CHECK(b.compared + b.excluded == b.cases);
      CHECK(b.disagreements.empty());
      // Order-10 classical Hurwitz determinants of the embedding are tiny
      // relative to their Hadamard scale, so a fair share lands in Boundary.
      CHECK(b.compared >= b.cases / 5);
    }
  }
}

TEST_CASE("compare_oracles on single matrices", "[oracles]") {
  const OracleComparison c = compare_oracles(SquareMatrix{{-1, 0}, {0, -1}}, 1.5);
  CHECK(c.decidable);
  CHECK(c.agree);
  CHECK(c.theorem1.outcome == Outcome::Stable);
  CHECK(c.argument.outcome == Outcome::Stable);
  CHECK(c.tavazoei.outcome == Outcome::Stable);
  // Minor counts: n for Theorem 1, 2n for the embedding.
  CHECK(c.theorem1.values.size() == 2);
  CHECK(c.tavazoei.values.size() == 4);

  const OracleComparison edge = compare_oracles(SquareMatrix{{0, 1}, {-1, 0}}, 1.0);
  CHECK_FALSE(edge.decidable);
}

TEST_CASE("random_test_matrix yields both outcomes", "[oracles]") {
  std::mt19937_64 rng(303);
  int stable = 0, unstable = 0;
  for (int i = 0; i < 200; ++i) {
    const SquareMatrix a = random_test_matrix(rng, 3);
    (argument_oracle(a, 1.5).outcome == Outcome::Stable ? stable : unstable)++;
  }
  CHECK(stable > 30);
  CHECK(unstable > 30);
}
