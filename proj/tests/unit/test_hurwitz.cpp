#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "fracrh/determinant.hpp"
#include "fracrh/error.hpp"
#include "fracrh/hurwitz.hpp"
#include "fracrh/oracles.hpp"
#include "generators.hpp"
#include "reference.hpp"

using namespace fracrh;
using fracrh::testing::cofactor_determinant;
using fracrh::testing::Gen;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const double kRoot2 = std::numbers::sqrt2;

}  // namespace

TEST_CASE("Bareiss minors equal cofactor determinants exactly", "[determinant][property]") {
  Gen gen(201);
  for (int trial = 0; trial < 300; ++trial) {
    const RationalMatrix m = gen.rational_matrix(1 + gen.index(8));
    const auto minors = bareiss_leading_minors(m);
    REQUIRE(minors.size() == m.order());
    for (std::size_t k = 1; k <= m.order(); ++k) CHECK(minors[k - 1] == cofactor_determinant(m.leading_block(k)));
    CHECK(bareiss_determinant(m) == cofactor_determinant(m));
  }
}

TEST_CASE("Bareiss handles a zero leading pivot", "[determinant]") {
  const RationalMatrix m{{0, 1, 2}, {1, 0, 3}, {4, -3, 8}};
  const auto minors = bareiss_leading_minors(m);
  CHECK(minors[0] == 0);
  CHECK(minors[1] == -1);
  CHECK(minors[2] == cofactor_determinant(m));
}

TEST_CASE("LU determinant matches the cofactor oracle", "[determinant]") {
  Gen gen(202);
  for (int trial = 0; trial < 200; ++trial) {
    const SquareMatrix m = gen.matrix(1 + gen.index(6));
    const double expect = cofactor_determinant(m);
    const LuDeterminant lu = lu_determinant(m);
    CHECK_THAT(lu.value, WithinAbs(expect, 1e-9 * (1 + std::abs(expect))));
    CHECK(lu.pivot_ratio >= 1.0);
  }
  const LuDeterminant singular = lu_determinant(SquareMatrix{{1, 2}, {2, 4}});
  CHECK(singular.value == 0.0);
  CHECK(std::isinf(singular.pivot_ratio));
}

TEST_CASE("generalized Hurwitz layout", "[hurwitz]") {
  SECTION("n = 1") {
    const ComplexPairPolynomial pair({3, 4}, {1, 2});
    const auto h = build_generalized_hurwitz(pair);
    CHECK(h.entries == SquareMatrix{{1, 2}, {3, 4}});
  }
  SECTION("n = 2 at alpha = 1.5") {
    const FracHurwitzMatrix h = build_frac_hurwitz(RealPolynomial({1, 2, 1}), 1.5);
    const double expect[4][4] = {
        {-1, kRoot2, 0, 0}, {0, -kRoot2, 1, 0}, {0, -1, kRoot2, 0}, {0, 0, -kRoot2, 1}};
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) CHECK_THAT(h.matrix.entries(r, c), WithinAbs(expect[r][c], 1e-15));
  }
  SECTION("alpha = 1 first column") {
    const FracHurwitzMatrix h = build_frac_hurwitz(RealPolynomial({1, 2, 1}), 1.0);
    CHECK_THAT(h.matrix.entries(0, 0), WithinAbs(0, 1e-15));
    CHECK_THAT(h.matrix.entries(1, 0), WithinAbs(-1, 1e-15));
    CHECK(h.matrix.entries(2, 0) == 0.0);
    CHECK(h.matrix.entries(3, 0) == 0.0);
  }
  SECTION("degree zero") {
    CHECK_THROWS_AS(build_generalized_hurwitz(ComplexPairPolynomial({1}, {1})), Error);
  }
  SECTION("random pairs: band layout, zeros elsewhere") {
    Gen gen(203);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 1 + gen.index(6);
      std::vector<double> re, im;
      for (std::size_t j = 0; j <= n; ++j) {
        re.push_back(gen.uniform(-3, 3));
        im.push_back(gen.uniform(-3, 3));
      }
      const auto h = build_generalized_hurwitz(ComplexPairPolynomial(re, im));
      REQUIRE(h.entries.order() == 2 * n);
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < 2 * n; ++c) {
          const bool band = c >= r && c - r <= n;
          CHECK(h.entries(2 * r, c) == (band ? im[c - r] : 0.0));
          CHECK(h.entries(2 * r + 1, c) == (band ? re[c - r] : 0.0));
        }
      }
      CHECK(h.entries(2 * n - 1, 2 * n - 1) == re[n]);
    }
  }
}

TEST_CASE("even leading minors", "[hurwitz]") {
  SECTION("lambda^2 + 2 lambda + 1 at alpha = 1.5") {
    const auto minors = even_leading_minors(build_frac_hurwitz(RealPolynomial({1, 2, 1}), 1.5));
    REQUIRE(minors.size() == 2);
    CHECK_THAT(minors[0], WithinRel(kRoot2, 1e-12));
    CHECK_THAT(minors[1], WithinRel(1.0, 1e-12));
  }
  SECTION("n = 1: c sin(alpha pi / 2)") {
    for (double alpha : {1.0, 1.3, 1.7}) {
      for (double c : {-2.0, 0.5, 3.0}) {
        const auto minors = even_leading_minors(build_frac_hurwitz(RealPolynomial({1, c}), alpha));
        CHECK_THAT(minors[0], WithinAbs(c * std::sin(alpha * std::numbers::pi / 2), 1e-14));
      }
    }
  }
  SECTION("zero row in the leading block") {
    SquareMatrix m(4);
    m(1, 0) = 1;
    m(1, 1) = 2;
    m(2, 2) = 3;
    m(3, 3) = 4;
    const auto minors = even_leading_minors(GeneralizedHurwitzMatrix{m, 2});
    CHECK(minors[0] == 0.0);
  }
  SECTION("exact minors match cofactor expansion") {
    Gen gen(204);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t n = 1 + gen.index(4);
      std::vector<mpq_class> re, im;
      for (std::size_t j = 0; j <= n; ++j) {
        re.emplace_back(gen.integer(-6, 6), gen.integer(1, 4));
        im.emplace_back(gen.integer(-6, 6), gen.integer(1, 4));
        re.back().canonicalize();
        im.back().canonicalize();
      }
      const RationalHurwitzMatrix h = build_generalized_hurwitz(RationalComplexPair(re, im));
      const auto minors = even_leading_minors(h);
      for (std::size_t p = 1; p <= n; ++p) CHECK(minors[p - 1] == cofactor_determinant(h.entries.leading_block(2 * p)));
    }
  }
}

TEST_CASE("classify: NotStable dominates Boundary", "[hurwitz]") {
  CHECK(classify({1, 2}, {1, 1}, 1e-9) == Outcome::Stable);
  CHECK(classify({1, 0}, {1, 1}, 1e-9) == Outcome::Boundary);
  CHECK(classify({1, 1e-12}, {1, 1}, 1e-9) == Outcome::Boundary);
  CHECK(classify({0, -1}, {1, 1}, 1e-9) == Outcome::NotStable);
  CHECK(classify({1e-6, 1}, {1e4, 1}, 1e-9) == Outcome::Boundary);
}

TEST_CASE("theorem1_verdict examples", "[hurwitz]") {
  SECTION("double eigenvalue -1 at alpha = 1.5") {
    const StabilityVerdict v = theorem1_verdict(RealPolynomial({1, 2, 1}), 1.5);
    CHECK(v.outcome == Outcome::Stable);
    CHECK(v.method == Method::Theorem1);
    CHECK_FALSE(v.delegated);
    CHECK_THAT(v.values[0], WithinRel(kRoot2, 1e-12));
    CHECK_THAT(v.values[1], WithinRel(1.0, 1e-12));
  }
  SECTION("eigenvalues +-i at alpha = 1 (degenerate order, delegated)") {
    const StabilityVerdict v = theorem1_verdict(RealPolynomial({1, 0, 1}), 1.0);
    CHECK(v.outcome == Outcome::Boundary);
    CHECK(v.delegated);
    CHECK(v.method == Method::ArgumentOracle);
    CHECK_FALSE(v.notes.empty());
  }
  SECTION("double eigenvalue +1") {
    for (double alpha : {1.0, 1.2, 1.5, 1.9}) {
      CHECK(theorem1_verdict(RealPolynomial({1, -2, 1}), alpha).outcome == Outcome::NotStable);
    }
  }
  SECTION("zero eigenvalue is Boundary") {
    CHECK(theorem1_verdict(RealPolynomial({1, 3, 0}), 1.3).outcome == Outcome::Boundary);
    CHECK(theorem1_verdict(RealPolynomial({1, 3, 2, 0}), 1.5).outcome == Outcome::Boundary);
  }
  SECTION("errors") {
    CHECK_THROWS_AS(theorem1_verdict(RealPolynomial({1, 1}), 2.0), Error);
    CHECK_THROWS_AS(theorem1_verdict(RealPolynomial({1}), 1.5), Error);
  }
}

TEST_CASE("scaling covariance of the minors", "[hurwitz][property]") {
  Gen gen(205);
  for (int trial = 0; trial < 200; ++trial) {
    const RealPolynomial f = gen.monic(1 + gen.index(5), 3.0);
    const double alpha = gen.alpha();
    const double c = gen.uniform(0.2, 4.0);
    std::vector<double> scaled;
    for (double a : f.coeffs()) scaled.push_back(c * a);
    const auto base = even_leading_minors(build_frac_hurwitz(f, alpha));
    const auto mult = even_leading_minors(build_frac_hurwitz(RealPolynomial(scaled), alpha));
    for (std::size_t p = 1; p <= base.size(); ++p) {
      const double expect = std::pow(c, 2.0 * p) * base[p - 1];
      CHECK_THAT(mult[p - 1], WithinAbs(expect, 1e-8 * std::pow(c, 2.0 * p) * (1 + std::abs(base[p - 1]))));
    }
    CHECK(theorem1_verdict(f, alpha).outcome == theorem1_verdict(RealPolynomial(scaled), alpha).outcome);
  }
}

TEST_CASE("theorem1 agrees with independent root arguments", "[hurwitz][property]") {
  Gen gen(206);
  std::size_t compared = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + gen.index(5);
    const RealPolynomial f = gen.from_random_roots(n);
    const double alpha = 1.0 + 0.1 * static_cast<double>(gen.index(10));
    const int expect = fracrh::testing::root_argument_sign(f, alpha, 1e-6);
    if (expect == 0) continue;
    const StabilityVerdict v = theorem1_verdict(f, alpha);
    if (v.outcome == Outcome::Boundary) continue;
    ++compared;
    INFO("trial " << trial << " n " << n << " alpha " << alpha);
    CHECK((v.outcome == Outcome::Stable) == (expect > 0));
  }
  CHECK(compared > 400);
}

TEST_CASE("generalized Routh-Hurwitz (complex polynomial form)", "[hurwitz]") {
  SECTION("real polynomial has zero imaginary leading coefficient") {
    // f(z) = z^2 + 2z + 1 gives f(iz) = -z^2 + 2iz + 1.
    const std::complex<double> c[] = {1.0, 2.0, 1.0};
    const auto pair = substitute_imaginary_axis(c);
    CHECK_THROWS_MATCHES(generalized_rh_verdict(pair), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return e.code() == ErrorCode::DegenerateLeadingCoefficient; }));
  }
  SECTION("rotated lambda + 1 at alpha = 1.5") {
    const StabilityVerdict v = generalized_rh_verdict(rotate_decompose(RealPolynomial({1, 1}), 1.5));
    CHECK(v.method == Method::GeneralizedRouthHurwitz);
    CHECK_THAT(v.values[0], WithinRel(std::sin(3 * std::numbers::pi / 4), 1e-12));
    CHECK(v.outcome == Outcome::Stable);
  }
  SECTION("sign pattern [+, -] is NotStable") {
    // Rotation of lambda^2 - 2 lambda + 1 (roots at +1) gives delta_1 > 0, delta_2 < 0.
    const StabilityVerdict v = generalized_rh_verdict(rotate_decompose(RealPolynomial({1, -1, 2}), 1.5));
    CHECK(v.values[0] < 0);
    const StabilityVerdict w = generalized_rh_verdict(rotate_decompose(RealPolynomial({1, 3, -1}), 1.5));
    CHECK(w.values[0] > 0);
    CHECK(w.values[1] < 0);
    CHECK(w.outcome == Outcome::NotStable);
  }
}
