#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>

#include "fracrh/fracrh.h"

using Catch::Matchers::WithinAbs;

TEST_CASE("C API: status and names", "[capi]") {
  CHECK(std::strlen(frh_version()) > 0);
  CHECK(std::string(frh_status_name(FRH_E_NO_BRACKET)) == "no bracket");
  CHECK(std::string(frh_outcome_name(FRH_BOUNDARY)) == "Boundary");
  CHECK(std::string(frh_method_name(FRH_METHOD_TAVAZOEI_EMBED)) == "TavazoeiEmbed");
  frh_options o;
  frh_options_default(&o);
  CHECK(o.minor_tolerance == 1e-9);
  CHECK(o.degeneracy_tolerance == 1e-12);

  double v = 0;
  CHECK(frh_parse_number("-3/4", &v) == FRH_OK);
  CHECK(v == -0.75);
  CHECK(frh_parse_number("x", &v) == FRH_E_PARSE);
  CHECK(std::strlen(frh_last_error()) > 0);
  CHECK(frh_parse_number(nullptr, &v) == FRH_E_NULL_ARGUMENT);
}

TEST_CASE("C API: polynomials", "[capi]") {
  const double a[] = {-1, 3, 0, -1};
  double c[3];
  REQUIRE(frh_char_poly(a, 2, c) == FRH_OK);
  CHECK(c[0] == 1.0);
  CHECK_THAT(c[1], WithinAbs(2, 1e-14));
  CHECK_THAT(c[2], WithinAbs(1, 1e-14));

  const char* exact[] = {"1/2", "1", "0", "1/3"};
  char* out[3] = {};
  REQUIRE(frh_char_poly_exact(exact, 2, out) == FRH_OK);
  CHECK(std::string(out[1]) == "-5/6");
  CHECK(std::string(out[2]) == "1/6");
  for (char* s : out) frh_string_free(s);
}

TEST_CASE("C API: verdicts", "[capi]") {
  const double a[] = {-1, 0, 0, -1};
  frh_verdict* v = nullptr;
  REQUIRE(frh_check_matrix(a, 2, 1.5, nullptr, &v) == FRH_OK);
  CHECK(frh_verdict_outcome(v) == FRH_STABLE);
  CHECK(frh_verdict_method(v) == FRH_METHOD_THEOREM1);
  CHECK(frh_verdict_value_count(v) == 2);
  CHECK(frh_verdict_delegated(v) == 0);
  CHECK(frh_verdict_scale(v, 0) > 0);
  frh_verdict_free(v);

  // Degree 2 at α = 1 is degenerate and handed to the argument oracle.
  const double rot[] = {0, 1, -1, 0};
  REQUIRE(frh_check_matrix(rot, 2, 1.0, nullptr, &v) == FRH_OK);
  CHECK(frh_verdict_delegated(v) == 1);
  CHECK(frh_verdict_outcome(v) == FRH_BOUNDARY);
  CHECK(frh_verdict_note_count(v) >= 1);
  frh_verdict_free(v);

  const double f[] = {1, 2, 1};
  REQUIRE(frh_closed_form(f, 2, 1.5, nullptr, &v) == FRH_OK);
  CHECK(frh_verdict_method(v) == FRH_METHOD_CLOSED_FORM);
  CHECK_THAT(frh_verdict_value(v, 1), WithinAbs(2, 1e-14));
  frh_verdict_free(v);
  CHECK(frh_closed_form(f, 1, 1.5, nullptr, &v) == FRH_E_UNSUPPORTED);

  REQUIRE(frh_tavazoei(a, 2, 1.5, nullptr, &v) == FRH_OK);
  CHECK(frh_verdict_value_count(v) == 4);
  frh_verdict_free(v);
  REQUIRE(frh_argument_oracle(a, 2, 1.5, nullptr, &v) == FRH_OK);
  CHECK(frh_verdict_outcome(v) == FRH_STABLE);
  frh_verdict_free(v);

  CHECK(frh_check_polynomial(f, 2, 2.5, nullptr, &v) == FRH_E_DOMAIN);
  CHECK(frh_check_matrix(nullptr, 2, 1.5, nullptr, &v) == FRH_E_NULL_ARGUMENT);
  frh_verdict_free(nullptr);
}

TEST_CASE("C API: derivation", "[capi]") {
  frh_derivation* d = nullptr;
  REQUIRE(frh_derive(3, &d) == FRH_OK);
  CHECK(frh_derivation_count(d) == 3);
  CHECK(frh_derivation_reference(d, 0) == 1);
  CHECK(frh_derivation_reference(d, 2) == 2);
  CHECK(frh_derivation_sin_power(d, 2) == 3);
  CHECK(frh_derivation_monomials(d, 2) == 10);
  CHECK(std::string(frh_derivation_condition(d, 0)) == "a_1");
  CHECK(std::string(frh_derivation_report(d)).find("3 of 3 match") != std::string::npos);
  frh_derivation_free(d);
  REQUIRE(frh_derive(5, &d) == FRH_OK);
  CHECK(frh_derivation_reference(d, 0) == -1);
  frh_derivation_free(d);
  CHECK(frh_derive(9, &d) == FRH_E_UNSUPPORTED);
}

TEST_CASE("C API: family scan and bisection", "[capi]") {
  const char* params[] = {"beta1", "beta2"};
  frh_family* fam = nullptr;
  REQUIRE(frh_family_create_matrix(params, 2, 2, &fam) == FRH_OK);
  const double a0[] = {-1, 3, 0, -1}, a1[] = {-1, 0, 1, -1}, a2[] = {-1, 1, 0, 0};
  REQUIRE(frh_family_add_term(fam, "1", a0) == FRH_OK);
  REQUIRE(frh_family_add_term(fam, "beta1", a1) == FRH_OK);
  REQUIRE(frh_family_add_term(fam, "beta2", a2) == FRH_OK);
  CHECK(frh_family_add_term(fam, "gamma", a2) == FRH_E_PARSE);
  CHECK(frh_family_degree(fam) == 2);
  CHECK(frh_family_parameter_count(fam) == 2);
  CHECK(std::string(frh_family_parameter(fam, 1)) == "beta2");

  const double point[] = {0.5, -1};
  double c[3];
  REQUIRE(frh_family_polynomial(fam, point, 1.5, c) == FRH_OK);
  CHECK_THAT(c[1], WithinAbs(2, 1e-14));

  const frh_axis axes[] = {{"beta1", -3, 3, 31}, {"beta2", -3, 3, 31}};
  frh_scan_spec spec{axes, 2, nullptr, 0, 1.5, nullptr, FRH_SCAN_AUTO, FRH_DEGENERATE_MARK, 2};
  frh_raster* r = nullptr;
  REQUIRE(frh_scan_region(fam, &spec, &r) == FRH_OK);
  CHECK(frh_raster_axis_count(r) == 2);
  frh_axis ax;
  REQUIRE(frh_raster_axis(r, 1, &ax) == FRH_OK);
  CHECK(std::string(ax.name) == "beta2");
  CHECK(ax.count == 31);
  CHECK(frh_raster_cell_count(r) == 961);
  CHECK(frh_raster_count(r, FRH_CELL_STABLE) + frh_raster_count(r, FRH_CELL_NOT_STABLE) +
            frh_raster_count(r, FRH_CELL_BOUNDARY) ==
        961);
  CHECK(frh_raster_stable_fraction(r) > 0.3);
  double lo = 0, hi = 0;
  CHECK(frh_raster_stable_box(r, 0, &lo, &hi) == 1);
  CHECK(lo < hi);
  const std::string csv = std::string(FRACRH_TEST_TMP) + "/capi_scan.csv";
  CHECK(frh_raster_write_csv(r, csv.c_str()) == FRH_OK);
  CHECK(frh_raster_write_pgm(r, "/nonexistent-dir/x.pgm") == FRH_E_IO);
  std::remove(csv.c_str());
  frh_raster_free(r);

  frh_bisect_spec b;
  frh_bisect_spec_default(&b);
  const frh_fixed fixed[] = {{"beta2", 0}};
  b.scan_parameter = "beta1";
  b.scan_max = 3;
  b.fixed = fixed;
  b.fixed_count = 1;
  b.alpha = 1.5;
  frh_bisect_result res;
  REQUIRE(frh_max_param_bisect(fam, &b, &res) == FRH_OK);
  CHECK(res.saturated == 1);
  CHECK(res.bound == 3.0);
  frh_family_free(fam);

  const char* coeffs[] = {"beta - alpha", "2*beta", "4"};
  const char* bp[] = {"beta"};
  REQUIRE(frh_family_create_polynomial(bp, 1, coeffs, 3, &fam) == FRH_OK);
  CHECK(frh_family_degree(fam) == 3);
  frh_family_free(fam);
}

TEST_CASE("C API: oracle comparison", "[capi]") {
  const double a[] = {-1, 0, 0, -1};
  frh_comparison c;
  REQUIRE(frh_compare_oracles(a, 2, 1.5, nullptr, 1e-6, &c) == FRH_OK);
  CHECK(c.agree == 1);
  CHECK(c.decidable == 1);
  CHECK(c.theorem1_minors == 2);
  CHECK(c.tavazoei_minors == 4);

  frh_batch* batch = nullptr;
  REQUIRE(frh_compare_oracles_random(3, 50, 1.5, 42, nullptr, 1e-6, &batch) == FRH_OK);
  CHECK(frh_batch_cases(batch) == 50);
  CHECK(frh_batch_compared(batch) + frh_batch_excluded(batch) == 50);
  CHECK(frh_batch_stable(batch) + frh_batch_not_stable(batch) == frh_batch_compared(batch));
  CHECK(frh_batch_disagreement_count(batch) == 0);
  frh_batch_free(batch);
}
