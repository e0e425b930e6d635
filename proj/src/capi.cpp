#include "fracrh/fracrh.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "fracrh/closed_forms.hpp"
#include "fracrh/error.hpp"
#include "fracrh/oracles.hpp"
#include "fracrh/region.hpp"

using namespace fracrh;

struct frh_verdict {
  StabilityVerdict v;
};

struct frh_derivation {
  ReducedCondition conditions;
  std::vector<std::string> canonical;
  std::vector<std::string> display;
  std::vector<int> reference;
  std::string report;
};

struct frh_family {
  Family family;
};

struct frh_raster {
  RegionRaster raster;
};

struct frh_batch {
  BatchComparison batch;
};

namespace {

thread_local std::string last_error;

frh_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::InputError: return FRH_E_INPUT;
    case ErrorCode::DomainError: return FRH_E_DOMAIN;
    case ErrorCode::DegenerateLeadingCoefficient: return FRH_E_DEGENERATE_LEADING;
    case ErrorCode::ConvergenceFailure: return FRH_E_CONVERGENCE;
    case ErrorCode::DimensionMismatch: return FRH_E_DIMENSION;
    case ErrorCode::Unsupported: return FRH_E_UNSUPPORTED;
    case ErrorCode::NoBracket: return FRH_E_NO_BRACKET;
    case ErrorCode::ParseError: return FRH_E_PARSE;
    case ErrorCode::InternalError: return FRH_E_INTERNAL;
  }
  return FRH_E_INTERNAL;
}

frh_status set_error(frh_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

/// Runs body, translating exceptions into status codes.
template <class F>
frh_status guarded(F&& body) {
  try {
    body();
    return FRH_OK;
  } catch (const Error& e) {
    return set_error(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(FRH_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(FRH_E_INTERNAL, e.what());
  }
}

#define FRH_REQUIRE(ptr)                                                            \
  do {                                                                              \
    if ((ptr) == nullptr) return set_error(FRH_E_NULL_ARGUMENT, #ptr " is NULL"); \
  } while (0)

VerdictOptions options_of(const frh_options* o) {
  VerdictOptions v;
  if (o) {
    v.minor_tolerance = o->minor_tolerance;
    v.angle_tolerance = o->angle_tolerance;
    v.degeneracy_tolerance = o->degeneracy_tolerance;
  }
  return v;
}

SquareMatrix matrix_of(const double* data, std::size_t n) {
  if (n == 0) fail(ErrorCode::InputError, "matrix order must be >= 1");
  SquareMatrix m(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = data[r * n + c];
  require_finite(m);
  return m;
}

RealPolynomial polynomial_of(const double* coeffs, std::size_t degree) {
  return RealPolynomial(std::vector<double>(coeffs, coeffs + degree + 1));
}

std::vector<std::string> names_of(const char* const* names, std::size_t count) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count; ++i) {
    if (names[i] == nullptr) fail(ErrorCode::InputError, "parameter name is NULL");
    out.emplace_back(names[i]);
  }
  return out;
}

std::map<std::string, double> fixed_of(const frh_fixed* fixed, std::size_t count) {
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < count; ++i) {
    if (fixed[i].name == nullptr) fail(ErrorCode::InputError, "fixed parameter name is NULL");
    out[fixed[i].name] = fixed[i].value;
  }
  return out;
}

frh_status emit(frh_verdict** out, StabilityVerdict v) {
  *out = new frh_verdict{std::move(v)};
  return FRH_OK;
}

}  // namespace

extern "C" {

const char* frh_version(void) { return "0.1.0"; }

const char* frh_last_error(void) { return last_error.c_str(); }

const char* frh_status_name(frh_status status) {
  switch (status) {
    case FRH_OK: return "ok";
    case FRH_E_INPUT: return "input error";
    case FRH_E_DOMAIN: return "domain error";
    case FRH_E_DEGENERATE_LEADING: return "degenerate leading coefficient";
    case FRH_E_CONVERGENCE: return "convergence failure";
    case FRH_E_DIMENSION: return "dimension mismatch";
    case FRH_E_UNSUPPORTED: return "unsupported";
    case FRH_E_NO_BRACKET: return "no bracket";
    case FRH_E_PARSE: return "parse error";
    case FRH_E_INTERNAL: return "internal error";
    case FRH_E_NULL_ARGUMENT: return "null argument";
    case FRH_E_IO: return "i/o error";
  }
  return "unknown";
}

const char* frh_outcome_name(frh_outcome outcome) {
  return to_string(static_cast<Outcome>(outcome)).data();
}

const char* frh_method_name(frh_method method) { return to_string(static_cast<Method>(method)).data(); }

void frh_options_default(frh_options* options) {
  if (!options) return;
  const VerdictOptions d;
  options->minor_tolerance = d.minor_tolerance;
  options->angle_tolerance = d.angle_tolerance;
  options->degeneracy_tolerance = d.degeneracy_tolerance;
}

frh_status frh_parse_number(const char* text, double* out) {
  FRH_REQUIRE(text);
  FRH_REQUIRE(out);
  return guarded([&] { *out = parse_rational(text).get_d(); });
}

frh_status frh_char_poly(const double* matrix, size_t n, double* coeffs_out) {
  FRH_REQUIRE(matrix);
  FRH_REQUIRE(coeffs_out);
  return guarded([&] {
    const RealPolynomial p = char_poly(matrix_of(matrix, n));
    std::copy(p.coeffs().begin(), p.coeffs().end(), coeffs_out);
  });
}

frh_status frh_char_poly_exact(const char* const* entries, size_t n, char** coeffs_out) {
  FRH_REQUIRE(entries);
  FRH_REQUIRE(coeffs_out);
  return guarded([&] {
    if (n == 0) fail(ErrorCode::InputError, "matrix order must be >= 1");
    RationalMatrix m(n);
    for (std::size_t i = 0; i < n * n; ++i) {
      if (entries[i] == nullptr) fail(ErrorCode::InputError, "matrix entry is NULL");
      m(i / n, i % n) = parse_rational(entries[i]);
    }
    const RationalPolynomial p = char_poly_exact(m);
    std::vector<std::string> text;
    for (const auto& c : p.coeffs()) text.push_back(c.get_str());
    for (std::size_t i = 0; i < text.size(); ++i) coeffs_out[i] = strdup(text[i].c_str());
  });
}

void frh_string_free(char* text) { std::free(text); }

frh_status frh_check_matrix(const double* matrix, size_t n, double alpha, const frh_options* options,
                            frh_verdict** out) {
  FRH_REQUIRE(matrix);
  FRH_REQUIRE(out);
  return guarded([&] { emit(out, theorem1_verdict(char_poly(matrix_of(matrix, n)), alpha, options_of(options))); });
}

frh_status frh_check_polynomial(const double* coeffs, size_t degree, double alpha, const frh_options* options,
                                frh_verdict** out) {
  FRH_REQUIRE(coeffs);
  FRH_REQUIRE(out);
  return guarded([&] { emit(out, theorem1_verdict(polynomial_of(coeffs, degree), alpha, options_of(options))); });
}

frh_status frh_closed_form(const double* coeffs, size_t degree, double alpha, const frh_options* options,
                           frh_verdict** out) {
  FRH_REQUIRE(coeffs);
  FRH_REQUIRE(out);
  return guarded(
      [&] { emit(out, closed_form_verdict(polynomial_of(coeffs, degree), alpha, options_of(options))); });
}

frh_status frh_argument_oracle(const double* matrix, size_t n, double alpha, const frh_options* options,
                               frh_verdict** out) {
  FRH_REQUIRE(matrix);
  FRH_REQUIRE(out);
  return guarded([&] { emit(out, argument_oracle(matrix_of(matrix, n), alpha, options_of(options))); });
}

frh_status frh_tavazoei(const double* matrix, size_t n, double alpha, const frh_options* options,
                        frh_verdict** out) {
  FRH_REQUIRE(matrix);
  FRH_REQUIRE(out);
  return guarded([&] { emit(out, tavazoei_verdict(matrix_of(matrix, n), alpha, options_of(options))); });
}

frh_outcome frh_verdict_outcome(const frh_verdict* v) {
  return v ? static_cast<frh_outcome>(v->v.outcome) : FRH_NOT_STABLE;
}
frh_method frh_verdict_method(const frh_verdict* v) {
  return v ? static_cast<frh_method>(v->v.method) : FRH_METHOD_THEOREM1;
}
int frh_verdict_delegated(const frh_verdict* v) { return v && v->v.delegated ? 1 : 0; }
double frh_verdict_tolerance(const frh_verdict* v) { return v ? v->v.tolerance : 0.0; }
size_t frh_verdict_value_count(const frh_verdict* v) { return v ? v->v.values.size() : 0; }
double frh_verdict_value(const frh_verdict* v, size_t i) {
  return v && i < v->v.values.size() ? v->v.values[i] : 0.0;
}
double frh_verdict_scale(const frh_verdict* v, size_t i) {
  return v && i < v->v.scales.size() ? v->v.scales[i] : 0.0;
}
size_t frh_verdict_note_count(const frh_verdict* v) { return v ? v->v.notes.size() : 0; }
const char* frh_verdict_note(const frh_verdict* v, size_t i) {
  return v && i < v->v.notes.size() ? v->v.notes[i].c_str() : nullptr;
}
void frh_verdict_free(frh_verdict* v) { delete v; }

frh_status frh_derive(unsigned n, frh_derivation** out) {
  FRH_REQUIRE(out);
  return guarded([&] {
    auto d = std::make_unique<frh_derivation>();
    d->conditions = derive_reduced_conditions(n);
    const auto reference = reference_conditions(n);
    for (std::size_t p = 0; p < d->conditions.polys.size(); ++p) {
      const SymbolicPoly& poly = d->conditions.polys[p];
      d->canonical.push_back(poly.to_string());
      d->display.push_back(display_condition(poly, n));
      if (p < reference.size()) {
        const ConditionComparison cmp = compare_conditions(poly, reference[p]);
        d->reference.push_back(!cmp.match ? 0 : cmp.sign_flipped ? 2 : 1);
      } else {
        d->reference.push_back(-1);
      }
    }
    d->report = format_derivation(d->conditions);
    *out = d.release();
  });
}

size_t frh_derivation_count(const frh_derivation* d) { return d ? d->canonical.size() : 0; }
const char* frh_derivation_condition(const frh_derivation* d, size_t p) {
  return d && p < d->canonical.size() ? d->canonical[p].c_str() : nullptr;
}
const char* frh_derivation_display(const frh_derivation* d, size_t p) {
  return d && p < d->display.size() ? d->display[p].c_str() : nullptr;
}
unsigned frh_derivation_sin_power(const frh_derivation* d, size_t p) {
  return d && p < d->conditions.sin_power_removed.size() ? d->conditions.sin_power_removed[p] : 0;
}
size_t frh_derivation_monomials(const frh_derivation* d, size_t p) {
  return d && p < d->conditions.polys.size() ? d->conditions.polys[p].term_count() : 0;
}
int frh_derivation_reference(const frh_derivation* d, size_t p) {
  return d && p < d->reference.size() ? d->reference[p] : -1;
}
const char* frh_derivation_report(const frh_derivation* d) { return d ? d->report.c_str() : nullptr; }
void frh_derivation_free(frh_derivation* d) { delete d; }

frh_status frh_family_create_matrix(const char* const* parameters, size_t parameter_count, size_t order,
                                    frh_family** out) {
  FRH_REQUIRE(out);
  if (parameter_count > 0) FRH_REQUIRE(parameters);
  return guarded([&] {
    *out = new frh_family{Family(ParamSystem(names_of(parameters, parameter_count), order))};
  });
}

frh_status frh_family_add_term(frh_family* family, const char* coefficient, const double* matrix) {
  FRH_REQUIRE(family);
  FRH_REQUIRE(coefficient);
  FRH_REQUIRE(matrix);
  auto* system = std::get_if<ParamSystem>(&family->family);
  if (!system) return set_error(FRH_E_INPUT, "terms can only be added to a matrix family");
  return guarded([&] { system->add_term(coefficient, matrix_of(matrix, system->order())); });
}

frh_status frh_family_create_polynomial(const char* const* parameters, size_t parameter_count,
                                        const char* const* coefficients, size_t degree, frh_family** out) {
  FRH_REQUIRE(out);
  FRH_REQUIRE(coefficients);
  if (parameter_count > 0) FRH_REQUIRE(parameters);
  return guarded([&] {
    std::vector<std::string> coeffs;
    for (std::size_t i = 0; i < degree; ++i) {
      if (coefficients[i] == nullptr) fail(ErrorCode::InputError, "coefficient expression is NULL");
      coeffs.emplace_back(coefficients[i]);
    }
    *out = new frh_family{Family(PolySystem(names_of(parameters, parameter_count), coeffs))};
  });
}

size_t frh_family_degree(const frh_family* family) { return family ? family_degree(family->family) : 0; }
size_t frh_family_parameter_count(const frh_family* family) {
  return family ? family_parameters(family->family).size() : 0;
}
const char* frh_family_parameter(const frh_family* family, size_t i) {
  if (!family) return nullptr;
  const auto& params = family_parameters(family->family);
  return i < params.size() ? params[i].c_str() : nullptr;
}

frh_status frh_family_polynomial(const frh_family* family, const double* point, double alpha,
                                 double* coeffs_out) {
  FRH_REQUIRE(family);
  FRH_REQUIRE(coeffs_out);
  const std::size_t count = family_parameters(family->family).size();
  if (count > 0) FRH_REQUIRE(point);
  return guarded([&] {
    const RealPolynomial p = family_polynomial(family->family, std::span<const double>(point, count), alpha);
    std::copy(p.coeffs().begin(), p.coeffs().end(), coeffs_out);
  });
}

void frh_family_free(frh_family* family) { delete family; }

frh_status frh_scan_region(const frh_family* family, const frh_scan_spec* spec, frh_raster** out) {
  FRH_REQUIRE(family);
  FRH_REQUIRE(spec);
  FRH_REQUIRE(out);
  if (spec->axis_count > 0) FRH_REQUIRE(spec->axes);
  if (spec->fixed_count > 0) FRH_REQUIRE(spec->fixed);
  return guarded([&] {
    ScanSpec s;
    for (std::size_t i = 0; i < spec->axis_count; ++i) {
      const frh_axis& a = spec->axes[i];
      if (a.name == nullptr) fail(ErrorCode::InputError, "axis name is NULL");
      s.axes.push_back({a.name, a.lo, a.hi, a.count});
    }
    s.fixed = fixed_of(spec->fixed, spec->fixed_count);
    s.alpha = spec->alpha;
    s.options = options_of(spec->options);
    s.method = static_cast<ScanMethod>(spec->method);
    s.degenerate = static_cast<DegeneratePolicy>(spec->degenerate);
    s.workers = spec->workers;
    *out = new frh_raster{scan_region(family->family, s)};
  });
}

size_t frh_raster_axis_count(const frh_raster* r) { return r ? r->raster.axes.size() : 0; }

frh_status frh_raster_axis(const frh_raster* r, size_t i, frh_axis* out) {
  FRH_REQUIRE(r);
  FRH_REQUIRE(out);
  if (i >= r->raster.axes.size()) return set_error(FRH_E_INPUT, "axis index out of range");
  const Axis& a = r->raster.axes[i];
  *out = frh_axis{a.name.c_str(), a.lo, a.hi, a.count};
  return FRH_OK;
}

size_t frh_raster_cell_count(const frh_raster* r) { return r ? r->raster.cells.size() : 0; }
const uint8_t* frh_raster_cells(const frh_raster* r) { return r ? r->raster.cells.data() : nullptr; }
size_t frh_raster_count(const frh_raster* r, int code) {
  if (!r || code < 0 || code > 3) return 0;
  return r->raster.count(static_cast<CellCode>(code));
}
double frh_raster_stable_fraction(const frh_raster* r) { return r ? r->raster.stable_fraction() : 0.0; }

int frh_raster_stable_box(const frh_raster* r, size_t axis, double* lo, double* hi) {
  if (!r || !lo || !hi) return 0;
  const auto box = r->raster.stable_bounding_box();
  if (axis >= box.size()) return 0;
  *lo = box[axis].first;
  *hi = box[axis].second;
  return 1;
}

frh_status frh_raster_write_csv(const frh_raster* r, const char* path) {
  FRH_REQUIRE(r);
  FRH_REQUIRE(path);
  std::ofstream out(path);
  if (!out) return set_error(FRH_E_IO, std::string("cannot open ") + path);
  const frh_status status = guarded([&] { write_csv(r->raster, out); });
  if (status == FRH_OK && !out.flush()) return set_error(FRH_E_IO, std::string("write failed: ") + path);
  return status;
}

frh_status frh_raster_write_pgm(const frh_raster* r, const char* path) {
  FRH_REQUIRE(r);
  FRH_REQUIRE(path);
  if (r->raster.axes.size() != 2) return set_error(FRH_E_UNSUPPORTED, "PGM output needs a 2-D raster");
  std::ofstream out(path, std::ios::binary);
  if (!out) return set_error(FRH_E_IO, std::string("cannot open ") + path);
  const frh_status status = guarded([&] { write_pgm(r->raster, out); });
  if (status == FRH_OK && !out.flush()) return set_error(FRH_E_IO, std::string("write failed: ") + path);
  return status;
}

void frh_raster_free(frh_raster* r) { delete r; }

void frh_bisect_spec_default(frh_bisect_spec* spec) {
  if (!spec) return;
  const BisectSpec d;
  *spec = frh_bisect_spec{nullptr, d.scan_max, nullptr, d.constraint_lo, d.constraint_hi, d.samples,
                          d.coarse_steps, d.tolerance, nullptr, 0, d.alpha, nullptr};
}

frh_status frh_max_param_bisect(const frh_family* family, const frh_bisect_spec* spec, frh_bisect_result* out) {
  FRH_REQUIRE(family);
  FRH_REQUIRE(spec);
  FRH_REQUIRE(out);
  FRH_REQUIRE(spec->scan_parameter);
  if (spec->fixed_count > 0) FRH_REQUIRE(spec->fixed);
  return guarded([&] {
    BisectSpec b;
    b.scan_parameter = spec->scan_parameter;
    b.scan_max = spec->scan_max;
    if (spec->constraint_parameter) b.constraint_parameter = spec->constraint_parameter;
    b.constraint_lo = spec->constraint_lo;
    b.constraint_hi = spec->constraint_hi;
    b.samples = spec->samples;
    b.coarse_steps = spec->coarse_steps;
    b.tolerance = spec->tolerance;
    b.fixed = fixed_of(spec->fixed, spec->fixed_count);
    b.alpha = spec->alpha;
    b.options = options_of(spec->options);
    const BisectResult r = max_param_bisect(family->family, b);
    *out = frh_bisect_result{r.bound, r.critical_constraint, r.saturated ? 1 : 0, r.certified ? 1 : 0,
                             r.evaluations};
  });
}

frh_status frh_compare_oracles(const double* matrix, size_t n, double alpha, const frh_options* options,
                               double exclusion_radius, frh_comparison* out) {
  FRH_REQUIRE(matrix);
  FRH_REQUIRE(out);
  return guarded([&] {
    const OracleComparison c = compare_oracles(matrix_of(matrix, n), alpha, options_of(options), exclusion_radius);
    *out = frh_comparison{static_cast<frh_outcome>(c.theorem1.outcome),
                          static_cast<frh_outcome>(c.argument.outcome),
                          static_cast<frh_outcome>(c.tavazoei.outcome),
                          c.theorem1.values.size(),
                          c.tavazoei.values.size(),
                          c.theorem1.delegated ? 1 : 0,
                          c.critical_distance,
                          c.decidable ? 1 : 0,
                          c.agree ? 1 : 0};
  });
}

frh_status frh_compare_oracles_random(size_t order, size_t count, double alpha, uint64_t seed,
                                      const frh_options* options, double exclusion_radius, frh_batch** out) {
  FRH_REQUIRE(out);
  return guarded([&] {
    *out = new frh_batch{compare_oracles_random(order, count, alpha, seed, options_of(options), exclusion_radius)};
  });
}

size_t frh_batch_cases(const frh_batch* b) { return b ? b->batch.cases : 0; }
size_t frh_batch_compared(const frh_batch* b) { return b ? b->batch.compared : 0; }
size_t frh_batch_excluded(const frh_batch* b) { return b ? b->batch.excluded : 0; }
size_t frh_batch_delegated(const frh_batch* b) { return b ? b->batch.delegated : 0; }
size_t frh_batch_stable(const frh_batch* b) { return b ? b->batch.stable : 0; }
size_t frh_batch_not_stable(const frh_batch* b) { return b ? b->batch.not_stable : 0; }
size_t frh_batch_disagreement_count(const frh_batch* b) { return b ? b->batch.disagreements.size() : 0; }
size_t frh_batch_disagreement(const frh_batch* b, size_t i) {
  return b && i < b->batch.disagreements.size() ? b->batch.disagreements[i] : 0;
}
void frh_batch_free(frh_batch* b) { delete b; }

}  // extern "C"
