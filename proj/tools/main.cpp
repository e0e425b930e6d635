// fracrh command-line frontend: check | region | derive | oracle-compare.
// Talks to the library only through the C API in fracrh/fracrh.h.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fracrh/fracrh.h"
#include "jobspec.hpp"

namespace fs = std::filesystem;
using namespace fracrh::cli;

namespace {

constexpr int kExitStable = 0;
constexpr int kExitNotStable = 1;
constexpr int kExitBoundary = 2;
constexpr int kExitUsage = 64;
constexpr int kExitLibrary = 65;
constexpr int kExitIo = 74;

/// Library failure, carried to main() for the exit code.
struct LibraryError {
  frh_status status;
  std::string message;
};

void check(frh_status status, const std::string& context) {
  if (status != FRH_OK) {
    throw LibraryError{status, context + ": " + frh_status_name(status) + ": " + frh_last_error()};
  }
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Verdict = std::unique_ptr<frh_verdict, Deleter<frh_verdict, frh_verdict_free>>;
using FamilyHandle = std::unique_ptr<frh_family, Deleter<frh_family, frh_family_free>>;
using Raster = std::unique_ptr<frh_raster, Deleter<frh_raster, frh_raster_free>>;
using Derivation = std::unique_ptr<frh_derivation, Deleter<frh_derivation, frh_derivation_free>>;
using Batch = std::unique_ptr<frh_batch, Deleter<frh_batch, frh_batch_free>>;

std::string num(double v) {
  std::ostringstream out;
  out << std::setprecision(12) << v;
  return out.str();
}

/// Command-line values that override the job file.
struct Overrides {
  std::string input;
  std::string matrix;
  std::optional<double> alpha;
  std::optional<double> tol;
  std::optional<unsigned> workers;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> format;
  bool plot_script = false;
  std::optional<std::size_t> order;
  std::optional<std::size_t> random;
  std::optional<unsigned> n;
};

frh_options options_of(const JobSpec& spec) {
  frh_options o;
  frh_options_default(&o);
  if (spec.tolerances.minor) o.minor_tolerance = *spec.tolerances.minor;
  if (spec.tolerances.angle) o.angle_tolerance = *spec.tolerances.angle;
  if (spec.tolerances.degeneracy) o.degeneracy_tolerance = *spec.tolerances.degeneracy;
  return o;
}

std::vector<double> matrix_values(const MatrixText& m, const std::string& field) {
  std::vector<double> out;
  for (std::size_t r = 0; r < m.size(); ++r) {
    for (std::size_t c = 0; c < m[r].size(); ++c) {
      double v = 0.0;
      if (frh_parse_number(m[r][c].c_str(), &v) != FRH_OK) {
        throw SpecError(field + "[" + std::to_string(r) + "][" + std::to_string(c) + "]",
                        "cannot parse '" + m[r][c] + "'");
      }
      out.push_back(v);
    }
  }
  return out;
}

std::vector<const char*> c_strings(const std::vector<std::string>& v) {
  std::vector<const char*> out;
  for (const auto& s : v) out.push_back(s.c_str());
  return out;
}

FamilyHandle make_family(const SystemSpec& system) {
  frh_family* raw = nullptr;
  if (const auto* f = std::get_if<FamilySystem>(&system)) {
    const auto params = c_strings(f->parameters);
    const std::size_t order = f->terms.front().matrix.size();
    check(frh_family_create_matrix(params.data(), params.size(), order, &raw), "system.family");
    FamilyHandle family(raw);
    for (std::size_t k = 0; k < f->terms.size(); ++k) {
      const std::string field = "system.family.terms[" + std::to_string(k) + "]";
      const auto m = matrix_values(f->terms[k].matrix, field + ".matrix");
      const frh_status st = frh_family_add_term(family.get(), f->terms[k].coefficient.c_str(), m.data());
      if (st != FRH_OK) throw SpecError(field, frh_last_error());
    }
    return family;
  }
  if (const auto* p = std::get_if<PolynomialSystem>(&system)) {
    const auto params = c_strings(p->parameters);
    const auto coeffs = c_strings(p->coefficients);
    const frh_status st = frh_family_create_polynomial(params.data(), params.size(), coeffs.data(), coeffs.size(), &raw);
    if (st != FRH_OK) throw SpecError("system.polynomial", frh_last_error());
    return FamilyHandle(raw);
  }
  throw SpecError("system", "expected a family or polynomial system");
}

std::vector<frh_fixed> fixed_values(const JobSpec& spec) {
  std::vector<frh_fixed> out;
  for (const auto& [name, value] : spec.fixed) out.push_back({name.c_str(), value});
  return out;
}

void apply_common(JobSpec& spec, const Overrides& o) {
  if (o.alpha) {
    if (!(*o.alpha >= 1.0 && *o.alpha < 2.0)) throw SpecError("--alpha", "alpha must lie in [1, 2)");
    spec.alpha = *o.alpha;
  }
  if (o.tol) {
    if (!(*o.tol > 0.0)) throw SpecError("--tol", "must be positive");
    spec.tolerances.minor = *o.tol;
  }
  if (o.workers) spec.workers = *o.workers;
}

JobSpec load_or_build(JobKind kind, const Overrides& o) {
  JobSpec spec;
  if (!o.input.empty()) {
    if (!std::ifstream(o.input)) throw LibraryError{FRH_E_IO, "cannot open '" + o.input + "'"};
    spec = load_job(o.input);
    if (spec.kind != kind) {
      throw SpecError("kind", "job file is '" + to_string(spec.kind) + "', command is '" + to_string(kind) + "'");
    }
  } else {
    spec.kind = kind;
  }
  if (!o.matrix.empty()) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(o.matrix);
    } catch (const nlohmann::json::parse_error&) {
      throw SpecError("--matrix", "expected a JSON array of rows");
    }
    nlohmann::json job = o.input.empty() ? nlohmann::json{{"kind", to_string(kind)}} : to_json(spec);
    job["system"] = {{"matrix", j}};
    if (o.alpha) job["alpha"] = *o.alpha;
    try {
      spec = parse_job(job);
    } catch (const SpecError& e) {
      // Only system problems are attributable to --matrix.
      if (e.field().rfind("system", 0) == 0) throw SpecError("--matrix", e.what());
      throw;
    }
  }
  apply_common(spec, o);
  return spec;
}

// ---- check ----

int run_check(const Overrides& o) {
  JobSpec spec = load_or_build(JobKind::Check, o);
  if (!spec.system) throw SpecError("system", "check needs a system (--input or --matrix)");
  if (!spec.alpha) throw SpecError("alpha", "check needs alpha (job file or --alpha)");
  const double alpha = *spec.alpha;
  const frh_options opts = options_of(spec);

  std::vector<double> coeffs;
  if (const auto* m = std::get_if<MatrixSystem>(&*spec.system)) {
    const auto a = matrix_values(m->matrix, "system.matrix");
    coeffs.resize(m->matrix.size() + 1);
    check(frh_char_poly(a.data(), m->matrix.size(), coeffs.data()), "char_poly");
  } else {
    const FamilyHandle family = make_family(*spec.system);
    std::vector<double> point;
    for (std::size_t i = 0; i < frh_family_parameter_count(family.get()); ++i) {
      const std::string name = frh_family_parameter(family.get(), i);
      const auto it = spec.fixed.find(name);
      if (it == spec.fixed.end()) throw SpecError("fixed." + name, "check needs a value for every parameter");
      point.push_back(it->second);
    }
    coeffs.resize(frh_family_degree(family.get()) + 1);
    check(frh_family_polynomial(family.get(), point.data(), alpha, coeffs.data()), "instantiate");
  }
  const std::size_t n = coeffs.size() - 1;

  frh_verdict* raw = nullptr;
  check(frh_check_polynomial(coeffs.data(), n, alpha, &opts, &raw), "theorem1");
  const Verdict verdict(raw);

  std::cout << "alpha: " << num(alpha) << "\n";
  std::cout << "coefficients:";
  for (double c : coeffs) std::cout << " " << num(c);
  std::cout << "\n";
  const bool delegated = frh_verdict_delegated(verdict.get()) != 0;
  const std::string label = delegated ? "margin_" : "nabla_";
  for (std::size_t i = 0; i < frh_verdict_value_count(verdict.get()); ++i) {
    std::cout << label << i + 1 << ": " << num(frh_verdict_value(verdict.get(), i)) << "\n";
  }
  for (std::size_t i = 0; i < frh_verdict_note_count(verdict.get()); ++i) {
    std::cout << "note: " << frh_verdict_note(verdict.get(), i) << "\n";
  }
  if (n >= 2 && n <= 4 && !delegated) {
    frh_verdict* cf = nullptr;
    check(frh_closed_form(coeffs.data(), n, alpha, &opts, &cf), "closed form");
    const Verdict closed(cf);
    for (std::size_t i = 0; i < frh_verdict_value_count(closed.get()); ++i) {
      std::cout << "closed_form_" << i + 1 << ": " << num(frh_verdict_value(closed.get(), i)) << "\n";
    }
  }
  const frh_outcome outcome = frh_verdict_outcome(verdict.get());
  std::cout << "method: " << frh_method_name(frh_verdict_method(verdict.get())) << "\n";
  if (delegated) std::cout << "degenerate: yes (decided by the argument oracle)\n";
  std::cout << "outcome: " << frh_outcome_name(outcome) << "\n";
  switch (outcome) {
    case FRH_STABLE: return kExitStable;
    case FRH_NOT_STABLE: return kExitNotStable;
    case FRH_BOUNDARY: return kExitBoundary;
  }
  return kExitBoundary;
}

// ---- region ----

void write_plot_script(const fs::path& path, const std::string& csv_name, const std::vector<frh_axis>& axes) {
  std::ofstream out(path);
  if (!out) throw LibraryError{FRH_E_IO, "cannot write " + path.string()};
  out << "# gnuplot script; codes: 0 NotStable, 1 Stable, 2 Boundary, 3 Degenerate\n"
      << "set datafile separator ','\n"
      << "set palette defined (0 'white', 1 'steelblue', 2 'black', 3 'red')\n"
      << "set cbrange [0:3]\n"
      << "unset key\n";
  if (axes.size() == 1) {
    out << "set xlabel '" << axes[0].name << "'\nset ylabel 'code'\n"
        << "plot '" << csv_name << "' every ::1 using 1:2 with steps\n";
  } else if (axes.size() == 2) {
    out << "set xlabel '" << axes[0].name << "'\nset ylabel '" << axes[1].name << "'\n"
        << "plot '" << csv_name << "' every ::1 using 1:2:3 with points pt 5 ps 0.4 lc palette\n";
  } else {
    out << "set xlabel '" << axes[0].name << "'\nset ylabel '" << axes[1].name << "'\nset zlabel '"
        << axes[2].name << "'\n"
        << "splot '" << csv_name << "' every ::1 using 1:2:3:4 with points pt 5 ps 0.4 lc palette\n";
  }
}

void run_bisect(const frh_family* family, const JobSpec& spec, const frh_options& opts) {
  const BisectJob& job = *spec.bisect;
  frh_bisect_spec b;
  frh_bisect_spec_default(&b);
  b.scan_parameter = job.parameter.c_str();
  b.scan_max = job.max;
  if (job.constraint) {
    b.constraint_parameter = job.constraint->name.c_str();
    b.constraint_lo = job.constraint->lo;
    b.constraint_hi = job.constraint->hi;
    b.samples = job.constraint->count;
  }
  b.coarse_steps = job.coarse_steps;
  b.tolerance = job.tolerance;
  const auto fixed = fixed_values(spec);
  b.fixed = fixed.data();
  b.fixed_count = fixed.size();
  if (!spec.alpha) throw SpecError("alpha", "bisection needs a fixed alpha");
  b.alpha = *spec.alpha;
  b.options = &opts;
  frh_bisect_result r;
  check(frh_max_param_bisect(family, &b, &r), "bisect");
  std::cout << "bisect " << job.parameter << ": " << num(r.bound) << "\n";
  if (job.constraint) std::cout << "bisect critical " << job.constraint->name << ": " << num(r.critical_constraint) << "\n";
  std::cout << "bisect saturated: " << (r.saturated ? "yes" : "no") << "\n";
  std::cout << "bisect certified: " << (r.certified ? "yes" : "no") << "\n";
  std::cout << "bisect evaluations: " << r.evaluations << "\n";
}

int run_region(const Overrides& o) {
  JobSpec spec = load_or_build(JobKind::Region, o);
  if (!spec.system) throw SpecError("system", "region needs a job file with a family or polynomial system");
  if (spec.box.size() > 3) throw SpecError("box", "at most 3 axes are supported");
  Outputs outputs = spec.outputs.value_or(Outputs{});
  if (!spec.outputs && !o.input.empty()) outputs.stem = fs::path(o.input).stem().string();
  if (o.out) outputs.dir = *o.out;
  if (o.format) outputs.format = *o.format;
  if (o.plot_script) outputs.plot_script = true;

  const FamilyHandle family = make_family(*spec.system);
  const frh_options opts = options_of(spec);

  if (!spec.box.empty()) {
    bool alpha_axis = false;
    std::vector<frh_axis> axes;
    for (const auto& a : spec.box) {
      axes.push_back({a.name.c_str(), a.lo, a.hi, a.count});
      alpha_axis = alpha_axis || a.name == "alpha";
    }
    if (!alpha_axis && !spec.alpha) throw SpecError("alpha", "give a fixed alpha or an axis named alpha");
    const auto fixed = fixed_values(spec);
    frh_scan_spec s{axes.data(),
                    axes.size(),
                    fixed.data(),
                    fixed.size(),
                    spec.alpha.value_or(1.5),
                    &opts,
                    spec.method == "theorem1"      ? FRH_SCAN_THEOREM1
                    : spec.method == "closed-form" ? FRH_SCAN_CLOSED_FORM
                                                   : FRH_SCAN_AUTO,
                    spec.degenerate == "delegate" ? FRH_DEGENERATE_DELEGATE : FRH_DEGENERATE_MARK,
                    spec.workers.value_or(0)};
    frh_raster* raw = nullptr;
    check(frh_scan_region(family.get(), &s, &raw), "scan");
    const Raster raster(raw);

    std::error_code ec;
    fs::create_directories(outputs.dir, ec);
    if (ec) throw LibraryError{FRH_E_IO, "cannot create " + outputs.dir + ": " + ec.message()};
    const fs::path dir(outputs.dir);
    const fs::path csv = dir / (outputs.stem + ".csv");
    const bool want_csv = outputs.format != "pgm" || outputs.plot_script;
    if (want_csv) {
      check(frh_raster_write_csv(raster.get(), csv.c_str()), "write csv");
      std::cout << "wrote " << csv.string() << "\n";
    }
    if (outputs.format != "csv") {
      if (axes.size() == 2) {
        const fs::path pgm = dir / (outputs.stem + ".pgm");
        check(frh_raster_write_pgm(raster.get(), pgm.c_str()), "write pgm");
        std::cout << "wrote " << pgm.string() << "\n";
      } else {
        std::cerr << "note: PGM output needs exactly 2 axes; skipped\n";
      }
    }
    if (outputs.plot_script) {
      const fs::path gp = dir / (outputs.stem + ".gp");
      write_plot_script(gp, csv.filename().string(), axes);
      std::cout << "wrote " << gp.string() << "\n";
    }

    const std::size_t cells = frh_raster_cell_count(raster.get());
    std::cout << "cells: " << cells << "\n";
    std::cout << "stable: " << frh_raster_count(raster.get(), FRH_CELL_STABLE) << "\n";
    std::cout << "not_stable: " << frh_raster_count(raster.get(), FRH_CELL_NOT_STABLE) << "\n";
    std::cout << "boundary: " << frh_raster_count(raster.get(), FRH_CELL_BOUNDARY) << "\n";
    std::cout << "degenerate: " << frh_raster_count(raster.get(), FRH_CELL_DEGENERATE) << "\n";
    const double fraction = frh_raster_stable_fraction(raster.get());
    std::cout << "stable_fraction: " << std::fixed << std::setprecision(6) << fraction << std::defaultfloat << "\n";
    if (fraction == 0.0) {
      std::cerr << "warning: no stable cells in the scanned box\n";
    } else {
      for (std::size_t i = 0; i < axes.size(); ++i) {
        double lo = 0.0, hi = 0.0;
        frh_raster_stable_box(raster.get(), i, &lo, &hi);
        std::cout << "stable_box " << axes[i].name << ": [" << num(lo) << ", " << num(hi) << "]\n";
      }
    }
  }
  if (spec.bisect) run_bisect(family.get(), spec, opts);
  return 0;
}

// ---- derive ----

int run_derive(const Overrides& o) {
  unsigned n = 0;
  if (!o.input.empty()) {
    const JobSpec spec = load_or_build(JobKind::Derive, o);
    n = *spec.n;
  }
  if (o.n) n = *o.n;
  if (n == 0) throw SpecError("n", "derive needs n (positional, --n or job file)");
  if (n < 2 || n > 5) throw SpecError("n", "must lie in 2..5");
  frh_derivation* raw = nullptr;
  check(frh_derive(n, &raw), "derive");
  const Derivation d(raw);
  std::cout << frh_derivation_report(d.get());
  return 0;
}

// ---- oracle-compare ----

int run_oracle_compare(const Overrides& o) {
  JobSpec spec = load_or_build(JobKind::OracleCompare, o);
  if (o.random) {
    RandomBatch b = spec.random.value_or(RandomBatch{});
    b.count = *o.random;
    spec.random = b;
    spec.system.reset();
  }
  if (spec.random) {
    if (o.order) spec.random->order = *o.order;
    if (o.seed) spec.random->seed = *o.seed;
  }
  if (!spec.alpha) throw SpecError("alpha", "oracle-compare needs alpha (job file or --alpha)");
  const frh_options opts = options_of(spec);
  const double alpha = *spec.alpha;

  if (spec.system) {
    const auto* m = std::get_if<MatrixSystem>(&*spec.system);
    if (!m) throw SpecError("system", "oracle-compare needs a matrix");
    const auto a = matrix_values(m->matrix, "system.matrix");
    frh_comparison c;
    check(frh_compare_oracles(a.data(), m->matrix.size(), alpha, &opts, spec.exclusion_radius, &c), "compare");
    std::cout << "alpha: " << num(alpha) << "\n";
    std::cout << "theorem1: " << frh_outcome_name(c.theorem1) << " (" << c.theorem1_minors << " minors"
              << (c.theorem1_delegated ? ", degenerate: decided by argument oracle" : "") << ")\n";
    std::cout << "argument_oracle: " << frh_outcome_name(c.argument) << "\n";
    std::cout << "tavazoei: " << frh_outcome_name(c.tavazoei) << " (" << c.tavazoei_minors << " minors)\n";
    std::cout << "critical_distance: " << num(c.critical_distance) << "\n";
    std::cout << "decidable: " << (c.decidable ? "yes" : "no") << "\n";
    std::cout << "disagreements: " << (c.decidable && !c.agree ? 1 : 0) << "\n";
    return c.decidable && !c.agree ? 1 : 0;
  }

  const RandomBatch& b = *spec.random;
  frh_batch* raw = nullptr;
  check(frh_compare_oracles_random(b.order, b.count, alpha, b.seed, &opts, spec.exclusion_radius, &raw), "compare");
  const Batch batch(raw);
  std::cout << "alpha: " << num(alpha) << "\n";
  std::cout << "order: " << b.order << "\n";
  std::cout << "seed: " << b.seed << "\n";
  std::cout << "cases: " << frh_batch_cases(batch.get()) << "\n";
  std::cout << "compared: " << frh_batch_compared(batch.get()) << "\n";
  std::cout << "excluded: " << frh_batch_excluded(batch.get()) << "\n";
  std::cout << "delegated: " << frh_batch_delegated(batch.get()) << "\n";
  std::cout << "stable: " << frh_batch_stable(batch.get()) << "\n";
  std::cout << "not_stable: " << frh_batch_not_stable(batch.get()) << "\n";
  std::cout << "minors: theorem1 " << b.order << ", tavazoei " << 2 * b.order << "\n";
  const std::size_t bad = frh_batch_disagreement_count(batch.get());
  std::cout << "disagreements: " << bad << "\n";
  for (std::size_t i = 0; i < bad; ++i) std::cout << "  case " << frh_batch_disagreement(batch.get(), i) << "\n";
  return bad == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional-order Routh-Hurwitz stability toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(frh_version()));
  Overrides o;

  const auto common = [&](CLI::App* cmd) {
    cmd->add_option("--input,-i", o.input, "Job file (JSON)");
    cmd->add_option("--alpha", o.alpha, "Fractional order in [1, 2)");
    cmd->add_option("--tol", o.tol, "Relative tolerance on minors");
  };

  CLI::App* check_cmd = app.add_subcommand("check", "Decide stability of one system");
  common(check_cmd);
  check_cmd->add_option("--matrix", o.matrix, "Matrix as JSON rows, e.g. [[-1,3],[0,-1]]");

  CLI::App* region_cmd = app.add_subcommand("region", "Scan a parameter box");
  common(region_cmd);
  region_cmd->add_option("--workers", o.workers, "Worker threads (default: available parallelism)");
  region_cmd->add_option("--out", o.out, "Output directory");
  region_cmd->add_option("--format", o.format, "csv | pgm | both")->check(CLI::IsMember({"csv", "pgm", "both"}));
  region_cmd->add_flag("--plot-script", o.plot_script, "Also write a gnuplot script");

  CLI::App* derive_cmd = app.add_subcommand("derive", "Print the reduced closed-form conditions");
  derive_cmd->add_option("--input,-i", o.input, "Job file (JSON)");
  derive_cmd->add_option("n,--n", o.n, "Polynomial degree (2..5)");

  CLI::App* oracle_cmd = app.add_subcommand("oracle-compare", "Cross-check Theorem 1 against both oracles");
  common(oracle_cmd);
  oracle_cmd->add_option("--matrix", o.matrix, "Matrix as JSON rows");
  oracle_cmd->add_option("--random", o.random, "Number of random matrices");
  oracle_cmd->add_option("--order", o.order, "Order of the random matrices");
  oracle_cmd->add_option("--seed", o.seed, "Seed of the random batch");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (check_cmd->parsed()) return run_check(o);
    if (region_cmd->parsed()) return run_region(o);
    if (derive_cmd->parsed()) return run_derive(o);
    return run_oracle_compare(o);
  } catch (const SpecError& e) {
    std::cerr << "error: malformed spec: " << e.what() << "\n";
    return kExitUsage;
  } catch (const LibraryError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.status == FRH_E_IO ? kExitIo : kExitLibrary;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitLibrary;
  }
}
