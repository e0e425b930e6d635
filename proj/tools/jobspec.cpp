#include "jobspec.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace fracrh::cli {

using nlohmann::json;

namespace {

const char* kKinds[] = {"check", "region", "derive", "oracle-compare"};

std::string at(const std::string& base, const std::string& key) { return base.empty() ? key : base + "." + key; }
std::string at(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

void require_object(const json& j, const std::string& field) {
  if (!j.is_object()) throw SpecError(field.empty() ? "<root>" : field, "expected an object");
}

void reject_unknown(const json& j, const std::string& field, std::initializer_list<const char*> known) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw SpecError(at(field, key), "unknown key");
  }
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) throw SpecError(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw SpecError(field, "must be finite");
  return v;
}

std::size_t count(const json& j, const std::string& field) {
  if (!j.is_number_integer() || j.get<long long>() < 1) throw SpecError(field, "expected a positive integer");
  return j.get<std::size_t>();
}

std::string text(const json& j, const std::string& field) {
  if (!j.is_string()) throw SpecError(field, "expected a string");
  return j.get<std::string>();
}

/// Numbers become their shortest JSON spelling; strings are kept verbatim.
std::string scalar_text(const json& j, const std::string& field) {
  if (j.is_string()) {
    if (j.get<std::string>().empty()) throw SpecError(field, "empty entry");
    return j.get<std::string>();
  }
  if (j.is_number()) {
    number(j, field);
    return j.dump();
  }
  throw SpecError(field, "expected a number or a rational string");
}

std::vector<std::string> names(const json& j, const std::string& field) {
  if (!j.is_array()) throw SpecError(field, "expected an array of names");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(text(j[i], at(field, i)));
    if (out.back().empty()) throw SpecError(at(field, i), "empty name");
    if (out.back() == "alpha") throw SpecError(at(field, i), "'alpha' is reserved for the fractional order");
  }
  return out;
}

MatrixText matrix(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw SpecError(field, "expected a non-empty array of rows");
  MatrixText m;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string rf = at(field, r);
    if (!j[r].is_array() || j[r].size() != j.size()) throw SpecError(rf, "matrix must be square");
    std::vector<std::string> row;
    for (std::size_t c = 0; c < j[r].size(); ++c) row.push_back(scalar_text(j[r][c], at(rf, c)));
    m.push_back(std::move(row));
  }
  return m;
}

json matrix_json(const MatrixText& m) {
  json rows = json::array();
  for (const auto& row : m) rows.push_back(row);
  return rows;
}

SystemSpec system(const json& j) {
  const std::string field = "system";
  require_object(j, field);
  if (j.size() != 1) throw SpecError(field, "exactly one of matrix, family, polynomial is required");
  if (j.contains("matrix")) return MatrixSystem{matrix(j["matrix"], "system.matrix")};

  if (j.contains("family")) {
    const json& f = j["family"];
    const std::string ff = "system.family";
    require_object(f, ff);
    reject_unknown(f, ff, {"parameters", "basis", "terms"});
    FamilySystem out;
    if (f.contains("parameters")) out.parameters = names(f["parameters"], at(ff, "parameters"));
    if (f.contains("basis") == f.contains("terms")) throw SpecError(ff, "give exactly one of basis, terms");
    if (f.contains("basis")) {
      const json& b = f["basis"];
      if (!b.is_array() || b.size() != out.parameters.size() + 1) {
        throw SpecError(at(ff, "basis"), "expected parameters + 1 matrices (A_0, A_1, ...)");
      }
      for (std::size_t k = 0; k < b.size(); ++k) {
        out.terms.push_back({k == 0 ? "1" : out.parameters[k - 1], matrix(b[k], at(at(ff, "basis"), k))});
      }
    } else {
      const json& t = f["terms"];
      if (!t.is_array() || t.empty()) throw SpecError(at(ff, "terms"), "expected a non-empty array");
      for (std::size_t k = 0; k < t.size(); ++k) {
        const std::string tf = at(at(ff, "terms"), k);
        require_object(t[k], tf);
        reject_unknown(t[k], tf, {"coefficient", "matrix"});
        if (!t[k].contains("coefficient") || !t[k].contains("matrix")) {
          throw SpecError(tf, "needs coefficient and matrix");
        }
        out.terms.push_back({scalar_text(t[k]["coefficient"], at(tf, "coefficient")),
                             matrix(t[k]["matrix"], at(tf, "matrix"))});
      }
    }
    const std::size_t order = out.terms.front().matrix.size();
    for (std::size_t k = 0; k < out.terms.size(); ++k) {
      if (out.terms[k].matrix.size() != order) throw SpecError(at(at(ff, "terms"), k), "matrix order differs");
    }
    return out;
  }

  if (j.contains("polynomial")) {
    const json& p = j["polynomial"];
    const std::string pf = "system.polynomial";
    require_object(p, pf);
    reject_unknown(p, pf, {"parameters", "coefficients"});
    PolynomialSystem out;
    if (p.contains("parameters")) out.parameters = names(p["parameters"], at(pf, "parameters"));
    if (!p.contains("coefficients") || !p["coefficients"].is_array() || p["coefficients"].empty()) {
      throw SpecError(at(pf, "coefficients"), "expected a non-empty array a_1..a_n");
    }
    const json& c = p["coefficients"];
    for (std::size_t k = 0; k < c.size(); ++k) out.coefficients.push_back(scalar_text(c[k], at(at(pf, "coefficients"), k)));
    return out;
  }
  throw SpecError(field, "expected one of matrix, family, polynomial");
}

json system_json(const SystemSpec& s) {
  if (const auto* m = std::get_if<MatrixSystem>(&s)) return {{"matrix", matrix_json(m->matrix)}};
  if (const auto* f = std::get_if<FamilySystem>(&s)) {
    json terms = json::array();
    for (const auto& t : f->terms) terms.push_back({{"coefficient", t.coefficient}, {"matrix", matrix_json(t.matrix)}});
    return {{"family", {{"parameters", f->parameters}, {"terms", terms}}}};
  }
  const auto& p = std::get<PolynomialSystem>(s);
  return {{"polynomial", {{"parameters", p.parameters}, {"coefficients", p.coefficients}}}};
}

AxisSpec axis(const json& j, const std::string& field) {
  require_object(j, field);
  reject_unknown(j, field, {"name", "lo", "hi", "count"});
  for (const char* key : {"name", "lo", "hi", "count"}) {
    if (!j.contains(key)) throw SpecError(at(field, key), "missing");
  }
  AxisSpec a{text(j["name"], at(field, "name")), number(j["lo"], at(field, "lo")), number(j["hi"], at(field, "hi")),
             count(j["count"], at(field, "count"))};
  if (!(a.lo < a.hi)) throw SpecError(field, "needs lo < hi");
  return a;
}

json axis_json(const AxisSpec& a) { return {{"name", a.name}, {"lo", a.lo}, {"hi", a.hi}, {"count", a.count}}; }

void check_alpha(double alpha, const std::string& field) {
  if (!(alpha >= 1.0 && alpha < 2.0)) throw SpecError(field, "alpha must lie in [1, 2)");
}

}  // namespace

std::string to_string(JobKind kind) { return kKinds[static_cast<int>(kind)]; }

JobKind parse_kind(const std::string& t) {
  for (int k = 0; k < 4; ++k) {
    if (t == kKinds[k]) return static_cast<JobKind>(k);
  }
  throw SpecError("kind", "expected check, region, derive or oracle-compare, got '" + t + "'");
}

JobSpec parse_job(const json& j) {
  require_object(j, "");
  reject_unknown(j, "", {"kind", "system", "alpha", "box", "fixed", "tolerances", "outputs", "method", "degenerate",
                         "workers", "n", "random", "exclusion_radius", "bisect"});
  JobSpec spec;
  if (!j.contains("kind")) throw SpecError("kind", "missing");
  spec.kind = parse_kind(text(j["kind"], "kind"));

  if (j.contains("system")) spec.system = system(j["system"]);
  if (j.contains("alpha")) {
    spec.alpha = number(j["alpha"], "alpha");
    check_alpha(*spec.alpha, "alpha");
  }
  if (j.contains("box")) {
    if (!j["box"].is_array()) throw SpecError("box", "expected an array of axes");
    for (std::size_t i = 0; i < j["box"].size(); ++i) {
      spec.box.push_back(axis(j["box"][i], at("box", i)));
      const AxisSpec& a = spec.box.back();
      if (a.name == "alpha") {
        check_alpha(a.lo, at(at("box", i), "lo"));
        check_alpha(a.hi, at(at("box", i), "hi"));
      }
      for (std::size_t k = 0; k + 1 < spec.box.size(); ++k) {
        if (spec.box[k].name == a.name) throw SpecError(at("box", i), "axis '" + a.name + "' given twice");
      }
    }
  }
  if (j.contains("fixed")) {
    require_object(j["fixed"], "fixed");
    for (const auto& [k, v] : j["fixed"].items()) spec.fixed[k] = number(v, at("fixed", k));
  }
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    require_object(t, "tolerances");
    reject_unknown(t, "tolerances", {"minor", "angle", "degeneracy"});
    auto positive = [&](const char* key) -> std::optional<double> {
      if (!t.contains(key)) return std::nullopt;
      const double v = number(t[key], at("tolerances", key));
      if (!(v > 0.0)) throw SpecError(at("tolerances", key), "must be positive");
      return v;
    };
    spec.tolerances = {positive("minor"), positive("angle"), positive("degeneracy")};
  }
  if (j.contains("outputs")) {
    const json& o = j["outputs"];
    require_object(o, "outputs");
    reject_unknown(o, "outputs", {"dir", "stem", "format", "plot_script"});
    Outputs out;
    if (o.contains("dir")) out.dir = text(o["dir"], "outputs.dir");
    if (o.contains("stem")) out.stem = text(o["stem"], "outputs.stem");
    if (o.contains("format")) {
      out.format = text(o["format"], "outputs.format");
      if (out.format != "csv" && out.format != "pgm" && out.format != "both") {
        throw SpecError("outputs.format", "expected csv, pgm or both");
      }
    }
    if (o.contains("plot_script")) {
      if (!o["plot_script"].is_boolean()) throw SpecError("outputs.plot_script", "expected true or false");
      out.plot_script = o["plot_script"].get<bool>();
    }
    spec.outputs = out;
  }
  if (j.contains("method")) {
    spec.method = text(j["method"], "method");
    if (spec.method != "auto" && spec.method != "theorem1" && spec.method != "closed-form") {
      throw SpecError("method", "expected auto, theorem1 or closed-form");
    }
  }
  if (j.contains("degenerate")) {
    spec.degenerate = text(j["degenerate"], "degenerate");
    if (spec.degenerate != "mark" && spec.degenerate != "delegate") {
      throw SpecError("degenerate", "expected mark or delegate");
    }
  }
  if (j.contains("workers")) spec.workers = static_cast<unsigned>(count(j["workers"], "workers"));
  if (j.contains("n")) spec.n = static_cast<unsigned>(count(j["n"], "n"));
  if (j.contains("random")) {
    const json& r = j["random"];
    require_object(r, "random");
    reject_unknown(r, "random", {"count", "order", "seed"});
    RandomBatch b;
    if (r.contains("count")) b.count = count(r["count"], "random.count");
    if (r.contains("order")) b.order = count(r["order"], "random.order");
    if (r.contains("seed")) {
      if (!r["seed"].is_number_unsigned()) throw SpecError("random.seed", "expected a non-negative integer");
      b.seed = r["seed"].get<std::uint64_t>();
    }
    spec.random = b;
  }
  if (j.contains("exclusion_radius")) {
    spec.exclusion_radius = number(j["exclusion_radius"], "exclusion_radius");
    if (spec.exclusion_radius < 0.0) throw SpecError("exclusion_radius", "must be non-negative");
  }
  if (j.contains("bisect")) {
    const json& b = j["bisect"];
    require_object(b, "bisect");
    reject_unknown(b, "bisect", {"parameter", "max", "constraint", "coarse_steps", "tolerance"});
    BisectJob job;
    if (!b.contains("parameter")) throw SpecError("bisect.parameter", "missing");
    job.parameter = text(b["parameter"], "bisect.parameter");
    if (b.contains("max")) job.max = number(b["max"], "bisect.max");
    if (b.contains("constraint")) job.constraint = axis(b["constraint"], "bisect.constraint");
    if (b.contains("coarse_steps")) job.coarse_steps = count(b["coarse_steps"], "bisect.coarse_steps");
    if (b.contains("tolerance")) job.tolerance = number(b["tolerance"], "bisect.tolerance");
    if (!(job.max > 0.0)) throw SpecError("bisect.max", "must be positive");
    if (!(job.tolerance > 0.0)) throw SpecError("bisect.tolerance", "must be positive");
    spec.bisect = job;
  }

  // Per-kind structure; alpha may still come from the command line.
  switch (spec.kind) {
    case JobKind::Check:
      if (!spec.system) throw SpecError("system", "check needs a system");
      break;
    case JobKind::Region:
      if (!spec.system) throw SpecError("system", "region needs a system");
      if (std::holds_alternative<MatrixSystem>(*spec.system)) {
        throw SpecError("system", "region needs a family or polynomial system");
      }
      if (spec.box.empty() && !spec.bisect) throw SpecError("box", "region needs 1 to 3 axes");
      if (spec.box.size() > 3) throw SpecError("box", "at most 3 axes are supported");
      break;
    case JobKind::Derive:
      if (!spec.n) throw SpecError("n", "derive needs n");
      break;
    case JobKind::OracleCompare:
      if (!spec.system && !spec.random) throw SpecError("system", "give a matrix system or a random batch");
      if (spec.system && !std::holds_alternative<MatrixSystem>(*spec.system)) {
        throw SpecError("system", "oracle-compare needs a matrix");
      }
      break;
  }
  return spec;
}

JobSpec parse_job_text(const std::string& source) {
  json j;
  try {
    j = json::parse(source);
  } catch (const json::parse_error& e) {
    throw SpecError("<file>", std::string("invalid JSON: ") + e.what());
  }
  return parse_job(j);
}

JobSpec load_job(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("--input", "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_job_text(buf.str());
}

json to_json(const JobSpec& spec) {
  json j;
  j["kind"] = to_string(spec.kind);
  if (spec.system) j["system"] = system_json(*spec.system);
  if (spec.alpha) j["alpha"] = *spec.alpha;
  if (!spec.box.empty()) {
    j["box"] = json::array();
    for (const auto& a : spec.box) j["box"].push_back(axis_json(a));
  }
  if (!spec.fixed.empty()) j["fixed"] = spec.fixed;
  json tol = json::object();
  if (spec.tolerances.minor) tol["minor"] = *spec.tolerances.minor;
  if (spec.tolerances.angle) tol["angle"] = *spec.tolerances.angle;
  if (spec.tolerances.degeneracy) tol["degeneracy"] = *spec.tolerances.degeneracy;
  if (!tol.empty()) j["tolerances"] = tol;
  if (spec.outputs) {
    j["outputs"] = {{"dir", spec.outputs->dir},
                    {"stem", spec.outputs->stem},
                    {"format", spec.outputs->format},
                    {"plot_script", spec.outputs->plot_script}};
  }
  j["method"] = spec.method;
  j["degenerate"] = spec.degenerate;
  if (spec.workers) j["workers"] = *spec.workers;
  if (spec.n) j["n"] = *spec.n;
  if (spec.random) j["random"] = {{"count", spec.random->count}, {"order", spec.random->order}, {"seed", spec.random->seed}};
  j["exclusion_radius"] = spec.exclusion_radius;
  if (spec.bisect) {
    json b = {{"parameter", spec.bisect->parameter},
              {"max", spec.bisect->max},
              {"coarse_steps", spec.bisect->coarse_steps},
              {"tolerance", spec.bisect->tolerance}};
    if (spec.bisect->constraint) b["constraint"] = axis_json(*spec.bisect->constraint);
    j["bisect"] = b;
  }
  return j;
}

}  // namespace fracrh::cli
