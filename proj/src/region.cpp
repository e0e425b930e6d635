#include "fracrh/region.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <iomanip>
#include <limits>
#include <ostream>
#include <thread>

#include "fracrh/closed_forms.hpp"

namespace fracrh {

namespace {

std::vector<std::string> with_alpha(const std::vector<std::string>& params) {
  for (const auto& p : params) {
    if (p == kAlphaName) fail(ErrorCode::InputError, "'alpha' is reserved and cannot be a family parameter");
  }
  std::vector<std::string> vars = params;
  vars.emplace_back(kAlphaName);
  return vars;
}

std::vector<double> with_alpha(std::span<const double> point, double alpha) {
  std::vector<double> values(point.begin(), point.end());
  values.push_back(alpha);
  return values;
}

void require_point(std::span<const double> point, std::size_t expected) {
  if (point.size() != expected) {
    fail(ErrorCode::DimensionMismatch, "parameter vector has " + std::to_string(point.size()) +
                                           " entries, family expects " + std::to_string(expected));
  }
}

}  // namespace

ParamSystem::ParamSystem(std::vector<std::string> parameters, std::size_t order)
    : params_(std::move(parameters)), expr_vars_(with_alpha(params_)), order_(order) {
  if (order_ == 0) fail(ErrorCode::InputError, "family matrices must have order >= 1");
}

ParamSystem ParamSystem::affine(std::vector<SquareMatrix> basis, std::vector<std::string> names) {
  if (basis.size() != names.size() + 1) {
    fail(ErrorCode::DimensionMismatch, "affine family needs one base matrix plus one matrix per parameter");
  }
  ParamSystem sys(names, basis.front().order());
  sys.add_term("1", std::move(basis[0]));
  for (std::size_t i = 0; i < names.size(); ++i) sys.add_term(names[i], std::move(basis[i + 1]));
  return sys;
}

void ParamSystem::add_term(std::string_view coefficient, SquareMatrix m) {
  if (m.order() != order_) {
    fail(ErrorCode::DimensionMismatch, "family matrix of order " + std::to_string(m.order()) +
                                           " where order " + std::to_string(order_) + " is expected");
  }
  require_finite(m, "family matrix");
  terms_.push_back({parse_polynomial(coefficient, expr_vars_), std::move(m)});
}

bool ParamSystem::uses_alpha() const {
  const std::size_t alpha_index = params_.size();
  return std::any_of(terms_.begin(), terms_.end(),
                     [&](const Term& t) { return t.coefficient.degree_in(alpha_index) > 0; });
}

SquareMatrix ParamSystem::instantiate(std::span<const double> point, double alpha) const {
  require_point(point, params_.size());
  const std::vector<double> values = with_alpha(point, alpha);
  SquareMatrix out(order_);
  for (const auto& term : terms_) {
    const double weight = term.coefficient.evaluate(values);
    if (weight == 0.0) continue;
    out += weight * term.matrix;
  }
  return out;
}

PolySystem::PolySystem(std::vector<std::string> parameters, const std::vector<std::string>& coefficients)
    : params_(std::move(parameters)) {
  if (coefficients.empty()) fail(ErrorCode::InputError, "polynomial family needs at least a_1");
  const auto vars = with_alpha(params_);
  for (const auto& text : coefficients) coeffs_.push_back(parse_polynomial(text, vars));
}

RealPolynomial PolySystem::instantiate(std::span<const double> point, double alpha) const {
  require_point(point, params_.size());
  const std::vector<double> values = with_alpha(point, alpha);
  std::vector<double> c{1.0};
  for (const auto& expr : coeffs_) {
    const double v = expr.evaluate(values);
    if (!std::isfinite(v)) fail(ErrorCode::InputError, "coefficient expression is not finite at this point");
    c.push_back(v);
  }
  return RealPolynomial(std::move(c));
}

const std::vector<std::string>& family_parameters(const Family& family) {
  return std::visit([](const auto& f) -> const std::vector<std::string>& { return f.parameters(); }, family);
}

std::size_t family_degree(const Family& family) {
  if (const auto* m = std::get_if<ParamSystem>(&family)) return m->order();
  return std::get<PolySystem>(family).degree();
}

RealPolynomial family_polynomial(const Family& family, std::span<const double> point, double alpha) {
  if (const auto* m = std::get_if<ParamSystem>(&family)) return char_poly(m->instantiate(point, alpha));
  return std::get<PolySystem>(family).instantiate(point, alpha);
}

// ---------------------------------------------------------------------------

std::size_t RegionRaster::index(std::span<const std::size_t> idx) const {
  if (idx.size() != axes.size()) fail(ErrorCode::DimensionMismatch, "wrong number of raster indices");
  std::size_t flat = 0;
  for (std::size_t k = 0; k < axes.size(); ++k) {
    if (idx[k] >= axes[k].count) fail(ErrorCode::InputError, "raster index out of range");
    flat = flat * axes[k].count + idx[k];
  }
  return flat;
}

std::vector<std::size_t> RegionRaster::indices(std::size_t cell) const {
  std::vector<std::size_t> idx(axes.size());
  for (std::size_t k = axes.size(); k-- > 0;) {
    idx[k] = cell % axes[k].count;
    cell /= axes[k].count;
  }
  return idx;
}

std::vector<double> RegionRaster::coordinates(std::size_t cell) const {
  const auto idx = indices(cell);
  std::vector<double> coords(axes.size());
  for (std::size_t k = 0; k < axes.size(); ++k) coords[k] = axes[k].value(idx[k]);
  return coords;
}

std::size_t RegionRaster::count(CellCode code) const {
  return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), static_cast<std::uint8_t>(code)));
}

double RegionRaster::stable_fraction() const {
  return cells.empty() ? 0.0 : static_cast<double>(count(CellCode::Stable)) / static_cast<double>(cells.size());
}

std::vector<std::pair<double, double>> RegionRaster::stable_bounding_box() const {
  std::vector<std::pair<double, double>> box;
  for (std::size_t cell = 0; cell < cells.size(); ++cell) {
    if (cells[cell] != static_cast<std::uint8_t>(CellCode::Stable)) continue;
    const auto coords = coordinates(cell);
    if (box.empty()) {
      for (double c : coords) box.emplace_back(c, c);
    } else {
      for (std::size_t k = 0; k < coords.size(); ++k) {
        box[k].first = std::min(box[k].first, coords[k]);
        box[k].second = std::max(box[k].second, coords[k]);
      }
    }
  }
  return box;
}

namespace {

bool use_closed_form(ScanMethod method, std::size_t degree) {
  switch (method) {
    case ScanMethod::Theorem1: return false;
    case ScanMethod::ClosedForm:
      if (degree < 2 || degree > 4) {
        fail(ErrorCode::Unsupported, "closed-form scan needs degree 2..4, family has degree " + std::to_string(degree));
      }
      return true;
    case ScanMethod::Auto: return degree >= 2 && degree <= 4;
  }
  return false;
}

CellCode to_cell(Outcome outcome) {
  switch (outcome) {
    case Outcome::Stable: return CellCode::Stable;
    case Outcome::NotStable: return CellCode::NotStable;
    case Outcome::Boundary: return CellCode::Boundary;
  }
  return CellCode::Boundary;
}

}  // namespace

CellCode evaluate_cell(const Family& family, std::span<const double> point, double alpha,
                       const VerdictOptions& options, ScanMethod method, DegeneratePolicy degenerate) {
  require_alpha_in_range(alpha);
  const std::size_t n = family_degree(family);
  const double leading_sin = MultipleAngleTable(half_pi_angle(alpha), n).sin_k(n);
  const RealPolynomial f = family_polynomial(family, point, alpha);
  if (std::abs(leading_sin) < options.degeneracy_tolerance) {
    if (degenerate == DegeneratePolicy::Mark) return CellCode::Degenerate;
    return to_cell(theorem1_verdict(f, alpha, options).outcome);
  }

  const StabilityVerdict v =
      use_closed_form(method, n) ? closed_form_verdict(f, alpha, options) : theorem1_verdict(f, alpha, options);
  return to_cell(v.outcome);
}

RegionRaster scan_region(const Family& family, const ScanSpec& spec) {
  if (spec.axes.empty()) fail(ErrorCode::InputError, "scan box needs at least one axis");

  // Where each family parameter (and alpha) gets its value from: an axis
  // index, or -1 for a fixed value.
  const auto& params = family_parameters(family);
  std::vector<int> source(params.size(), -1);
  std::vector<double> base(params.size(), 0.0);
  int alpha_axis = -1;

  for (std::size_t k = 0; k < spec.axes.size(); ++k) {
    const Axis& axis = spec.axes[k];
    if (!std::isfinite(axis.lo) || !std::isfinite(axis.hi) || !(axis.lo < axis.hi) || axis.count == 0) {
      fail(ErrorCode::InputError, "axis '" + axis.name + "' needs finite lo < hi and count >= 1");
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (spec.axes[j].name == axis.name) fail(ErrorCode::InputError, "axis '" + axis.name + "' given twice");
    }
    if (axis.name == kAlphaName) {
      require_alpha_in_range(axis.lo);
      require_alpha_in_range(axis.hi);
      alpha_axis = static_cast<int>(k);
      continue;
    }
    const auto it = std::find(params.begin(), params.end(), axis.name);
    if (it == params.end()) fail(ErrorCode::InputError, "axis '" + axis.name + "' is not a family parameter");
    source[static_cast<std::size_t>(it - params.begin())] = static_cast<int>(k);
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (source[i] >= 0) continue;
    const auto it = spec.fixed.find(params[i]);
    if (it == spec.fixed.end()) fail(ErrorCode::InputError, "parameter '" + params[i] + "' is neither an axis nor fixed");
    base[i] = it->second;
  }
  if (alpha_axis < 0) require_alpha_in_range(spec.alpha);

  RegionRaster raster;
  raster.axes = spec.axes;
  std::size_t total = 1;
  for (const auto& axis : spec.axes) total *= axis.count;
  raster.cells.assign(total, 0);
  raster.method = use_closed_form(spec.method, family_degree(family)) ? Method::ClosedForm : Method::Theorem1;

  auto run = [&](std::size_t begin, std::size_t end) {
    std::vector<double> point = base;
    for (std::size_t cell = begin; cell < end; ++cell) {
      const auto coords = raster.coordinates(cell);
      for (std::size_t i = 0; i < params.size(); ++i) {
        if (source[i] >= 0) point[i] = coords[static_cast<std::size_t>(source[i])];
      }
      const double alpha = alpha_axis >= 0 ? coords[static_cast<std::size_t>(alpha_axis)] : spec.alpha;
      const CellCode code = evaluate_cell(family, point, alpha, spec.options, spec.method, spec.degenerate);
      raster.cells[cell] = static_cast<std::uint8_t>(code);
    }
  };

  unsigned workers = spec.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : spec.workers;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));
  if (workers <= 1) {
    run(0, total);
    return raster;
  }

  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  const std::size_t chunk = (total + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(total, w * chunk);
    const std::size_t end = std::min(total, begin + chunk);
    threads.emplace_back([&, w, begin, end] {
      try {
        run(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return raster;
}

void write_csv(const RegionRaster& raster, std::ostream& out) {
  for (const auto& axis : raster.axes) out << axis.name << ',';
  out << "code\n";
  out << std::setprecision(12);
  for (std::size_t cell = 0; cell < raster.cells.size(); ++cell) {
    for (double c : raster.coordinates(cell)) out << c << ',';
    out << static_cast<int>(raster.cells[cell]) << '\n';
  }
}

void write_pgm(const RegionRaster& raster, std::ostream& out) {
  if (raster.axes.size() != 2) fail(ErrorCode::Unsupported, "PGM export needs a 2-D raster");
  const std::size_t width = raster.axes[0].count;
  const std::size_t height = raster.axes[1].count;
  out << "P5\n" << width << ' ' << height << "\n255\n";
  for (std::size_t row = 0; row < height; ++row) {
    const std::size_t j = height - 1 - row;
    for (std::size_t i = 0; i < width; ++i) {
      out.put(static_cast<char>(raster.cells[i * height + j] * 85));
    }
  }
}

// ---------------------------------------------------------------------------

namespace {

class BisectionProblem {
 public:
  BisectionProblem(const Family& family, const BisectSpec& spec) : family_(family), spec_(spec) {
    const auto& params = family_parameters(family);
    point_.assign(params.size(), 0.0);
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (params[i] == spec.scan_parameter) {
        scan_index_ = static_cast<int>(i);
      } else if (spec.constraint_parameter && params[i] == *spec.constraint_parameter) {
        constraint_index_ = static_cast<int>(i);
      } else {
        const auto it = spec.fixed.find(params[i]);
        if (it == spec.fixed.end()) {
          fail(ErrorCode::InputError, "parameter '" + params[i] + "' needs a fixed value");
        }
        point_[i] = it->second;
      }
    }
    if (scan_index_ < 0) fail(ErrorCode::InputError, "scan parameter '" + spec.scan_parameter + "' not in family");
    if (spec.constraint_parameter && constraint_index_ < 0) {
      fail(ErrorCode::InputError, "constraint parameter '" + *spec.constraint_parameter + "' not in family");
    }
    if (!(spec.scan_max > 0.0) || !(spec.tolerance > 0.0) || spec.coarse_steps == 0) {
      fail(ErrorCode::InputError, "bisection needs scan_max > 0, tolerance > 0 and coarse_steps >= 1");
    }
    require_alpha_in_range(spec.alpha);
  }

  bool stable(double constraint, double value) {
    ++evaluations_;
    if (constraint_index_ >= 0) point_[static_cast<std::size_t>(constraint_index_)] = constraint;
    point_[static_cast<std::size_t>(scan_index_)] = value;
    return evaluate_cell(family_, point_, spec_.alpha, spec_.options, ScanMethod::Theorem1,
                         DegeneratePolicy::Delegate) == CellCode::Stable;
  }

  /// First loss of stability along the scan parameter for one constraint
  /// value, or scan_max when none occurs.
  double bound_at(double constraint, bool& saturated) {
    const double step = spec_.scan_max / static_cast<double>(spec_.coarse_steps);
    double good = 0.0;
    for (std::size_t k = 1; k <= spec_.coarse_steps; ++k) {
      const double v = std::min(spec_.scan_max, step * static_cast<double>(k));
      if (!stable(constraint, v)) {
        double bad = v;
        while (bad - good > spec_.tolerance / 8.0) {
          const double mid = 0.5 * (good + bad);
          (stable(constraint, mid) ? good : bad) = mid;
        }
        saturated = false;
        return good;
      }
      good = v;
    }
    saturated = true;
    return spec_.scan_max;
  }

  std::size_t evaluations() const noexcept { return evaluations_; }

 private:
  const Family& family_;
  const BisectSpec& spec_;
  std::vector<double> point_;
  int scan_index_ = -1;
  int constraint_index_ = -1;
  std::size_t evaluations_ = 0;
};

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  std::vector<double> v(count);
  for (std::size_t i = 0; i < count; ++i) {
    v[i] = count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return v;
}

}  // namespace

BisectResult max_param_bisect(const Family& family, const BisectSpec& spec) {
  BisectionProblem problem(family, spec);

  std::vector<double> samples = spec.constraint_parameter
                                    ? linspace(spec.constraint_lo, spec.constraint_hi, std::max<std::size_t>(spec.samples, 2))
                                    : std::vector<double>{0.0};
  for (double c : samples) {
    if (!problem.stable(c, 0.0)) {
      fail(ErrorCode::NoBracket, "family is not stable at " + spec.scan_parameter + " = 0 (constraint value " +
                                     std::to_string(c) + "); no stable lower bracket");
    }
  }

  BisectResult result;
  result.bound = std::numeric_limits<double>::infinity();
  result.saturated = true;
  auto consider = [&](double c) {
    bool saturated = false;
    const double b = problem.bound_at(c, saturated);
    if (b < result.bound) {
      result.bound = b;
      result.critical_constraint = c;
      result.saturated = saturated;
    }
  };
  for (double c : samples) consider(c);

  // Refine around the minimizing constraint value.
  if (spec.constraint_parameter && samples.size() > 1) {
    double half_width = samples[1] - samples[0];
    for (int round = 0; round < 4; ++round) {
      const double lo = std::max(spec.constraint_lo, result.critical_constraint - half_width);
      const double hi = std::min(spec.constraint_hi, result.critical_constraint + half_width);
      for (double c : linspace(lo, hi, 21)) {
        samples.push_back(c);
        consider(c);
      }
      half_width /= 10.0;
    }
  }

  // Certificate: all samples Stable just below, one sample failing just above.
  const double below = std::max(0.0, result.bound - 2.0 * spec.tolerance);
  bool all_below = true;
  for (double c : samples) all_below = all_below && problem.stable(c, below);
  bool fails_above = result.saturated;
  if (!result.saturated) {
    fails_above = !problem.stable(result.critical_constraint, result.bound + 2.0 * spec.tolerance);
  }
  result.certified = all_below && fails_above;
  result.evaluations = problem.evaluations();
  return result;
}

}  // namespace fracrh
