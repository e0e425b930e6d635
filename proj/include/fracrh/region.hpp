#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fracrh/hurwitz.hpp"
#include "fracrh/matrix.hpp"
#include "fracrh/polynomial.hpp"
#include "fracrh/symbolic.hpp"

namespace fracrh {

/// Name reserved for the fractional order when it is treated as a parameter.
inline constexpr std::string_view kAlphaName = "alpha";

/// Matrix family A(β) = Σ_k c_k(β, α)·A_k with polynomial coefficient
/// expressions. The affine family A_0 + Σ β_i A_i is the common case.
class ParamSystem {
 public:
  ParamSystem(std::vector<std::string> parameters, std::size_t order);

  /// A_0 + Σ β_i A_i; basis.size() must equal names.size() + 1.
  static ParamSystem affine(std::vector<SquareMatrix> basis, std::vector<std::string> names);

  /// Adds coefficient(β, α)·m. The expression may use the parameter names
  /// and "alpha".
  void add_term(std::string_view coefficient, SquareMatrix m);

  /// point[i] is the value of parameters()[i]; alpha is only read when a
  /// coefficient refers to it.
  SquareMatrix instantiate(std::span<const double> point, double alpha = 0.0) const;

  const std::vector<std::string>& parameters() const noexcept { return params_; }
  std::size_t order() const noexcept { return order_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  bool uses_alpha() const;

 private:
  struct Term {
    SymbolicPoly coefficient;  // over params_ + alpha
    SquareMatrix matrix;
  };
  std::vector<std::string> params_;
  std::vector<std::string> expr_vars_;
  std::size_t order_;
  std::vector<Term> terms_;
};

/// Family given by its characteristic polynomial
/// λ^n + a_1(β, α) λ^{n−1} + ... + a_n(β, α).
class PolySystem {
 public:
  PolySystem(std::vector<std::string> parameters, const std::vector<std::string>& coefficients);

  RealPolynomial instantiate(std::span<const double> point, double alpha = 0.0) const;

  const std::vector<std::string>& parameters() const noexcept { return params_; }
  std::size_t degree() const noexcept { return coeffs_.size(); }
  const std::vector<SymbolicPoly>& coefficients() const noexcept { return coeffs_; }

 private:
  std::vector<std::string> params_;
  std::vector<SymbolicPoly> coeffs_;  // a_1..a_n over params_ + alpha
};

using Family = std::variant<ParamSystem, PolySystem>;

const std::vector<std::string>& family_parameters(const Family& family);
std::size_t family_degree(const Family& family);
RealPolynomial family_polynomial(const Family& family, std::span<const double> point, double alpha);

struct Axis {
  std::string name;
  double lo = 0.0;
  double hi = 1.0;
  std::size_t count = 1;

  double value(std::size_t i) const {
    return count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  friend bool operator==(const Axis&, const Axis&) = default;
};

enum class CellCode : std::uint8_t { NotStable = 0, Stable = 1, Boundary = 2, Degenerate = 3 };

enum class ScanMethod { Auto, Theorem1, ClosedForm };

/// What to do where sin(nαπ/2) vanishes: report the cell as Degenerate, or
/// let theorem1_verdict hand it to the argument oracle.
enum class DegeneratePolicy { Mark, Delegate };

struct ScanSpec {
  std::vector<Axis> axes;
  /// Values for family parameters that are not axes.
  std::map<std::string, double> fixed;
  /// Fixed fractional order; ignored when an axis is named "alpha".
  double alpha = 1.5;
  VerdictOptions options;
  ScanMethod method = ScanMethod::Auto;
  DegeneratePolicy degenerate = DegeneratePolicy::Mark;
  /// 0 means std::thread::hardware_concurrency().
  unsigned workers = 0;
};

/// Dense grid of cell codes, last axis varying fastest.
struct RegionRaster {
  std::vector<Axis> axes;
  std::vector<std::uint8_t> cells;
  Method method = Method::Theorem1;

  std::size_t index(std::span<const std::size_t> indices) const;
  std::vector<std::size_t> indices(std::size_t cell) const;
  std::vector<double> coordinates(std::size_t cell) const;
  CellCode at(std::span<const std::size_t> indices) const {
    return static_cast<CellCode>(cells[index(indices)]);
  }
  std::size_t count(CellCode code) const;
  double stable_fraction() const;
  /// Per-axis [min, max] coordinate over Stable cells; empty if none.
  std::vector<std::pair<double, double>> stable_bounding_box() const;
};

/// Verdict for a single parameter point (values by name, plus alpha).
CellCode evaluate_cell(const Family& family, std::span<const double> point, double alpha,
                       const VerdictOptions& options, ScanMethod method = ScanMethod::Auto,
                       DegeneratePolicy degenerate = DegeneratePolicy::Mark);

RegionRaster scan_region(const Family& family, const ScanSpec& spec);

/// One row per cell: coordinates then code, header of axis names + "code".
void write_csv(const RegionRaster& raster, std::ostream& out);
/// Binary P5, width = axis 0 count, height = axis 1 count (top row is the
/// largest axis-1 value), gray = code * 85. 2-D rasters only.
void write_pgm(const RegionRaster& raster, std::ostream& out);

struct BisectSpec {
  std::string scan_parameter;
  double scan_max = 10.0;
  /// Secondary parameter over which stability must hold for every sample.
  std::optional<std::string> constraint_parameter;
  double constraint_lo = 0.0;
  double constraint_hi = 1.0;
  std::size_t samples = 201;
  std::size_t coarse_steps = 200;
  double tolerance = 5e-4;
  std::map<std::string, double> fixed;
  double alpha = 1.5;
  VerdictOptions options;
};

struct BisectResult {
  double bound = 0.0;
  /// Constraint value where the bound is attained.
  double critical_constraint = 0.0;
  /// Stability never failed up to scan_max.
  bool saturated = false;
  /// Every sample Stable at bound − 2·tol and, unless saturated, some
  /// sample not Stable at bound + 2·tol.
  bool certified = false;
  std::size_t evaluations = 0;
};

/// Largest value of the scan parameter (starting from 0) for which the
/// family stays Stable over all constraint samples. Points use
/// theorem1_verdict, so degenerate orders are decided by the argument oracle.
BisectResult max_param_bisect(const Family& family, const BisectSpec& spec);

}  // namespace fracrh
