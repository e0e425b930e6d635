#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace fracrh::cli {

enum class JobKind { Check, Region, Derive, OracleCompare };

/// Matrix entries keep their source text ("-1", "0.5", "3/4") so a spec
/// survives parse → serialize → parse unchanged.
using MatrixText = std::vector<std::vector<std::string>>;

struct MatrixSystem {
  MatrixText matrix;
  friend bool operator==(const MatrixSystem&, const MatrixSystem&) = default;
};

struct FamilyTerm {
  std::string coefficient;
  MatrixText matrix;
  friend bool operator==(const FamilyTerm&, const FamilyTerm&) = default;
};

/// Σ coefficient_k · matrix_k; a "basis" list is stored as terms
/// "1", "β_1", "β_2", ...
struct FamilySystem {
  std::vector<std::string> parameters;
  std::vector<FamilyTerm> terms;
  friend bool operator==(const FamilySystem&, const FamilySystem&) = default;
};

/// Monic λ^n + a_1 λ^{n−1} + ... + a_n with a_k as expressions.
struct PolynomialSystem {
  std::vector<std::string> parameters;
  std::vector<std::string> coefficients;
  friend bool operator==(const PolynomialSystem&, const PolynomialSystem&) = default;
};

using SystemSpec = std::variant<MatrixSystem, FamilySystem, PolynomialSystem>;

struct AxisSpec {
  std::string name;
  double lo = 0.0;
  double hi = 1.0;
  std::size_t count = 1;
  friend bool operator==(const AxisSpec&, const AxisSpec&) = default;
};

struct Tolerances {
  std::optional<double> minor;
  std::optional<double> angle;
  std::optional<double> degeneracy;
  friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

struct Outputs {
  std::string dir = ".";
  std::string stem = "region";
  std::string format = "csv";  // csv | pgm | both
  bool plot_script = false;
  friend bool operator==(const Outputs&, const Outputs&) = default;
};

struct RandomBatch {
  std::size_t count = 500;
  std::size_t order = 3;
  std::uint64_t seed = 42;
  friend bool operator==(const RandomBatch&, const RandomBatch&) = default;
};

struct BisectJob {
  std::string parameter;
  double max = 10.0;
  std::optional<AxisSpec> constraint;  // count = number of samples
  std::size_t coarse_steps = 200;
  double tolerance = 5e-4;
  friend bool operator==(const BisectJob&, const BisectJob&) = default;
};

struct JobSpec {
  JobKind kind = JobKind::Check;
  std::optional<SystemSpec> system;
  std::optional<double> alpha;
  std::vector<AxisSpec> box;
  std::map<std::string, double> fixed;
  Tolerances tolerances;
  std::optional<Outputs> outputs;
  std::string method = "auto";      // auto | theorem1 | closed-form
  std::string degenerate = "mark";  // mark | delegate
  std::optional<unsigned> workers;
  std::optional<unsigned> n;  // derive
  std::optional<RandomBatch> random;
  double exclusion_radius = 1e-6;
  std::optional<BisectJob> bisect;
  friend bool operator==(const JobSpec&, const JobSpec&) = default;
};

/// Malformed job file; field() names the offending entry ("system.matrix[1]").
class SpecError : public std::runtime_error {
 public:
  SpecError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

std::string to_string(JobKind kind);
JobKind parse_kind(const std::string& text);

JobSpec parse_job(const nlohmann::json& j);
JobSpec parse_job_text(const std::string& text);
JobSpec load_job(const std::string& path);
nlohmann::json to_json(const JobSpec& spec);

}  // namespace fracrh::cli
