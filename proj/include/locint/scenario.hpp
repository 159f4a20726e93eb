#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "locint/dec_diag.hpp"
#include "locint/direct_integral.hpp"
#include "locint/local_operator.hpp"
#include "locint/report.hpp"
#include "locint/serialize.hpp"

namespace locint {

struct Caps {
  long long ambient = 64;
  long long atoms = 16;
  long long poset = 8;
};

/// Default caps, overridden by LOCINT_CAPS="ambient=N,atoms=N,poset=N".
Caps caps_from_environment();

using DomainEntry = std::variant<std::shared_ptr<const QuantizedDomain>, DintPtr>;
using OperatorEntry = std::variant<LocalOperator, DecomposableOperator, DiagonalizableOperator, LazyChainOperator>;

struct TaskSpec {
  std::string task;
  json params;  // the task descriptor as written, echoed into the report
};

struct Scenario {
  std::uint64_t seed = 0;
  Caps caps;
  std::map<std::string, DomainEntry> domains;
  std::map<std::string, OperatorEntry> operators;
  std::vector<TaskSpec> tasks;
};

/// Parses and resolves a scenario. Errors: ParseError (with line and
/// column), UnresolvedReference, CapExceeded, plus construction errors of
/// the named domains and operators.
Scenario parse_scenario(const std::string& text, const Caps& caps = caps_from_environment());
Scenario load_scenario(const std::string& path, const Caps& caps = caps_from_environment());

struct TaskResult {
  std::size_t task_index = 0;
  std::optional<std::size_t> instance_index;  // random_suite entries
  std::string task;
  CheckReport check;
  json instance;  // scenario echo
  std::optional<double> elapsed_ms;
};

struct Report {
  std::uint64_t seed = 0;
  std::string prng;
  Caps caps;
  std::map<std::string, double> tolerances;
  std::vector<TaskResult> results;

  std::size_t passed() const;
  std::size_t failed() const { return results.size() - passed(); }
};

struct RunOptions {
  /// Wall-clock timings make reports nondeterministic; off by default.
  bool timings = false;
};

/// Executes the tasks in order. Verification failures become FAIL entries;
/// only infrastructure errors throw.
Report run_scenario(const Scenario& s, const RunOptions& opts = {});

enum class ReportFormat { Json, Text };

json report_to_json(const Report& r);
Report report_from_json(const json& j);
std::string emit_report(const Report& r, ReportFormat format);
/// Writes the report; IoError when the file cannot be written.
void write_report(const Report& r, ReportFormat format, const std::string& path);

/// Seed of task `index`, derived from the scenario seed.
std::uint64_t task_seed(std::uint64_t seed, std::size_t index);

}  // namespace locint
