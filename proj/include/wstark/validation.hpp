// Self-check suite: every module invariant evaluated as (name, measured
// residual, tolerance, verdict).
#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace wstark {

struct CheckResult {
  std::string name;
  double residual = 0;
  double tolerance = 0;
  bool passed = false;
  double seconds = 0;
};

struct ValidationOptions {
  /// Per-check tolerance overrides, keyed by check name.
  std::map<std::string, double> tolerances;
  /// Fault injection: evolve the parabolic-trajectory check under -F.
  bool flip_force_sign = false;
  /// Run only these checks (all when empty).
  std::vector<std::string> only;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

/// Names and default tolerances of all checks, in execution order.
std::vector<std::pair<std::string, double>> validation_checks();

/// Throws std::invalid_argument for unknown check names in the options.
ValidationReport run_validation(const ValidationOptions& options,
                                const std::function<void(const CheckResult&)>& progress = {});

/// One report line: `name residual tolerance PASS|FAIL`.
std::string format_check(const CheckResult& check);

}  // namespace wstark
