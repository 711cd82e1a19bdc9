#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "perfo/lattice_green.hpp"

namespace perfo {

/// One measured check: passes iff measured <= tolerance (or, for lower bounds,
/// measured >= tolerance when lower_bound is set).
struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
  bool lower_bound = false;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<CheckResult> checks;
  std::string error;  // set when the criterion aborted with an exception
  double seconds = 0.0;

  bool passed() const;
};

/// Flat list of every check, in criterion order.
struct VerifySummary {
  std::vector<CriterionResult> criteria;
  std::uint64_t seed = 0;

  bool passed() const;
  std::string to_json() const;
};

struct AcceptanceOptions {
  std::uint64_t seed = 20240611;
  /// Extra lattice cross-validated in criterion 1 besides the built-in ones.
  std::optional<Lattice> extra_lattice;
  /// Called after each criterion finishes.
  std::function<void(const CriterionResult&)> on_result;
};

int acceptance_criterion_count();
CriterionResult run_criterion(int id, const AcceptanceOptions& options);
VerifySummary run_acceptance(const AcceptanceOptions& options);

/// "PASS [3] title (x checks, 0.12 s)" or "FAIL ..." followed by failing checks.
std::string format_criterion(const CriterionResult& result);

}  // namespace perfo
