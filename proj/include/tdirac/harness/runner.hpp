#pragma once

#include "tdirac/harness/document.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tdirac::harness {

struct SamplePlan {
  std::uint64_t seed = 0;
  std::size_t count = 25;
  std::int64_t range = 10;
  std::int64_t max_den = 7;
  double tol = 1e-9;      // relative SVD threshold
  double fd_step = 1e-5;  // central-difference step
  double fd_tol = 1e-6;   // relative finite-difference error bound
  bool timing = false;    // wall-clock per entry (breaks byte-identical output)

  /// Throws std::invalid_argument on a non-positive tolerance or count.
  void validate() const;
  dirac::CheckContext context(dirac::DecisionSink* sink = nullptr) const;
};

/// One line of a report. Checks pass or fail; properties only record a
/// classification (they fail the run only through an `expect` entry).
struct ReportEntry {
  enum class Kind { Check, Property };
  Kind kind = Kind::Check;
  std::string name; // "<task>.<what>"
  bool value = true;
  std::string detail;
  std::optional<double> millis;
};

struct Report {
  std::string document;
  std::uint64_t seed = 0;
  std::size_t points = 0;
  std::vector<ReportEntry> entries;

  bool passed() const;
  std::string text() const;
  std::string json() const;
};

/// Runs `tasks` in order, continuing past failures, then appends the
/// expectation checks and the numeric-oracle entries.
Report run_tasks(const InstanceDocument& doc, std::span<const std::string> tasks, const SamplePlan& plan);
/// run_tasks over the document's task list; an empty list gives an empty report.
Report run_suite(const InstanceDocument& doc, const SamplePlan& plan);

} // namespace tdirac::harness
