#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ifo/instance.hpp"

namespace ifo {

enum class RunResult { opaque, not_opaque, timeout, inconclusive, error };

std::string to_string(RunResult r);
std::optional<RunResult> parse_run_result(std::string_view s);

struct RunRecord {
  std::string instance;
  std::string algorithm;
  RunResult result = RunResult::error;
  double time_ms = 0.0;
  std::uint64_t explored = 0;
  std::uint64_t antichain_peak = 0;
  std::optional<std::size_t> witness_len;
  /// Diagnostic for error rows; not part of the CSV.
  std::string message;
};

struct Budgets {
  std::uint64_t element_limit = std::uint64_t{1} << 25;
  std::uint64_t node_limit = 10'000'000;
};

/// Verifies under a cooperative wall-clock deadline of `timeout_ms`.
/// Exceptions become error records.
RunRecord run_one(const IfoInstance& inst, Algorithm algo, double timeout_ms,
                  const Budgets& budgets = {}, std::string instance_id = {});

/// Every `*.ifo` file in `dir` against every algorithm, up to `jobs` runs at
/// a time. Instance id is the file name without extension. Rows are sorted
/// by instance id, then algorithm name. Unreadable files give error rows.
std::vector<RunRecord> run_suite(const std::string& dir, const std::vector<Algorithm>& algos,
                                 double timeout_ms, std::size_t jobs,
                                 const Budgets& budgets = {});

inline constexpr std::string_view kCsvHeader =
    "instance,algorithm,result,time_ms,explored,antichain_peak,witness_len";

std::string to_csv(const std::vector<RunRecord>& rows);
/// Throws std::invalid_argument on a malformed CSV.
std::vector<RunRecord> parse_csv(std::string_view text);

struct BudgetCounts {
  double budget_ms = 0.0;
  std::size_t unsolved_positive = 0;  // verdict known to be opaque
  std::size_t unsolved_negative = 0;  // verdict known to be not-opaque
  std::size_t unsolved_unknown = 0;   // no algorithm solved the instance
};

struct AlgorithmSummary {
  std::string algorithm;
  std::size_t instances = 0;
  std::size_t solved = 0;
  std::vector<BudgetCounts> budgets;
  /// Over solved runs; nullopt when nothing was solved.
  std::optional<double> avg_ms, max_ms, min_ms;
};

/// Per algorithm and budget, instances not solved within the budget. A run
/// counts as solved within b when its result is opaque or not-opaque and
/// time_ms ≤ b. Algorithms appear in name order.
std::vector<AlgorithmSummary> summarize(const std::vector<RunRecord>& rows,
                                        const std::vector<double>& budgets_ms);

std::string format_summary(const std::vector<AlgorithmSummary>& summary);

}  // namespace ifo
