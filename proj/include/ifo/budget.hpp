#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace ifo {

using Clock = std::chrono::steady_clock;

/// Why a bounded search stopped before reaching a verdict.
enum class StopReason { none, budget, deadline };

/// Raised by operations that have no distinguished "inconclusive" result of
/// their own when a limit is hit.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Counts work units against a hard cap and polls an optional wall-clock
/// deadline every `kPollInterval` units.
class Meter {
 public:
  static constexpr std::uint64_t kPollInterval = 1024;

  Meter(std::uint64_t limit, std::optional<Clock::time_point> deadline)
      : limit_(limit), deadline_(deadline) {}

  /// Records one unit of work; returns the reason to stop, if any.
  StopReason tick() {
    ++count_;
    if (count_ > limit_) return StopReason::budget;
    if (deadline_ && count_ % kPollInterval == 0 && Clock::now() >= *deadline_)
      return StopReason::deadline;
    return StopReason::none;
  }

  /// Deadline poll without consuming budget.
  bool expired() const { return deadline_ && Clock::now() >= *deadline_; }

  std::uint64_t count() const noexcept { return count_; }

 private:
  std::uint64_t limit_;
  std::optional<Clock::time_point> deadline_;
  std::uint64_t count_ = 0;
};

}  // namespace ifo
