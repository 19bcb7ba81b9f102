#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "ifo/automaton.hpp"
#include "ifo/budget.hpp"

namespace ifo {

/// A right-hand macrostate; StateSet iterates ascending, so it is already the
/// canonical sorted form.
using Macrostate = StateSet;

/// Search node of the product of the left automaton with the (complemented)
/// subset construction of the right one.
struct ProductPair {
  State left;
  Macrostate right;

  friend bool operator==(const ProductPair&, const ProductPair&) = default;
};

struct InclusionStats {
  std::uint64_t expanded = 0;     // product pairs popped and expanded
  std::uint64_t macrostates = 0;  // observer states built / pairs created
  std::uint64_t antichain_peak = 0;
  double wall_ms = 0.0;
};

struct InclusionVerdict {
  /// L(left) ⊆ L(right); nullopt when the search was abandoned.
  std::optional<bool> holds;
  /// Word over the left alphabet, accepted by left and rejected by right.
  std::optional<Word> counterexample;
  InclusionStats stats;
  StopReason stop = StopReason::none;

  bool inconclusive() const noexcept { return !holds.has_value(); }
};

struct InclusionOptions {
  /// Cap on expanded pairs (and, for the observer method, on macrostates).
  std::uint64_t node_limit = 10'000'000;
  std::optional<Clock::time_point> deadline;
  /// Antichain only: re-check the store's ⊆-minimality after every insertion
  /// and throw std::logic_error on a violation.
  bool check_invariants = false;
};

/// Full subset construction of `right`, then breadth-first search of its
/// product with `left` for a pair (accepting left state, rejecting
/// macrostate). Both automata must be free of unobservable events; events are
/// matched by name.
InclusionVerdict observer_inclusion(const MarkedNfa& left, const MarkedNfa& right,
                                    const InclusionOptions& options = {});

/// Breadth-first product search that keeps, per left state, only the
/// ⊆-minimal right macrostates seen so far. Same contract as
/// observer_inclusion.
InclusionVerdict antichain_inclusion(const MarkedNfa& left, const MarkedNfa& right,
                                     const InclusionOptions& options = {});

/// Same left state and kept.right ⊆ candidate.right.
bool subsumes(const ProductPair& kept, const ProductPair& candidate);

/// Macrostate simulation of `word` from the initial set. Throws
/// std::invalid_argument on an event index outside a's alphabet.
bool check_membership(const Word& word, const MarkedNfa& a);

}  // namespace ifo
