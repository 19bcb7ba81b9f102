#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ifo/automaton.hpp"
#include "ifo/budget.hpp"

namespace ifo {

using StatePair = std::pair<State, State>;

/// An IFO question: automaton (observability lives in its alphabet) plus
/// secret and nonsecret (source, target) pair sets. Pair lists are kept
/// sorted and duplicate-free.
struct IfoInstance {
  Nfa automaton;
  std::vector<StatePair> secret_pairs;
  std::vector<StatePair> nonsecret_pairs;

  IfoInstance() = default;
  IfoInstance(Nfa a, std::vector<StatePair> secret, std::vector<StatePair> nonsecret);

  /// Throws std::invalid_argument when a pair component is out of range.
  void validate() const;

  friend bool operator==(const IfoInstance&, const IfoInstance&) = default;
};

/// One (s, T) entry of a pair relation grouped by source.
struct Cluster {
  State source;
  StateSet targets;

  friend bool operator==(const Cluster&, const Cluster&) = default;
};

/// Pairs grouped by source state, ascending by source; each T nonempty.
using ClusteredPairs = std::vector<Cluster>;

/// T(s) = {f | (s, f) ∈ pairs}. `universe` is the automaton's state count.
ClusteredPairs cluster_pairs(const std::vector<StatePair>& pairs, std::size_t universe);

/// Replaces every T by adjust_finals(a, T).
ClusteredPairs adjust_targets(const Nfa& a, ClusteredPairs clusters);

enum class Algorithm { trellis, observer, antichain, automatic };

std::string to_string(Algorithm a);
/// Accepts "trellis", "observer", "antichain", "auto".
std::optional<Algorithm> parse_algorithm(const std::string& name);

enum class Outcome { opaque, not_opaque, inconclusive };

std::string to_string(Outcome o);

struct VerifyStats {
  std::string algorithm;
  /// Semigroup elements (trellis) or expanded product pairs (inclusion).
  std::uint64_t explored = 0;
  /// Observer macrostates built (observer) or created (antichain).
  std::uint64_t macrostates = 0;
  std::uint64_t antichain_peak = 0;
  /// States of the right-hand (nonsecret) automaton handed to the engine.
  std::size_t right_states = 0;
  bool cartesian = false;
  StopReason stop = StopReason::none;
  double wall_ms = 0.0;
};

/// Verification result. A not-opaque verdict carries an observation word
/// over the projected (observable-only) alphabet.
struct Verdict {
  Outcome result = Outcome::inconclusive;
  std::optional<Word> witness;
  VerifyStats stats;
};

}  // namespace ifo
