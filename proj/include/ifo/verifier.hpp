#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ifo/automaton.hpp"
#include "ifo/budget.hpp"
#include "ifo/instance.hpp"

namespace ifo {

struct VerifyOptions {
  Algorithm algorithm = Algorithm::automatic;
  std::uint64_t element_limit = std::uint64_t{1} << 25;  // trellis
  std::uint64_t node_limit = 10'000'000;                 // observer / antichain
  std::optional<Clock::time_point> deadline;
  /// Use A[I, F] as the nonsecret automaton when Q_NS = I × F.
  bool cartesian_fast_path = true;
};

/// Disjoint union of one copy of `a` per cluster, copy (s, T) marked with
/// initial {s} and finals T. No clusters gives an empty automaton.
MarkedNfa build_side_nfa(const Nfa& a, const ClusteredPairs& clustered);

/// (I, F) with pairs = I × F, if the pair set is exactly a product.
std::optional<std::pair<StateSet, StateSet>> detect_cartesian(const std::vector<StatePair>& pairs,
                                                              std::size_t universe);

/// Projected secret and nonsecret automata; L(secret) = P(L_S) and
/// L(nonsecret) = P(L_NS).
struct InclusionProblem {
  MarkedNfa secret;
  MarkedNfa nonsecret;
  bool cartesian = false;
};

InclusionProblem reduce_to_inclusion(const IfoInstance& inst, bool cartesian_fast_path = true);

/// Opaque iff P(L_S) ⊆ P(L_NS), decided by the selected algorithm.
/// Throws std::invalid_argument on a malformed instance.
Verdict verify(const IfoInstance& inst, const VerifyOptions& options = {});

/// Enumerates the projected secret language up to `bound` and checks each
/// word against the projected nonsecret automaton. A not-opaque answer is
/// always right; opaque is certain once bound ≥ complete_bound(inst).
Verdict verify_bruteforce(const IfoInstance& inst, std::size_t bound);

/// |states(A_S)| · 2^|states(A_NS)| for the general (non-product) reduction,
/// saturating at SIZE_MAX.
std::size_t complete_bound(const IfoInstance& inst);

}  // namespace ifo
