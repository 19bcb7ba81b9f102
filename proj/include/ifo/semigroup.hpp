#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ifo/automaton.hpp"
#include "ifo/binary_matrix.hpp"
#include "ifo/budget.hpp"
#include "ifo/instance.hpp"

namespace ifo {

enum class ClosureStatus {
  complete,        // every product has been generated
  stopped,         // the visitor asked to stop
  limit_exceeded,  // element_limit would have been exceeded
  deadline,        // the wall-clock deadline passed
};

struct ClosureOptions {
  std::uint64_t element_limit = std::uint64_t{1} << 25;
  std::optional<Clock::time_point> deadline;
};

/// Elements of the semigroup generated by a list of matrices, in discovery
/// order, each with a shortest generator word found by the breadth-first
/// closure.
///
/// Storage is a single packed arena plus an open-addressing index of element
/// ids, so an element costs ceil(n²/64) words plus three 32-bit slots.
class SemigroupClosure {
 public:
  std::size_t size() const noexcept { return parent_.size(); }
  std::size_t dimension() const noexcept { return n_; }
  std::size_t generator_count() const noexcept { return generator_count_; }
  ClosureStatus status() const noexcept { return status_; }
  bool complete() const noexcept { return status_ == ClosureStatus::complete; }
  /// Boolean products computed (the closure's unit of work).
  std::uint64_t multiplications() const noexcept { return multiplications_; }

  MatrixView element(std::size_t i) const {
    return {n_, std::span<const std::uint64_t>(arena_).subspan(i * words_, words_)};
  }
  std::optional<std::size_t> find(const BinaryMatrix& m) const;
  bool contains(const BinaryMatrix& m) const { return find(m).has_value(); }

  /// Generator indices whose left-to-right product is element i.
  std::vector<std::size_t> witness(std::size_t i) const;

 private:
  friend SemigroupClosure generate_semigroup(std::span<const BinaryMatrix>,
                                             const std::function<bool(MatrixView, std::size_t)>&,
                                             const ClosureOptions&);
  static constexpr std::uint32_t kEmpty = UINT32_MAX;
  static constexpr std::uint32_t kNone = UINT32_MAX;

  /// Looks up the candidate held in the arena's scratch slot: its id, or
  /// kEmpty with `slot` set to the free index position for commit_scratch.
  std::uint32_t probe_scratch(std::size_t& slot);
  void commit_scratch(std::size_t slot);
  std::span<std::uint64_t> scratch();
  void grow_index();
  bool equal(std::uint32_t id, std::span<const std::uint64_t> w) const;

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::size_t generator_count_ = 0;
  ClosureStatus status_ = ClosureStatus::complete;
  std::uint64_t multiplications_ = 0;
  std::vector<std::uint64_t> arena_;  // size() elements followed by one scratch slot
  std::vector<std::uint32_t> slots_;
  std::vector<std::uint32_t> parent_;     // kNone for generators
  std::vector<std::uint32_t> generator_;  // last generator of the witness
};

/// Called once per distinct element in discovery order; return false to stop.
using ElementVisitor = std::function<bool(MatrixView element, std::size_t index)>;

/// Breadth-first closure: each element, in discovery order, is multiplied on
/// the right by every generator. Throws std::invalid_argument on an empty or
/// non-square generator list.
SemigroupClosure generate_semigroup(std::span<const BinaryMatrix> generators,
                                    const ElementVisitor& visitor = {},
                                    const ClosureOptions& options = {});

/// Relation matrix of event e: entry (i, j) = 1 iff j ∈ δ(i, e).
/// Throws std::invalid_argument if the automaton has unobservable events.
BinaryMatrix matrix_of_event(const Nfa& projected, EventId e);
BinaryMatrix matrix_of_event(const Nfa& projected, std::string_view event);

/// One observable event per matrix, i --e--> j iff m(e)_ij = 1. Events are
/// named by `names` when given, otherwise a, b, c, ... (or e0, e1, ... past 26).
Nfa automaton_from_matrices(std::span<const BinaryMatrix> matrices,
                            std::span<const std::string> names = {});

/// Semigroup-based IFO check over the projected automaton. The empty
/// observation is checked against the identity first; then each generated
/// element in turn, stopping at the first one that meets a secret pair
/// without meeting any nonsecret pair.
Verdict trellis_verify(const IfoInstance& inst, const ClosureOptions& options = {});

struct CorrespondenceCounts {
  std::size_t semigroup_size = 0;
  std::size_t observer_nonempty_word_states = 0;
};

/// |B_P(A)| next to the number of observer macrostates of A' (n copies of
/// P(A), copy i started in {i}) reached by at least one nonempty word.
/// Throws BudgetExceeded when the closure exceeds `element_limit`.
CorrespondenceCounts semigroup_observer_correspondence(
    const Nfa& a, std::uint64_t element_limit = std::uint64_t{1} << 25);

}  // namespace ifo
