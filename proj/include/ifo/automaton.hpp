#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ifo/budget.hpp"
#include "ifo/state_set.hpp"

namespace ifo {

using EventId = std::uint32_t;

/// A finite string of events, each an index into some automaton's alphabet.
using Word = std::vector<EventId>;

/// Ordered event names, each flagged observable or unobservable.
class Alphabet {
 public:
  Alphabet() = default;

  /// Appends an event; throws std::invalid_argument on an empty or duplicate name.
  EventId add(std::string name, bool observable = true);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(EventId e) const { return names_.at(e); }
  bool is_observable(EventId e) const { return observable_.at(e); }
  std::optional<EventId> find(std::string_view name) const;

  std::vector<EventId> observable_events() const;
  bool has_unobservable() const;

  /// The observable events only, in their original relative order.
  Alphabet observable_part() const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<bool> observable_;
};

/// Transition structure (Q, Σ, δ) with states 0..n-1.
class Nfa {
 public:
  Nfa() = default;
  Nfa(std::size_t state_count, Alphabet alphabet);

  std::size_t state_count() const noexcept { return states_; }
  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t event_count() const noexcept { return alphabet_.size(); }

  /// Adds q --e--> r; idempotent.
  void add_transition(State q, EventId e, State r);
  void add_transition(State q, std::string_view event, State r);

  /// Successors of q under e, ascending and duplicate-free.
  std::span<const State> successors(State q, EventId e) const {
    return succ_[index(q, e)];
  }

  std::size_t transition_count() const;

  /// Union of successors over every member of `from`.
  StateSet post(const StateSet& from, EventId e) const;

  friend bool operator==(const Nfa&, const Nfa&) = default;

 private:
  std::size_t index(State q, EventId e) const {
    return static_cast<std::size_t>(q) * alphabet_.size() + e;
  }

  std::size_t states_ = 0;
  Alphabet alphabet_;
  std::vector<std::vector<State>> succ_;
};

/// A[I, F]: an automaton together with initial and final state sets.
struct MarkedNfa {
  Nfa nfa;
  StateSet initials;
  StateSet finals;

  MarkedNfa() = default;
  MarkedNfa(Nfa a, StateSet i, StateSet f);

  friend bool operator==(const MarkedNfa&, const MarkedNfa&) = default;
};

/// Reachable, complete subset construction over an automaton's events.
/// Macrostate 0 is the initial one; the empty macrostate, when reachable,
/// is the sink.
struct Observer {
  std::vector<StateSet> macrostates;
  std::vector<std::uint32_t> transitions;  // [macrostate * event_count + event]
  std::vector<bool> accepting;
  std::size_t event_count = 0;

  std::size_t size() const noexcept { return macrostates.size(); }
  std::uint32_t next(std::uint32_t m, EventId e) const {
    return transitions[static_cast<std::size_t>(m) * event_count + e];
  }
};

bool is_deterministic(const Nfa& a);

/// Least superset of `s` closed under unobservable transitions.
StateSet unobservable_closure(const Nfa& a, const StateSet& s);

/// P(A): same states, observable events only, with
/// successor(q, e) = closure(δ(closure({q}), e)).
Nfa project(const Nfa& a);

/// {q | closure({q}) ∩ finals ≠ ∅}; the final set that goes with project(a).
StateSet adjust_finals(const Nfa& a, const StateSet& finals);

/// Disjoint union with offset renaming in part order.
struct UnionResult {
  MarkedNfa automaton;
  /// offsets[i] is added to every state of part i.
  std::vector<State> offsets;

  State map(std::size_t part, State q) const { return offsets.at(part) + q; }
};

/// Throws std::invalid_argument if the parts do not share one alphabet.
UnionResult disjoint_union(std::span<const MarkedNfa> parts);

/// Subset construction from the initial set. Precondition: no unobservable
/// events (project first).
Observer observer(const MarkedNfa& a);

/// Observer over a foreign event list: event i of the result reads
/// `event_map[i]` in `a`, or nothing when unmapped. Each created macrostate
/// ticks `meter`; returns nullopt (with `stop` set) when the meter says stop.
std::optional<Observer> observer_over(const MarkedNfa& a,
                                      std::span<const std::optional<EventId>> event_map,
                                      Meter& meter, StopReason& stop);

/// True iff every cycle of the transition graph is a self-loop.
bool is_partially_ordered(const Nfa& a);

/// Every accepted word of length ≤ max_len, treating each event as a letter.
std::set<Word> enumerate_language(const MarkedNfa& a, std::size_t max_len);

/// Space-separated event names, or "ε" for the empty word.
std::string format_word(const Word& w, const Alphabet& alphabet);

}  // namespace ifo
