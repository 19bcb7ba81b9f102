#include "ifo/automaton.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>

namespace ifo {

EventId Alphabet::add(std::string name, bool observable) {
  if (name.empty()) throw std::invalid_argument("event name must be nonempty");
  if (find(name)) throw std::invalid_argument("duplicate event name '" + name + "'");
  names_.push_back(std::move(name));
  observable_.push_back(observable);
  return static_cast<EventId>(names_.size() - 1);
}

std::optional<EventId> Alphabet::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<EventId>(i);
  return std::nullopt;
}

std::vector<EventId> Alphabet::observable_events() const {
  std::vector<EventId> out;
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (observable_[i]) out.push_back(static_cast<EventId>(i));
  return out;
}

bool Alphabet::has_unobservable() const {
  return std::find(observable_.begin(), observable_.end(), false) != observable_.end();
}

Alphabet Alphabet::observable_part() const {
  Alphabet out;
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (observable_[i]) out.add(names_[i], true);
  return out;
}

Nfa::Nfa(std::size_t state_count, Alphabet alphabet)
    : states_(state_count),
      alphabet_(std::move(alphabet)),
      succ_(state_count * alphabet_.size()) {}

void Nfa::add_transition(State q, EventId e, State r) {
  if (q >= states_ || r >= states_)
    throw std::out_of_range("transition endpoint out of range");
  if (e >= alphabet_.size()) throw std::out_of_range("event index out of range");
  auto& list = succ_[index(q, e)];
  auto it = std::lower_bound(list.begin(), list.end(), r);
  if (it == list.end() || *it != r) list.insert(it, r);
}

void Nfa::add_transition(State q, std::string_view event, State r) {
  const auto e = alphabet_.find(event);
  if (!e) throw std::invalid_argument("unknown event '" + std::string(event) + "'");
  add_transition(q, *e, r);
}

std::size_t Nfa::transition_count() const {
  std::size_t c = 0;
  for (const auto& l : succ_) c += l.size();
  return c;
}

StateSet Nfa::post(const StateSet& from, EventId e) const {
  StateSet out(states_);
  from.for_each([&](State q) {
    for (State r : successors(q, e)) out.insert(r);
  });
  return out;
}

MarkedNfa::MarkedNfa(Nfa a, StateSet i, StateSet f)
    : nfa(std::move(a)), initials(std::move(i)), finals(std::move(f)) {
  if (initials.universe() != nfa.state_count() || finals.universe() != nfa.state_count())
    throw std::invalid_argument("initial/final sets must range over the automaton's states");
}

bool is_deterministic(const Nfa& a) {
  for (State q = 0; q < a.state_count(); ++q)
    for (EventId e = 0; e < a.event_count(); ++e)
      if (a.successors(q, e).size() > 1) return false;
  return true;
}

StateSet unobservable_closure(const Nfa& a, const StateSet& s) {
  StateSet closed = s;
  std::vector<State> stack = s.to_vector();
  std::vector<EventId> hidden;
  for (EventId e = 0; e < a.event_count(); ++e)
    if (!a.alphabet().is_observable(e)) hidden.push_back(e);
  while (!stack.empty()) {
    const State q = stack.back();
    stack.pop_back();
    for (EventId e : hidden)
      for (State r : a.successors(q, e))
        if (!closed.contains(r)) {
          closed.insert(r);
          stack.push_back(r);
        }
  }
  return closed;
}

namespace {

std::vector<StateSet> state_closures(const Nfa& a) {
  std::vector<StateSet> out;
  out.reserve(a.state_count());
  for (State q = 0; q < a.state_count(); ++q)
    out.push_back(unobservable_closure(a, StateSet(a.state_count(), {q})));
  return out;
}

}  // namespace

Nfa project(const Nfa& a) {
  const auto& sigma = a.alphabet();
  Nfa out(a.state_count(), sigma.observable_part());
  if (!sigma.has_unobservable()) {
    for (State q = 0; q < a.state_count(); ++q)
      for (EventId e = 0; e < a.event_count(); ++e)
        for (State r : a.successors(q, e)) out.add_transition(q, e, r);
    return out;
  }

  const auto closures = state_closures(a);
  const auto observable = sigma.observable_events();
  for (State q = 0; q < a.state_count(); ++q) {
    for (EventId k = 0; k < observable.size(); ++k) {
      StateSet step = a.post(closures[q], observable[k]);
      StateSet target(a.state_count());
      step.for_each([&](State r) { target |= closures[r]; });
      target.for_each([&](State r) { out.add_transition(q, k, r); });
    }
  }
  return out;
}

StateSet adjust_finals(const Nfa& a, const StateSet& finals) {
  if (!a.alphabet().has_unobservable()) return finals;
  StateSet out(a.state_count());
  for (State q = 0; q < a.state_count(); ++q)
    if (unobservable_closure(a, StateSet(a.state_count(), {q})).intersects(finals))
      out.insert(q);
  return out;
}

UnionResult disjoint_union(std::span<const MarkedNfa> parts) {
  if (parts.empty()) throw std::invalid_argument("disjoint_union needs at least one part");
  const Alphabet& sigma = parts.front().nfa.alphabet();
  std::size_t total = 0;
  std::vector<State> offsets;
  for (const auto& p : parts) {
    if (!(p.nfa.alphabet() == sigma))
      throw std::invalid_argument("disjoint_union parts have mismatched alphabets");
    offsets.push_back(static_cast<State>(total));
    total += p.nfa.state_count();
  }

  Nfa nfa(total, sigma);
  StateSet initials(total), finals(total);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& p = parts[i];
    const State off = offsets[i];
    for (State q = 0; q < p.nfa.state_count(); ++q)
      for (EventId e = 0; e < p.nfa.event_count(); ++e)
        for (State r : p.nfa.successors(q, e)) nfa.add_transition(q + off, e, r + off);
    p.initials.for_each([&](State q) { initials.insert(q + off); });
    p.finals.for_each([&](State q) { finals.insert(q + off); });
  }
  return {MarkedNfa(std::move(nfa), std::move(initials), std::move(finals)),
          std::move(offsets)};
}

std::optional<Observer> observer_over(const MarkedNfa& a,
                                      std::span<const std::optional<EventId>> event_map,
                                      Meter& meter, StopReason& stop) {
  if (a.nfa.alphabet().has_unobservable())
    throw std::invalid_argument("observer requires an automaton without unobservable events");

  Observer obs;
  obs.event_count = event_map.size();
  std::unordered_map<StateSet, std::uint32_t, StateSetHash> index;

  auto intern = [&](StateSet s) -> std::optional<std::uint32_t> {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    if (auto r = meter.tick(); r != StopReason::none) {
      stop = r;
      return std::nullopt;
    }
    const auto id = static_cast<std::uint32_t>(obs.macrostates.size());
    obs.accepting.push_back(s.intersects(a.finals));
    index.emplace(s, id);
    obs.macrostates.push_back(std::move(s));
    return id;
  };

  if (!intern(a.initials)) return std::nullopt;
  // Macrostates are appended in discovery order, so the vector is the BFS queue.
  for (std::size_t m = 0; m < obs.macrostates.size(); ++m) {
    for (std::size_t e = 0; e < event_map.size(); ++e) {
      StateSet next = event_map[e] ? a.nfa.post(obs.macrostates[m], *event_map[e])
                                   : StateSet(a.nfa.state_count());
      const auto id = intern(std::move(next));
      if (!id) return std::nullopt;
      obs.transitions.push_back(*id);
    }
  }
  stop = StopReason::none;
  return obs;
}

Observer observer(const MarkedNfa& a) {
  std::vector<std::optional<EventId>> identity;
  for (EventId e = 0; e < a.nfa.event_count(); ++e) identity.emplace_back(e);
  Meter unbounded(UINT64_MAX, std::nullopt);
  StopReason stop = StopReason::none;
  return *observer_over(a, identity, unbounded, stop);
}

bool is_partially_ordered(const Nfa& a) {
  // Iterative Tarjan; any strongly connected component with two or more
  // states contains a cycle that is not a self-loop.
  const std::size_t n = a.state_count();
  constexpr std::uint32_t unvisited = UINT32_MAX;
  std::vector<std::uint32_t> order(n, unvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<State> stack;
  std::uint32_t counter = 0;

  std::vector<std::vector<State>> adj(n);
  for (State q = 0; q < n; ++q) {
    for (EventId e = 0; e < a.event_count(); ++e)
      for (State r : a.successors(q, e))
        if (r != q) adj[q].push_back(r);
  }

  struct Frame {
    State q;
    std::size_t next;
  };
  for (State root = 0; root < n; ++root) {
    if (order[root] != unvisited) continue;
    std::vector<Frame> calls{{root, 0}};
    order[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!calls.empty()) {
      Frame& f = calls.back();
      if (f.next < adj[f.q].size()) {
        const State r = adj[f.q][f.next++];
        if (order[r] == unvisited) {
          order[r] = low[r] = counter++;
          stack.push_back(r);
          on_stack[r] = true;
          calls.push_back({r, 0});
        } else if (on_stack[r]) {
          low[f.q] = std::min(low[f.q], order[r]);
        }
        continue;
      }
      const State q = f.q;
      calls.pop_back();
      if (!calls.empty()) low[calls.back().q] = std::min(low[calls.back().q], low[q]);
      if (low[q] == order[q]) {
        std::size_t size = 0;
        State top;
        do {
          top = stack.back();
          stack.pop_back();
          on_stack[top] = false;
          ++size;
        } while (top != q);
        if (size > 1) return false;
      }
    }
  }
  return true;
}

std::set<Word> enumerate_language(const MarkedNfa& a, std::size_t max_len) {
  std::set<Word> accepted;
  // Breadth-first over (prefix, reached set). A prefix whose reached set is
  // empty has no accepted extension and is dropped.
  std::deque<std::pair<Word, StateSet>> frontier;
  frontier.emplace_back(Word{}, a.initials);
  while (!frontier.empty()) {
    auto [w, here] = std::move(frontier.front());
    frontier.pop_front();
    if (here.intersects(a.finals)) accepted.insert(w);
    if (w.size() == max_len) continue;
    for (EventId e = 0; e < a.nfa.event_count(); ++e) {
      StateSet next = a.nfa.post(here, e);
      if (next.empty()) continue;
      Word longer = w;
      longer.push_back(e);
      frontier.emplace_back(std::move(longer), std::move(next));
    }
  }
  return accepted;
}

std::string format_word(const Word& w, const Alphabet& alphabet) {
  if (w.empty()) return "ε";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += alphabet.name(w[i]);
  }
  return out;
}

}  // namespace ifo
