#include "ifo/inclusion.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_set>
#include <vector>

namespace ifo {

namespace {

constexpr std::uint32_t kRoot = UINT32_MAX;

std::vector<std::optional<EventId>> match_events(const Alphabet& left, const Alphabet& right) {
  std::vector<std::optional<EventId>> map;
  map.reserve(left.size());
  for (EventId e = 0; e < left.size(); ++e) map.push_back(right.find(left.name(e)));
  return map;
}

void require_projected(const MarkedNfa& a, const char* side) {
  if (a.nfa.alphabet().has_unobservable())
    throw std::invalid_argument(std::string("inclusion: ") + side +
                                " automaton has unobservable events; project it first");
}

/// Parent-pointer trail shared by both searches.
struct Trail {
  std::vector<std::uint32_t> parent;
  std::vector<EventId> event;

  std::uint32_t add(std::uint32_t p, EventId e) {
    parent.push_back(p);
    event.push_back(e);
    return static_cast<std::uint32_t>(parent.size() - 1);
  }
  Word word_to(std::uint32_t id) const {
    Word w;
    for (; parent[id] != kRoot; id = parent[id]) w.push_back(event[id]);
    std::reverse(w.begin(), w.end());
    return w;
  }
};

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

}  // namespace

InclusionVerdict observer_inclusion(const MarkedNfa& left, const MarkedNfa& right,
                                    const InclusionOptions& options) {
  const auto started = Clock::now();
  require_projected(left, "left");
  require_projected(right, "right");
  InclusionVerdict v;
  auto finish = [&] {
    v.stats.wall_ms = elapsed_ms(started);
    return v;
  };

  const auto map = match_events(left.nfa.alphabet(), right.nfa.alphabet());
  Meter build_meter(options.node_limit, options.deadline);
  StopReason stop = StopReason::none;
  const auto obs = observer_over(right, map, build_meter, stop);
  if (!obs) {
    v.stop = stop;
    v.stats.macrostates = build_meter.count();
    return finish();
  }
  v.stats.macrostates = obs->size();

  const std::uint64_t width = obs->size();
  std::unordered_set<std::uint64_t> seen;
  std::vector<std::pair<State, std::uint32_t>> nodes;
  Trail trail;
  std::deque<std::uint32_t> queue;

  // Returns true when the new pair is a counterexample end point.
  auto visit = [&](State s, std::uint32_t m, std::uint32_t parent, EventId e) -> bool {
    if (!seen.insert(static_cast<std::uint64_t>(s) * width + m).second) return false;
    const std::uint32_t id = trail.add(parent, e);
    nodes.emplace_back(s, m);
    queue.push_back(id);
    if (left.finals.contains(s) && !obs->accepting[m]) {
      v.holds = false;
      v.counterexample = trail.word_to(id);
      return true;
    }
    return false;
  };

  for (State s : left.initials.to_vector())
    if (visit(s, 0, kRoot, 0)) return finish();

  Meter meter(options.node_limit, options.deadline);
  while (!queue.empty()) {
    const std::uint32_t id = queue.front();
    queue.pop_front();
    if (auto r = meter.tick(); r != StopReason::none) {
      v.stop = r;
      return finish();
    }
    ++v.stats.expanded;
    const auto [s, m] = nodes[id];
    for (EventId e = 0; e < left.nfa.event_count(); ++e) {
      const std::uint32_t next = obs->next(m, e);
      for (State t : left.nfa.successors(s, e))
        if (visit(t, next, id, e)) return finish();
    }
  }
  v.holds = true;
  return finish();
}

InclusionVerdict antichain_inclusion(const MarkedNfa& left, const MarkedNfa& right,
                                     const InclusionOptions& options) {
  const auto started = Clock::now();
  require_projected(left, "left");
  require_projected(right, "right");
  InclusionVerdict v;
  auto finish = [&] {
    v.stats.wall_ms = elapsed_ms(started);
    return v;
  };

  const auto map = match_events(left.nfa.alphabet(), right.nfa.alphabet());
  const std::size_t right_n = right.nfa.state_count();

  constexpr std::size_t kExpanded = SIZE_MAX;
  struct Node {
    ProductPair pair;
    bool dead = false;
    std::size_t slot = kExpanded;  // position in `order` until expanded
  };
  std::vector<Node> nodes;
  Trail trail;
  std::vector<std::vector<std::uint32_t>> kept(left.nfa.state_count());
  // FIFO worklist as a vector with a read cursor, so slots can be reused.
  std::vector<std::uint32_t> order;
  std::size_t head = 0;
  std::uint64_t live = 0;

  auto check_store = [&](State s) {
    const auto& ids = kept[s];
    for (std::size_t i = 0; i < ids.size(); ++i)
      for (std::size_t j = 0; j < ids.size(); ++j)
        if (i != j && nodes[ids[i]].pair.right.is_subset_of(nodes[ids[j]].pair.right))
          throw std::logic_error("antichain invariant violated: comparable macrostates retained");
  };

  // Returns true when the inserted pair is a counterexample end point.
  auto offer = [&](State s, Macrostate r, std::uint32_t parent, EventId e) -> bool {
    auto& ids = kept[s];
    for (std::uint32_t id : ids)
      if (nodes[id].pair.right.is_subset_of(r)) return false;
    // Evicted pairs are flagged dead; the earliest pending one hands its
    // worklist slot to the newcomer, the rest are skipped when popped.
    std::size_t slot = kExpanded;
    std::erase_if(ids, [&](std::uint32_t id) {
      if (!r.is_subset_of(nodes[id].pair.right)) return false;
      nodes[id].dead = true;
      slot = std::min(slot, nodes[id].slot);
      --live;
      return true;
    });
    const bool bad = left.finals.contains(s) && !r.intersects(right.finals);
    const std::uint32_t id = trail.add(parent, e);
    if (slot == kExpanded) {
      slot = order.size();
      order.push_back(id);
    } else {
      order[slot] = id;
    }
    nodes.push_back({{s, std::move(r)}, false, slot});
    ids.push_back(id);
    ++live;
    v.stats.antichain_peak = std::max(v.stats.antichain_peak, live);
    ++v.stats.macrostates;
    if (options.check_invariants) check_store(s);
    if (bad) {
      v.holds = false;
      v.counterexample = trail.word_to(id);
    }
    return bad;
  };

  for (State s : left.initials.to_vector())
    if (offer(s, right.initials, kRoot, 0)) return finish();

  Meter meter(options.node_limit, options.deadline);
  while (head < order.size()) {
    const std::uint32_t id = order[head++];
    if (nodes[id].dead) continue;
    nodes[id].slot = kExpanded;
    if (auto r = meter.tick(); r != StopReason::none) {
      v.stop = r;
      return finish();
    }
    ++v.stats.expanded;
    const State s = nodes[id].pair.left;
    for (EventId e = 0; e < left.nfa.event_count(); ++e) {
      const auto succ = left.nfa.successors(s, e);
      if (succ.empty()) continue;
      // `nodes` may reallocate inside offer(), so read the macrostate first.
      const Macrostate next = map[e] ? right.nfa.post(nodes[id].pair.right, *map[e])
                                     : Macrostate(right_n);
      for (State t : succ)
        if (offer(t, next, id, e)) return finish();
    }
  }
  v.holds = true;
  return finish();
}

bool subsumes(const ProductPair& kept, const ProductPair& candidate) {
  return kept.left == candidate.left && kept.right.is_subset_of(candidate.right);
}

bool check_membership(const Word& word, const MarkedNfa& a) {
  StateSet here = a.initials;
  for (EventId e : word) {
    if (e >= a.nfa.event_count()) throw std::invalid_argument("check_membership: unknown event");
    here = a.nfa.post(here, e);
    if (here.empty()) return false;
  }
  return here.intersects(a.finals);
}

}  // namespace ifo
