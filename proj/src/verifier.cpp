#include "ifo/verifier.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>

#include "ifo/inclusion.hpp"
#include "ifo/semigroup.hpp"

namespace ifo {

MarkedNfa build_side_nfa(const Nfa& a, const ClusteredPairs& clustered) {
  if (clustered.empty()) {
    Nfa empty(0, a.alphabet());
    return MarkedNfa(std::move(empty), StateSet(0), StateSet(0));
  }
  const std::size_t n = a.state_count();
  std::vector<MarkedNfa> copies;
  copies.reserve(clustered.size());
  for (const auto& c : clustered) copies.emplace_back(a, StateSet(n, {c.source}), c.targets);
  return disjoint_union(copies).automaton;
}

std::optional<std::pair<StateSet, StateSet>> detect_cartesian(const std::vector<StatePair>& pairs,
                                                              std::size_t universe) {
  StateSet sources(universe), targets(universe);
  for (const auto& [s, f] : pairs) {
    sources.insert(s);
    targets.insert(f);
  }
  // pairs ⊆ I × F always holds; equality is a cardinality check.
  std::vector<StatePair> unique = pairs;
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  if (unique.size() != sources.count() * targets.count()) return std::nullopt;
  return std::pair{std::move(sources), std::move(targets)};
}

InclusionProblem reduce_to_inclusion(const IfoInstance& inst, bool cartesian_fast_path) {
  inst.validate();
  const Nfa& raw = inst.automaton;
  const std::size_t n = raw.state_count();
  const Nfa projected = project(raw);

  InclusionProblem p;
  p.secret = build_side_nfa(projected, adjust_targets(raw, cluster_pairs(inst.secret_pairs, n)));
  if (cartesian_fast_path && !inst.nonsecret_pairs.empty()) {
    if (auto product = detect_cartesian(inst.nonsecret_pairs, n)) {
      p.nonsecret = MarkedNfa(projected, std::move(product->first), adjust_finals(raw, product->second));
      p.cartesian = true;
      return p;
    }
  }
  p.nonsecret =
      build_side_nfa(projected, adjust_targets(raw, cluster_pairs(inst.nonsecret_pairs, n)));
  return p;
}

namespace {

/// Shortest accepted word (breadth-first over states), if any.
std::optional<Word> shortest_accepted(const MarkedNfa& a) {
  const std::size_t n = a.nfa.state_count();
  constexpr State none = std::numeric_limits<State>::max();
  std::vector<State> parent(n, none);
  std::vector<EventId> via(n, 0);
  std::vector<bool> seen(n, false);
  std::deque<State> queue;
  for (State s : a.initials.to_vector()) {
    seen[s] = true;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    const State q = queue.front();
    queue.pop_front();
    if (a.finals.contains(q)) {
      Word w;
      for (State at = q; parent[at] != none; at = parent[at]) w.push_back(via[at]);
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (EventId e = 0; e < a.nfa.event_count(); ++e)
      for (State r : a.nfa.successors(q, e))
        if (!seen[r]) {
          seen[r] = true;
          parent[r] = q;
          via[r] = e;
          queue.push_back(r);
        }
  }
  return std::nullopt;
}

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

}  // namespace

Verdict verify(const IfoInstance& inst, const VerifyOptions& options) {
  inst.validate();
  if (options.algorithm == Algorithm::trellis) {
    ClosureOptions closure;
    closure.element_limit = options.element_limit;
    closure.deadline = options.deadline;
    return trellis_verify(inst, closure);
  }

  const auto started = Clock::now();
  Verdict v;
  v.stats.algorithm = to_string(options.algorithm);
  auto finish = [&] {
    v.stats.wall_ms = elapsed_ms(started);
    return v;
  };

  if (inst.secret_pairs.empty()) {
    v.result = Outcome::opaque;
    return finish();
  }

  const InclusionProblem problem = reduce_to_inclusion(inst, options.cartesian_fast_path);
  v.stats.cartesian = problem.cartesian;
  v.stats.right_states = problem.nonsecret.nfa.state_count();

  if (inst.nonsecret_pairs.empty()) {
    if (auto w = shortest_accepted(problem.secret)) {
      v.result = Outcome::not_opaque;
      v.witness = std::move(w);
    } else {
      v.result = Outcome::opaque;
    }
    return finish();
  }

  InclusionOptions io;
  io.node_limit = options.node_limit;
  io.deadline = options.deadline;
  const InclusionVerdict iv = options.algorithm == Algorithm::observer
                                  ? observer_inclusion(problem.secret, problem.nonsecret, io)
                                  : antichain_inclusion(problem.secret, problem.nonsecret, io);
  v.stats.explored = iv.stats.expanded;
  v.stats.macrostates = iv.stats.macrostates;
  v.stats.antichain_peak = iv.stats.antichain_peak;
  v.stats.stop = iv.stop;
  if (iv.inconclusive()) {
    v.result = Outcome::inconclusive;
  } else if (*iv.holds) {
    v.result = Outcome::opaque;
  } else {
    v.result = Outcome::not_opaque;
    v.witness = iv.counterexample;
  }
  return finish();
}

Verdict verify_bruteforce(const IfoInstance& inst, std::size_t bound) {
  const auto started = Clock::now();
  Verdict v;
  v.stats.algorithm = "bruteforce";
  const InclusionProblem problem = reduce_to_inclusion(inst, false);
  v.stats.right_states = problem.nonsecret.nfa.state_count();

  const auto words = enumerate_language(problem.secret, bound);
  v.stats.explored = words.size();
  std::vector<Word> ordered(words.begin(), words.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const Word& a, const Word& b) { return a.size() < b.size(); });
  v.result = Outcome::opaque;
  for (const auto& w : ordered) {
    if (!check_membership(w, problem.nonsecret)) {
      v.result = Outcome::not_opaque;
      v.witness = w;
      break;
    }
  }
  v.stats.wall_ms = elapsed_ms(started);
  return v;
}

std::size_t complete_bound(const IfoInstance& inst) {
  const std::size_t n = inst.automaton.state_count();
  const std::size_t left = cluster_pairs(inst.secret_pairs, n).size() * n;
  const std::size_t right = cluster_pairs(inst.nonsecret_pairs, n).size() * n;
  constexpr std::size_t max = std::numeric_limits<std::size_t>::max();
  if (right >= 63) return max;
  const std::size_t pow = std::size_t{1} << right;
  if (left != 0 && pow > max / left) return max;
  return left * pow;
}

}  // namespace ifo
