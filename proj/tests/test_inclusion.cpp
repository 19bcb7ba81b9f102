#include <catch_amalgamated.hpp>

#include <algorithm>

#include "ifo/families.hpp"
#include "ifo/inclusion.hpp"

using namespace ifo;

namespace {

Alphabet ab() {
  Alphabet s;
  s.add("a");
  s.add("b");
  return s;
}

MarkedNfa random_marked(std::uint64_t seed, std::size_t n, double density) {
  FamilySpec spec;
  spec.seed = seed;
  spec.states = n;
  spec.events = 2;
  spec.density = density;
  const Nfa a = family_random(spec).automaton;
  SplitMix64 rng(seed ^ 0xabcdef);
  StateSet i(n), f(n);
  for (State q = 0; q < n; ++q) {
    if (rng.chance(0.35)) i.insert(q);
    if (rng.chance(0.35)) f.insert(q);
  }
  if (i.empty()) i.insert(0);
  return MarkedNfa(a, i, f);
}

void check_counterexample(const InclusionVerdict& v, const MarkedNfa& left, const MarkedNfa& right) {
  if (v.holds && !*v.holds) {
    REQUIRE(v.counterexample);
    CHECK(check_membership(*v.counterexample, left));
    CHECK_FALSE(check_membership(*v.counterexample, right));
  }
}

}  // namespace

TEST_CASE("inclusion of a language in itself") {
  const MarkedNfa a = random_marked(3, 4, 0.4);
  CHECK(observer_inclusion(a, a).holds == true);
  CHECK(antichain_inclusion(a, a).holds == true);
}

TEST_CASE("inclusion into the empty language fails with the shortest word") {
  Nfa l(2, ab());
  l.add_transition(0, "a", 1);
  const MarkedNfa left(l, StateSet(2, {0}), StateSet(2, {1}));
  const MarkedNfa right(Nfa(1, ab()), StateSet(1, {0}), StateSet(1));
  for (const auto& v : {observer_inclusion(left, right), antichain_inclusion(left, right)}) {
    REQUIRE(v.holds == false);
    CHECK(*v.counterexample == Word{0});
  }
}

TEST_CASE("events are matched by name") {
  Alphabet ba;
  ba.add("b");
  ba.add("a");
  Nfa l(2, ab());
  l.add_transition(0, "a", 1);
  Nfa r(2, ba);
  r.add_transition(0, "a", 1);
  const MarkedNfa left(l, StateSet(2, {0}), StateSet(2, {1}));
  const MarkedNfa right(r, StateSet(2, {0}), StateSet(2, {1}));
  CHECK(observer_inclusion(left, right).holds == true);
  CHECK(antichain_inclusion(left, right).holds == true);
}

TEST_CASE("engines reject automata with hidden events") {
  Alphabet s;
  s.add("u", false);
  const MarkedNfa hidden(Nfa(1, s), StateSet(1, {0}), StateSet(1, {0}));
  CHECK_THROWS_AS(observer_inclusion(hidden, hidden), std::invalid_argument);
  CHECK_THROWS_AS(antichain_inclusion(hidden, hidden), std::invalid_argument);
}

TEST_CASE("engines agree with each other and with bounded enumeration") {
  std::size_t failures = 0;
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    const std::size_t n = 1 + seed % 5;
    const MarkedNfa left = random_marked(seed, n, 0.3);
    const MarkedNfa right = random_marked(seed + 10'000, 1 + (seed / 5) % 5, 0.35);
    InclusionOptions opts;
    opts.check_invariants = true;
    const auto o = observer_inclusion(left, right);
    const auto a = antichain_inclusion(left, right, opts);
    REQUIRE(o.holds);
    REQUIRE(a.holds);
    INFO("seed " << seed);
    CHECK(*o.holds == *a.holds);
    check_counterexample(o, left, right);
    check_counterexample(a, left, right);
    CHECK(a.stats.expanded <= o.stats.expanded);
    CHECK(o.stats.macrostates <= (std::uint64_t{1} << right.nfa.state_count()) + 1);

    const auto lw = enumerate_language(left, 6);
    const auto rw = enumerate_language(right, 6);
    const bool bounded_subset = std::includes(rw.begin(), rw.end(), lw.begin(), lw.end());
    if (!bounded_subset) CHECK_FALSE(*o.holds);
    if (!*o.holds && o.counterexample->size() <= 6) CHECK_FALSE(bounded_subset);
    failures += !*o.holds;
  }
  CHECK(failures > 50);
  CHECK(failures < 450);
}

TEST_CASE("antichain keeps one pair where a larger initial macrostate is subsumed") {
  // Right: initial {0, 1}; state 1 reaches a superset of what state 0 reaches.
  Nfa r(3, ab());
  r.add_transition(0, "a", 2);
  r.add_transition(1, "a", 2);
  r.add_transition(1, "b", 2);
  r.add_transition(2, "a", 2);
  r.add_transition(2, "b", 2);
  const MarkedNfa right(r, StateSet(3, {0, 1}), StateSet(3, {2}));
  Nfa l(2, ab());
  l.add_transition(0, "a", 1);
  l.add_transition(0, "b", 1);
  l.add_transition(1, "a", 1);
  l.add_transition(1, "b", 1);
  const MarkedNfa left(l, StateSet(2, {0}), StateSet(2, {1}));
  const auto o = observer_inclusion(left, right);
  const auto a = antichain_inclusion(left, right);
  CHECK(o.holds == true);
  CHECK(a.holds == true);
  CHECK(a.stats.macrostates <= o.stats.expanded);
  CHECK(a.stats.expanded <= o.stats.expanded);
}

TEST_CASE("inclusion budgets give an inconclusive verdict") {
  const MarkedNfa left = random_marked(11, 5, 0.5);
  const MarkedNfa right = random_marked(12, 5, 0.3);
  InclusionOptions tiny;
  tiny.node_limit = 1;
  const auto o = observer_inclusion(left, right, tiny);
  const auto a = antichain_inclusion(left, right, tiny);
  if (o.inconclusive()) CHECK(o.stop == StopReason::budget);
  if (a.inconclusive()) CHECK(a.stop == StopReason::budget);
  InclusionOptions late;
  late.deadline = Clock::now() - std::chrono::seconds(1);
  // A past deadline is only noticed at a poll point; tiny searches may finish first.
  const auto d = antichain_inclusion(left, right, late);
  CHECK((d.inconclusive() ? d.stop == StopReason::deadline : true));
}

TEST_CASE("subsumes") {
  const ProductPair p{0, StateSet(3, {1})};
  const ProductPair q{0, StateSet(3, {1, 2})};
  CHECK(subsumes(p, p));
  CHECK(subsumes(p, q));
  CHECK_FALSE(subsumes(q, p));
  CHECK_FALSE(subsumes(p, ProductPair{1, StateSet(3, {1})}));
}

TEST_CASE("check_membership") {
  const Nfa a = family_b2().automaton;
  CHECK(check_membership({}, MarkedNfa(a, StateSet(2, {0}), StateSet(2, {0}))));
  const Word abab = {0, 1, 0, 1};
  CHECK(check_membership(abab, MarkedNfa(a, StateSet(2, {0}), StateSet(2, {0, 1}))));
  CHECK(a.post(a.post(a.post(a.post(StateSet(2, {0}), 0), 1), 0), 1) == StateSet(2, {0, 1}));
  CHECK_FALSE(check_membership(abab, MarkedNfa(a, StateSet(2, {0}), StateSet(2))));
  CHECK_THROWS_AS(check_membership(Word{7}, MarkedNfa(a, StateSet(2, {0}), StateSet(2))),
                  std::invalid_argument);
}
