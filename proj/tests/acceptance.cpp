// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include <unistd.h>

#include "ifo/bench.hpp"
#include "ifo/families.hpp"
#include "ifo/inclusion.hpp"
#include "ifo/instance_format.hpp"
#include "ifo/semigroup.hpp"
#include "ifo/verifier.hpp"
#include "oracles.hpp"

using namespace ifo;

namespace {

struct Check {
  bool pass = true;
  std::ostringstream detail;

  void expect(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    if (!ok) pass = false;
  }
};

double ms_since(Clock::time_point t) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t).count();
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

Verdict run(const IfoInstance& inst, Algorithm a, bool fast_path = true) {
  VerifyOptions o;
  o.algorithm = a;
  o.cartesian_fast_path = fast_path;
  return verify(inst, o);
}

// Antichain vs observer expansions, gathered while checking criteria 3 to 5.
struct Domination {
  std::size_t compared = 0;
  std::size_t violations = 0;
  std::string first;

  void add(const std::string& id, const Verdict& observer, const Verdict& antichain) {
    if (observer.result == Outcome::inconclusive || antichain.result == Outcome::inconclusive) return;
    ++compared;
    if (antichain.stats.explored > observer.stats.explored) {
      if (!violations)
        first = id + " (" + std::to_string(antichain.stats.explored) + " > " +
                std::to_string(observer.stats.explored) + ")";
      ++violations;
    }
  }
} domination;

/// Witness accepted by the projected secret side, rejected by the projected
/// nonsecret side, and separating in the relation oracle.
bool witness_valid(const IfoInstance& inst, const Verdict& v) {
  if (!v.witness) return false;
  const InclusionProblem p = reduce_to_inclusion(inst, false);
  const auto names = oracle::names_of(*v.witness, inst.automaton.alphabet().observable_part());
  return check_membership(*v.witness, p.secret) && !check_membership(*v.witness, p.nonsecret) &&
         oracle::separates(inst, names);
}

void b2_regression(Check& c) {
  const auto t = Clock::now();
  const Verdict v = run(family_b2(), Algorithm::trellis);
  const double ms = ms_since(t);
  c.expect(v.result == Outcome::opaque, "verdict " + to_string(v.result));
  c.expect(v.stats.explored == 16, "elements " + std::to_string(v.stats.explored));
  c.expect(ms < 1000, "time");
  c.detail << "trellis " << to_string(v.result) << ", " << v.stats.explored << " elements, " << ms << " ms";
}

void bn_scaling(Check& c) {
  const auto t = Clock::now();
  const IfoInstance inst = family_bn(3);
  const Verdict v = run(inst, Algorithm::trellis);
  const CorrespondenceCounts k = semigroup_observer_correspondence(inst.automaton);
  const double ms = ms_since(t);
  c.expect(v.result == Outcome::opaque, "verdict");
  c.expect(v.stats.explored == 512, "elements " + std::to_string(v.stats.explored));
  c.expect(k.semigroup_size == 512 && k.observer_nonempty_word_states == 512, "correspondence");
  c.expect(ms < 30'000, "time");
  c.detail << v.stats.explored << " elements; correspondence " << k.semigroup_size << " = "
           << k.observer_nonempty_word_states << "; " << ms << " ms";
}

void differential(Check& c) {
  std::size_t total = 0, negative = 0, oracle_checked = 0;
  for (const FamilySpec& s : oracle::differential_corpus()) {
    const IfoInstance inst = generate_family(s);
    const std::string id = "random seed " + std::to_string(s.seed);
    const Verdict t = run(inst, Algorithm::trellis);
    const Verdict o = run(inst, Algorithm::observer);
    const Verdict a = run(inst, Algorithm::antichain);
    domination.add(id, o, a);
    ++total;
    c.expect(t.result != Outcome::inconclusive && o.result != Outcome::inconclusive &&
                 a.result != Outcome::inconclusive,
             id + " inconclusive");
    c.expect(t.result == o.result && o.result == a.result, id + " verdicts differ");
    if (const auto truth = oracle::decide(inst)) {
      ++oracle_checked;
      c.expect(truth->opaque == (a.result == Outcome::opaque), id + " disagrees with relation oracle");
    }
    if (a.result == Outcome::not_opaque) {
      ++negative;
      for (const Verdict* v : {&t, &o, &a})
        c.expect(witness_valid(inst, *v), id + " " + v->stats.algorithm + " witness invalid");
    }
  }
  c.expect(total >= 500, "corpus size");
  c.detail << total << " instances (" << negative << " not opaque), 3 algorithms agree; "
           << oracle_checked << " also match the relation oracle";
}

void oracle_agreement(Check& c) {
  std::size_t total = 0, max_bound = 0;
  for (const IfoInstance& inst : oracle::small_bound_corpus()) {
    const std::string id = "small #" + std::to_string(total);
    ++total;
    const std::size_t bound = complete_bound(inst);
    max_bound = std::max(max_bound, bound);
    c.expect(bound <= 1024, id + " bound too large");
    const Verdict v = run(inst, Algorithm::automatic);
    const Verdict b = verify_bruteforce(inst, bound);
    c.expect(v.result == b.result, id + " verify " + to_string(v.result) + " vs brute force " + to_string(b.result));
    if (const auto truth = oracle::decide(inst))
      c.expect(truth->opaque == (b.result == Outcome::opaque), id + " brute force disagrees with relation oracle");
    domination.add(id, run(inst, Algorithm::observer), run(inst, Algorithm::antichain));
  }
  c.expect(total >= 200, "corpus size");
  c.detail << total << " instances, n <= 4, largest bound " << max_bound << ", zero disagreements";
}

void cartesian(Check& c) {
  std::size_t total = 0;
  for (const FamilySpec& s : oracle::cartesian_corpus()) {
    const IfoInstance inst = generate_family(s);
    const std::string id = "cartesian seed " + std::to_string(s.seed);
    ++total;
    const Verdict fast = run(inst, Algorithm::antichain, true);
    const Verdict general = run(inst, Algorithm::antichain, false);
    c.expect(fast.stats.cartesian, id + " fast path inactive");
    c.expect(fast.stats.right_states == inst.automaton.state_count(), id + " right side size");
    c.expect(fast.result == general.result && fast.result != Outcome::inconclusive, id + " verdicts differ");
    const Verdict fast_obs = run(inst, Algorithm::observer, true);
    c.expect(fast_obs.result == general.result, id + " observer verdict differs");
    domination.add(id, fast_obs, fast);
  }
  c.expect(total >= 100, "corpus size");
  c.detail << total << " instances, fast path active with n right-hand states, verdicts match";
}

void deterministic_bound(Check& c) {
  std::size_t total = 0, worst_num = 0, worst_den = 1, largest = 0;
  for (const IfoInstance& inst : oracle::deterministic_corpus()) {
    ++total;
    const std::size_t n = inst.automaton.state_count();
    c.expect(is_deterministic(inst.automaton), "not deterministic");
    const std::size_t size = observer(reduce_to_inclusion(inst, false).nonsecret).size();
    const std::size_t cap = ipow(n + 1, n);
    c.expect(size <= cap, "instance " + std::to_string(total) + ": " + std::to_string(size) + " > " +
                              std::to_string(cap));
    if (size * worst_den > worst_num * cap) worst_num = size, worst_den = cap;
    largest = std::max(largest, size);
  }
  c.expect(total >= 50, "corpus size");
  c.detail << total << " instances, largest observer " << largest << " macrostates, tightest "
           << worst_num << " of " << worst_den;
}

std::size_t closure_size(const IfoInstance& inst) {
  const Nfa p = project(inst.automaton);
  std::vector<BinaryMatrix> gens;
  for (EventId e = 0; e < p.event_count(); ++e) gens.push_back(matrix_of_event(p, e));
  return generate_semigroup(gens).size();
}

void special_cardinalities(Check& c) {
  const std::size_t ut = closure_size(family_upper_triangular(3));
  const std::size_t pt = closure_size(family_partial_transformations(3));
  c.expect(ut >= 63 && ut <= 64, "upper-triangular " + std::to_string(ut));
  c.expect(pt == 64, "partial transformations " + std::to_string(pt));
  for (std::size_t n = 2; n <= 4; ++n) {
    std::vector<oracle::Rel> gens;
    for (const BinaryMatrix& m : partial_transformation_generators(n)) {
      oracle::Rel r = oracle::zero(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r[i][j] = m.get(i, j);
      gens.push_back(r);
    }
    const auto generated = oracle::closure(gens);
    c.expect(generated && *generated == oracle::all_partial_functions(n),
             "generators do not give PT_" + std::to_string(n));
    c.expect(closure_size(family_partial_transformations(n)) == ipow(n + 1, n),
             "library closure of PT_" + std::to_string(n));
  }
  c.detail << "UT_3 closure " << ut << ", PT_3 closure " << pt << ", PT_n self-check n=2..4";
}

void antichain_domination(Check& c) {
  c.expect(domination.violations == 0, domination.first);
  std::size_t trellis_budget_hits = 0;
  double worst_ms = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const IfoInstance inst = family_random_two_event(8, 12, seed);
    VerifyOptions o;
    o.algorithm = Algorithm::antichain;
    o.deadline = Clock::now() + std::chrono::seconds(60);
    const auto t = Clock::now();
    const Verdict a = verify(inst, o);
    worst_ms = std::max(worst_ms, ms_since(t));
    c.expect(a.result == Outcome::opaque, "antichain seed " + std::to_string(seed));
    const Verdict tr = run(inst, Algorithm::trellis);
    const bool budget_hit = tr.result == Outcome::inconclusive && tr.stats.stop == StopReason::budget;
    trellis_budget_hits += budget_hit;
    c.expect(tr.result == Outcome::opaque || budget_hit, "trellis seed " + std::to_string(seed));
  }
  c.detail << domination.compared << " comparisons, " << domination.violations
           << " with antichain > observer; n=8 f=12: antichain opaque on 10 seeds (max " << worst_ms
           << " ms), trellis budget hits " << trellis_budget_hits;
}

std::string strip_time(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string x; std::getline(ss, x, ',');) f.push_back(x);
    if (f.size() > 3) f[3].clear();
    for (std::size_t i = 0; i < f.size(); ++i) out += (i ? "," : "") + f[i];
    out += '\n';
  }
  return out;
}

void harness_determinism(Check& c) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("ifo-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const auto corpus = oracle::differential_corpus(40);
  for (const FamilySpec& s : corpus)
    save_instance(generate_family(s), (dir / ("r" + std::to_string(s.seed) + ".ifo")).string());
  save_instance(family_b2(), (dir / "a2.ifo").string());

  const std::vector<Algorithm> algos = {Algorithm::trellis, Algorithm::observer, Algorithm::antichain};
  const auto first = run_suite(dir.string(), algos, 60'000, 2);
  const auto second = run_suite(dir.string(), algos, 60'000, 2);
  fs::remove_all(dir);
  c.expect(first.size() == 41 * 3, "row count " + std::to_string(first.size()));
  c.expect(strip_time(to_csv(first)) == strip_time(to_csv(second)), "CSVs differ");

  std::ifstream in(std::string(IFO_FIXTURE_DIR) + "/summary.csv");
  std::stringstream buf;
  buf << in.rdbuf();
  const auto summary = summarize(parse_csv(buf.str()), {1000, 10000});
  // Hand-counted: i1 opaque, i2 not-opaque, i3 never solved, i4 opaque.
  auto at = [&](const std::string& algo) -> const AlgorithmSummary* {
    for (const auto& s : summary)
      if (s.algorithm == algo) return &s;
    return nullptr;
  };
  const auto* obs = at("observer");
  const auto* tre = at("trellis");
  c.expect(obs && tre, "fixture algorithms");
  if (obs && tre) {
    const auto& o1 = obs->budgets[0];
    const auto& o2 = obs->budgets[1];
    const auto& t1 = tre->budgets[0];
    const auto& t2 = tre->budgets[1];
    c.expect(o1.unsolved_positive == 1 && o1.unsolved_negative == 1 && o1.unsolved_unknown == 1, "observer @1000");
    c.expect(o2.unsolved_positive == 0 && o2.unsolved_negative == 0 && o2.unsolved_unknown == 1, "observer @10000");
    c.expect(t1.unsolved_positive == 1 && t1.unsolved_negative == 0 && t1.unsolved_unknown == 1, "trellis @1000");
    c.expect(t2.unsolved_positive == 1 && t2.unsolved_negative == 0 && t2.unsolved_unknown == 1, "trellis @10000");
    c.expect(obs->solved == 3 && tre->solved == 2, "solved counts");
    c.expect(obs->min_ms && *obs->min_ms == 5.0 && *obs->max_ms == 4000.0 && *obs->avg_ms == 1835.0, "observer times");
  }
  c.detail << first.size() << " rows identical across two runs modulo time; fixture summary counts match";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"1 B2 regression", b2_regression},
      {"2 B3 scaling and correspondence", bn_scaling},
      {"3 differential suite", differential},
      {"4 brute-force oracle agreement", oracle_agreement},
      {"5 cartesian fast path", cartesian},
      {"6 deterministic observer bound", deterministic_bound},
      {"7 special semigroup cardinalities", special_cardinalities},
      {"8 antichain domination", antichain_domination},
      {"9 harness determinism", harness_determinism},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Check c;
    const auto t = Clock::now();
    try {
      fn(c);
    } catch (const std::exception& e) {
      c.pass = false;
      c.detail << "exception: " << e.what();
    }
    failures += !c.pass;
    std::printf("%s criterion %s: %s (%.0f ms)\n", c.pass ? "PASS" : "FAIL", name.c_str(),
                c.detail.str().c_str(), ms_since(t));
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures ? 1 : 0;
}
