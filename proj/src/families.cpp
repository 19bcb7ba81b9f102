#include "ifo/families.hpp"

#include <numeric>
#include <stdexcept>

#include "ifo/semigroup.hpp"

namespace ifo {

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("SplitMix64::below: bound must be positive");
  const std::uint64_t reject_from = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= reject_from);
  return x % bound;
}

std::vector<StatePair> diagonal_pairs(std::size_t n) {
  std::vector<StatePair> out;
  for (State i = 0; i < n; ++i) out.emplace_back(i, i);
  return out;
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

/// First k entries of a seeded partial Fisher–Yates shuffle of [0, total).
std::vector<std::size_t> sample_distinct(SplitMix64& rng, std::size_t total, std::size_t k) {
  std::vector<std::size_t> cells(total);
  std::iota(cells.begin(), cells.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(total - i));
    std::swap(cells[i], cells[j]);
  }
  cells.resize(k);
  return cells;
}

IfoInstance diagonal_instance(Nfa a) {
  const std::size_t n = a.state_count();
  return IfoInstance(std::move(a), diagonal_pairs(n), diagonal_pairs(n));
}

}  // namespace

IfoInstance family_b2() {
  const std::vector<BinaryMatrix> gens = {
      BinaryMatrix{{0, 1}, {1, 0}},
      BinaryMatrix{{1, 0}, {1, 1}},
      BinaryMatrix{{1, 0}, {0, 0}},
  };
  const std::vector<std::string> names = {"a", "b", "c"};
  return diagonal_instance(automaton_from_matrices(gens, names));
}

IfoInstance family_bn(std::size_t n) {
  require(n >= 1 && n <= 3, "family bn: n must be in [1, 3]");
  const std::uint64_t count = std::uint64_t{1} << (n * n);
  std::vector<BinaryMatrix> mats;
  std::vector<std::string> names;
  for (std::uint64_t code = 0; code < count; ++code) {
    mats.push_back(BinaryMatrix::from_code(n, code));
    names.push_back("m" + std::to_string(code));
  }
  return diagonal_instance(automaton_from_matrices(mats, names));
}

IfoInstance family_random_two_event(std::size_t n, std::size_t f, std::uint64_t seed) {
  require(n >= 1 && f > n && f <= n * n, "family random-two-event: need n < f ≤ n²");
  SplitMix64 rng(seed);
  std::vector<BinaryMatrix> mats;
  for (int k = 0; k < 2; ++k) {
    BinaryMatrix m(n);
    for (std::size_t cell : sample_distinct(rng, n * n, f)) m.set(cell / n, cell % n);
    mats.push_back(std::move(m));
  }
  const std::vector<std::string> names = {"a", "b"};
  return diagonal_instance(automaton_from_matrices(mats, names));
}

IfoInstance family_upper_triangular(std::size_t n) {
  require(n >= 1 && n <= 3, "family upper-triangular: n must be in [1, 3]");
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) cells.emplace_back(i, j);
  const BinaryMatrix id = BinaryMatrix::identity(n);
  std::vector<BinaryMatrix> mats;
  std::vector<std::string> names;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells.size()); ++mask) {
    BinaryMatrix m(n);
    for (std::size_t k = 0; k < cells.size(); ++k)
      if ((mask >> k) & 1u) m.set(cells[k].first, cells[k].second);
    if (m == id) continue;
    names.push_back("t" + std::to_string(mask));
    mats.push_back(std::move(m));
  }
  return diagonal_instance(automaton_from_matrices(mats, names));
}

std::vector<BinaryMatrix> partial_transformation_generators(std::size_t n) {
  require(n >= 2, "partial transformations need n ≥ 2");
  BinaryMatrix cycle(n), swap(n), collapse(n), partial(n);
  for (std::size_t i = 0; i < n; ++i) {
    cycle.set(i, (i + 1) % n);
    swap.set(i, i == 0 ? 1 : i == 1 ? 0 : i);
    collapse.set(i, i == 1 ? 0 : i);
    if (i != n - 1) partial.set(i, i);
  }
  return {cycle, swap, collapse, partial};
}

IfoInstance family_partial_transformations(std::size_t n) {
  require(n >= 2 && n <= 4, "family partial-transformations: n must be in [2, 4]");
  const std::vector<std::string> names = {"cycle", "swap", "collapse", "partial"};
  return diagonal_instance(automaton_from_matrices(partial_transformation_generators(n), names));
}

IfoInstance family_random(const FamilySpec& spec) {
  const std::size_t n = spec.states;
  require(n >= 1, "family random: need at least one state");
  require(spec.events >= 1, "family random: need at least one event");
  require(spec.unobservable <= spec.events, "family random: more unobservable events than events");
  require(spec.density >= 0.0 && spec.density <= 1.0, "family random: density must be in [0, 1]");

  SplitMix64 rng(spec.seed);
  Alphabet sigma;
  const std::size_t observable = spec.events - spec.unobservable;
  for (std::size_t k = 0; k < observable; ++k)
    sigma.add(k < 26 ? std::string(1, static_cast<char>('a' + k)) : "e" + std::to_string(k), true);
  for (std::size_t k = 0; k < spec.unobservable; ++k) sigma.add("u" + std::to_string(k), false);

  Nfa a(n, std::move(sigma));
  for (State q = 0; q < n; ++q)
    for (EventId e = 0; e < spec.events; ++e)
      for (State r = 0; r < n; ++r)
        if (rng.chance(spec.density)) a.add_transition(q, e, r);

  auto draw_pairs = [&](std::size_t want) {
    std::vector<StatePair> pairs;
    for (std::size_t cell : sample_distinct(rng, n * n, std::min(want, n * n)))
      pairs.emplace_back(static_cast<State>(cell / n), static_cast<State>(cell % n));
    return pairs;
  };
  auto draw_subset = [&] {
    std::vector<State> members;
    for (State q = 0; q < n; ++q)
      if (rng.chance(0.5)) members.push_back(q);
    if (members.empty()) members.push_back(static_cast<State>(rng.below(n)));
    return members;
  };

  std::vector<StatePair> secret = draw_pairs(spec.secret_pairs);
  std::vector<StatePair> nonsecret;
  if (spec.cartesian_nonsecret) {
    const auto from = draw_subset();
    const auto to = draw_subset();
    for (State s : from)
      for (State f : to) nonsecret.emplace_back(s, f);
  } else {
    nonsecret = draw_pairs(spec.nonsecret_pairs);
  }
  return IfoInstance(std::move(a), std::move(secret), std::move(nonsecret));
}

IfoInstance generate_family(const FamilySpec& spec) {
  const std::string& f = spec.family;
  if (f == "b2") return family_b2();
  if (f == "bn") return family_bn(spec.states);
  if (f == "random-two-event") return family_random_two_event(spec.states, spec.ones, spec.seed);
  if (f == "upper-triangular") return family_upper_triangular(spec.states);
  if (f == "partial-transformations") return family_partial_transformations(spec.states);
  if (f == "random") return family_random(spec);
  throw std::invalid_argument("unknown family '" + f + "'");
}

}  // namespace ifo
