#include "ifo/semigroup.hpp"

#include <algorithm>
#include <stdexcept>

namespace ifo {

std::span<std::uint64_t> SemigroupClosure::scratch() {
  const std::size_t at = size() * words_;
  if (arena_.size() < at + words_) arena_.resize(at + words_);
  return std::span<std::uint64_t>(arena_).subspan(at, words_);
}

bool SemigroupClosure::equal(std::uint32_t id, std::span<const std::uint64_t> w) const {
  const std::uint64_t* e = arena_.data() + static_cast<std::size_t>(id) * words_;
  return std::equal(w.begin(), w.end(), e);
}

void SemigroupClosure::grow_index() {
  std::vector<std::uint32_t> old = std::move(slots_);
  slots_.assign(std::max<std::size_t>(16, old.size() * 2), kEmpty);
  const std::size_t mask = slots_.size() - 1;
  for (std::uint32_t id : old) {
    if (id == kEmpty) continue;
    std::size_t h = hash_words(element(id).words()) & mask;
    while (slots_[h] != kEmpty) h = (h + 1) & mask;
    slots_[h] = id;
  }
}

std::uint32_t SemigroupClosure::probe_scratch(std::size_t& slot) {
  if ((size() + 1) * 2 > slots_.size()) grow_index();
  const auto cand = std::span<const std::uint64_t>(arena_).subspan(size() * words_, words_);
  const std::size_t mask = slots_.size() - 1;
  std::size_t h = hash_words(cand) & mask;
  while (slots_[h] != kEmpty) {
    if (equal(slots_[h], cand)) return slots_[h];
    h = (h + 1) & mask;
  }
  slot = h;
  return kEmpty;
}

void SemigroupClosure::commit_scratch(std::size_t slot) {
  slots_[slot] = static_cast<std::uint32_t>(size());
}

std::optional<std::size_t> SemigroupClosure::find(const BinaryMatrix& m) const {
  if (m.dimension() != n_ || slots_.empty()) return std::nullopt;
  const std::size_t mask = slots_.size() - 1;
  std::size_t h = hash_words(m.words()) & mask;
  while (slots_[h] != kEmpty) {
    if (equal(slots_[h], m.words())) return slots_[h];
    h = (h + 1) & mask;
  }
  return std::nullopt;
}

std::vector<std::size_t> SemigroupClosure::witness(std::size_t i) const {
  std::vector<std::size_t> word;
  for (std::uint32_t id = static_cast<std::uint32_t>(i); id != kNone; id = parent_[id])
    word.push_back(generator_[id]);
  std::reverse(word.begin(), word.end());
  return word;
}

SemigroupClosure generate_semigroup(std::span<const BinaryMatrix> generators,
                                    const ElementVisitor& visitor,
                                    const ClosureOptions& options) {
  if (generators.empty()) throw std::invalid_argument("generate_semigroup: no generators");
  const std::size_t n = generators.front().dimension();
  for (const auto& g : generators)
    if (g.dimension() != n) throw std::invalid_argument("generate_semigroup: dimension mismatch");

  SemigroupClosure c;
  c.n_ = n;
  c.words_ = packed::word_count(n);
  c.generator_count_ = generators.size();

  // Appends the scratch candidate if new; false means "stop now".
  auto admit = [&](std::uint32_t parent, std::size_t gen) -> bool {
    std::size_t slot = 0;
    if (c.probe_scratch(slot) != SemigroupClosure::kEmpty) return true;
    if (c.size() + 1 > options.element_limit) {
      c.status_ = ClosureStatus::limit_exceeded;
      return false;
    }
    const std::size_t id = c.size();
    c.commit_scratch(slot);
    c.parent_.push_back(parent);
    c.generator_.push_back(static_cast<std::uint32_t>(gen));
    if (visitor && !visitor(c.element(id), id)) {
      c.status_ = ClosureStatus::stopped;
      return false;
    }
    return true;
  };

  for (std::size_t g = 0; g < generators.size(); ++g) {
    auto s = c.scratch();
    std::copy(generators[g].words().begin(), generators[g].words().end(), s.begin());
    if (!admit(SemigroupClosure::kNone, g)) return c;
  }

  const std::size_t rw = packed::row_words(n);
  std::vector<std::uint64_t> gen_rows(generators.size() * n * rw);
  for (std::size_t g = 0; g < generators.size(); ++g)
    packed::unpack_rows(generators[g].words(),
                        n, std::span<std::uint64_t>(gen_rows).subspan(g * n * rw, n * rw));
  std::vector<std::uint64_t> elem_rows(n * rw), prod_rows(n * rw);

  Meter meter(UINT64_MAX, options.deadline);
  for (std::size_t cursor = 0; cursor < c.size(); ++cursor) {
    packed::unpack_rows(c.element(cursor).words(), n, elem_rows);
    for (std::size_t g = 0; g < generators.size(); ++g) {
      if (meter.tick() == StopReason::deadline) {
        c.status_ = ClosureStatus::deadline;
        c.multiplications_ = meter.count();
        return c;
      }
      packed::multiply_rows(elem_rows,
                            std::span<const std::uint64_t>(gen_rows).subspan(g * n * rw, n * rw),
                            n, prod_rows);
      auto s = c.scratch();
      std::fill(s.begin(), s.end(), 0);
      packed::pack_rows(prod_rows, n, s);
      if (!admit(static_cast<std::uint32_t>(cursor), g)) {
        c.multiplications_ = meter.count();
        return c;
      }
    }
  }
  c.multiplications_ = meter.count();
  c.status_ = ClosureStatus::complete;
  return c;
}

BinaryMatrix matrix_of_event(const Nfa& projected, EventId e) {
  if (projected.alphabet().has_unobservable())
    throw std::invalid_argument("matrix_of_event expects a projected automaton");
  if (e >= projected.event_count()) throw std::invalid_argument("unknown event index");
  BinaryMatrix m(projected.state_count());
  for (State i = 0; i < projected.state_count(); ++i)
    for (State j : projected.successors(i, e)) m.set(i, j);
  return m;
}

BinaryMatrix matrix_of_event(const Nfa& projected, std::string_view event) {
  const auto e = projected.alphabet().find(event);
  if (!e) throw std::invalid_argument("unknown event '" + std::string(event) + "'");
  return matrix_of_event(projected, *e);
}

Nfa automaton_from_matrices(std::span<const BinaryMatrix> matrices, std::span<const std::string> names) {
  if (matrices.empty()) throw std::invalid_argument("automaton_from_matrices: no matrices");
  if (!names.empty() && names.size() != matrices.size())
    throw std::invalid_argument("automaton_from_matrices: one name per matrix required");
  const std::size_t n = matrices.front().dimension();
  if (n == 0) throw std::invalid_argument("automaton_from_matrices: dimension must be ≥ 1");

  Alphabet sigma;
  for (std::size_t k = 0; k < matrices.size(); ++k) {
    if (!names.empty())
      sigma.add(names[k]);
    else if (matrices.size() <= 26)
      sigma.add(std::string(1, static_cast<char>('a' + k)));
    else
      sigma.add("e" + std::to_string(k));
  }
  Nfa a(n, std::move(sigma));
  for (std::size_t k = 0; k < matrices.size(); ++k) {
    if (matrices[k].dimension() != n)
      throw std::invalid_argument("automaton_from_matrices: dimension mismatch");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (matrices[k].get(i, j))
          a.add_transition(static_cast<State>(i), static_cast<EventId>(k), static_cast<State>(j));
  }
  return a;
}

namespace {

std::vector<std::uint64_t> pair_mask(const ClusteredPairs& clusters, std::size_t n) {
  std::vector<std::uint64_t> mask(packed::word_count(n), 0);
  for (const auto& c : clusters)
    c.targets.for_each([&](State f) {
      const std::size_t b = static_cast<std::size_t>(c.source) * n + f;
      mask[b >> 6] |= std::uint64_t{1} << (b & 63);
    });
  return mask;
}

}  // namespace

Verdict trellis_verify(const IfoInstance& inst, const ClosureOptions& options) {
  const auto started = Clock::now();
  inst.validate();
  Verdict v;
  v.stats.algorithm = "trellis";

  const Nfa projected = project(inst.automaton);
  const std::size_t n = projected.state_count();
  v.stats.right_states = n;
  const auto secret = pair_mask(
      adjust_targets(inst.automaton, cluster_pairs(inst.secret_pairs, n)), n);
  const auto nonsecret = pair_mask(
      adjust_targets(inst.automaton, cluster_pairs(inst.nonsecret_pairs, n)), n);

  auto violates = [&](MatrixView w) { return w.meets(secret) && !w.meets(nonsecret); };
  auto finish = [&]() {
    v.stats.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - started).count();
    return v;
  };

  // The empty observation: rows of the identity.
  const BinaryMatrix id = BinaryMatrix::identity(n);
  if (violates(id.view())) {
    v.result = Outcome::not_opaque;
    v.witness = Word{};
    return finish();
  }
  if (projected.event_count() == 0 || n == 0) {
    v.result = Outcome::opaque;
    return finish();
  }

  std::vector<BinaryMatrix> gens;
  for (EventId e = 0; e < projected.event_count(); ++e) gens.push_back(matrix_of_event(projected, e));

  std::optional<std::size_t> bad;
  const auto closure = generate_semigroup(
      gens,
      [&](MatrixView w, std::size_t index) {
        if (!violates(w)) return true;
        bad = index;
        return false;
      },
      options);
  v.stats.explored = closure.size();

  switch (closure.status()) {
    case ClosureStatus::stopped: {
      v.result = Outcome::not_opaque;
      Word w;
      for (std::size_t g : closure.witness(*bad)) w.push_back(static_cast<EventId>(g));
      v.witness = std::move(w);
      break;
    }
    case ClosureStatus::complete: v.result = Outcome::opaque; break;
    case ClosureStatus::limit_exceeded:
      v.result = Outcome::inconclusive;
      v.stats.stop = StopReason::budget;
      break;
    case ClosureStatus::deadline:
      v.result = Outcome::inconclusive;
      v.stats.stop = StopReason::deadline;
      break;
  }
  return finish();
}

CorrespondenceCounts semigroup_observer_correspondence(const Nfa& a, std::uint64_t element_limit) {
  const Nfa p = project(a);
  const std::size_t n = p.state_count();
  CorrespondenceCounts counts;
  if (n == 0 || p.event_count() == 0) return counts;

  std::vector<BinaryMatrix> gens;
  for (EventId e = 0; e < p.event_count(); ++e) gens.push_back(matrix_of_event(p, e));
  ClosureOptions opts;
  opts.element_limit = element_limit;
  const auto closure = generate_semigroup(gens, {}, opts);
  if (!closure.complete()) throw BudgetExceeded("semigroup closure exceeded the element limit");
  counts.semigroup_size = closure.size();

  std::vector<MarkedNfa> copies;
  copies.reserve(n);
  for (State i = 0; i < n; ++i) copies.emplace_back(p, StateSet(n, {i}), StateSet(n));
  const auto joined = disjoint_union(copies);
  const Observer obs = observer(joined.automaton);

  // Every macrostate but the initial one is the target of some transition;
  // the initial one counts only if some nonempty word leads back to it.
  std::vector<bool> targeted(obs.size(), false);
  for (auto t : obs.transitions) targeted[t] = true;
  counts.observer_nonempty_word_states =
      static_cast<std::size_t>(std::count(targeted.begin(), targeted.end(), true));
  return counts;
}

}  // namespace ifo
