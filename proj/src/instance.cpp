#include "ifo/instance.hpp"

#include <algorithm>
#include <stdexcept>

namespace ifo {

namespace {

void normalize(std::vector<StatePair>& pairs) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
}

}  // namespace

IfoInstance::IfoInstance(Nfa a, std::vector<StatePair> secret, std::vector<StatePair> nonsecret)
    : automaton(std::move(a)), secret_pairs(std::move(secret)), nonsecret_pairs(std::move(nonsecret)) {
  normalize(secret_pairs);
  normalize(nonsecret_pairs);
  validate();
}

void IfoInstance::validate() const {
  const std::size_t n = automaton.state_count();
  for (const auto* pairs : {&secret_pairs, &nonsecret_pairs})
    for (const auto& [s, f] : *pairs)
      if (s >= n || f >= n)
        throw std::invalid_argument("pair (" + std::to_string(s) + "," + std::to_string(f) +
                                    ") outside the state range");
}

ClusteredPairs cluster_pairs(const std::vector<StatePair>& pairs, std::size_t universe) {
  std::vector<StatePair> sorted = pairs;
  normalize(sorted);
  ClusteredPairs out;
  for (const auto& [s, f] : sorted) {
    if (out.empty() || out.back().source != s) out.push_back({s, StateSet(universe)});
    out.back().targets.insert(f);
  }
  return out;
}

ClusteredPairs adjust_targets(const Nfa& a, ClusteredPairs clusters) {
  for (auto& c : clusters) c.targets = adjust_finals(a, c.targets);
  return clusters;
}

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::trellis: return "trellis";
    case Algorithm::observer: return "observer";
    case Algorithm::antichain: return "antichain";
    case Algorithm::automatic: return "auto";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(const std::string& name) {
  if (name == "trellis") return Algorithm::trellis;
  if (name == "observer") return Algorithm::observer;
  if (name == "antichain") return Algorithm::antichain;
  if (name == "auto") return Algorithm::automatic;
  return std::nullopt;
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::opaque: return "opaque";
    case Outcome::not_opaque: return "not-opaque";
    case Outcome::inconclusive: return "inconclusive";
  }
  return "?";
}

}  // namespace ifo
