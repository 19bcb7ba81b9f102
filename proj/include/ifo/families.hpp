#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ifo/binary_matrix.hpp"
#include "ifo/instance.hpp"

namespace ifo {

/// SplitMix64 (Steele, Lea, Flood 2014): state advances by the 64-bit golden
/// ratio constant and each output is a fixed mix of the state. Every derived
/// draw below uses integer or IEEE-754 double arithmetic only, so a seed
/// yields the same instance on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  /// Uniform in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform double in [0, 1) from the top 53 bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }

 private:
  std::uint64_t state_;
};

/// Parameters for the generators; which fields matter depends on `family`.
struct FamilySpec {
  /// b2 | bn | random-two-event | upper-triangular | partial-transformations | random
  std::string family = "random";
  std::size_t states = 4;
  std::uint64_t seed = 1;
  // random
  std::size_t events = 2;        // total, including unobservable ones
  std::size_t unobservable = 0;  // the last `unobservable` events are hidden
  double density = 0.3;          // probability of each (q, e, r) triple
  std::size_t secret_pairs = 2;
  std::size_t nonsecret_pairs = 2;
  bool cartesian_nonsecret = false;  // draw Q_NS as I × F instead
  // random-two-event
  std::size_t ones = 0;  // transitions per event (f)
};

std::vector<StatePair> diagonal_pairs(std::size_t n);

/// The 2-state, 3-event automaton built from the generators
/// a = (01/10), b = (10/11), c = (10/00) of B_2, all observable,
/// with Q_S = Q_NS = diagonal.
IfoInstance family_b2();

/// One event per n×n boolean matrix (2^(n²) events, named m<code> where bit
/// i·n + j of code is entry (i, j)); Q_S = Q_NS = diagonal; 1 ≤ n ≤ 3.
IfoInstance family_bn(std::size_t n);

/// Two events a, b, each a uniformly random relation with exactly f pairs;
/// Q_S = Q_NS = diagonal. Requires n < f ≤ n².
IfoInstance family_random_two_event(std::size_t n, std::size_t f, std::uint64_t seed);

/// Every upper-triangular n×n matrix except the identity as an event;
/// Q_S = Q_NS = diagonal; 1 ≤ n ≤ 3.
IfoInstance family_upper_triangular(std::size_t n);

/// cycle, swap of points 1 and 2, collapse of point 2 onto 1, and the partial
/// identity undefined on point n (0-based: 1 → 0 and n-1 respectively).
std::vector<BinaryMatrix> partial_transformation_generators(std::size_t n);

/// Deterministic automaton over partial_transformation_generators(n);
/// Q_S = Q_NS = diagonal; 2 ≤ n ≤ 4.
IfoInstance family_partial_transformations(std::size_t n);

IfoInstance family_random(const FamilySpec& spec);

/// Dispatches on spec.family; throws std::invalid_argument on unknown names
/// or out-of-range parameters.
IfoInstance generate_family(const FamilySpec& spec);

}  // namespace ifo
