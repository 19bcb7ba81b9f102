#pragma once

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace ifo {

using State = std::uint32_t;

/// A set of states over a fixed universe [0, universe), stored as a bitset.
///
/// Iteration is always in ascending state order, so a StateSet doubles as the
/// canonical sorted representation of a macrostate. Two sets compare equal only
/// if they share the universe and the members.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}
  StateSet(std::size_t universe, std::initializer_list<State> members)
      : StateSet(universe) {
    for (State s : members) insert(s);
  }

  static StateSet full(std::size_t universe) {
    StateSet s(universe);
    for (std::size_t i = 0; i < universe; ++i) s.insert(static_cast<State>(i));
    return s;
  }

  std::size_t universe() const noexcept { return universe_; }

  void insert(State s) {
    assert(s < universe_);
    words_[s >> 6] |= std::uint64_t{1} << (s & 63);
  }
  void erase(State s) {
    assert(s < universe_);
    words_[s >> 6] &= ~(std::uint64_t{1} << (s & 63));
  }
  bool contains(State s) const noexcept {
    return s < universe_ && ((words_[s >> 6] >> (s & 63)) & 1u) != 0;
  }

  bool empty() const noexcept {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }
  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  void clear() noexcept { std::fill(words_.begin(), words_.end(), 0); }

  bool intersects(const StateSet& other) const noexcept {
    const std::size_t n = std::min(words_.size(), other.words_.size());
    for (std::size_t i = 0; i < n; ++i)
      if ((words_[i] & other.words_[i]) != 0) return true;
    return false;
  }
  bool is_subset_of(const StateSet& other) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      const std::uint64_t o = i < other.words_.size() ? other.words_[i] : 0;
      if ((words_[i] & ~o) != 0) return false;
    }
    return true;
  }

  StateSet& operator|=(const StateSet& other) {
    assert(other.universe_ <= universe_);
    for (std::size_t i = 0; i < other.words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
  }
  StateSet& operator&=(const StateSet& other) {
    for (std::size_t i = 0; i < words_.size(); ++i)
      words_[i] &= i < other.words_.size() ? other.words_[i] : 0;
    return *this;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const int b = std::countr_zero(bits);
        f(static_cast<State>(w * 64 + static_cast<std::size_t>(b)));
        bits &= bits - 1;
      }
    }
  }

  std::vector<State> to_vector() const {
    std::vector<State> out;
    out.reserve(count());
    for_each([&](State s) { out.push_back(s); });
    return out;
  }

  std::span<const std::uint64_t> words() const noexcept { return words_; }

  std::size_t hash() const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ universe_;
    for (auto w : words_) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 33));
  }

  friend bool operator==(const StateSet&, const StateSet&) = default;

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

struct StateSetHash {
  std::size_t operator()(const StateSet& s) const noexcept { return s.hash(); }
};

}  // namespace ifo
