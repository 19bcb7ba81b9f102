#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "ifo/state_set.hpp"

namespace ifo {

/// Packed layout shared by BinaryMatrix and the semigroup arena: entry (i, j)
/// of an n×n matrix is bit i·n + j of a little-endian word array of
/// ceil(n²/64) words.
namespace packed {

inline std::size_t word_count(std::size_t n) { return (n * n + 63) / 64; }
inline std::size_t row_words(std::size_t n) { return (n + 63) / 64; }

/// 64 bits starting at `bit` (bits past the end read as zero).
inline std::uint64_t load64(std::span<const std::uint64_t> w, std::size_t bit) {
  const std::size_t i = bit >> 6, off = bit & 63;
  if (i >= w.size()) return 0;
  std::uint64_t v = w[i] >> off;
  if (off != 0 && i + 1 < w.size()) v |= w[i + 1] << (64 - off);
  return v;
}

/// ORs the low `len` (≤ 64) bits of `v` in at `bit`.
inline void or64(std::span<std::uint64_t> w, std::size_t bit, std::uint64_t v, std::size_t len) {
  if (len < 64) v &= (std::uint64_t{1} << len) - 1;
  const std::size_t i = bit >> 6, off = bit & 63;
  w[i] |= v << off;
  if (off != 0 && off + len > 64) w[i + 1] |= v >> (64 - off);
}

/// Unpacks into word-aligned rows: out[i * row_words(n) + k].
void unpack_rows(std::span<const std::uint64_t> packed, std::size_t n, std::span<std::uint64_t> out);
/// Inverse of unpack_rows; `out` must be zeroed.
void pack_rows(std::span<const std::uint64_t> rows, std::size_t n, std::span<std::uint64_t> out);
/// Aligned-row boolean product: row i of out = ∪ { y_k : x_ik = 1 }.
void multiply_rows(std::span<const std::uint64_t> x, std::span<const std::uint64_t> y,
                   std::size_t n, std::span<std::uint64_t> out);

}  // namespace packed

/// Read-only view of a packed n×n boolean matrix.
class MatrixView {
 public:
  MatrixView(std::size_t n, std::span<const std::uint64_t> words) : n_(n), words_(words) {}
  std::size_t dimension() const noexcept { return n_; }
  bool get(std::size_t i, std::size_t j) const {
    const std::size_t b = i * n_ + j;
    return ((words_[b >> 6] >> (b & 63)) & 1u) != 0;
  }
  std::span<const std::uint64_t> words() const noexcept { return words_; }
  /// True iff this & mask has a set bit (mask in the same packed layout).
  bool meets(std::span<const std::uint64_t> mask) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if ((words_[k] & mask[k]) != 0) return true;
    return false;
  }

 private:
  std::size_t n_;
  std::span<const std::uint64_t> words_;
};

/// An n×n boolean matrix: a binary relation on n states. Value semantics,
/// hashable, totally ordered by packed words.
class BinaryMatrix {
 public:
  BinaryMatrix() = default;
  explicit BinaryMatrix(std::size_t n) : n_(n), words_(packed::word_count(n), 0) {}
  BinaryMatrix(std::initializer_list<std::initializer_list<int>> rows);
  explicit BinaryMatrix(MatrixView v) : n_(v.dimension()), words_(v.words().begin(), v.words().end()) {}

  static BinaryMatrix zero(std::size_t n) { return BinaryMatrix(n); }
  static BinaryMatrix identity(std::size_t n);
  /// The matrix whose entry (i, j) is bit i·n + j of `code` (n ≤ 8).
  static BinaryMatrix from_code(std::size_t n, std::uint64_t code);

  std::size_t dimension() const noexcept { return n_; }
  bool get(std::size_t i, std::size_t j) const { return view().get(i, j); }
  void set(std::size_t i, std::size_t j, bool value = true);

  /// Row i as a state set over [0, n).
  StateSet row(std::size_t i) const;
  std::size_t ones() const;

  MatrixView view() const noexcept { return {n_, words_}; }
  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::size_t hash() const noexcept;

  /// Rows separated by '/', e.g. "01/10".
  std::string to_string() const;

  friend bool operator==(const BinaryMatrix&, const BinaryMatrix&) = default;
  friend auto operator<=>(const BinaryMatrix&, const BinaryMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BinaryMatrixHash {
  std::size_t operator()(const BinaryMatrix& m) const noexcept { return m.hash(); }
};

/// c_ij = max_k x_ik · y_kj. Throws std::invalid_argument on mismatched dimensions.
BinaryMatrix bool_mul(const BinaryMatrix& x, const BinaryMatrix& y);

std::uint64_t hash_words(std::span<const std::uint64_t> words) noexcept;

}  // namespace ifo
