#include "ifo/binary_matrix.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace ifo {

namespace packed {

void unpack_rows(std::span<const std::uint64_t> src, std::size_t n, std::span<std::uint64_t> out) {
  const std::size_t rw = row_words(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < rw; ++k) {
      const std::size_t len = std::min<std::size_t>(64, n - 64 * k);
      std::uint64_t v = load64(src, i * n + 64 * k);
      if (len < 64) v &= (std::uint64_t{1} << len) - 1;
      out[i * rw + k] = v;
    }
  }
}

void pack_rows(std::span<const std::uint64_t> rows, std::size_t n, std::span<std::uint64_t> out) {
  const std::size_t rw = row_words(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < rw; ++k)
      or64(out, i * n + 64 * k, rows[i * rw + k], std::min<std::size_t>(64, n - 64 * k));
}

void multiply_rows(std::span<const std::uint64_t> x, std::span<const std::uint64_t> y,
                   std::size_t n, std::span<std::uint64_t> out) {
  const std::size_t rw = row_words(n);
  if (rw == 1) {
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t sel = x[i], acc = 0;
      while (sel != 0) {
        acc |= y[static_cast<std::size_t>(std::countr_zero(sel))];
        sel &= sel - 1;
      }
      out[i] = acc;
    }
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t* acc = &out[i * rw];
    std::fill(acc, acc + rw, 0);
    for (std::size_t kw = 0; kw < rw; ++kw) {
      std::uint64_t sel = x[i * rw + kw];
      while (sel != 0) {
        const std::size_t k = kw * 64 + static_cast<std::size_t>(std::countr_zero(sel));
        for (std::size_t w = 0; w < rw; ++w) acc[w] |= y[k * rw + w];
        sel &= sel - 1;
      }
    }
  }
}

}  // namespace packed

BinaryMatrix::BinaryMatrix(std::initializer_list<std::initializer_list<int>> rows)
    : BinaryMatrix(rows.size()) {
  std::size_t i = 0;
  for (const auto& r : rows) {
    if (r.size() != n_) throw std::invalid_argument("BinaryMatrix rows must be square");
    std::size_t j = 0;
    for (int v : r) set(i, j++, v != 0);
    ++i;
  }
}

BinaryMatrix BinaryMatrix::identity(std::size_t n) {
  BinaryMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

BinaryMatrix BinaryMatrix::from_code(std::size_t n, std::uint64_t code) {
  if (n * n > 64) throw std::invalid_argument("from_code supports n ≤ 8");
  BinaryMatrix m(n);
  if (n > 0) m.words_[0] = n * n == 64 ? code : code & ((std::uint64_t{1} << (n * n)) - 1);
  return m;
}

void BinaryMatrix::set(std::size_t i, std::size_t j, bool value) {
  if (i >= n_ || j >= n_) throw std::out_of_range("matrix index out of range");
  const std::size_t b = i * n_ + j;
  const std::uint64_t bit = std::uint64_t{1} << (b & 63);
  if (value)
    words_[b >> 6] |= bit;
  else
    words_[b >> 6] &= ~bit;
}

StateSet BinaryMatrix::row(std::size_t i) const {
  StateSet s(n_);
  for (std::size_t j = 0; j < n_; ++j)
    if (get(i, j)) s.insert(static_cast<State>(j));
  return s;
}

std::size_t BinaryMatrix::ones() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::uint64_t hash_words(std::span<const std::uint64_t> words) noexcept {
  std::uint64_t h = 0x243f6a8885a308d3ULL;
  for (auto w : words) {
    h ^= w;
    h *= 0x9fb21c651e98df25ULL;
    h ^= h >> 29;
  }
  h *= 0xbf58476d1ce4e5b9ULL;
  return h ^ (h >> 31);
}

std::size_t BinaryMatrix::hash() const noexcept {
  return static_cast<std::size_t>(hash_words(words_) ^ n_);
}

std::string BinaryMatrix::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < n_; ++i) {
    if (i) out += '/';
    for (std::size_t j = 0; j < n_; ++j) out += get(i, j) ? '1' : '0';
  }
  return out;
}

BinaryMatrix bool_mul(const BinaryMatrix& x, const BinaryMatrix& y) {
  const std::size_t n = x.dimension();
  if (y.dimension() != n) throw std::invalid_argument("bool_mul: dimension mismatch");
  const std::size_t rw = packed::row_words(n);
  std::vector<std::uint64_t> xr(n * rw), yr(n * rw), zr(n * rw);
  packed::unpack_rows(x.words(), n, xr);
  packed::unpack_rows(y.words(), n, yr);
  packed::multiply_rows(xr, yr, n, zr);
  std::vector<std::uint64_t> out(packed::word_count(n), 0);
  packed::pack_rows(zr, n, out);
  return BinaryMatrix(MatrixView(n, out));
}

}  // namespace ifo
