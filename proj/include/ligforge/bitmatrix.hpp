#pragma once

#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

namespace ligforge {

/// Square boolean matrix over [0, n) with 64-bit packed rows.
class BitMatrix {
public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

  std::size_t size() const { return n_; }

  bool test(std::size_t i, std::size_t j) const {
    return n_ != 0 && (bits_[i * words_ + j / 64] >> (j % 64)) & 1U;
  }

  /// Returns true if the pair was not present before.
  bool set(std::size_t i, std::size_t j) {
    std::uint64_t& w = bits_[i * words_ + j / 64];
    const std::uint64_t mask = std::uint64_t{1} << (j % 64);
    if (w & mask) return false;
    w |= mask;
    return true;
  }

  template <class F>
  void for_each_in_row(std::size_t i, F&& f) const {
    if (n_ == 0) return;
    const std::uint64_t* row = &bits_[i * words_];
    for (std::size_t k = 0; k < words_; ++k) {
      std::uint64_t w = row[k];
      while (w != 0) {
        const int b = std::countr_zero(w);
        f(static_cast<std::uint32_t>(k * 64 + static_cast<std::size_t>(b)));
        w &= w - 1;
      }
    }
  }

  /// this |= row `j` of `other` into row `i`.
  void or_row(std::size_t i, const BitMatrix& other, std::size_t j) {
    for (std::size_t k = 0; k < words_; ++k) bits_[i * words_ + k] |= other.bits_[j * words_ + k];
  }

  void merge(const BitMatrix& other) {
    for (std::size_t k = 0; k < bits_.size(); ++k) bits_[k] |= other.bits_[k];
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : bits_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool empty() const { return count() == 0; }

  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs() const {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    for (std::size_t i = 0; i < n_; ++i) {
      for_each_in_row(i, [&](std::uint32_t j) { out.emplace_back(static_cast<std::uint32_t>(i), j); });
    }
    return out;
  }

  BitMatrix transposed() const {
    BitMatrix t(n_);
    for (std::size_t i = 0; i < n_; ++i) for_each_in_row(i, [&](std::uint32_t j) { t.set(j, i); });
    return t;
  }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// (a, c) in result iff there is b with (a, b) in lhs and (b, c) in rhs.
inline BitMatrix compose(const BitMatrix& lhs, const BitMatrix& rhs) {
  BitMatrix out(lhs.size());
  for (std::size_t a = 0; a < lhs.size(); ++a) lhs.for_each_in_row(a, [&](std::uint32_t b) { out.or_row(a, rhs, b); });
  return out;
}

inline BitMatrix unite(BitMatrix a, const BitMatrix& b) {
  a.merge(b);
  return a;
}

}  // namespace ligforge
