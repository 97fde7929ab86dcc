#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace arfpf {

// Dense vector over F2, packed into 64-bit words.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  static BitVec from_indices(std::size_t size, const std::vector<int>& indices);

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i, bool value = true) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  void reset() { std::fill(words_.begin(), words_.end(), 0); }

  BitVec& operator^=(const BitVec& other) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
  }
  BitVec& operator&=(const BitVec& other) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
    return *this;
  }
  BitVec& operator|=(const BitVec& other) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
    return *this;
  }
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
  friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }
  friend BitVec operator|(BitVec a, const BitVec& b) { return a |= b; }
  friend bool operator==(const BitVec& a, const BitVec& b) = default;

  std::size_t count() const {
    std::size_t total = 0;
    for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
  }
  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  // Lowest set index at or after `from`, or size() when there is none.
  std::size_t find_next(std::size_t from) const;
  std::size_t find_first() const { return find_next(0); }

  std::vector<int> indices() const;

  // "0110..." with bit 0 first.
  std::string to_string() const;

  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

// Parity of the intersection of a and b (the standard F2 inner product).
inline bool dot(const BitVec& a, const BitVec& b) {
  std::uint64_t acc = 0;
  const auto& wa = a.words();
  const auto& wb = b.words();
  for (std::size_t w = 0; w < wa.size(); ++w) acc ^= wa[w] & wb[w];
  return std::popcount(acc) & 1;
}

struct BitVecHash {
  std::size_t operator()(const BitVec& v) const noexcept {
    std::size_t h = v.size();
    for (auto w : v.words()) h = h * 0x9E3779B97F4A7C15ULL ^ std::hash<std::uint64_t>{}(w);
    return h;
  }
};

// Incremental Gaussian elimination for a linear system over F2.
//
// Rows are reduced against the current echelon basis as they arrive, so an
// arbitrarily long constraint stream costs memory proportional to the number
// of unknowns only.
class F2System {
 public:
  explicit F2System(std::size_t unknowns) : unknowns_(unknowns) {}

  // Returns false if the row contradicts the rows added so far.
  bool add(const BitVec& coefficients, bool rhs);

  std::size_t unknowns() const { return unknowns_; }
  std::size_t rank() const { return pivots_.size(); }
  bool consistent() const { return consistent_; }

  // A solution with every free variable set to zero; nullopt if inconsistent.
  std::optional<BitVec> solve() const;

 private:
  struct Row {
    BitVec coefficients;
    bool rhs;
    std::size_t pivot;
  };
  std::size_t unknowns_;
  std::vector<Row> pivots_;  // sorted by pivot column
  bool consistent_ = true;
};

// Rank over F2 of a list of equal-length vectors.
std::size_t f2_rank(std::vector<BitVec> rows);

}  // namespace arfpf
