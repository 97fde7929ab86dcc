#include "arfpf/bits.hpp"

namespace arfpf {

BitVec BitVec::from_indices(std::size_t size, const std::vector<int>& indices) {
  BitVec v(size);
  for (int i : indices) v.flip(static_cast<std::size_t>(i));
  return v;
}

std::size_t BitVec::find_next(std::size_t from) const {
  if (from >= size_) return size_;
  std::size_t w = from >> 6;
  std::uint64_t word = words_[w] & (~std::uint64_t{0} << (from & 63));
  while (true) {
    if (word) {
      const std::size_t i = (w << 6) + static_cast<std::size_t>(std::countr_zero(word));
      return i < size_ ? i : size_;
    }
    if (++w == words_.size()) return size_;
    word = words_[w];
  }
}

std::vector<int> BitVec::indices() const {
  std::vector<int> out;
  for (std::size_t i = find_first(); i < size_; i = find_next(i + 1)) out.push_back(static_cast<int>(i));
  return out;
}

std::string BitVec::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i)
    if (test(i)) s[i] = '1';
  return s;
}

bool F2System::add(const BitVec& coefficients, bool rhs) {
  BitVec row = coefficients;
  for (const Row& p : pivots_) {
    if (row.test(p.pivot)) {
      row ^= p.coefficients;
      rhs ^= p.rhs;
    }
  }
  const std::size_t pivot = row.find_first();
  if (pivot == row.size()) {
    if (rhs) consistent_ = false;
    return !rhs;
  }
  pivots_.push_back(Row{std::move(row), rhs, pivot});
  return true;
}

std::optional<BitVec> F2System::solve() const {
  if (!consistent_) return std::nullopt;
  BitVec x(unknowns_);
  for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
    BitVec others = it->coefficients;
    others.flip(it->pivot);
    x.set(it->pivot, it->rhs ^ dot(others, x));
  }
  return x;
}

std::size_t f2_rank(std::vector<BitVec> rows) {
  if (rows.empty()) return 0;
  F2System system(rows.front().size());
  for (const auto& r : rows) system.add(r, false);
  return system.rank();
}

}  // namespace arfpf
