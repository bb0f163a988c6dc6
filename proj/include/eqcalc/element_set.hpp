#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace eqcalc {

inline constexpr std::size_t kMaxGroupOrder = 128;

// Fixed-capacity bitset over group element ids.
class ElementSet {
 public:
  ElementSet() = default;

  void insert(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void erase(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool contains(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

  std::size_t size() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool empty() const { return size() == 0; }

  bool subset_of(const ElementSet& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~other.words_[i]) return false;
    return true;
  }

  ElementSet operator&(const ElementSet& o) const {
    ElementSet r;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & o.words_[i];
    return r;
  }
  ElementSet operator|(const ElementSet& o) const {
    ElementSet r;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] | o.words_[i];
    return r;
  }

  std::vector<std::uint32_t> members() const {
    std::vector<std::uint32_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        int b = std::countr_zero(bits);
        out.push_back(static_cast<std::uint32_t>(w * 64 + b));
        bits &= bits - 1;
      }
    }
    return out;
  }

  std::size_t hash() const { return std::hash<std::uint64_t>{}(words_[0] * 0x9e3779b97f4a7c15ULL ^ words_[1]); }

  auto operator<=>(const ElementSet&) const = default;
  bool operator==(const ElementSet&) const = default;

 private:
  std::array<std::uint64_t, kMaxGroupOrder / 64> words_{};
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const { return s.hash(); }
};

}  // namespace eqcalc
