#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace mastct {

// Fixed-width bitset over leaf indices of a TreeCollection. Index i stands for
// the i-th label of the collection's sorted leaf set.
class LeafMask {
 public:
  static constexpr std::size_t kWords = 4;
  static constexpr std::size_t kCapacity = kWords * 64;

  constexpr LeafMask() = default;

  static LeafMask single(std::size_t i) {
    LeafMask m;
    m.set(i);
    return m;
  }
  // Mask with bits 0..n-1 set.
  static LeafMask first(std::size_t n) {
    LeafMask m;
    for (std::size_t w = 0; w < kWords && n > 0; ++w) {
      if (n >= 64) {
        m.words_[w] = ~std::uint64_t{0};
        n -= 64;
      } else {
        m.words_[w] = (std::uint64_t{1} << n) - 1;
        n = 0;
      }
    }
    return m;
  }

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }

  bool any() const {
    for (auto w : words_)
      if (w != 0) return true;
    return false;
  }
  bool none() const { return !any(); }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool is_subset_of(const LeafMask& other) const {
    for (std::size_t w = 0; w < kWords; ++w)
      if ((words_[w] & ~other.words_[w]) != 0) return false;
    return true;
  }
  bool intersects(const LeafMask& other) const {
    for (std::size_t w = 0; w < kWords; ++w)
      if ((words_[w] & other.words_[w]) != 0) return true;
    return false;
  }

  // Calls f(i) for every set bit, ascending.
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < kWords; ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        f(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  LeafMask& operator&=(const LeafMask& o) {
    for (std::size_t w = 0; w < kWords; ++w) words_[w] &= o.words_[w];
    return *this;
  }
  LeafMask& operator|=(const LeafMask& o) {
    for (std::size_t w = 0; w < kWords; ++w) words_[w] |= o.words_[w];
    return *this;
  }
  // Set difference.
  LeafMask& operator-=(const LeafMask& o) {
    for (std::size_t w = 0; w < kWords; ++w) words_[w] &= ~o.words_[w];
    return *this;
  }
  friend LeafMask operator&(LeafMask a, const LeafMask& b) { return a &= b; }
  friend LeafMask operator|(LeafMask a, const LeafMask& b) { return a |= b; }
  friend LeafMask operator-(LeafMask a, const LeafMask& b) { return a -= b; }

  friend bool operator==(const LeafMask&, const LeafMask&) = default;
  friend auto operator<=>(const LeafMask&, const LeafMask&) = default;

  std::size_t hash() const {
    std::uint64_t h = 0x9E3779B97F4A7C15ULL;
    for (auto w : words_) h = (h ^ w) * 0x100000001B3ULL + (h >> 29);
    return static_cast<std::size_t>(h);
  }

 private:
  std::array<std::uint64_t, kWords> words_{};
};

struct LeafMaskHash {
  std::size_t operator()(const LeafMask& m) const { return m.hash(); }
};

}  // namespace mastct
