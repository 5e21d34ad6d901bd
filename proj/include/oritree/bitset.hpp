#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace oritree {

// Fixed-width bitset sized at runtime. Used for host adjacency rows and
// "used vertex" masks, where intersections dominate the cost.
class DynBitset {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  DynBitset() = default;
  explicit DynBitset(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  std::size_t size() const noexcept { return bits_; }

  void set(std::size_t i) { words_[i >> 6] |= word_bit(i); }
  void reset(std::size_t i) { words_[i >> 6] &= ~word_bit(i); }
  bool test(std::size_t i) const { return (words_[i >> 6] & word_bit(i)) != 0; }
  void clear() {
    for (auto& w : words_) w = 0;
  }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool any() const noexcept {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  bool none() const noexcept { return !any(); }

  bool intersects(const DynBitset& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }
  std::size_t intersection_count(const DynBitset& o) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
      c += static_cast<std::size_t>(std::popcount(words_[i] & o.words_[i]));
    return c;
  }

  DynBitset& operator&=(const DynBitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  DynBitset& operator|=(const DynBitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  // this &= ~o
  DynBitset& subtract(const DynBitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend DynBitset operator&(DynBitset a, const DynBitset& b) { return a &= b; }
  friend DynBitset operator|(DynBitset a, const DynBitset& b) { return a |= b; }
  friend DynBitset minus(DynBitset a, const DynBitset& b) { return a.subtract(b); }

  // First set bit at index >= from, or npos.
  std::size_t find_next(std::size_t from) const {
    if (from >= bits_) return npos;
    std::size_t wi = from >> 6;
    std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (from & 63));
    while (true) {
      if (w) return (wi << 6) + static_cast<std::size_t>(std::countr_zero(w));
      if (++wi >= words_.size()) return npos;
      w = words_[wi];
    }
  }
  std::size_t find_first() const { return find_next(0); }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w) {
        f((wi << 6) + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<std::size_t> to_vector() const {
    std::vector<std::size_t> out;
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  friend bool operator==(const DynBitset&, const DynBitset&) = default;

 private:
  static std::uint64_t word_bit(std::size_t i) { return std::uint64_t{1} << (i & 63); }

  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace oritree
