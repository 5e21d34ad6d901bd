#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>

namespace oritree {

// Counter-based generator: the n-th draw is mix(key, n), so streams are
// reproducible across platforms and can be split without shared state.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0) : key_(mix(seed ^ 0x6a09e667f3bcc909ULL)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  // Independent child stream; the parent's position is untouched.
  Rng split(std::uint64_t stream) const {
    Rng child(0);
    child.key_ = mix(key_ ^ mix(stream + 0xbb67ae8584caa73bULL));
    return child;
  }

  // Uniform integer in [0, bound), bound > 0; rejection keeps it unbiased.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (true) {
      std::uint64_t r = (*this)();
      if (r >= threshold) return r % bound;
    }
  }

  // Uniform integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  bool coin() { return ((*this)() >> 63) != 0; }

  template <class T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = below(i);
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace oritree
