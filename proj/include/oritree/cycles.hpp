#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "oritree/digraph.hpp"

namespace oritree {

// The four orientations of a 4-cycle up to rotation and reflection. The
// enumerator order is the canonical reporting order.
enum class FourCycleType : std::uint8_t { Directed = 0, ThreeOne = 1, TwoTwoBlock = 2, Alternating = 3 };

inline constexpr std::array<FourCycleType, 4> kAllFourCycleTypes{
    FourCycleType::Directed, FourCycleType::ThreeOne, FourCycleType::TwoTwoBlock,
    FourCycleType::Alternating};

constexpr std::string_view to_string(FourCycleType t) {
  switch (t) {
    case FourCycleType::Directed: return "Directed";
    case FourCycleType::ThreeOne: return "ThreeOne";
    case FourCycleType::TwoTwoBlock: return "TwoTwoBlock";
    case FourCycleType::Alternating: return "Alternating";
  }
  return "?";
}

inline std::optional<FourCycleType> four_cycle_type_from_string(std::string_view s) {
  for (auto t : kAllFourCycleTypes)
    if (to_string(t) == s) return t;
  return std::nullopt;
}

// Set of cycle types as a 4-bit mask.
class CycleTypeSet {
 public:
  constexpr CycleTypeSet() = default;
  constexpr CycleTypeSet(std::initializer_list<FourCycleType> ts) {
    for (auto t : ts) insert(t);
  }
  static constexpr CycleTypeSet all() { return CycleTypeSet(0xF); }

  constexpr void insert(FourCycleType t) { bits_ |= bit(t); }
  constexpr bool contains(FourCycleType t) const { return (bits_ & bit(t)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint8_t bits() const { return bits_; }

  friend constexpr bool operator==(CycleTypeSet, CycleTypeSet) = default;

 private:
  constexpr explicit CycleTypeSet(std::uint8_t b) : bits_(b) {}
  static constexpr std::uint8_t bit(FourCycleType t) {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(t));
  }
  std::uint8_t bits_ = 0;
};

enum class CycleMode : std::uint8_t {
  AllC4,         // any oriented 4-cycle is forbidden
  NonDirectedC4  // only the non-directed orientations are forbidden
};

constexpr CycleTypeSet forbidden_types(CycleMode mode) {
  return mode == CycleMode::AllC4
             ? CycleTypeSet::all()
             : CycleTypeSet{FourCycleType::ThreeOne, FourCycleType::TwoTwoBlock,
                            FourCycleType::Alternating};
}

struct CycleWitness {
  // Cyclic order; vertices[0] is the smallest id and vertices[1] < vertices[3].
  std::array<Vertex, 4> vertices{};
  // arcs[i] joins vertices[i] and vertices[(i+1)%4] in one of the two directions.
  std::array<Arc, 4> arcs{};
  FourCycleType type = FourCycleType::Directed;

  friend bool operator==(const CycleWitness&, const CycleWitness&) = default;
};

// pattern[i] is true when the i-th arc along the cyclic order points forward.
constexpr FourCycleType classify_cycle(std::array<bool, 4> pattern) {
  int forward = 0;
  for (bool f : pattern) forward += f ? 1 : 0;
  if (forward == 0 || forward == 4) return FourCycleType::Directed;
  if (forward == 1 || forward == 3) return FourCycleType::ThreeOne;
  for (int i = 0; i < 4; ++i)
    if (pattern[i] == pattern[(i + 1) % 4]) return FourCycleType::TwoTwoBlock;
  return FourCycleType::Alternating;
}

namespace detail {

// Visits every orientation of the cyclic tuple realizable in `d`
// (up to 16 with digons) in F-before-B order per edge.
template <class F>
void for_each_realization(const Digraph& d, const std::array<Vertex, 4>& c, F&& visit) {
  std::array<std::array<bool, 2>, 4> avail{};
  for (int i = 0; i < 4; ++i) {
    Vertex x = c[i], y = c[(i + 1) % 4];
    avail[i] = {d.has_arc(x, y), d.has_arc(y, x)};
  }
  for (int mask = 0; mask < 16; ++mask) {
    std::array<bool, 4> pattern{};
    bool ok = true;
    for (int i = 0; i < 4 && ok; ++i) {
      bool backward = ((mask >> (3 - i)) & 1) != 0;
      pattern[i] = !backward;
      ok = avail[i][backward ? 1 : 0];
    }
    if (ok) visit(pattern);
  }
}

inline CycleWitness make_witness(const std::array<Vertex, 4>& c, const std::array<bool, 4>& pattern) {
  CycleWitness w;
  w.vertices = c;
  for (int i = 0; i < 4; ++i) {
    Vertex x = c[i], y = c[(i + 1) % 4];
    w.arcs[i] = pattern[i] ? Arc{x, y} : Arc{y, x};
  }
  w.type = classify_cycle(pattern);
  return w;
}

// Least forbidden realization on one tuple, in canonical type order.
inline std::optional<CycleWitness> best_on_tuple(const Digraph& d, const std::array<Vertex, 4>& c,
                                                 CycleTypeSet forbidden) {
  std::optional<CycleWitness> best;
  for_each_realization(d, c, [&](const std::array<bool, 4>& pattern) {
    FourCycleType t = classify_cycle(pattern);
    if (!forbidden.contains(t)) return;
    if (!best || t < best->type) best = make_witness(c, pattern);
  });
  return best;
}

// Enumerates canonical cyclic tuples (a,b,c,d), a = min, b < d, of the
// underlying graph in lexicographic order; stops when `visit` returns true.
template <class F>
void for_each_underlying_c4(const Digraph& d, F&& visit) {
  const std::size_t n = d.order();
  for (std::size_t a = 0; a < n; ++a) {
    const DynBitset& na = d.underlying_bits(static_cast<Vertex>(a));
    for (std::size_t b = na.find_next(a + 1); b != DynBitset::npos; b = na.find_next(b + 1)) {
      const DynBitset& nb = d.underlying_bits(static_cast<Vertex>(b));
      for (std::size_t c = nb.find_next(a + 1); c != DynBitset::npos; c = nb.find_next(c + 1)) {
        DynBitset common = d.underlying_bits(static_cast<Vertex>(c)) & na;
        for (std::size_t x = common.find_next(b + 1); x != DynBitset::npos;
             x = common.find_next(x + 1)) {
          std::array<Vertex, 4> tuple{static_cast<Vertex>(a), static_cast<Vertex>(b),
                                      static_cast<Vertex>(c), static_cast<Vertex>(x)};
          if (visit(tuple)) return;
        }
      }
    }
  }
}

}  // namespace detail

// Lexicographically least 4-cycle whose orientation type is in `forbidden`.
// On a tuple realizing several types the first in canonical order wins.
inline std::optional<CycleWitness> find_cycle_of_types(const Digraph& d, CycleTypeSet forbidden) {
  std::optional<CycleWitness> found;
  if (forbidden.empty()) return found;
  detail::for_each_underlying_c4(d, [&](const std::array<Vertex, 4>& tuple) {
    found = detail::best_on_tuple(d, tuple, forbidden);
    return found.has_value();
  });
  return found;
}

inline std::optional<CycleWitness> find_forbidden_cycle(const Digraph& d, CycleMode mode) {
  return find_cycle_of_types(d, forbidden_types(mode));
}

inline bool is_c4_free(const Digraph& d) { return !find_forbidden_cycle(d, CycleMode::AllC4); }
inline bool is_c4_star_free(const Digraph& d) {
  return !find_forbidden_cycle(d, CycleMode::NonDirectedC4);
}

// Number of oriented 4-cycle subdigraphs of each type.
inline std::array<std::size_t, 4> four_cycle_type_counts(const Digraph& d) {
  std::array<std::size_t, 4> counts{};
  detail::for_each_underlying_c4(d, [&](const std::array<Vertex, 4>& tuple) {
    detail::for_each_realization(d, tuple, [&](const std::array<bool, 4>& pattern) {
      ++counts[static_cast<std::size_t>(classify_cycle(pattern))];
    });
    return false;
  });
  return counts;
}

inline CycleTypeSet four_cycle_types_present(const Digraph& d) {
  CycleTypeSet present;
  for (auto t : kAllFourCycleTypes) {
    if (find_cycle_of_types(d, CycleTypeSet{t})) present.insert(t);
  }
  return present;
}

inline std::string format_witness(const CycleWitness& w) {
  std::string s(to_string(w.type));
  for (Vertex v : w.vertices) s += " " + std::to_string(v);
  return s;
}

}  // namespace oritree
