#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oritree/bitset.hpp"
#include "oritree/error.hpp"

namespace oritree {

using Vertex = std::int32_t;
inline constexpr Vertex kNoVertex = -1;

struct Arc {
  Vertex tail = 0;
  Vertex head = 0;

  friend auto operator<=>(const Arc&, const Arc&) = default;
};

enum class Side : std::uint8_t { Out, In };

constexpr Side opposite(Side s) { return s == Side::Out ? Side::In : Side::Out; }
constexpr const char* to_string(Side s) { return s == Side::Out ? "out" : "in"; }

// Immutable digraph on vertices 0..n-1. Loops and parallel arcs are
// rejected; digons are allowed. Adjacency is held twice: sorted lists for
// iteration and bitsets for the intersection tests the embedder relies on.
class Digraph {
 public:
  Digraph() = default;

  std::size_t order() const noexcept { return out_.size(); }
  std::size_t size() const noexcept { return arcs_.size(); }
  const std::vector<Arc>& arcs() const noexcept { return arcs_; }

  std::span<const Vertex> out(Vertex v) const { return out_[idx(v)]; }
  std::span<const Vertex> in(Vertex v) const { return in_[idx(v)]; }
  std::span<const Vertex> nbrs(Vertex v, Side s) const { return s == Side::Out ? out(v) : in(v); }

  const DynBitset& out_bits(Vertex v) const { return out_bits_[idx(v)]; }
  const DynBitset& in_bits(Vertex v) const { return in_bits_[idx(v)]; }
  const DynBitset& bits(Vertex v, Side s) const { return s == Side::Out ? out_bits(v) : in_bits(v); }
  // Neighbours in the underlying simple graph.
  const DynBitset& underlying_bits(Vertex v) const { return und_bits_[idx(v)]; }

  bool has_arc(Vertex u, Vertex v) const { return out_bits_[idx(u)].test(idx(v)); }
  bool adjacent(Vertex u, Vertex v) const { return und_bits_[idx(u)].test(idx(v)); }

  std::size_t out_degree(Vertex v) const { return out_[idx(v)].size(); }
  std::size_t in_degree(Vertex v) const { return in_[idx(v)].size(); }
  std::size_t degree(Vertex v, Side s) const { return s == Side::Out ? out_degree(v) : in_degree(v); }
  std::size_t total_degree(Vertex v) const { return und_bits_[idx(v)].count(); }

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.order() == b.order() && a.arcs_ == b.arcs_;
  }

 private:
  friend Digraph build_digraph(std::size_t n, std::vector<Arc> arcs);

  static std::size_t idx(Vertex v) { return static_cast<std::size_t>(v); }

  std::vector<Arc> arcs_;
  std::vector<std::vector<Vertex>> out_, in_;
  std::vector<DynBitset> out_bits_, in_bits_, und_bits_;
};

// Validates and freezes an arc list. Arcs are stored sorted.
inline Digraph build_digraph(std::size_t n, std::vector<Arc> arcs) {
  for (const Arc& a : arcs) {
    if (a.tail < 0 || a.head < 0 || static_cast<std::size_t>(a.tail) >= n ||
        static_cast<std::size_t>(a.head) >= n)
      throw Error(ErrorCode::VertexOutOfRange, "arc (" + std::to_string(a.tail) + "," +
                                                   std::to_string(a.head) + ") with n=" +
                                                   std::to_string(n));
    if (a.tail == a.head) throw Error(ErrorCode::SelfLoop, "vertex " + std::to_string(a.tail));
  }
  std::sort(arcs.begin(), arcs.end());
  auto dup = std::adjacent_find(arcs.begin(), arcs.end());
  if (dup != arcs.end())
    throw Error(ErrorCode::DuplicateArc,
                "(" + std::to_string(dup->tail) + "," + std::to_string(dup->head) + ")");

  Digraph d;
  d.out_.assign(n, {});
  d.in_.assign(n, {});
  d.out_bits_.assign(n, DynBitset(n));
  d.in_bits_.assign(n, DynBitset(n));
  d.und_bits_.assign(n, DynBitset(n));
  for (const Arc& a : arcs) {
    auto t = static_cast<std::size_t>(a.tail), h = static_cast<std::size_t>(a.head);
    d.out_[t].push_back(a.head);
    d.in_[h].push_back(a.tail);
    d.out_bits_[t].set(h);
    d.in_bits_[h].set(t);
    d.und_bits_[t].set(h);
    d.und_bits_[h].set(t);
  }
  for (auto& l : d.in_) std::sort(l.begin(), l.end());
  d.arcs_ = std::move(arcs);
  return d;
}

struct DegreeProfile {
  std::size_t delta_plus = 0;
  std::size_t delta_minus = 0;
  std::size_t delta_zero = 0;
  std::size_t pseudo_delta_zero = 0;
  std::size_t Delta_plus = 0;
  std::size_t Delta_minus = 0;
  std::size_t Delta_tot = 0;
  // min(Delta_plus, Delta_minus): the largest m with a vertex of outdegree
  // >= m and a (possibly different) vertex of indegree >= m.
  std::size_t Delta_pm = 0;

  friend bool operator==(const DegreeProfile&, const DegreeProfile&) = default;
};

inline DegreeProfile degree_profile(const Digraph& d) {
  DegreeProfile p;
  const std::size_t n = d.order();
  if (n == 0) return p;
  p.delta_plus = p.delta_minus = static_cast<std::size_t>(-1);
  std::size_t pseudo = static_cast<std::size_t>(-1);
  for (std::size_t i = 0; i < n; ++i) {
    auto v = static_cast<Vertex>(i);
    std::size_t op = d.out_degree(v), im = d.in_degree(v);
    p.delta_plus = std::min(p.delta_plus, op);
    p.delta_minus = std::min(p.delta_minus, im);
    p.Delta_plus = std::max(p.Delta_plus, op);
    p.Delta_minus = std::max(p.Delta_minus, im);
    p.Delta_tot = std::max(p.Delta_tot, d.total_degree(v));
    if (op > 0) pseudo = std::min(pseudo, op);
    if (im > 0) pseudo = std::min(pseudo, im);
  }
  p.delta_zero = std::min(p.delta_plus, p.delta_minus);
  p.pseudo_delta_zero = d.size() == 0 ? 0 : pseudo;
  p.Delta_pm = std::min(p.Delta_plus, p.Delta_minus);
  return p;
}

inline Digraph reverse(const Digraph& d) {
  std::vector<Arc> arcs;
  arcs.reserve(d.size());
  for (const Arc& a : d.arcs()) arcs.push_back({a.head, a.tail});
  return build_digraph(d.order(), std::move(arcs));
}

inline bool is_oriented(const Digraph& d) {
  for (const Arc& a : d.arcs())
    if (d.has_arc(a.head, a.tail)) return false;
  return true;
}

// Shortest path length in the underlying undirected graph.
inline std::optional<std::size_t> underlying_distance(const Digraph& d, Vertex u, Vertex v) {
  if (u == v) return 0;
  std::vector<std::size_t> dist(d.order(), static_cast<std::size_t>(-1));
  std::deque<Vertex> queue{u};
  dist[static_cast<std::size_t>(u)] = 0;
  while (!queue.empty()) {
    Vertex x = queue.front();
    queue.pop_front();
    std::size_t dx = dist[static_cast<std::size_t>(x)];
    std::optional<std::size_t> found;
    d.underlying_bits(x).for_each([&](std::size_t y) {
      if (dist[y] != static_cast<std::size_t>(-1)) return;
      dist[y] = dx + 1;
      if (static_cast<Vertex>(y) == v) found = dx + 1;
      queue.push_back(static_cast<Vertex>(y));
    });
    if (found) return found;
  }
  return std::nullopt;
}

// Arc-subset on the same vertex set.
inline bool is_spanning_subdigraph(const Digraph& sub, const Digraph& d) {
  if (sub.order() != d.order()) return false;
  return std::all_of(sub.arcs().begin(), sub.arcs().end(),
                     [&](const Arc& a) { return d.has_arc(a.tail, a.head); });
}

}  // namespace oritree
