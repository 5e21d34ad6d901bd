#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "oritree/digraph.hpp"
#include "oritree/error.hpp"

namespace oritree {

// An oriented tree on vertices 0..k with k arcs.
class OrientedTree {
 public:
  OrientedTree() = default;

  std::size_t order() const noexcept { return nbrs_.size(); }
  std::size_t arc_count() const noexcept { return arcs_.size(); }
  const std::vector<Arc>& arcs() const noexcept { return arcs_; }

  std::span<const Vertex> out(Vertex v) const { return out_[ix(v)]; }
  std::span<const Vertex> in(Vertex v) const { return in_[ix(v)]; }
  std::span<const Vertex> nbrs(Vertex v, Side s) const { return s == Side::Out ? out(v) : in(v); }
  std::span<const Vertex> neighbours(Vertex v) const { return nbrs_[ix(v)]; }

  std::size_t out_degree(Vertex v) const { return out_[ix(v)].size(); }
  std::size_t in_degree(Vertex v) const { return in_[ix(v)].size(); }
  std::size_t degree(Vertex v, Side s) const { return s == Side::Out ? out_degree(v) : in_degree(v); }
  std::size_t total_degree(Vertex v) const { return nbrs_[ix(v)].size(); }
  bool is_leaf(Vertex v) const { return total_degree(v) == 1; }

  bool has_arc(Vertex u, Vertex v) const {
    auto o = out(u);
    return std::binary_search(o.begin(), o.end(), v);
  }
  // Side of `v` as seen from its neighbour `u`: Out when the arc is u->v.
  Side side_of(Vertex u, Vertex v) const { return has_arc(u, v) ? Side::Out : Side::In; }

  std::size_t max_total_degree() const {
    std::size_t m = 0;
    for (const auto& l : nbrs_) m = std::max(m, l.size());
    return m;
  }
  std::size_t max_out_degree() const {
    std::size_t m = 0;
    for (const auto& l : out_) m = std::max(m, l.size());
    return m;
  }

  // Underlying BFS distances from `s`.
  std::vector<std::size_t> distances_from(Vertex s) const {
    std::vector<std::size_t> dist(order(), static_cast<std::size_t>(-1));
    std::deque<Vertex> q{s};
    dist[ix(s)] = 0;
    while (!q.empty()) {
      Vertex x = q.front();
      q.pop_front();
      for (Vertex y : neighbours(x)) {
        if (dist[ix(y)] != static_cast<std::size_t>(-1)) continue;
        dist[ix(y)] = dist[ix(x)] + 1;
        q.push_back(y);
      }
    }
    return dist;
  }
  std::size_t distance(Vertex u, Vertex v) const { return distances_from(u)[ix(v)]; }

  // Vertices of the unique path from u to v, inclusive.
  std::vector<Vertex> path(Vertex u, Vertex v) const {
    std::vector<Vertex> parent(order(), kNoVertex);
    std::deque<Vertex> q{u};
    parent[ix(u)] = u;
    while (!q.empty()) {
      Vertex x = q.front();
      q.pop_front();
      for (Vertex y : neighbours(x))
        if (parent[ix(y)] == kNoVertex) {
          parent[ix(y)] = x;
          q.push_back(y);
        }
    }
    std::vector<Vertex> p{v};
    while (p.back() != u) p.push_back(parent[ix(p.back())]);
    std::reverse(p.begin(), p.end());
    return p;
  }

  std::size_t diameter() const {
    auto d0 = distances_from(0);
    auto far = static_cast<Vertex>(std::max_element(d0.begin(), d0.end()) - d0.begin());
    auto d1 = distances_from(far);
    return *std::max_element(d1.begin(), d1.end());
  }

  Digraph as_digraph() const { return build_digraph(order(), arcs_); }

  friend bool operator==(const OrientedTree& a, const OrientedTree& b) {
    return a.order() == b.order() && a.arcs_ == b.arcs_;
  }

 private:
  friend OrientedTree build_tree(std::size_t n, std::vector<Arc> arcs);
  static std::size_t ix(Vertex v) { return static_cast<std::size_t>(v); }

  std::vector<Arc> arcs_;
  std::vector<std::vector<Vertex>> out_, in_, nbrs_;
};

inline OrientedTree build_tree(std::size_t n, std::vector<Arc> arcs) {
  if (arcs.empty()) throw Error(ErrorCode::EmptyTree, "tree needs at least one arc");
  for (const Arc& a : arcs) {
    if (a.tail < 0 || a.head < 0 || static_cast<std::size_t>(a.tail) >= n ||
        static_cast<std::size_t>(a.head) >= n)
      throw Error(ErrorCode::VertexOutOfRange, "arc (" + std::to_string(a.tail) + "," +
                                                   std::to_string(a.head) + ")");
    if (a.tail == a.head) throw Error(ErrorCode::HasCycle, "loop at " + std::to_string(a.tail));
  }
  std::vector<std::size_t> comp(n);
  std::iota(comp.begin(), comp.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  for (const Arc& a : arcs) {
    auto r1 = find(static_cast<std::size_t>(a.tail)), r2 = find(static_cast<std::size_t>(a.head));
    if (r1 == r2)
      throw Error(ErrorCode::HasCycle, "arc (" + std::to_string(a.tail) + "," +
                                           std::to_string(a.head) + ") closes a cycle");
    comp[r1] = r2;
  }
  if (arcs.size() + 1 != n)
    throw Error(ErrorCode::NotConnected, std::to_string(n) + " vertices but " +
                                             std::to_string(arcs.size()) + " arcs");

  std::sort(arcs.begin(), arcs.end());
  OrientedTree t;
  t.out_.assign(n, {});
  t.in_.assign(n, {});
  t.nbrs_.assign(n, {});
  for (const Arc& a : arcs) {
    t.out_[static_cast<std::size_t>(a.tail)].push_back(a.head);
    t.in_[static_cast<std::size_t>(a.head)].push_back(a.tail);
    t.nbrs_[static_cast<std::size_t>(a.tail)].push_back(a.head);
    t.nbrs_[static_cast<std::size_t>(a.head)].push_back(a.tail);
  }
  for (auto* lists : {&t.out_, &t.in_, &t.nbrs_})
    for (auto& l : *lists) std::sort(l.begin(), l.end());
  t.arcs_ = std::move(arcs);
  return t;
}

// Vertex count inferred as 1 + the largest id used.
inline OrientedTree build_tree(std::vector<Arc> arcs) {
  if (arcs.empty()) throw Error(ErrorCode::EmptyTree, "tree needs at least one arc");
  Vertex top = 0;
  for (const Arc& a : arcs) top = std::max({top, a.tail, a.head});
  return build_tree(static_cast<std::size_t>(top) + 1, std::move(arcs));
}

inline OrientedTree reverse(const OrientedTree& t) {
  std::vector<Arc> arcs;
  for (const Arc& a : t.arcs()) arcs.push_back({a.head, a.tail});
  return build_tree(t.order(), std::move(arcs));
}

inline bool is_antidirected(const OrientedTree& t) {
  for (std::size_t i = 0; i < t.order(); ++i) {
    auto v = static_cast<Vertex>(i);
    if (t.out_degree(v) > 0 && t.in_degree(v) > 0) return false;
  }
  return true;
}

inline std::optional<Vertex> is_out_arborescence(const OrientedTree& t) {
  std::optional<Vertex> root;
  for (std::size_t i = 0; i < t.order(); ++i) {
    auto v = static_cast<Vertex>(i);
    if (t.in_degree(v) == 0) {
      if (root) return std::nullopt;
      root = v;
    } else if (t.in_degree(v) != 1) {
      return std::nullopt;
    }
  }
  return root;
}

// A subtree of a fixed tree, as a membership mask.
using VertexMask = std::vector<char>;

inline std::size_t mask_size(const VertexMask& m) {
  return static_cast<std::size_t>(std::count(m.begin(), m.end(), char{1}));
}

inline std::size_t degree_within(const OrientedTree& t, const VertexMask& m, Vertex v) {
  std::size_t d = 0;
  for (Vertex y : t.neighbours(v)) d += m[static_cast<std::size_t>(y)] ? 1 : 0;
  return d;
}

// Penultimate vertices of the subtree `m`: non-leaves all of whose
// neighbours but at most one are leaves.
inline std::vector<Vertex> penultimate_vertices(const OrientedTree& t, const VertexMask& m) {
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < t.order(); ++i) {
    auto v = static_cast<Vertex>(i);
    if (!m[i] || degree_within(t, m, v) < 2) continue;
    std::size_t non_leaf = 0;
    for (Vertex y : t.neighbours(v))
      if (m[static_cast<std::size_t>(y)] && degree_within(t, m, y) > 1) ++non_leaf;
    if (non_leaf <= 1) out.push_back(v);
  }
  return out;
}

inline std::vector<Vertex> penultimate_vertices(const OrientedTree& t) {
  return penultimate_vertices(t, VertexMask(t.order(), 1));
}

// Maximum total degree; ties prefer deg+ >= deg-, then the smallest id.
// When the result still has deg+ < deg-, callers mirror the instance.
inline Vertex anchor_vertex(const OrientedTree& t) {
  const std::size_t top = t.max_total_degree();
  Vertex fallback = kNoVertex;
  for (std::size_t i = 0; i < t.order(); ++i) {
    auto v = static_cast<Vertex>(i);
    if (t.total_degree(v) != top) continue;
    if (t.out_degree(v) >= t.in_degree(v)) return v;
    if (fallback == kNoVertex) fallback = v;
  }
  return fallback;
}

struct CoreSubtree {
  Vertex center = kNoVertex;  // T1 is the radius-2 ball around this vertex
  VertexMask members;
};

// Maximal diameter-4 subtree containing t and N(t): the largest radius-2
// ball centred at t or at a neighbour of t (ties: t, then smallest id).
inline CoreSubtree core_subtree(const OrientedTree& t, Vertex anchor) {
  auto ball = [&](Vertex c) {
    auto dist = t.distances_from(c);
    VertexMask m(t.order(), 0);
    for (std::size_t i = 0; i < t.order(); ++i) m[i] = dist[i] <= 2 ? 1 : 0;
    return m;
  };
  CoreSubtree best{anchor, ball(anchor)};
  std::size_t best_size = mask_size(best.members);
  for (Vertex c : t.neighbours(anchor)) {
    auto m = ball(c);
    if (std::size_t s = mask_size(m); s > best_size) {
      best = {c, std::move(m)};
      best_size = s;
    }
  }
  return best;
}

struct StrippingStep {
  Vertex u = kNoVertex;  // penultimate vertex of T_{i+1} whose leaves were stripped
  Vertex v = kNoVertex;  // its unique neighbour in T_i
  std::vector<Vertex> out_leaves;  // stripped leaves in N+(u)
  std::vector<Vertex> in_leaves;   // stripped leaves in N-(u)

  std::size_t leaf_count() const { return out_leaves.size() + in_leaves.size(); }
};

// T_1 = core, and steps[i-1] turns T_i into T_{i+1}.
struct StrippingSequence {
  Vertex anchor = kNoVertex;
  CoreSubtree core;
  std::vector<StrippingStep> steps;

  std::size_t length() const { return steps.size() + 1; }

  // Membership mask of T_i, 1-based.
  VertexMask subtree(std::size_t i) const {
    VertexMask m = core.members;
    for (std::size_t s = 0; s + 1 < i; ++s) {
      for (Vertex x : steps[s].out_leaves) m[static_cast<std::size_t>(x)] = 1;
      for (Vertex x : steps[s].in_leaves) m[static_cast<std::size_t>(x)] = 1;
    }
    return m;
  }
};

// Peels T down to the core by repeatedly removing the leaf neighbours of a
// penultimate vertex. Eligible vertices have all their current leaves
// outside the core; among them pick minimum degree, then maximum distance
// to the anchor, then smallest id.
inline StrippingSequence stripping_sequence(const OrientedTree& t, Vertex anchor) {
  StrippingSequence seq;
  seq.anchor = anchor;
  seq.core = core_subtree(t, anchor);
  const auto dist = t.distances_from(anchor);
  VertexMask cur(t.order(), 1);
  const VertexMask& core = seq.core.members;

  std::vector<StrippingStep> top_down;
  while (cur != core) {
    std::optional<std::tuple<std::size_t, std::size_t, Vertex>> best_key;
    for (Vertex u : penultimate_vertices(t, cur)) {
      bool eligible = true;
      for (Vertex y : t.neighbours(u)) {
        auto yi = static_cast<std::size_t>(y);
        if (cur[yi] && degree_within(t, cur, y) == 1 && core[yi]) eligible = false;
      }
      if (!eligible) continue;
      // min degree, max distance, min id
      std::tuple<std::size_t, std::size_t, Vertex> key{
          degree_within(t, cur, u), static_cast<std::size_t>(-1) - dist[static_cast<std::size_t>(u)], u};
      if (!best_key || key < *best_key) best_key = key;
    }
    if (!best_key) throw Error(ErrorCode::BadParams, "no eligible penultimate vertex");
    StrippingStep step;
    step.u = std::get<2>(*best_key);
    for (Vertex y : t.neighbours(step.u)) {
      auto yi = static_cast<std::size_t>(y);
      if (!cur[yi]) continue;
      if (degree_within(t, cur, y) == 1) {
        (t.has_arc(step.u, y) ? step.out_leaves : step.in_leaves).push_back(y);
      } else {
        step.v = y;
      }
    }
    for (Vertex y : step.out_leaves) cur[static_cast<std::size_t>(y)] = 0;
    for (Vertex y : step.in_leaves) cur[static_cast<std::size_t>(y)] = 0;
    top_down.push_back(std::move(step));
  }
  seq.steps.assign(top_down.rbegin(), top_down.rend());
  return seq;
}

inline StrippingSequence stripping_sequence(const OrientedTree& t) {
  return stripping_sequence(t, anchor_vertex(t));
}

}  // namespace oritree
