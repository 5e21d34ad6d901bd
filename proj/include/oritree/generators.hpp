#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "oritree/cycles.hpp"
#include "oritree/digraph.hpp"
#include "oritree/error.hpp"
#include "oritree/rng.hpp"
#include "oritree/tree.hpp"

namespace oritree {

namespace detail {

// Perfect difference sets mod q^2+q+1; point p lies on line j iff p - j is in the set.
inline std::span<const int> difference_set(int q) {
  static constexpr std::array<int, 3> q2{0, 1, 3};
  static constexpr std::array<int, 4> q3{0, 1, 3, 9};
  static constexpr std::array<int, 5> q4{0, 1, 4, 14, 16};
  switch (q) {
    case 2: return q2;
    case 3: return q3;
    case 4: return q4;
    default: throw Error(ErrorCode::UnsupportedOrder, "projective plane of order " + std::to_string(q));
  }
}

template <class Orient>
Digraph incidence_host(int q, Orient&& orient) {
  auto ds = difference_set(q);
  const int n = q * q + q + 1;
  std::vector<Arc> arcs;
  for (int line = 0; line < n; ++line)
    for (std::size_t i = 0; i < ds.size(); ++i) {
      Vertex p = (line + ds[i]) % n, l = n + line;
      orient(arcs, p, l, i);
    }
  return build_digraph(static_cast<std::size_t>(2 * n), std::move(arcs));
}

}  // namespace detail

// Point-line incidence graph of the projective plane of order q (points
// 0..N-1, lines N..2N-1), every edge a digon. Girth 6, (q+1)-regular.
inline Digraph gen_girth6_digon_host(int q) {
  return detail::incidence_host(q, [](std::vector<Arc>& arcs, Vertex p, Vertex l, std::size_t) {
    arcs.push_back({p, l});
    arcs.push_back({l, p});
  });
}

// Oriented variant of the same incidence graph: on each line the first
// ceil((q+1)/2) points send their arc to the line, the rest receive one.
inline Digraph gen_girth6_oriented_host(int q) {
  const std::size_t split = static_cast<std::size_t>(q + 2) / 2;
  return detail::incidence_host(q, [split](std::vector<Arc>& arcs, Vertex p, Vertex l, std::size_t i) {
    if (i < split)
      arcs.push_back({p, l});
    else
      arcs.push_back({l, p});
  });
}

// Complete one-way arcs from class i to class i+1 (mod len); vertex i*s+j
// is the j-th member of class i.
inline Digraph gen_blowup_cycle(int len, int s) {
  if (len < 3 || s < 1)
    throw Error(ErrorCode::BadParams, "blow-up needs len >= 3 and s >= 1, got len=" + std::to_string(len) +
                                          " s=" + std::to_string(s));
  std::vector<Arc> arcs;
  for (int i = 0; i < len; ++i)
    for (int a = 0; a < s; ++a)
      for (int b = 0; b < s; ++b) arcs.push_back({i * s + a, ((i + 1) % len) * s + b});
  return build_digraph(static_cast<std::size_t>(len * s), std::move(arcs));
}

// Two complete digraphs of the given size plus a universal vertex (the
// last id), all adjacencies digons. clique_size 0 means ceil(k/2).
inline Digraph gen_two_clique_host(int k, int clique_size = 0) {
  if (k < 4) throw Error(ErrorCode::KTooSmall, "k=" + std::to_string(k) + " (need k >= 4)");
  const int c = clique_size > 0 ? clique_size : (k + 1) / 2;
  const int n = 2 * c + 1;
  const Vertex hub = n - 1;
  std::vector<Arc> arcs;
  for (int side = 0; side < 2; ++side)
    for (int a = 0; a < c; ++a) {
      Vertex x = side * c + a;
      for (int b = 0; b < c; ++b)
        if (a != b) arcs.push_back({x, side * c + b});
      arcs.push_back({x, hub});
      arcs.push_back({hub, x});
    }
  return build_digraph(static_cast<std::size_t>(n), std::move(arcs));
}

// The literal small-clique variant: cliques on floor(k/2)-1 vertices.
inline Digraph gen_two_clique_host_small(int k) {
  if (k < 4) throw Error(ErrorCode::KTooSmall, "k=" + std::to_string(k) + " (need k >= 4)");
  return gen_two_clique_host(k, k / 2 - 1);
}

enum class TreeKind { Any, Antidirected, OutArborescence, Path, Spider };

constexpr std::string_view to_string(TreeKind k) {
  switch (k) {
    case TreeKind::Any: return "any";
    case TreeKind::Antidirected: return "antidirected";
    case TreeKind::OutArborescence: return "out_arborescence";
    case TreeKind::Path: return "path";
    case TreeKind::Spider: return "spider";
  }
  return "?";
}

inline TreeKind tree_kind_from_string(std::string_view s) {
  for (auto k : {TreeKind::Any, TreeKind::Antidirected, TreeKind::OutArborescence, TreeKind::Path, TreeKind::Spider})
    if (to_string(k) == s) return k;
  throw Error(ErrorCode::BadKind, std::string(s));
}

namespace detail {

// Edges of a uniformly random labelled tree on n vertices (Pruefer decoding).
inline std::vector<std::pair<Vertex, Vertex>> random_tree_edges(std::size_t n, Rng& rng) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  if (n < 2) return edges;
  if (n == 2) return {{0, 1}};
  std::vector<Vertex> code(n - 2);
  for (auto& c : code) c = static_cast<Vertex>(rng.below(n));
  std::vector<std::size_t> deg(n, 1);
  for (Vertex c : code) ++deg[static_cast<std::size_t>(c)];
  for (Vertex c : code) {
    std::size_t leaf = 0;
    while (deg[leaf] != 1) ++leaf;
    edges.emplace_back(static_cast<Vertex>(leaf), c);
    --deg[leaf];
    --deg[static_cast<std::size_t>(c)];
  }
  std::vector<Vertex> last;
  for (std::size_t i = 0; i < n; ++i)
    if (deg[i] == 1) last.push_back(static_cast<Vertex>(i));
  edges.emplace_back(last[0], last[1]);
  return edges;
}

// 2-colouring of a tree by BFS parity from vertex 0.
inline std::vector<int> tree_parity(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  std::vector<std::vector<Vertex>> adj(n);
  for (auto [a, b] : edges) {
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }
  std::vector<int> colour(n, -1);
  std::vector<Vertex> stack{0};
  colour[0] = 0;
  while (!stack.empty()) {
    Vertex x = stack.back();
    stack.pop_back();
    for (Vertex y : adj[static_cast<std::size_t>(x)])
      if (colour[static_cast<std::size_t>(y)] < 0) {
        colour[static_cast<std::size_t>(y)] = 1 - colour[static_cast<std::size_t>(x)];
        stack.push_back(y);
      }
  }
  return colour;
}

// Orients every edge away from `root`.
inline std::vector<Arc> orient_away(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges, Vertex root) {
  std::vector<std::vector<Vertex>> adj(n);
  for (auto [a, b] : edges) {
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }
  std::vector<Arc> arcs;
  std::vector<char> seen(n, 0);
  std::vector<Vertex> stack{root};
  seen[static_cast<std::size_t>(root)] = 1;
  while (!stack.empty()) {
    Vertex x = stack.back();
    stack.pop_back();
    for (Vertex y : adj[static_cast<std::size_t>(x)])
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = 1;
        arcs.push_back({x, y});
        stack.push_back(y);
      }
  }
  return arcs;
}

}  // namespace detail

// Random oriented tree with k arcs. Spiders have three legs (fewer when
// k < 3) of lengths as equal as possible, longest first; their arcs get
// random directions. Out-arborescences are rooted at a maximum-degree
// vertex (smallest id).
inline OrientedTree gen_random_tree(std::size_t k, TreeKind kind, std::uint64_t seed) {
  if (k < 1) throw Error(ErrorCode::EmptyTree, "k must be at least 1");
  Rng rng(seed);
  const std::size_t n = k + 1;
  std::vector<std::pair<Vertex, Vertex>> edges;
  switch (kind) {
    case TreeKind::Path:
      for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(i + 1));
      break;
    case TreeKind::Spider: {
      const std::size_t legs = std::min<std::size_t>(3, k);
      Vertex next = 1;
      for (std::size_t leg = 0; leg < legs; ++leg) {
        std::size_t len = k / legs + (leg < k % legs ? 1 : 0);
        Vertex prev = 0;
        for (std::size_t j = 0; j < len; ++j) {
          edges.emplace_back(prev, next);
          prev = next++;
        }
      }
      break;
    }
    default:
      edges = detail::random_tree_edges(n, rng);
  }

  std::vector<Arc> arcs;
  switch (kind) {
    case TreeKind::Antidirected: {
      auto colour = detail::tree_parity(n, edges);
      const int source_colour = rng.coin() ? 1 : 0;
      for (auto [a, b] : edges) {
        bool a_source = colour[static_cast<std::size_t>(a)] == source_colour;
        arcs.push_back(a_source ? Arc{a, b} : Arc{b, a});
      }
      break;
    }
    case TreeKind::OutArborescence: {
      std::vector<std::size_t> deg(n, 0);
      for (auto [a, b] : edges) {
        ++deg[static_cast<std::size_t>(a)];
        ++deg[static_cast<std::size_t>(b)];
      }
      auto root = static_cast<Vertex>(std::max_element(deg.begin(), deg.end()) - deg.begin());
      arcs = detail::orient_away(n, edges, root);
      break;
    }
    default:
      for (auto [a, b] : edges) arcs.push_back(rng.coin() ? Arc{a, b} : Arc{b, a});
  }
  return build_tree(n, std::move(arcs));
}

inline OrientedTree gen_random_tree(std::size_t k, std::string_view kind, std::uint64_t seed) {
  return gen_random_tree(k, tree_kind_from_string(kind), seed);
}

enum class DigraphConstraint { None, C4Free, C4StarFree };

constexpr std::string_view to_string(DigraphConstraint c) {
  switch (c) {
    case DigraphConstraint::None: return "none";
    case DigraphConstraint::C4Free: return "c4_free";
    case DigraphConstraint::C4StarFree: return "c4_star_free";
  }
  return "?";
}

inline DigraphConstraint digraph_constraint_from_string(std::string_view s) {
  for (auto c : {DigraphConstraint::None, DigraphConstraint::C4Free, DigraphConstraint::C4StarFree})
    if (to_string(c) == s) return c;
  throw Error(ErrorCode::BadKind, std::string(s));
}

inline CycleTypeSet forbidden_types(DigraphConstraint c) {
  switch (c) {
    case DigraphConstraint::None: return CycleTypeSet{};
    case DigraphConstraint::C4Free: return forbidden_types(CycleMode::AllC4);
    case DigraphConstraint::C4StarFree: return forbidden_types(CycleMode::NonDirectedC4);
  }
  return CycleTypeSet{};
}

namespace detail {

// Does the arc (a,b) lie on a 4-cycle of a forbidden type in d?
inline bool closes_forbidden_cycle(const Digraph& d, Vertex a, Vertex b, CycleTypeSet forbidden) {
  // Any 4-cycle through the pair {a,b} is a-b-x-y-a with x ~ b, y ~ a, x ~ y.
  bool hit = false;
  d.underlying_bits(b).for_each([&](std::size_t x) {
    if (hit || static_cast<Vertex>(x) == a) return;
    DynBitset ys = d.underlying_bits(static_cast<Vertex>(x)) & d.underlying_bits(a);
    ys.reset(static_cast<std::size_t>(b));
    ys.for_each([&](std::size_t y) {
      if (hit) return;
      std::array<Vertex, 4> c{a, b, static_cast<Vertex>(x), static_cast<Vertex>(y)};
      for_each_realization(d, c, [&](const std::array<bool, 4>& pattern) {
        if (pattern[0] && forbidden.contains(classify_cycle(pattern))) hit = true;
      });
    });
  });
  return hit;
}

}  // namespace detail

namespace detail {

inline std::vector<Arc> all_pairs(std::size_t n) {
  std::vector<Arc> pairs;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b) pairs.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b)});
  return pairs;
}

}  // namespace detail

// Random greedy insertion: walks a shuffled list of ordered pairs and keeps
// an arc when allow(digraph_with_arc, arc) accepts it, until m arcs are in.
// A stalled run restarts with a fresh shuffle, up to `retries` times.
template <class Allow>
Digraph gen_random_digraph_where(std::size_t n, std::size_t m, std::uint64_t seed, Allow&& allow, int retries = 20) {
  std::vector<Arc> pairs = detail::all_pairs(n);
  if (m > pairs.size())
    throw Error(ErrorCode::InfeasibleAfterRetries, std::to_string(m) + " arcs on " + std::to_string(n) + " vertices");
  Rng rng(seed);
  for (int attempt = 0; attempt < std::max(1, retries); ++attempt) {
    Rng local = rng.split(static_cast<std::uint64_t>(attempt));
    local.shuffle(std::span<Arc>(pairs));
    std::vector<Arc> chosen;
    Digraph cur = build_digraph(n, {});
    for (const Arc& a : pairs) {
      if (chosen.size() == m) break;
      std::vector<Arc> trial = chosen;
      trial.push_back(a);
      Digraph next = build_digraph(n, trial);
      if (!allow(next, a)) continue;
      chosen = std::move(trial);
      cur = std::move(next);
    }
    if (chosen.size() == m) return cur;
  }
  throw Error(ErrorCode::InfeasibleAfterRetries,
              "could not place " + std::to_string(m) + " arcs on " + std::to_string(n) + " vertices");
}

// Random digraph with exactly m arcs. Without forbidden types: a uniform
// arc subset. Otherwise greedy insertion rejecting every arc that closes a
// 4-cycle of a forbidden type.
inline Digraph gen_random_digraph(std::size_t n, std::size_t m, CycleTypeSet forbidden, std::uint64_t seed) {
  if (forbidden.empty()) {
    std::vector<Arc> pairs = detail::all_pairs(n);
    if (m > pairs.size())
      throw Error(ErrorCode::InfeasibleAfterRetries, std::to_string(m) + " arcs on " + std::to_string(n) + " vertices");
    Rng rng(seed);
    rng.shuffle(std::span<Arc>(pairs));
    pairs.resize(m);
    return build_digraph(n, std::move(pairs));
  }
  Digraph d = gen_random_digraph_where(n, m, seed, [forbidden](const Digraph& g, const Arc& a) {
    return !detail::closes_forbidden_cycle(g, a.tail, a.head, forbidden);
  });
  if (find_cycle_of_types(d, forbidden)) throw std::logic_error("random digraph generator produced a forbidden 4-cycle");
  return d;
}

inline Digraph gen_random_digraph(std::size_t n, std::size_t m, DigraphConstraint c, std::uint64_t seed) {
  return gen_random_digraph(n, m, forbidden_types(c), seed);
}

}  // namespace oritree
