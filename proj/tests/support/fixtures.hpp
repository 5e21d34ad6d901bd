#pragma once

#include <cstddef>
#include <vector>

#include "oritree/digraph.hpp"
#include "oritree/tree.hpp"

namespace fixtures {

using oritree::Arc;
using oritree::Digraph;
using oritree::OrientedTree;
using oritree::Vertex;

inline Digraph directed_cycle(int n) {
  std::vector<Arc> arcs;
  for (int i = 0; i < n; ++i) arcs.push_back({i, (i + 1) % n});
  return oritree::build_digraph(static_cast<std::size_t>(n), arcs);
}

inline Digraph complete_digraph(int n) {
  std::vector<Arc> arcs;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) arcs.push_back({a, b});
  return oritree::build_digraph(static_cast<std::size_t>(n), arcs);
}

inline OrientedTree directed_path(int k) {
  std::vector<Arc> arcs;
  for (int i = 0; i < k; ++i) arcs.push_back({i, i + 1});
  return oritree::build_tree(static_cast<std::size_t>(k + 1), arcs);
}

// 0 -> 1 <- 2 -> 3 <- 4 ...
inline OrientedTree alternating_path(int k) {
  std::vector<Arc> arcs;
  for (int i = 0; i < k; ++i) arcs.push_back(i % 2 == 0 ? Arc{i, i + 1} : Arc{i + 1, i});
  return oritree::build_tree(static_cast<std::size_t>(k + 1), arcs);
}

// Path whose i-th arc points forward iff bit i of mask is set.
inline OrientedTree path_from_mask(int k, unsigned mask) {
  std::vector<Arc> arcs;
  for (int i = 0; i < k; ++i) arcs.push_back((mask >> i) & 1u ? Arc{i, i + 1} : Arc{i + 1, i});
  return oritree::build_tree(static_cast<std::size_t>(k + 1), arcs);
}

inline OrientedTree out_star(int k) {
  std::vector<Arc> arcs;
  for (int i = 1; i <= k; ++i) arcs.push_back({0, i});
  return oritree::build_tree(static_cast<std::size_t>(k + 1), arcs);
}

inline OrientedTree in_star(int k) {
  std::vector<Arc> arcs;
  for (int i = 1; i <= k; ++i) arcs.push_back({i, 0});
  return oritree::build_tree(static_cast<std::size_t>(k + 1), arcs);
}

// Centre 0, legs of the given lengths, all arcs pointing away from the centre.
inline OrientedTree spider(const std::vector<int>& legs) {
  std::vector<Arc> arcs;
  Vertex next = 1;
  for (int len : legs) {
    Vertex prev = 0;
    for (int j = 0; j < len; ++j) {
      arcs.push_back({prev, next});
      prev = next++;
    }
  }
  return oritree::build_tree(static_cast<std::size_t>(next), arcs);
}

// Two adjacent centres 0 -> 1, each with `a` (resp. `b`) out-leaves.
inline OrientedTree double_star(int a, int b) {
  std::vector<Arc> arcs{{0, 1}};
  Vertex next = 2;
  for (int i = 0; i < a; ++i) arcs.push_back({0, next++});
  for (int i = 0; i < b; ++i) arcs.push_back({1, next++});
  return oritree::build_tree(static_cast<std::size_t>(next), arcs);
}

}  // namespace fixtures
