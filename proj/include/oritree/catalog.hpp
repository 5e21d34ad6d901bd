#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "oritree/error.hpp"
#include "oritree/tree.hpp"

namespace oritree {

inline constexpr std::size_t kDefaultCatalogBound = 8;

namespace detail {

// Rooted code: '(' then the sorted child codes, each prefixed by '>' for an
// arc away from the parent or '<' for one towards it, then ')'.
inline std::string rooted_code(const OrientedTree& t, Vertex x, Vertex parent) {
  std::vector<std::string> parts;
  for (Vertex y : t.neighbours(x)) {
    if (y == parent) continue;
    parts.push_back((t.has_arc(x, y) ? ">" : "<") + rooted_code(t, y, x));
  }
  std::sort(parts.begin(), parts.end());
  std::string code = "(";
  for (const auto& p : parts) code += p;
  return code + ")";
}

inline std::vector<Vertex> tree_centers(const OrientedTree& t) {
  const std::size_t n = t.order();
  std::vector<std::size_t> deg(n);
  std::vector<Vertex> layer;
  for (std::size_t i = 0; i < n; ++i) {
    deg[i] = t.total_degree(static_cast<Vertex>(i));
    if (deg[i] <= 1) layer.push_back(static_cast<Vertex>(i));
  }
  std::size_t remaining = n;
  while (remaining > 2) {
    remaining -= layer.size();
    std::vector<Vertex> next;
    for (Vertex x : layer)
      for (Vertex y : t.neighbours(x))
        if (--deg[static_cast<std::size_t>(y)] == 1) next.push_back(y);
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

// Rebuilds a tree from a rooted code, numbering vertices in preorder.
inline void decode(std::string_view code, std::size_t& pos, Vertex self, Vertex& next, std::vector<Arc>& arcs) {
  ++pos;  // '('
  while (code[pos] != ')') {
    char dir = code[pos++];
    Vertex child = next++;
    arcs.push_back(dir == '>' ? Arc{self, child} : Arc{child, self});
    decode(code, pos, child, next, arcs);
  }
  ++pos;  // ')'
}

}  // namespace detail

// Isomorphism invariant for oriented trees: the least rooted code over the
// tree's centres.
inline std::string canonical_form(const OrientedTree& t) {
  std::string best;
  for (Vertex c : detail::tree_centers(t)) {
    std::string code = detail::rooted_code(t, c, kNoVertex);
    if (best.empty() || code < best) best = std::move(code);
  }
  return best;
}

inline bool are_isomorphic(const OrientedTree& a, const OrientedTree& b) {
  return a.order() == b.order() && canonical_form(a) == canonical_form(b);
}

inline OrientedTree tree_from_canonical(std::string_view code) {
  std::vector<Arc> arcs;
  std::size_t pos = 0;
  Vertex next = 1;
  detail::decode(code, pos, 0, next, arcs);
  return build_tree(static_cast<std::size_t>(next), std::move(arcs));
}

struct TreeCatalog {
  std::size_t k = 0;
  std::vector<OrientedTree> trees;       // vertex 0 is a centre, preorder numbering
  std::vector<std::string> canonical;    // canonical[i] belongs to trees[i]; sorted ascending

  std::size_t size() const { return trees.size(); }
};

// All oriented trees with k arcs up to isomorphism, grown leaf by leaf
// from the (k-1)-arc catalog and deduplicated by canonical form.
inline TreeCatalog enumerate_oriented_trees(std::size_t k, std::size_t bound = kDefaultCatalogBound) {
  if (k > bound)
    throw Error(ErrorCode::BoundExceeded, "k=" + std::to_string(k) + " exceeds catalog bound " + std::to_string(bound));
  if (k == 0) throw Error(ErrorCode::BadParams, "catalog needs k >= 1");
  std::set<std::string> codes{canonical_form(build_tree(2, {{0, 1}}))};
  for (std::size_t step = 2; step <= k; ++step) {
    std::set<std::string> grown;
    for (const auto& code : codes) {
      OrientedTree base = tree_from_canonical(code);
      const auto n = static_cast<Vertex>(base.order());
      for (Vertex v = 0; v < n; ++v)
        for (bool outward : {true, false}) {
          std::vector<Arc> arcs = base.arcs();
          arcs.push_back(outward ? Arc{v, n} : Arc{n, v});
          grown.insert(canonical_form(build_tree(base.order() + 1, std::move(arcs))));
        }
    }
    codes = std::move(grown);
  }
  TreeCatalog cat;
  cat.k = k;
  for (const auto& code : codes) {
    cat.trees.push_back(tree_from_canonical(code));
    cat.canonical.push_back(code);
  }
  return cat;
}

}  // namespace oritree
