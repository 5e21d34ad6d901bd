#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "oritree/digraph.hpp"
#include "oritree/tree.hpp"

namespace oritree {

// Tree vertex -> host vertex; kNoVertex marks an unmapped tree vertex.
using EmbeddingMap = std::vector<Vertex>;

enum class ViolationKind { None, WrongSize, Unmapped, OutOfRange, Injectivity, ArcDirection, NotAdjacent };

constexpr std::string_view to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::None: return "None";
    case ViolationKind::WrongSize: return "WrongSize";
    case ViolationKind::Unmapped: return "Unmapped";
    case ViolationKind::OutOfRange: return "OutOfRange";
    case ViolationKind::Injectivity: return "Injectivity";
    case ViolationKind::ArcDirection: return "ArcDirection";
    case ViolationKind::NotAdjacent: return "NotAdjacent";
  }
  return "?";
}

struct Validation {
  bool ok = true;
  ViolationKind kind = ViolationKind::None;
  std::string detail;

  explicit operator bool() const { return ok; }
};

// Independent certificate checker: f must be total, injective and map
// every tree arc (x,y) onto the host arc (f(x),f(y)).
inline Validation validate_embedding(const OrientedTree& t, const Digraph& d, const EmbeddingMap& f) {
  auto fail = [](ViolationKind k, std::string detail) { return Validation{false, k, std::move(detail)}; };
  if (f.size() != t.order())
    return fail(ViolationKind::WrongSize, "map has " + std::to_string(f.size()) + " entries for " +
                                              std::to_string(t.order()) + " tree vertices");
  std::vector<Vertex> owner(d.order(), kNoVertex);
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (f[x] == kNoVertex) return fail(ViolationKind::Unmapped, "tree vertex " + std::to_string(x));
    if (f[x] < 0 || static_cast<std::size_t>(f[x]) >= d.order())
      return fail(ViolationKind::OutOfRange, "tree vertex " + std::to_string(x) + " -> " + std::to_string(f[x]));
    Vertex& o = owner[static_cast<std::size_t>(f[x])];
    if (o != kNoVertex)
      return fail(ViolationKind::Injectivity, "tree vertices " + std::to_string(o) + " and " +
                                                  std::to_string(x) + " share host vertex " +
                                                  std::to_string(f[x]));
    o = static_cast<Vertex>(x);
  }
  for (const Arc& a : t.arcs()) {
    Vertex hu = f[static_cast<std::size_t>(a.tail)], hv = f[static_cast<std::size_t>(a.head)];
    if (d.has_arc(hu, hv)) continue;
    std::string what = "tree arc (" + std::to_string(a.tail) + "," + std::to_string(a.head) +
                       ") -> (" + std::to_string(hu) + "," + std::to_string(hv) + ")";
    return fail(d.has_arc(hv, hu) ? ViolationKind::ArcDirection : ViolationKind::NotAdjacent, what);
  }
  return {};
}

}  // namespace oritree
