#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <string_view>
#include <vector>

#include "oritree/digraph.hpp"
#include "oritree/embedding.hpp"
#include "oritree/tree.hpp"

namespace oritree {

enum class OracleDecision { Yes, No, Unknown };

constexpr std::string_view to_string(OracleDecision d) {
  switch (d) {
    case OracleDecision::Yes: return "yes";
    case OracleDecision::No: return "no";
    case OracleDecision::Unknown: return "unknown";
  }
  return "?";
}

struct OracleResult {
  OracleDecision decision = OracleDecision::Unknown;
  std::optional<EmbeddingMap> embedding;  // set iff decision == Yes
  std::uint64_t nodes_expanded = 0;
  std::uint64_t budget = 0;
};

inline constexpr std::uint64_t kDefaultOracleBudget = 50'000'000;

namespace detail {

// Plain backtracking over adjacency lists. Kept apart from the embedder's
// bitset search so the two can cross-check each other.
class OracleSearch {
 public:
  OracleSearch(const OrientedTree& t, const Digraph& d, std::uint64_t budget)
      : t_(t), d_(d), budget_(budget), map_(t.order(), kNoVertex), taken_(d.order(), 0) {
    Vertex root = 0;
    for (std::size_t i = 1; i < t.order(); ++i)
      if (t.total_degree(static_cast<Vertex>(i)) > t.total_degree(root)) root = static_cast<Vertex>(i);
    // BFS order; parent_[x] is the BFS parent of x.
    parent_.assign(t.order(), kNoVertex);
    std::vector<char> seen(t.order(), 0);
    std::deque<Vertex> q{root};
    seen[static_cast<std::size_t>(root)] = 1;
    while (!q.empty()) {
      Vertex x = q.front();
      q.pop_front();
      order_.push_back(x);
      for (Vertex y : t.neighbours(x))
        if (!seen[static_cast<std::size_t>(y)]) {
          seen[static_cast<std::size_t>(y)] = 1;
          parent_[static_cast<std::size_t>(y)] = x;
          q.push_back(y);
        }
    }
  }

  OracleResult run() {
    OracleResult r;
    r.budget = budget_;
    if (t_.order() > d_.order()) {
      r.decision = OracleDecision::No;
      return r;
    }
    bool found = place(0);
    r.nodes_expanded = nodes_;
    if (found) {
      r.decision = OracleDecision::Yes;
      r.embedding = map_;
    } else {
      r.decision = out_of_budget_ ? OracleDecision::Unknown : OracleDecision::No;
    }
    return r;
  }

 private:
  bool fits(Vertex x, Vertex h) const {
    return !taken_[static_cast<std::size_t>(h)] && d_.out_degree(h) >= t_.out_degree(x) &&
           d_.in_degree(h) >= t_.in_degree(x);
  }

  bool place(std::size_t depth) {
    if (depth == order_.size()) return true;
    Vertex x = order_[depth];
    Vertex p = parent_[static_cast<std::size_t>(x)];
    auto attempt = [&](Vertex h) {
      if (!fits(x, h)) return false;
      if (++nodes_ > budget_) {
        out_of_budget_ = true;
        return false;
      }
      map_[static_cast<std::size_t>(x)] = h;
      taken_[static_cast<std::size_t>(h)] = 1;
      if (place(depth + 1)) return true;
      taken_[static_cast<std::size_t>(h)] = 0;
      map_[static_cast<std::size_t>(x)] = kNoVertex;
      return false;
    };
    if (p == kNoVertex) {
      for (std::size_t h = 0; h < d_.order() && !out_of_budget_; ++h)
        if (attempt(static_cast<Vertex>(h))) return true;
      return false;
    }
    Vertex hp = map_[static_cast<std::size_t>(p)];
    auto candidates = t_.has_arc(p, x) ? d_.out(hp) : d_.in(hp);
    for (Vertex h : candidates) {
      if (out_of_budget_) return false;
      if (attempt(h)) return true;
    }
    return false;
  }

  const OrientedTree& t_;
  const Digraph& d_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool out_of_budget_ = false;
  std::vector<Vertex> order_, parent_;
  EmbeddingMap map_;
  std::vector<char> taken_;
};

}  // namespace detail

// Exhaustive search: Yes carries a certificate, No means the whole space
// was covered, Unknown means the node budget ran out first.
inline OracleResult oracle_embed(const OrientedTree& t, const Digraph& d,
                                 std::uint64_t budget = kDefaultOracleBudget) {
  return detail::OracleSearch(t, d, budget).run();
}

}  // namespace oritree
