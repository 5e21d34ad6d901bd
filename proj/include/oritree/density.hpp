#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "oritree/cycles.hpp"
#include "oritree/digraph.hpp"
#include "oritree/embedder.hpp"
#include "oritree/error.hpp"
#include "oritree/rng.hpp"
#include "oritree/tree.hpp"

namespace oritree {

// A non-negative multiple of 1/2, stored doubled so "deg < d" stays exact.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  static constexpr HalfInt twice(std::size_t doubled) { return HalfInt(doubled); }
  static constexpr HalfInt whole(std::size_t value) { return HalfInt(2 * value); }
  static constexpr HalfInt half_of(std::size_t k) { return HalfInt(k); }  // k/2

  constexpr std::size_t doubled() const { return twice_; }
  constexpr std::size_t ceil() const { return (twice_ + 1) / 2; }
  constexpr bool exceeds(std::size_t deg) const { return 2 * deg < twice_; }  // deg < *this

  std::string str() const { return std::to_string(twice_ / 2) + (twice_ % 2 ? ".5" : ""); }

  friend constexpr bool operator==(HalfInt, HalfInt) = default;

 private:
  constexpr explicit HalfInt(std::size_t t) : twice_(t) {}
  std::size_t twice_ = 0;
};

struct PeelEvent {
  Vertex vertex = kNoVertex;
  Side side = Side::Out;
  std::size_t arcs_removed = 0;

  friend bool operator==(const PeelEvent&, const PeelEvent&) = default;
};

struct PeelResult {
  Digraph peeled;
  std::vector<PeelEvent> trace;

  std::size_t arcs_removed() const {
    std::size_t s = 0;
    for (const auto& e : trace) s += e.arcs_removed;
    return s;
  }
};

namespace detail {

// Removes all out-arcs (in-arcs) at vertices whose positive out- (in-)
// degree is below d, until none is left. Without an rng the smallest
// violating (vertex, side) goes first; with one, a random violator.
inline PeelResult peel_impl(const Digraph& d, HalfInt threshold, Rng* rng) {
  const std::size_t n = d.order();
  std::vector<std::vector<char>> alive_out(n);
  std::vector<std::size_t> deg_out(n), deg_in(n);
  for (std::size_t v = 0; v < n; ++v) {
    alive_out[v].assign(d.out(static_cast<Vertex>(v)).size(), 1);
    deg_out[v] = d.out_degree(static_cast<Vertex>(v));
    deg_in[v] = d.in_degree(static_cast<Vertex>(v));
  }
  // index of h in the sorted out-list of u
  auto out_slot = [&](Vertex u, Vertex h) {
    auto o = d.out(u);
    return static_cast<std::size_t>(std::lower_bound(o.begin(), o.end(), h) - o.begin());
  };
  auto degree = [&](Vertex v, Side s) -> std::size_t& {
    return s == Side::Out ? deg_out[static_cast<std::size_t>(v)] : deg_in[static_cast<std::size_t>(v)];
  };
  auto violates = [&](Vertex v, Side s) {
    std::size_t g = degree(v, s);
    return g > 0 && threshold.exceeds(g);
  };

  std::set<std::pair<Vertex, Side>> pending;
  for (std::size_t v = 0; v < n; ++v)
    for (Side s : {Side::Out, Side::In})
      if (violates(static_cast<Vertex>(v), s)) pending.insert({static_cast<Vertex>(v), s});

  PeelResult r;
  while (!pending.empty()) {
    auto it = pending.begin();
    if (rng) std::advance(it, static_cast<std::ptrdiff_t>(rng->below(pending.size())));
    auto [v, s] = *it;
    pending.erase(it);
    std::size_t removed = 0;
    auto drop = [&](Vertex tail, Vertex head) {
      char& flag = alive_out[static_cast<std::size_t>(tail)][out_slot(tail, head)];
      if (!flag) return;
      flag = 0;
      ++removed;
      --deg_out[static_cast<std::size_t>(tail)];
      --deg_in[static_cast<std::size_t>(head)];
      Vertex other = s == Side::Out ? head : tail;
      Side other_side = opposite(s);
      if (violates(other, other_side)) pending.insert({other, other_side});
      if (degree(other, other_side) == 0) pending.erase({other, other_side});
    };
    if (s == Side::Out)
      for (Vertex h : d.out(v)) drop(v, h);
    else
      for (Vertex t : d.in(v)) drop(t, v);
    r.trace.push_back({v, s, removed});
  }

  std::vector<Arc> kept;
  for (std::size_t v = 0; v < n; ++v) {
    auto o = d.out(static_cast<Vertex>(v));
    for (std::size_t i = 0; i < o.size(); ++i)
      if (alive_out[v][i]) kept.push_back({static_cast<Vertex>(v), o[i]});
  }
  r.peeled = build_digraph(n, std::move(kept));
  return r;
}

}  // namespace detail

// Spanning subdigraph in which every positive side-degree is at least d
// (or which has no arcs).
inline PeelResult peel_to_pseudo_semidegree(const Digraph& d, HalfInt threshold) {
  return detail::peel_impl(d, threshold, nullptr);
}

// Same fixed point, reached through a random order of removals.
inline PeelResult peel_to_pseudo_semidegree_random(const Digraph& d, HalfInt threshold, std::uint64_t seed) {
  Rng rng(seed);
  return detail::peel_impl(d, threshold, &rng);
}

// Thrown by the density pipeline; lists every unmet condition.
class ConditionFailure : public Error {
 public:
  ConditionFailure(std::vector<std::string> which, std::optional<CycleWitness> witness, const std::string& detail)
      : Error(ErrorCode::ConditionFailed, detail), which_(std::move(which)), witness_(std::move(witness)) {}

  const std::vector<std::string>& which() const noexcept { return which_; }
  const std::optional<CycleWitness>& witness() const noexcept { return witness_; }

 private:
  std::vector<std::string> which_;
  std::optional<CycleWitness> witness_;
};

struct DensityResult {
  PeelResult peel;
  EmbedReport report;  // embedding is valid in the original digraph
};

// Antidirected T with k arcs and max total degree <= k/2 inside a digraph
// with more than (k-1)n arcs whose 4-cycles are all directed: peel to
// pseudo-semidegree k/2 and embed into what is left.
inline DensityResult corollary6_pipeline(const Digraph& d, const OrientedTree& t, const EmbedOptions& opt = {}) {
  const std::size_t k = t.arc_count();
  const std::size_t n = d.order();
  std::vector<std::string> failed;
  std::string detail;
  auto fail = [&](std::string which, const std::string& why) {
    detail += (detail.empty() ? "" : "; ") + which + " (" + why + ")";
    failed.push_back(std::move(which));
  };
  if (!is_antidirected(t)) fail("antidirected", "tree has a vertex that is neither a source nor a sink");
  if (2 * t.max_total_degree() > k)
    fail("max_total_degree", "Delta_tot(T)=" + std::to_string(t.max_total_degree()) + " > k/2");
  if (d.size() + n <= k * n)
    fail("arc_density", "m=" + std::to_string(d.size()) + " <= (k-1)n=" + std::to_string(k * n - n));
  auto witness = find_forbidden_cycle(d, CycleMode::NonDirectedC4);
  if (witness) fail("c4_star_free", format_witness(*witness));
  if (!failed.empty()) throw ConditionFailure(std::move(failed), std::move(witness), detail);

  DensityResult r;
  r.peel = peel_to_pseudo_semidegree(d, HalfInt::half_of(k));
  if (r.peel.peeled.size() == 0) throw std::logic_error("peeling emptied a digraph above the density bound");
  r.report = embed_tree(t, r.peel.peeled, EmbedMode::Antidirected, opt);
  if (!r.report.embedding.empty()) {
    Validation v = validate_embedding(t, d, r.report.embedding);
    if (!v) throw std::logic_error("lifted embedding is invalid: " + v.detail);
  }
  return r;
}

}  // namespace oritree
