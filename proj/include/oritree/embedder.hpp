#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "oritree/bitset.hpp"
#include "oritree/digraph.hpp"
#include "oritree/embedding.hpp"
#include "oritree/hypotheses.hpp"
#include "oritree/oracle.hpp"
#include "oritree/tree.hpp"

namespace oritree {

enum class MoveKind { CoreStep, Direct, CaseA, CaseB, Backtrack };

constexpr std::string_view to_string(MoveKind k) {
  switch (k) {
    case MoveKind::CoreStep: return "CoreStep";
    case MoveKind::Direct: return "Direct";
    case MoveKind::CaseA: return "CaseA";
    case MoveKind::CaseB: return "CaseB";
    case MoveKind::Backtrack: return "Backtrack";
  }
  return "?";
}

struct Placement {
  Vertex tree = kNoVertex;
  Vertex host = kNoVertex;

  friend bool operator==(const Placement&, const Placement&) = default;
};

struct Move {
  MoveKind kind = MoveKind::CoreStep;
  std::size_t step = 0;             // i for the move T_i -> T_{i+1}; 0 for core and fallback
  Vertex focus = kNoVertex;         // the tree vertex the move is organised around
  std::vector<Placement> placements;  // assignments made or changed by the move
  std::size_t image_size = 0;       // |Im f| afterwards
};

// One neighbourhood access: side `side` of host vertex `host`, consulted on
// behalf of the tree vertex that sits (or is about to sit) there.
struct NeighbourhoodRead {
  Vertex host = kNoVertex;
  Side side = Side::Out;
  Vertex tree = kNoVertex;
};

struct EmbedOptions {
  std::uint64_t fallback_budget = 1'000'000;
  bool assert_constructive = false;
  std::uint64_t seed = 0;
  // Ask the oracle before declaring a failure; only an oracle "no" yields NotEmbeddable.
  bool confirm_with_oracle = false;
  std::uint64_t oracle_budget = kDefaultOracleBudget;
};

enum class EmbedStatus { Embedded, NotEmbeddable, FallbackExhausted, HypothesisViolation };

constexpr std::string_view to_string(EmbedStatus s) {
  switch (s) {
    case EmbedStatus::Embedded: return "Embedded";
    case EmbedStatus::NotEmbeddable: return "NotEmbeddable";
    case EmbedStatus::FallbackExhausted: return "FallbackExhausted";
    case EmbedStatus::HypothesisViolation: return "HypothesisViolation";
  }
  return "?";
}

struct EmbedReport {
  EmbedStatus status = EmbedStatus::FallbackExhausted;
  EmbedMode mode = EmbedMode::GeneralOriented;
  EmbeddingMap embedding;  // empty unless an embedding was found
  std::vector<Move> moves;
  HypothesisReport hypotheses;
  std::uint64_t seed = 0;
  bool mirrored = false;
  std::uint64_t fallback_nodes = 0;
  std::optional<OracleDecision> oracle;
  std::vector<std::string> notes;

  std::size_t count(MoveKind k) const {
    return static_cast<std::size_t>(
        std::count_if(moves.begin(), moves.end(), [k](const Move& m) { return m.kind == k; }));
  }
};

// Mutable working state of one embedding attempt: the partial map f, its
// image, and the move log.
class EmbedState {
 public:
  EmbedState(const OrientedTree& t, const Digraph& d, EmbedMode mode = EmbedMode::GeneralOriented)
      : t_(&t), d_(&d), mode_(mode), map_(t.order(), kNoVertex), owner_(d.order(), kNoVertex), used_(d.order()) {}

  const OrientedTree& tree() const { return *t_; }
  const Digraph& host() const { return *d_; }
  EmbedMode mode() const { return mode_; }

  Vertex image(Vertex x) const { return map_[ix(x)]; }
  Vertex occupant(Vertex h) const { return owner_[ix(h)]; }
  bool placed(Vertex x) const { return map_[ix(x)] != kNoVertex; }
  const DynBitset& used() const { return used_; }
  std::size_t image_size() const { return used_.count(); }
  const EmbeddingMap& map() const { return map_; }

  void place(Vertex x, Vertex h) {
    if (placed(x) || owner_[ix(h)] != kNoVertex) throw std::logic_error("place: slot taken");
    map_[ix(x)] = h;
    owner_[ix(h)] = x;
    used_.set(ix(h));
  }
  void unplace(Vertex x) {
    Vertex h = map_[ix(x)];
    if (h == kNoVertex) return;
    map_[ix(x)] = kNoVertex;
    owner_[ix(h)] = kNoVertex;
    used_.reset(ix(h));
  }

  // Side `s` of host vertex h, consulted for tree vertex x.
  const DynBitset& read(Vertex h, Side s, Vertex x) const {
    if (reads_) reads_->push_back({h, s, x});
    return d_->bits(h, s);
  }
  void record_reads(std::vector<NeighbourhoodRead>* sink) { reads_ = sink; }

  // Every arc between x and an already placed neighbour is realized.
  bool consistent_at(Vertex x) const {
    Vertex hx = image(x);
    for (Vertex y : t_->neighbours(x)) {
      if (!placed(y)) continue;
      Side s = t_->side_of(x, y);
      if (!read(hx, s, x).test(ix(image(y)))) return false;
    }
    return true;
  }

  std::vector<Move>& moves() { return moves_; }
  const std::vector<Move>& moves() const { return moves_; }
  void log(MoveKind kind, std::size_t step, Vertex focus, std::vector<Placement> placements) {
    moves_.push_back({kind, step, focus, std::move(placements), image_size()});
  }

 private:
  static std::size_t ix(Vertex v) { return static_cast<std::size_t>(v); }

  const OrientedTree* t_;
  const Digraph* d_;
  EmbedMode mode_;
  EmbeddingMap map_;
  std::vector<Vertex> owner_;
  DynBitset used_;
  std::vector<Move> moves_;
  std::vector<NeighbourhoodRead>* reads_ = nullptr;
};

struct LeafAssignment {
  std::vector<Vertex> out, in;
};

// Disjoint S+ from out_free and S- from in_free with the requested sizes.
// Vertices in `avoid` are taken only when nothing else is left.
inline std::optional<LeafAssignment> assign_leaves(const DynBitset& out_free, const DynBitset& in_free,
                                                   std::size_t need_out, std::size_t need_in,
                                                   const DynBitset* avoid = nullptr) {
  LeafAssignment a;
  if (need_out == 0 && need_in == 0) return a;
  const std::size_t n = need_out > 0 ? out_free.size() : in_free.size();
  DynBitset outs = need_out > 0 ? out_free : DynBitset(n);
  DynBitset ins = need_in > 0 ? in_free : DynBitset(n);
  DynBitset both = outs & ins;
  DynBitset only_out = minus(outs, both), only_in = minus(ins, both);

  auto take = [&](DynBitset& pool, std::size_t want, std::vector<Vertex>& into) {
    auto grab = [&](bool avoided_pass) {
      for (std::size_t h = pool.find_first(); h != DynBitset::npos && into.size() < want; h = pool.find_next(h + 1)) {
        bool in_avoid = avoid && avoid->test(h);
        if (in_avoid != avoided_pass) continue;
        into.push_back(static_cast<Vertex>(h));
        pool.reset(h);
      }
    };
    grab(false);
    if (avoid) grab(true);
  };
  take(only_out, need_out, a.out);
  take(only_in, need_in, a.in);
  take(both, need_out, a.out);
  take(both, need_in, a.in);
  if (a.out.size() < need_out || a.in.size() < need_in) return std::nullopt;
  std::sort(a.out.begin(), a.out.end());
  std::sort(a.in.begin(), a.in.end());
  return a;
}

namespace detail {

// Places pending out/in neighbours of tree vertex x around its image.
inline std::optional<std::vector<Placement>> place_children(EmbedState& st, Vertex x,
                                                            const std::vector<Vertex>& outs,
                                                            const std::vector<Vertex>& ins,
                                                            const DynBitset* avoid = nullptr) {
  const Digraph& d = st.host();
  Vertex hx = st.image(x);
  DynBitset out_free = outs.empty() ? DynBitset(d.order()) : minus(st.read(hx, Side::Out, x), st.used());
  DynBitset in_free = ins.empty() ? DynBitset(d.order()) : minus(st.read(hx, Side::In, x), st.used());
  auto a = assign_leaves(out_free, in_free, outs.size(), ins.size(), avoid);
  if (!a) return std::nullopt;
  std::vector<Placement> done;
  for (std::size_t i = 0; i < outs.size(); ++i) {
    st.place(outs[i], a->out[i]);
    done.push_back({outs[i], a->out[i]});
  }
  for (std::size_t i = 0; i < ins.size(); ++i) {
    st.place(ins[i], a->in[i]);
    done.push_back({ins[i], a->in[i]});
  }
  return done;
}

inline bool degree_dominates(const OrientedTree& t, const Digraph& d, Vertex x, Vertex h) {
  return d.out_degree(h) >= t.out_degree(x) && d.in_degree(h) >= t.in_degree(x);
}

}  // namespace detail

struct CoreOutcome {
  bool ok = false;
  Vertex stuck = kNoVertex;  // tree vertex whose neighbourhood could not be placed
};

// Embeds T_1: the anchor t on a vertex of maximum outdegree, then t' and
// its neighbours, then the rest of N(t), then the remaining core vertices
// breadth-first, each from the unused neighbourhood of its parent's image.
// The first two choices (images of t and t') are retried in ascending
// order; everything after them is greedy.
inline CoreOutcome embed_core(EmbedState& st, const StrippingSequence& seq) {
  const OrientedTree& t = st.tree();
  const Digraph& d = st.host();
  const Vertex anchor = seq.anchor;
  const VertexMask& core = seq.core.members;
  auto in_core = [&](Vertex x) { return core[static_cast<std::size_t>(x)] != 0; };

  Vertex tp = seq.core.center != anchor ? seq.core.center : kNoVertex;
  if (tp == kNoVertex) {
    for (Vertex y : t.neighbours(anchor))
      if (!t.is_leaf(y)) {
        tp = y;
        break;
      }
    if (tp == kNoVertex) tp = t.neighbours(anchor).front();
  }
  const Side tp_side = t.side_of(anchor, tp);

  // Candidates for the anchor's image: maximum outdegree first.
  std::size_t max_out = 0;
  for (std::size_t h = 0; h < d.order(); ++h) max_out = std::max(max_out, d.out_degree(static_cast<Vertex>(h)));
  std::vector<Vertex> anchor_hosts;
  for (int pass = 0; pass < 2; ++pass)
    for (std::size_t h = 0; h < d.order(); ++h) {
      auto hv = static_cast<Vertex>(h);
      if ((d.out_degree(hv) == max_out) != (pass == 0)) continue;
      if (!detail::degree_dominates(t, d, anchor, hv)) continue;
      if (st.mode() == EmbedMode::Arborescence && is_oriented(d) && 2 * d.out_degree(hv) < t.arc_count()) continue;
      anchor_hosts.push_back(hv);
    }

  // BFS order of the core from the anchor.
  std::vector<Vertex> bfs;
  {
    std::vector<char> seen(t.order(), 0);
    std::deque<Vertex> q{anchor};
    seen[static_cast<std::size_t>(anchor)] = 1;
    while (!q.empty()) {
      Vertex x = q.front();
      q.pop_front();
      bfs.push_back(x);
      for (Vertex y : t.neighbours(x))
        if (in_core(y) && !seen[static_cast<std::size_t>(y)]) {
          seen[static_cast<std::size_t>(y)] = 1;
          q.push_back(y);
        }
    }
  }

  auto pending = [&](Vertex x, Side s) {
    std::vector<Vertex> out;
    for (Vertex y : t.nbrs(x, s))
      if (in_core(y) && !st.placed(y)) out.push_back(y);
    return out;
  };

  CoreOutcome outcome;
  const std::size_t log_mark = st.moves().size();
  auto rollback = [&] {
    for (std::size_t i = 0; i < t.order(); ++i) st.unplace(static_cast<Vertex>(i));
    st.moves().resize(log_mark);
  };

  for (Vertex a : anchor_hosts) {
    st.place(anchor, a);
    DynBitset choices = minus(st.read(a, tp_side, anchor), st.used());
    for (std::size_t b = choices.find_first(); b != DynBitset::npos; b = choices.find_next(b + 1)) {
      auto bv = static_cast<Vertex>(b);
      if (!detail::degree_dominates(t, d, tp, bv)) continue;
      st.moves().resize(log_mark);
      st.log(MoveKind::CoreStep, 0, anchor, {{anchor, a}});
      st.place(tp, bv);

      // Keep the anchor's own pending sides free while housing N(t').
      DynBitset reserve(d.order());
      for (Side s : {Side::Out, Side::In})
        if (!pending(anchor, s).empty()) reserve |= st.read(a, s, anchor);
      auto tp_group = detail::place_children(st, tp, pending(tp, Side::Out), pending(tp, Side::In), &reserve);
      if (!tp_group) {
        outcome.stuck = tp;
        rollback();
        st.place(anchor, a);
        continue;
      }
      tp_group->insert(tp_group->begin(), Placement{tp, bv});
      st.log(MoveKind::CoreStep, 0, tp, std::move(*tp_group));

      bool ok = true;
      for (Vertex x : bfs) {
        if (!st.placed(x)) continue;
        auto outs = pending(x, Side::Out), ins = pending(x, Side::In);
        if (outs.empty() && ins.empty()) continue;
        auto group = detail::place_children(st, x, outs, ins);
        if (!group) {
          outcome.stuck = x;
          ok = false;
          break;
        }
        st.log(MoveKind::CoreStep, 0, x, std::move(*group));
      }
      if (ok) {
        outcome.ok = true;
        outcome.stuck = kNoVertex;
        return outcome;
      }
      rollback();
      st.place(anchor, a);
    }
    st.unplace(anchor);
    if (outcome.stuck == kNoVertex) outcome.stuck = tp;
  }
  if (outcome.stuck == kNoVertex) outcome.stuck = anchor;
  st.moves().resize(log_mark);
  return outcome;
}

// Everything the repair moves need to know about the failed step T_i -> T_{i+1}.
struct StepAnalysis {
  Vertex u = kNoVertex, v = kNoVertex;
  Side diamond = Side::Out;  // u lies in N^diamond(v)
  DynBitset q_set;           // Q = N^diamond(f(v)) minus f(V(T')), with T' = T_i - u
  std::size_t q = 0;
  Side nu_side = Side::Out;  // N_{f(u)} is this side of f(u)
  Vertex w = kNoVertex;      // penultimate vertex of T_{i+1} farthest from v (not u)
  std::vector<Vertex> W;     // leaves of T_{i+1} adjacent to w
  Vertex v1 = kNoVertex;     // second vertex of the path v..w
};

namespace detail {

// f(V(T')) where T' = T_i - u.
inline DynBitset image_without(const EmbedState& st, Vertex u) {
  DynBitset used = st.used();
  used.reset(static_cast<std::size_t>(st.image(u)));
  return used;
}

inline bool leaf_sides_majority(const StrippingStep& step) { return step.out_leaves.size() >= step.in_leaves.size(); }

}  // namespace detail

inline StepAnalysis analyze_step(const EmbedState& st, const StrippingStep& step) {
  const OrientedTree& t = st.tree();
  StepAnalysis an;
  an.u = step.u;
  an.v = step.v;
  an.diamond = t.side_of(step.v, step.u);
  const Vertex hu = st.image(step.u), hv = st.image(step.v);
  const DynBitset others = detail::image_without(st, step.u);
  an.q_set = minus(st.read(hv, an.diamond, step.v), others);
  an.q = an.q_set.count();

  // The side with more leaves plays the role of "+".
  const Side major = detail::leaf_sides_majority(step) ? Side::Out : Side::In;
  const std::size_t du = step.leaf_count();
  std::size_t free_major = minus(st.read(hu, major, step.u), others).count();
  an.nu_side = free_major < du ? major : opposite(major);

  VertexMask next(t.order(), 0);
  for (std::size_t x = 0; x < t.order(); ++x) next[x] = st.placed(static_cast<Vertex>(x)) ? 1 : 0;
  for (Vertex x : step.out_leaves) next[static_cast<std::size_t>(x)] = 1;
  for (Vertex x : step.in_leaves) next[static_cast<std::size_t>(x)] = 1;
  auto dist = t.distances_from(step.v);
  for (Vertex p : penultimate_vertices(t, next)) {
    if (p == step.u) continue;
    if (an.w == kNoVertex || dist[static_cast<std::size_t>(p)] > dist[static_cast<std::size_t>(an.w)]) an.w = p;
  }
  if (an.w != kNoVertex) {
    for (Vertex y : t.neighbours(an.w))
      if (next[static_cast<std::size_t>(y)] && degree_within(t, next, y) == 1) an.W.push_back(y);
    auto path = t.path(step.v, an.w);
    if (path.size() >= 2) an.v1 = path[1];
  }
  return an;
}

// Re-houses u at some a in Q and puts its stripped leaves into unused
// neighbours of a. Candidates in ascending host order.
inline bool extend_direct(EmbedState& st, const StrippingStep& step, std::size_t step_index = 0) {
  const Digraph& d = st.host();
  const Vertex u = step.u, v = step.v;
  const Side diamond = st.tree().side_of(v, u);
  const DynBitset others = detail::image_without(st, u);
  const DynBitset q_set = minus(st.read(st.image(v), diamond, v), others);
  for (std::size_t a = q_set.find_first(); a != DynBitset::npos; a = q_set.find_next(a + 1)) {
    auto av = static_cast<Vertex>(a);
    DynBitset out_free = step.out_leaves.empty() ? DynBitset(d.order()) : minus(st.read(av, Side::Out, u), others);
    DynBitset in_free = step.in_leaves.empty() ? DynBitset(d.order()) : minus(st.read(av, Side::In, u), others);
    out_free.reset(a);
    in_free.reset(a);
    auto pick = assign_leaves(out_free, in_free, step.out_leaves.size(), step.in_leaves.size());
    if (!pick) continue;
    st.unplace(u);
    st.place(u, av);
    std::vector<Placement> done{{u, av}};
    for (std::size_t i = 0; i < step.out_leaves.size(); ++i) {
      st.place(step.out_leaves[i], pick->out[i]);
      done.push_back({step.out_leaves[i], pick->out[i]});
    }
    for (std::size_t i = 0; i < step.in_leaves.size(); ++i) {
      st.place(step.in_leaves[i], pick->in[i]);
      done.push_back({step.in_leaves[i], pick->in[i]});
    }
    st.log(MoveKind::Direct, step_index, u, std::move(done));
    return true;
  }
  return false;
}

// q = 2: keep u at f(u), give the leaf h the image of a leaf w1 of the far
// penultimate vertex w (w1 must lie in N_{f(u)}), and move w1 to an unused
// vertex of N_{f(w)} on w1's side.
inline bool repair_case_a(EmbedState& st, const StrippingStep& step, std::size_t step_index = 0,
                          std::vector<std::string>* notes = nullptr) {
  const OrientedTree& t = st.tree();
  const Digraph& d = st.host();
  StepAnalysis an = analyze_step(st, step);
  if (an.q != 2 || an.w == kNoVertex) return false;
  const Vertex u = step.u;
  const Vertex hu = st.image(u);
  const auto& side_leaves = an.nu_side == Side::Out ? step.out_leaves : step.in_leaves;
  if (side_leaves.empty()) return false;
  const Vertex h = side_leaves.front();
  const DynBitset& nu = st.read(hu, an.nu_side, u);

  std::vector<Vertex> rest_out, rest_in;
  for (Vertex x : step.out_leaves)
    if (x != h) rest_out.push_back(x);
  for (Vertex x : step.in_leaves)
    if (x != h) rest_in.push_back(x);

  bool any_w1 = false;
  for (Vertex w1 : an.W) {
    const Vertex old = st.image(w1);
    if (!nu.test(static_cast<std::size_t>(old))) continue;
    any_w1 = true;
    // T* = T_{i+1} - h, with u kept at f(u)
    DynBitset out_free = rest_out.empty() ? DynBitset(d.order()) : minus(st.read(hu, Side::Out, u), st.used());
    DynBitset in_free = rest_in.empty() ? DynBitset(d.order()) : minus(st.read(hu, Side::In, u), st.used());
    auto g = assign_leaves(out_free, in_free, rest_out.size(), rest_in.size());
    if (!g) continue;
    DynBitset taken = st.used();
    for (Vertex x : g->out) taken.set(static_cast<std::size_t>(x));
    for (Vertex x : g->in) taken.set(static_cast<std::size_t>(x));
    const Vertex hw = st.image(an.w);
    DynBitset spots = minus(st.read(hw, t.side_of(an.w, w1), an.w), taken);
    std::size_t spot = spots.find_first();
    if (spot == DynBitset::npos) continue;

    std::vector<Placement> done;
    st.unplace(w1);
    st.place(w1, static_cast<Vertex>(spot));
    done.push_back({w1, static_cast<Vertex>(spot)});
    st.place(h, old);
    done.push_back({h, old});
    for (std::size_t i = 0; i < rest_out.size(); ++i) {
      st.place(rest_out[i], g->out[i]);
      done.push_back({rest_out[i], g->out[i]});
    }
    for (std::size_t i = 0; i < rest_in.size(); ++i) {
      st.place(rest_in[i], g->in[i]);
      done.push_back({rest_in[i], g->in[i]});
    }
    st.log(MoveKind::CaseA, step_index, u, std::move(done));
    return true;
  }
  if (!any_w1 && notes)
    notes->push_back("step " + std::to_string(step_index) + ": no leaf of w=" + std::to_string(an.w) +
                     " has its image in N_f(u)");
  return false;
}

// q = 1: find x in N^diamond(v), x != v1, with f(x) in N_{f(u)}; swap the
// images of u and x and hang u's leaves off the new f(u).
inline bool repair_case_b(EmbedState& st, const StrippingStep& step, std::size_t step_index = 0) {
  const OrientedTree& t = st.tree();
  const Digraph& d = st.host();
  StepAnalysis an = analyze_step(st, step);
  if (an.q != 1) return false;
  const Vertex u = step.u, v = step.v;
  if (t.degree(u, an.nu_side) == 0) return false;
  const Vertex hu = st.image(u);
  const DynBitset& nu = st.read(hu, an.nu_side, u);

  for (Vertex x : t.nbrs(v, an.diamond)) {
    if (x == u || x == an.v1 || !st.placed(x)) continue;
    const Vertex hx = st.image(x);
    if (!nu.test(static_cast<std::size_t>(hx))) continue;
    // x moves to f(u): its arcs to placed neighbours other than v must survive.
    bool arcs_ok = true;
    for (Vertex y : t.neighbours(x)) {
      if (y == v || !st.placed(y)) continue;
      if (!st.read(hu, t.side_of(x, y), x).test(static_cast<std::size_t>(st.image(y)))) arcs_ok = false;
    }
    if (!arcs_ok) continue;
    DynBitset out_free = step.out_leaves.empty() ? DynBitset(d.order()) : minus(st.read(hx, Side::Out, u), st.used());
    DynBitset in_free = step.in_leaves.empty() ? DynBitset(d.order()) : minus(st.read(hx, Side::In, u), st.used());
    auto pick = assign_leaves(out_free, in_free, step.out_leaves.size(), step.in_leaves.size());
    if (!pick) continue;

    st.unplace(u);
    st.unplace(x);
    st.place(u, hx);
    st.place(x, hu);
    std::vector<Placement> done{{u, hx}, {x, hu}};
    for (std::size_t i = 0; i < step.out_leaves.size(); ++i) {
      st.place(step.out_leaves[i], pick->out[i]);
      done.push_back({step.out_leaves[i], pick->out[i]});
    }
    for (std::size_t i = 0; i < step.in_leaves.size(); ++i) {
      st.place(step.in_leaves[i], pick->in[i]);
      done.push_back({step.in_leaves[i], pick->in[i]});
    }
    st.log(MoveKind::CaseB, step_index, u, std::move(done));
    return true;
  }
  return false;
}

struct SearchOutcome {
  std::optional<EmbeddingMap> embedding;
  std::uint64_t nodes = 0;
  bool budget_hit = false;
};

// Bounded backtracking for the whole tree, breadth-first from `root`.
inline SearchOutcome backtrack_embed(const OrientedTree& t, const Digraph& d, Vertex root, std::uint64_t budget) {
  SearchOutcome out;
  if (t.order() > d.order()) return out;
  std::vector<Vertex> order, parent(t.order(), kNoVertex);
  {
    std::vector<char> seen(t.order(), 0);
    std::deque<Vertex> q{root};
    seen[static_cast<std::size_t>(root)] = 1;
    while (!q.empty()) {
      Vertex x = q.front();
      q.pop_front();
      order.push_back(x);
      for (Vertex y : t.neighbours(x))
        if (!seen[static_cast<std::size_t>(y)]) {
          seen[static_cast<std::size_t>(y)] = 1;
          parent[static_cast<std::size_t>(y)] = x;
          q.push_back(y);
        }
    }
  }
  EmbeddingMap f(t.order(), kNoVertex);
  DynBitset used(d.order());
  DynBitset all(d.order());
  for (std::size_t h = 0; h < d.order(); ++h) all.set(h);

  auto recurse = [&](auto& self, std::size_t depth) -> bool {
    if (depth == order.size()) return true;
    const Vertex x = order[depth];
    const Vertex p = parent[static_cast<std::size_t>(x)];
    DynBitset cands = p == kNoVertex ? all : d.bits(f[static_cast<std::size_t>(p)], t.side_of(p, x));
    cands.subtract(used);
    for (std::size_t h = cands.find_first(); h != DynBitset::npos; h = cands.find_next(h + 1)) {
      auto hv = static_cast<Vertex>(h);
      if (!detail::degree_dominates(t, d, x, hv)) continue;
      if (++out.nodes > budget) {
        out.budget_hit = true;
        return false;
      }
      f[static_cast<std::size_t>(x)] = hv;
      used.set(h);
      if (self(self, depth + 1)) return true;
      used.reset(h);
      f[static_cast<std::size_t>(x)] = kNoVertex;
      if (out.budget_hit) return false;
    }
    return false;
  };
  if (recurse(recurse, 0)) out.embedding = f;
  return out;
}

// Full pipeline: mirror so the anchor has deg+ >= deg-, embed T_1, extend
// step by step (direct, then Case A for q=2 or Case B for q=1), and fall
// back to bounded search. Every returned embedding is re-validated.
inline EmbedReport embed_tree(const OrientedTree& T, const Digraph& D, EmbedMode mode,
                              const EmbedOptions& opt = {}, std::vector<NeighbourhoodRead>* reads = nullptr) {
  require_mode(T, mode);
  EmbedReport r;
  r.mode = mode;
  r.seed = opt.seed;
  r.hypotheses = check_hypotheses(T, D, mode);

  const Vertex anchor = mode == EmbedMode::Arborescence ? *is_out_arborescence(T) : anchor_vertex(T);
  r.mirrored = T.out_degree(anchor) < T.in_degree(anchor);
  std::optional<OrientedTree> rt;
  std::optional<Digraph> rd;
  if (r.mirrored) {
    rt = reverse(T);
    rd = reverse(D);
  }
  const OrientedTree& tree = r.mirrored ? *rt : T;
  const Digraph& host = r.mirrored ? *rd : D;

  StrippingSequence seq = stripping_sequence(tree, anchor);
  EmbedState st(tree, host, mode);
  st.record_reads(reads);

  bool constructive = false;
  if (tree.order() <= host.order()) {
    CoreOutcome core = embed_core(st, seq);
    constructive = core.ok;
    if (!core.ok) r.notes.push_back("core step stuck at tree vertex " + std::to_string(core.stuck));
  } else {
    r.notes.push_back("tree has more vertices than the host");
  }
  for (std::size_t i = 0; constructive && i < seq.steps.size(); ++i) {
    const StrippingStep& step = seq.steps[i];
    const std::size_t index = i + 1;
    if (extend_direct(st, step, index)) continue;
    StepAnalysis an = analyze_step(st, step);
    bool repaired = false;
    if (an.q == 2) {
      repaired = repair_case_a(st, step, index, r.hypotheses.all_hold() ? &r.notes : nullptr);
    } else if (an.q == 1) {
      repaired = repair_case_b(st, step, index);
    } else {
      r.notes.push_back("step " + std::to_string(index) + ": q=" + std::to_string(an.q) +
                        " and no direct extension");
    }
    if (!repaired) {
      r.notes.push_back("step " + std::to_string(index) + ": constructive moves failed (u=" +
                        std::to_string(step.u) + ", q=" + std::to_string(an.q) + ")");
      constructive = false;
    }
  }
  r.moves = std::move(st.moves());

  bool backtracked = false;
  if (constructive) {
    r.embedding = st.map();
  } else {
    backtracked = true;
    SearchOutcome s = backtrack_embed(tree, host, anchor, opt.fallback_budget);
    r.fallback_nodes = s.nodes;
    Move m{MoveKind::Backtrack, 0, anchor, {}, 0};
    if (s.embedding) {
      r.embedding = *s.embedding;
      for (std::size_t x = 0; x < r.embedding.size(); ++x)
        m.placements.push_back({static_cast<Vertex>(x), r.embedding[x]});
      m.image_size = r.embedding.size();
    } else if (s.budget_hit) {
      r.notes.push_back("fallback budget of " + std::to_string(opt.fallback_budget) + " nodes exhausted");
    }
    r.moves.push_back(std::move(m));
  }

  const bool hyp = r.hypotheses.all_hold();
  if (!r.embedding.empty()) {
    // Vertex ids are unchanged by mirroring, so f certifies T in D directly.
    Validation v = validate_embedding(T, D, r.embedding);
    if (!v) throw std::logic_error("embedder produced an invalid embedding: " + v.detail);
    r.status = (backtracked && hyp && opt.assert_constructive) ? EmbedStatus::HypothesisViolation
                                                               : EmbedStatus::Embedded;
  } else if (hyp) {
    r.status = EmbedStatus::HypothesisViolation;
  } else {
    r.status = EmbedStatus::FallbackExhausted;
    if (opt.confirm_with_oracle) {
      OracleResult o = oracle_embed(T, D, opt.oracle_budget);
      r.oracle = o.decision;
      if (o.decision == OracleDecision::No) r.status = EmbedStatus::NotEmbeddable;
      if (o.decision == OracleDecision::Yes) r.notes.push_back("oracle found an embedding the engine missed");
    }
  }
  return r;
}

}  // namespace oritree
