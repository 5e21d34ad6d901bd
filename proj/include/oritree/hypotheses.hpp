#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "oritree/cycles.hpp"
#include "oritree/digraph.hpp"
#include "oritree/error.hpp"
#include "oritree/tree.hpp"

namespace oritree {

enum class EmbedMode {
  GeneralOriented,  // any oriented tree; semidegree k/2, no oriented 4-cycle
  Antidirected,     // antidirected tree; pseudo-semidegree k/2, only directed 4-cycles
  Arborescence      // out-arborescence rooted at a max-degree vertex; outdegree bounds
};

constexpr std::string_view to_string(EmbedMode m) {
  switch (m) {
    case EmbedMode::GeneralOriented: return "general";
    case EmbedMode::Antidirected: return "antidirected";
    case EmbedMode::Arborescence: return "arborescence";
  }
  return "?";
}

inline std::optional<EmbedMode> embed_mode_from_string(std::string_view s) {
  for (auto m : {EmbedMode::GeneralOriented, EmbedMode::Antidirected, EmbedMode::Arborescence})
    if (to_string(m) == s) return m;
  return std::nullopt;
}

struct HypothesisReport {
  EmbedMode mode = EmbedMode::GeneralOriented;
  std::size_t k = 0;
  bool host_oriented = false;
  DegreeProfile profile;

  bool degree_ok = false;
  std::string degree_detail;
  bool max_degree_ok = false;
  std::string max_degree_detail;
  bool cycle_ok = false;
  std::optional<CycleWitness> cycle_witness;

  bool all_hold() const { return degree_ok && max_degree_ok && cycle_ok; }
};

// Throws ModeMismatch when the tree lacks the mode's structural shape.
inline void require_mode(const OrientedTree& t, EmbedMode mode) {
  if (mode == EmbedMode::Antidirected && !is_antidirected(t))
    throw Error(ErrorCode::ModeMismatch, "tree is not antidirected");
  if (mode == EmbedMode::Arborescence) {
    auto root = is_out_arborescence(t);
    if (!root) throw Error(ErrorCode::ModeMismatch, "tree is not an out-arborescence");
    if (t.total_degree(*root) != t.max_total_degree())
      throw Error(ErrorCode::ModeMismatch, "root " + std::to_string(*root) +
                                               " does not have maximum total degree");
  }
}

namespace detail {
// "lhs >= k/2" in integers.
inline bool at_least_half(std::size_t lhs, std::size_t k) { return 2 * lhs >= k; }
inline std::string half(std::size_t k) {
  return k % 2 == 0 ? std::to_string(k / 2) : std::to_string(k / 2) + ".5";
}
}  // namespace detail

inline HypothesisReport check_hypotheses(const OrientedTree& t, const Digraph& d, EmbedMode mode) {
  require_mode(t, mode);
  HypothesisReport r;
  r.mode = mode;
  r.k = t.arc_count();
  r.profile = degree_profile(d);
  r.host_oriented = is_oriented(d);
  const auto& p = r.profile;
  const std::size_t k = r.k;
  const std::size_t tree_tot = t.max_total_degree();

  switch (mode) {
    case EmbedMode::GeneralOriented: {
      r.degree_ok = detail::at_least_half(p.delta_zero, k);
      r.degree_detail = "delta0=" + std::to_string(p.delta_zero) + (r.degree_ok ? " >= " : " < ") +
                        "k/2=" + detail::half(k);
      // A star needs only Delta_pm >= k.
      bool star = tree_tot == k;
      r.max_degree_ok = p.Delta_pm > tree_tot || (star && p.Delta_pm >= k);
      r.max_degree_detail = "Delta_pm=" + std::to_string(p.Delta_pm) +
                            (r.max_degree_ok ? " suffices for " : " too small for ") +
                            "Delta_tot(T)=" + std::to_string(tree_tot) + (star ? " (star)" : "");
      r.cycle_witness = find_forbidden_cycle(d, CycleMode::AllC4);
      break;
    }
    case EmbedMode::Antidirected: {
      r.degree_ok = detail::at_least_half(p.pseudo_delta_zero, k);
      r.degree_detail = "pseudo_delta0=" + std::to_string(p.pseudo_delta_zero) +
                        (r.degree_ok ? " >= " : " < ") + "k/2=" + detail::half(k);
      r.max_degree_ok = p.Delta_pm > tree_tot;
      r.max_degree_detail = "Delta_pm=" + std::to_string(p.Delta_pm) + (r.max_degree_ok ? " > " : " <= ") +
                            "Delta_tot(T)=" + std::to_string(tree_tot);
      r.cycle_witness = find_forbidden_cycle(d, CycleMode::NonDirectedC4);
      break;
    }
    case EmbedMode::Arborescence: {
      // lambda = 1 for oriented hosts
      bool relaxed = r.host_oriented && 2 * p.delta_plus + 2 >= k && detail::at_least_half(p.Delta_plus, k);
      bool plain = detail::at_least_half(p.delta_plus, k);
      r.degree_ok = relaxed || plain;
      r.degree_detail = "delta_plus=" + std::to_string(p.delta_plus) + " Delta_plus=" +
                        std::to_string(p.Delta_plus) + (r.host_oriented ? " oriented" : " non-oriented") +
                        (plain ? ": delta_plus >= k/2" : relaxed ? ": oriented with delta_plus >= k/2-1" : ": fails") +
                        " (k/2=" + detail::half(k) + ")";
      std::size_t tree_out = t.max_out_degree();
      r.max_degree_ok = p.Delta_plus > tree_out;
      r.max_degree_detail = "Delta_plus=" + std::to_string(p.Delta_plus) +
                            (r.max_degree_ok ? " > " : " <= ") + "Delta_plus(T)=" + std::to_string(tree_out);
      r.cycle_witness = find_forbidden_cycle(d, CycleMode::AllC4);
      break;
    }
  }
  r.cycle_ok = !r.cycle_witness.has_value();
  return r;
}

}  // namespace oritree
