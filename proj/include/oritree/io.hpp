#pragma once

#include <cstddef>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "oritree/cycles.hpp"
#include "oritree/density.hpp"
#include "oritree/digraph.hpp"
#include "oritree/embedder.hpp"
#include "oritree/error.hpp"
#include "oritree/hypotheses.hpp"
#include "oritree/tree.hpp"

namespace oritree {

inline constexpr std::string_view kToolName = "oritree";
inline constexpr std::string_view kToolVersion = "1.0.0";
inline constexpr int kJsonSchema = 1;

using Json = nlohmann::ordered_json;

namespace detail {

// Splits a line into whitespace-separated non-negative integers.
inline std::vector<long long> parse_numbers(const std::string& line, std::size_t lineno) {
  std::vector<long long> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || v < 0) throw ParseError(lineno, "expected a non-negative integer, got '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

struct ArcListText {
  std::size_t n = 0;
  std::vector<Arc> arcs;
  bool tree_header = false;
};

inline ArcListText parse_arc_list(std::istream& in) {
  ArcListText r;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  std::size_t expected = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      if (line.substr(first) == "# tree") r.tree_header = true;
      continue;
    }
    auto nums = parse_numbers(line, lineno);
    if (nums.size() != 2) throw ParseError(lineno, "expected two integers, got " + std::to_string(nums.size()));
    if (!have_header) {
      r.n = static_cast<std::size_t>(nums[0]);
      expected = static_cast<std::size_t>(nums[1]);
      have_header = true;
      continue;
    }
    if (r.arcs.size() == expected) throw ParseError(lineno, "more arcs than the " + std::to_string(expected) + " declared");
    if (static_cast<std::size_t>(nums[0]) >= r.n || static_cast<std::size_t>(nums[1]) >= r.n)
      throw ParseError(lineno, "vertex out of range for n=" + std::to_string(r.n));
    r.arcs.push_back({static_cast<Vertex>(nums[0]), static_cast<Vertex>(nums[1])});
  }
  if (!have_header) throw ParseError(lineno + 1, "missing 'n m' header");
  if (r.arcs.size() != expected)
    throw ParseError(lineno + 1, "declared " + std::to_string(expected) + " arcs, found " + std::to_string(r.arcs.size()));
  return r;
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::BadParams, "cannot read " + path);
  return in;
}

}  // namespace detail

// "n m", then m lines "u v"; '#' starts a comment line.
inline Digraph read_digraph(std::istream& in) {
  auto text = detail::parse_arc_list(in);
  return build_digraph(text.n, std::move(text.arcs));
}

inline Digraph parse_digraph(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_digraph(in);
}

inline Digraph load_digraph(const std::string& path) {
  auto in = detail::open_input(path);
  return read_digraph(in);
}

inline void write_digraph(std::ostream& out, const Digraph& d) {
  out << d.order() << ' ' << d.size() << '\n';
  for (const Arc& a : d.arcs()) out << a.tail << ' ' << a.head << '\n';
}

inline std::string format_digraph(const Digraph& d) {
  std::ostringstream out;
  write_digraph(out, d);
  return out.str();
}

// Same layout; the "# tree" header is optional on input.
inline OrientedTree read_tree(std::istream& in) {
  auto text = detail::parse_arc_list(in);
  return build_tree(text.n, std::move(text.arcs));
}

inline OrientedTree parse_tree(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_tree(in);
}

inline OrientedTree load_tree(const std::string& path) {
  auto in = detail::open_input(path);
  return read_tree(in);
}

inline void write_tree(std::ostream& out, const OrientedTree& t) {
  out << "# tree\n" << t.order() << ' ' << t.arc_count() << '\n';
  for (const Arc& a : t.arcs()) out << a.tail << ' ' << a.head << '\n';
}

inline std::string format_tree(const OrientedTree& t) {
  std::ostringstream out;
  write_tree(out, t);
  return out.str();
}

// One "t_v d_v" line per tree vertex.
inline void write_certificate(std::ostream& out, const EmbeddingMap& f) {
  for (std::size_t x = 0; x < f.size(); ++x) out << x << ' ' << f[x] << '\n';
}

inline Json to_json(const Arc& a) { return Json::array({a.tail, a.head}); }

inline Json to_json(const CycleWitness& w) {
  Json arcs = Json::array();
  for (const Arc& a : w.arcs) arcs.push_back(to_json(a));
  return Json{{"type", std::string(to_string(w.type))}, {"vertices", w.vertices}, {"arcs", arcs}};
}

inline Json to_json(const DegreeProfile& p) {
  return Json{{"delta_plus", p.delta_plus}, {"delta_minus", p.delta_minus},       {"delta_zero", p.delta_zero},
              {"pseudo_delta_zero", p.pseudo_delta_zero}, {"Delta_plus", p.Delta_plus},
              {"Delta_minus", p.Delta_minus}, {"Delta_tot", p.Delta_tot},         {"Delta_pm", p.Delta_pm}};
}

inline Json to_json(const HypothesisReport& h) {
  Json j{{"mode", std::string(to_string(h.mode))},
         {"k", h.k},
         {"all_hold", h.all_hold()},
         {"host_oriented", h.host_oriented},
         {"profile", to_json(h.profile)},
         {"degree", {{"ok", h.degree_ok}, {"detail", h.degree_detail}}},
         {"max_degree", {{"ok", h.max_degree_ok}, {"detail", h.max_degree_detail}}},
         {"cycle", {{"ok", h.cycle_ok}}}};
  if (h.cycle_witness) j["cycle"]["witness"] = to_json(*h.cycle_witness);
  return j;
}

inline Json placements_json(const std::vector<Placement>& ps) {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(Json::array({p.tree, p.host}));
  return a;
}

inline Json to_json(const Move& m) {
  return Json{{"kind", std::string(to_string(m.kind))},
              {"step", m.step},
              {"focus", m.focus},
              {"placements", placements_json(m.placements)},
              {"image_size", m.image_size}};
}

inline Json embedding_json(const EmbeddingMap& f) {
  Json a = Json::array();
  for (std::size_t x = 0; x < f.size(); ++x) a.push_back(Json::array({static_cast<Vertex>(x), f[x]}));
  return a;
}

inline Json envelope(std::string_view command, std::uint64_t seed) {
  return Json{{"schema", kJsonSchema},
              {"tool", std::string(kToolName)},
              {"version", std::string(kToolVersion)},
              {"command", std::string(command)},
              {"seed", seed}};
}

inline Json to_json(const EmbedReport& r) {
  Json j = envelope("embed", r.seed);
  j["status"] = std::string(to_string(r.status));
  j["mode"] = std::string(to_string(r.mode));
  j["embedding"] = r.embedding.empty() ? Json(nullptr) : embedding_json(r.embedding);
  Json moves = Json::array();
  for (const auto& m : r.moves) moves.push_back(to_json(m));
  j["moves"] = std::move(moves);
  j["hypotheses"] = to_json(r.hypotheses);
  j["mirrored"] = r.mirrored;
  j["fallback_nodes"] = r.fallback_nodes;
  j["oracle"] = r.oracle ? Json(std::string(to_string(*r.oracle))) : Json(nullptr);
  j["notes"] = r.notes;
  return j;
}

inline Json to_json(const PeelResult& p, HalfInt threshold) {
  Json events = Json::array();
  for (const auto& e : p.trace)
    events.push_back({{"vertex", e.vertex}, {"side", to_string(e.side)}, {"arcs_removed", e.arcs_removed}});
  return Json{{"threshold", threshold.str()},
              {"events", events},
              {"arcs_removed", p.arcs_removed()},
              {"arcs_kept", p.peeled.size()},
              {"pseudo_delta_zero", degree_profile(p.peeled).pseudo_delta_zero}};
}

}  // namespace oritree
