#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oritree/catalog.hpp"
#include "oritree/cycles.hpp"
#include "oritree/density.hpp"
#include "oritree/digraph.hpp"
#include "oritree/embedder.hpp"
#include "oritree/generators.hpp"
#include "oritree/harness.hpp"
#include "oritree/hypotheses.hpp"
#include "oritree/io.hpp"
#include "oritree/oracle.hpp"
#include "oritree/rng.hpp"
#include "oritree/tree.hpp"

namespace oritree {

// Process exit codes.
enum ExitCode : int { kExitOk = 0, kExitInputError = 1, kExitNotEmbedded = 2, kExitHypothesisViolation = 3 };

// Inputs with at most this many vertices get full 4-cycle type counts in `stats`.
inline constexpr std::size_t kStatsCountLimit = 64;

namespace cli {

inline const char* yes_no(bool b) { return b ? "yes" : "no"; }

inline void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::BadParams, "cannot write " + path);
  f << text;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline EmbedMode parse_mode(const std::string& s) {
  auto m = embed_mode_from_string(s);
  if (!m) throw Error(ErrorCode::BadKind, "mode '" + s + "'");
  return *m;
}

inline HalfInt parse_half(const std::string& s) {
  auto dot = s.find('.');
  std::string whole = s.substr(0, dot);
  std::size_t used = 0;
  unsigned long w = 0;
  try {
    w = std::stoul(whole, &used);
  } catch (const std::exception&) {
    used = std::string::npos;
  }
  if (used != whole.size() || whole.empty()) throw Error(ErrorCode::BadParams, "threshold '" + s + "'");
  if (dot == std::string::npos) return HalfInt::whole(w);
  std::string frac = s.substr(dot + 1);
  if (frac == "0") return HalfInt::whole(w);
  if (frac == "5") return HalfInt::twice(2 * w + 1);
  throw Error(ErrorCode::BadParams, "threshold '" + s + "' is not a multiple of 1/2");
}

inline Json arcs_json(const std::vector<Arc>& arcs) {
  Json a = Json::array();
  for (const Arc& x : arcs) a.push_back(to_json(x));
  return a;
}

// ---------------------------------------------------------------- stats

struct StatsConfig {
  std::string digraph;
  std::string format = "text";
};

inline int cmd_stats(const StatsConfig& c, std::ostream& out) {
  Digraph d = load_digraph(c.digraph);
  DegreeProfile p = degree_profile(d);
  auto all = find_forbidden_cycle(d, CycleMode::AllC4);
  auto star = find_forbidden_cycle(d, CycleMode::NonDirectedC4);
  std::optional<std::array<std::size_t, 4>> counts;
  if (d.order() <= kStatsCountLimit) counts = four_cycle_type_counts(d);

  if (c.format == "json") {
    Json j = envelope("stats", 0);
    j["n"] = d.order();
    j["m"] = d.size();
    j["oriented"] = is_oriented(d);
    j["profile"] = to_json(p);
    j["c4_free"] = !all;
    j["c4_star_free"] = !star;
    if (counts) {
      Json cj = Json::object();
      for (auto t : kAllFourCycleTypes) cj[std::string(to_string(t))] = (*counts)[static_cast<std::size_t>(t)];
      j["cycle_type_counts"] = cj;
    }
    j["witness"] = all ? to_json(*all) : Json(nullptr);
    out << dump(j);
    return kExitOk;
  }
  out << "n=" << d.order() << " m=" << d.size() << " oriented=" << yes_no(is_oriented(d)) << "\n";
  out << "profile: delta_plus=" << p.delta_plus << " delta_minus=" << p.delta_minus << " Delta_plus=" << p.Delta_plus
      << " Delta_minus=" << p.Delta_minus << " Delta_tot=" << p.Delta_tot << " delta0=" << p.delta_zero
      << " pseudo=" << p.pseudo_delta_zero << " Delta_pm=" << p.Delta_pm << " c4_free=" << yes_no(!all) << "\n";
  out << "cycles: c4_star_free=" << yes_no(!star) << " c4_free=" << yes_no(!all) << "\n";
  if (counts) {
    out << "types:";
    for (auto t : kAllFourCycleTypes) out << ' ' << to_string(t) << '=' << (*counts)[static_cast<std::size_t>(t)];
    out << "\n";
  }
  if (all) out << "witness: " << format_witness(*all) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- embed

struct EmbedConfig {
  std::string tree, digraph;
  std::string mode = "general";
  EmbedOptions options;
  bool oracle = false;
  std::string out_path, certificate_path;
  std::string format = "text";
};

inline int exit_code_for(EmbedStatus s) {
  switch (s) {
    case EmbedStatus::Embedded: return kExitOk;
    case EmbedStatus::HypothesisViolation: return kExitHypothesisViolation;
    default: return kExitNotEmbedded;
  }
}

inline int cmd_embed(const EmbedConfig& c, std::ostream& out) {
  OrientedTree t = load_tree(c.tree);
  Digraph d = load_digraph(c.digraph);
  EmbedOptions opt = c.options;
  opt.confirm_with_oracle = c.oracle;
  EmbedReport r = embed_tree(t, d, parse_mode(c.mode), opt);
  const bool confirmed = r.status == EmbedStatus::NotEmbeddable;
  if (confirmed) r.notes.push_back("oracle-confirmed");

  if (!c.certificate_path.empty() && !r.embedding.empty()) {
    std::ostringstream cert;
    write_certificate(cert, r.embedding);
    emit(cert.str(), c.certificate_path, out);
  }
  const std::string json = dump(to_json(r));
  if (!c.out_path.empty()) emit(json, c.out_path, out);
  if (c.format == "json") {
    out << json;
  } else {
    const auto& h = r.hypotheses;
    out << "status=" << to_string(r.status) << (confirmed ? " (oracle-confirmed)" : "") << " mode=" << to_string(r.mode)
        << " k=" << h.k << " mirrored=" << yes_no(r.mirrored) << " moves=" << r.moves.size()
        << " backtrack=" << r.count(MoveKind::Backtrack) << "\n";
    out << "hypotheses: " << (h.all_hold() ? "hold" : "fail") << "\n";
    out << "  degree " << (h.degree_ok ? "ok" : "FAIL") << ": " << h.degree_detail << "\n";
    out << "  max_degree " << (h.max_degree_ok ? "ok" : "FAIL") << ": " << h.max_degree_detail << "\n";
    out << "  cycle " << (h.cycle_ok ? "ok" : "FAIL");
    if (h.cycle_witness) out << ": " << format_witness(*h.cycle_witness);
    out << "\n";
    if (!r.embedding.empty()) {
      out << "embedding:";
      for (std::size_t x = 0; x < r.embedding.size(); ++x) out << ' ' << x << "->" << r.embedding[x];
      out << "\n";
    }
    for (const auto& n : r.notes) out << "note: " << n << "\n";
  }
  return exit_code_for(r.status);
}

// ---------------------------------------------------------------- verify

struct VerifyConfig {
  std::string mode = "general";
  std::size_t k = 6;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::string trees = "random";
  std::string host = "auto";
  int q = 0;
  std::uint64_t budget = 1'000'000;
  bool assert_constructive = false;
  std::string format = "text";
  std::string out_path;
};

struct VerifyInstance {
  std::size_t index = 0;
  std::uint64_t tree_seed = 0;  // random trees only
  OrientedTree tree;
};

struct VerifyOutcome {
  EmbedStatus status = EmbedStatus::FallbackExhausted;
  std::size_t moves = 0;
  std::size_t backtracks = 0;
};

inline int smallest_order_for(std::size_t k) {
  for (int q = 2; q <= 4; ++q)
    if (2 * static_cast<std::size_t>(q + 1) >= k) return q;
  throw Error(ErrorCode::BadParams, "no stored girth-6 host is large enough for k=" + std::to_string(k));
}

inline bool mode_shape(const OrientedTree& t, EmbedMode mode) {
  switch (mode) {
    case EmbedMode::GeneralOriented: return true;
    case EmbedMode::Antidirected: return is_antidirected(t);
    case EmbedMode::Arborescence: {
      auto root = is_out_arborescence(t);
      return root && t.total_degree(*root) == t.max_total_degree();
    }
  }
  return false;
}

inline TreeKind kind_for(EmbedMode mode) {
  switch (mode) {
    case EmbedMode::Antidirected: return TreeKind::Antidirected;
    case EmbedMode::Arborescence: return TreeKind::OutArborescence;
    default: return TreeKind::Any;
  }
}

inline int cmd_verify(const VerifyConfig& c, std::ostream& out) {
  if (c.trials == 0) throw CLI::ValidationError("--trials", "must be at least 1");
  const EmbedMode mode = parse_mode(c.mode);
  const int q = c.q > 0 ? c.q : smallest_order_for(c.k);
  std::string host_name = c.host == "auto" ? "girth6" : c.host;
  Digraph host;
  if (host_name == "girth6")
    host = gen_girth6_digon_host(q);
  else if (host_name == "girth6_oriented")
    host = gen_girth6_oriented_host(q);
  else
    throw Error(ErrorCode::BadKind, "host '" + c.host + "'");
  host_name += "(q=" + std::to_string(q) + ")";

  auto holds = [&](const OrientedTree& t) { return check_hypotheses(t, host, mode).all_hold(); };
  std::vector<VerifyInstance> instances;
  std::size_t skipped = 0;
  if (c.trees == "random") {
    Rng rng(c.seed);
    for (std::size_t i = 0; i < c.trials; ++i) {
      Rng stream = rng.split(i);
      bool found = false;
      for (int attempt = 0; attempt < 1000 && !found; ++attempt) {
        std::uint64_t s = stream();
        OrientedTree t = gen_random_tree(c.k, kind_for(mode), s);
        if (!mode_shape(t, mode) || !holds(t)) continue;
        instances.push_back({i, s, std::move(t)});
        found = true;
      }
      if (!found) ++skipped;
    }
  } else if (c.trees == "catalog" || c.trees == "paths") {
    TreeCatalog cat = enumerate_oriented_trees(c.k);
    for (auto& t : cat.trees) {
      if (instances.size() == c.trials) break;
      if (c.trees == "paths" && t.max_total_degree() > 2) continue;
      if (!mode_shape(t, mode) || !holds(t)) {
        ++skipped;
        continue;
      }
      instances.push_back({instances.size(), 0, t});
    }
  } else {
    throw Error(ErrorCode::BadKind, "tree source '" + c.trees + "'");
  }

  EmbedOptions opt;
  opt.fallback_budget = c.budget;
  opt.assert_constructive = c.assert_constructive;
  opt.seed = c.seed;
  auto outcomes = parallel_map(instances.size(), [&](std::size_t i) {
    EmbedReport r = embed_tree(instances[i].tree, host, mode, opt);
    return VerifyOutcome{r.status, r.moves.size(), r.count(MoveKind::Backtrack)};
  });

  std::array<std::size_t, 4> by_status{};
  std::size_t backtracks = 0;
  for (const auto& o : outcomes) {
    ++by_status[static_cast<std::size_t>(o.status)];
    backtracks += o.backtracks;
  }
  const std::array<EmbedStatus, 4> statuses{EmbedStatus::Embedded, EmbedStatus::NotEmbeddable,
                                            EmbedStatus::FallbackExhausted, EmbedStatus::HypothesisViolation};

  Json j = envelope("verify", c.seed);
  j["mode"] = c.mode;
  j["k"] = c.k;
  j["host"] = host_name;
  j["trees"] = c.trees;
  j["instances"] = instances.size();
  j["skipped"] = skipped;
  Json counts = Json::object();
  for (auto s : statuses) counts[std::string(to_string(s))] = by_status[static_cast<std::size_t>(s)];
  j["counts"] = counts;
  j["backtracks"] = backtracks;
  Json results = Json::array();
  Json failures = Json::array();
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& in = instances[i];
    Json row{{"index", in.index},
             {"tree_seed", in.tree_seed},
             {"tree", arcs_json(in.tree.arcs())},
             {"status", std::string(to_string(outcomes[i].status))},
             {"moves", outcomes[i].moves},
             {"backtracks", outcomes[i].backtracks}};
    if (outcomes[i].status != EmbedStatus::Embedded) failures.push_back(row);
    results.push_back(std::move(row));
  }
  j["failures"] = failures;
  j["results"] = results;
  if (!c.out_path.empty()) emit(dump(j), c.out_path, out);

  if (c.format == "json") {
    out << dump(j);
  } else {
    out << "verify mode=" << c.mode << " k=" << c.k << " host=" << host_name << " trees=" << c.trees
        << " instances=" << instances.size() << " skipped=" << skipped << " seed=" << c.seed << "\n";
    for (auto s : statuses) out << to_string(s) << '=' << by_status[static_cast<std::size_t>(s)] << ' ';
    out << "backtracks=" << backtracks << "\n";
    for (const auto& f : failures)
      out << "failure index=" << f["index"].get<std::size_t>() << " tree_seed=" << f["tree_seed"].get<std::uint64_t>()
          << " status=" << f["status"].get<std::string>() << "\n";
  }
  return by_status[static_cast<std::size_t>(EmbedStatus::HypothesisViolation)] > 0 ? kExitHypothesisViolation
                                                                                  : kExitOk;
}

// ---------------------------------------------------------------- explore

struct ExploreConfig {
  std::string problem = "forbidden_family";
  std::string family = "random";  // random hosts, or the blown-up directed cycle
  std::string forbid = "Directed";
  std::size_t n = 8;
  std::size_t m = 0;  // 0: 2n
  std::size_t hosts = 20;
  std::size_t k = 4;  // trees with 1..k arcs
  std::size_t s = 3;
  std::size_t girth_l = 2;
  int len = 3;
  int blow = 2;
  std::uint64_t seed = 1;
  std::uint64_t budget = 2'000'000;
  std::string format = "text";
  std::string out_path;
};

namespace detail_explore {

inline CycleTypeSet parse_types(const std::string& list) {
  CycleTypeSet set;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto t = four_cycle_type_from_string(item);
    if (!t) throw Error(ErrorCode::BadKind, "cycle type '" + item + "'");
    set.insert(*t);
  }
  return set;
}

// Some pair of vertices has s common underlying neighbours, with one of
// the pair an endpoint of the new arc.
inline bool creates_k2s(const Digraph& g, const Arc& a, std::size_t s) {
  for (Vertex end : {a.tail, a.head})
    for (std::size_t x = 0; x < g.order(); ++x) {
      if (static_cast<Vertex>(x) == end) continue;
      if (g.underlying_bits(end).intersection_count(g.underlying_bits(static_cast<Vertex>(x))) >= s) return true;
    }
  return false;
}

// Length of the shortest tail..head path that avoids the edge itself.
inline std::size_t detour(const Digraph& g, const Arc& a) {
  std::vector<std::size_t> dist(g.order(), static_cast<std::size_t>(-1));
  std::deque<Vertex> q{a.tail};
  dist[static_cast<std::size_t>(a.tail)] = 0;
  while (!q.empty()) {
    Vertex x = q.front();
    q.pop_front();
    bool stop = false;
    g.underlying_bits(x).for_each([&](std::size_t y) {
      if (stop || dist[y] != static_cast<std::size_t>(-1)) return;
      if (x == a.tail && static_cast<Vertex>(y) == a.head) return;
      dist[y] = dist[static_cast<std::size_t>(x)] + 1;
      if (static_cast<Vertex>(y) == a.head) stop = true;
      q.push_back(static_cast<Vertex>(y));
    });
    if (stop) break;
  }
  return dist[static_cast<std::size_t>(a.head)];
}

struct Finding {
  std::size_t host = 0;
  std::string tree;
  std::vector<Arc> arcs;
  std::size_t k = 0;
  bool hypotheses_hold = false;
};

struct HostResult {
  std::uint64_t seed = 0;
  std::optional<Digraph> host;
  std::string skipped;
  std::vector<Finding> findings;
  std::size_t pairs = 0;
  std::size_t unknown = 0;
};

}  // namespace detail_explore

inline int cmd_explore(const ExploreConfig& c, std::ostream& out) {
  namespace dx = detail_explore;
  if (c.hosts == 0) throw CLI::ValidationError("--trials", "must be at least 1");
  std::vector<TreeCatalog> catalogs;
  for (std::size_t k = 1; k <= c.k; ++k) catalogs.push_back(enumerate_oriented_trees(k));

  const bool blowup = c.family == "blowup";
  if (!blowup && c.family != "random") throw Error(ErrorCode::BadKind, "host family '" + c.family + "'");
  if (c.problem != "forbidden_family" && c.problem != "k2s" && c.problem != "girth")
    throw Error(ErrorCode::BadKind, "problem '" + c.problem + "'");
  const CycleTypeSet forbidden = dx::parse_types(c.forbid);
  const std::size_t m = c.m > 0 ? c.m : 2 * c.n;
  const std::size_t host_count = blowup ? 1 : c.hosts;
  Rng rng(c.seed);

  auto results = parallel_map(host_count, [&](std::size_t i) {
    dx::HostResult r;
    r.seed = rng.split(i)();
    try {
      if (blowup) {
        r.host = gen_blowup_cycle(c.len, c.blow);
      } else if (c.problem == "forbidden_family") {
        r.host = gen_random_digraph(c.n, m, forbidden, r.seed);
      } else if (c.problem == "k2s") {
        r.host = gen_random_digraph_where(c.n, m, r.seed,
                                          [&](const Digraph& g, const Arc& a) { return !dx::creates_k2s(g, a, c.s); });
      } else {
        r.host = gen_random_digraph_where(c.n, m, r.seed, [&](const Digraph& g, const Arc& a) {
          return !g.has_arc(a.head, a.tail) && dx::detour(g, a) >= 2 * c.girth_l;
        });
      }
    } catch (const Error& e) {
      r.skipped = e.what();
      return r;
    }
    for (const auto& cat : catalogs)
      for (std::size_t ti = 0; ti < cat.trees.size(); ++ti) {
        const OrientedTree& t = cat.trees[ti];
        if (t.order() > r.host->order()) continue;
        ++r.pairs;
        OracleResult o = oracle_embed(t, *r.host, c.budget);
        if (o.decision == OracleDecision::Unknown) ++r.unknown;
        if (o.decision != OracleDecision::No) continue;
        HypothesisReport h = check_hypotheses(t, *r.host, EmbedMode::GeneralOriented);
        r.findings.push_back({i, cat.canonical[ti], t.arcs(), cat.k, h.degree_ok && h.max_degree_ok});
      }
    return r;
  });

  Json j = envelope("explore", c.seed);
  j["problem"] = c.problem;
  j["family"] = c.family;
  Json params{{"n", c.n}, {"m", m}, {"hosts", host_count}, {"k", c.k}};
  if (blowup) {
    params = Json{{"len", c.len}, {"s", c.blow}, {"k", c.k}};
  } else if (c.problem == "forbidden_family") {
    params["forbid"] = c.forbid;
  } else if (c.problem == "k2s") {
    params["s"] = c.s;
  } else {
    params["girth_l"] = c.girth_l;
  }
  j["params"] = params;
  Json hosts = Json::array(), findings = Json::array();
  std::size_t pairs = 0, unknown = 0, candidates = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    Json hj{{"index", i}, {"seed", r.seed}};
    if (r.host) {
      hj["n"] = r.host->order();
      hj["arcs"] = arcs_json(r.host->arcs());
    } else {
      hj["skipped"] = r.skipped;
    }
    hosts.push_back(std::move(hj));
    pairs += r.pairs;
    unknown += r.unknown;
    for (const auto& f : r.findings) {
      candidates += f.hypotheses_hold ? 1 : 0;
      findings.push_back({{"host", f.host},
                          {"k", f.k},
                          {"tree", f.tree},
                          {"tree_arcs", arcs_json(f.arcs)},
                          {"oracle", "no"},
                          {"degree_hypotheses_hold", f.hypotheses_hold},
                          {"candidate", f.hypotheses_hold}});
    }
  }
  j["pairs_tested"] = pairs;
  j["oracle_unknown"] = unknown;
  j["candidates"] = candidates;
  j["findings"] = findings;
  j["hosts"] = hosts;
  if (!c.out_path.empty()) emit(dump(j), c.out_path, out);
  if (c.format == "json") {
    out << dump(j);
  } else {
    out << "explore problem=" << c.problem << " family=" << c.family << " hosts=" << host_count << " pairs=" << pairs
        << " not_embeddable=" << findings.size() << " candidates=" << candidates << " unknown=" << unknown
        << " seed=" << c.seed << "\n";
    for (const auto& f : findings)
      out << (f["candidate"].get<bool>() ? "candidate" : "finding") << " host=" << f["host"].get<std::size_t>()
          << " k=" << f["k"].get<std::size_t>() << " tree=" << f["tree"].get<std::string>() << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------- generate

struct GenerateConfig {
  std::string kind;
  int k = 0;
  int clique_size = 0;
  int len = 3;
  int s = 2;
  int q = 2;
  std::string tree_kind = "any";
  std::size_t n = 10;
  std::size_t m = 15;
  std::string constraint = "none";
  std::uint64_t seed = 1;
  std::string out_path;
};

inline int cmd_generate(const GenerateConfig& c, std::ostream& out) {
  auto check = [](bool ok, const std::string& what) {
    if (!ok) throw std::logic_error("generated instance failed re-validation: " + what);
  };
  std::string text;
  if (c.kind == "tree") {
    const TreeKind kind = tree_kind_from_string(c.tree_kind);
    if (c.k < 1) throw Error(ErrorCode::BadParams, "--k must be at least 1");
    OrientedTree t = gen_random_tree(static_cast<std::size_t>(c.k), kind, c.seed);
    check(t.arc_count() == static_cast<std::size_t>(c.k), "arc count");
    if (kind == TreeKind::Antidirected) check(is_antidirected(t), "antidirected");
    if (kind == TreeKind::OutArborescence) check(is_out_arborescence(t).has_value(), "out-arborescence");
    if (kind == TreeKind::Path) check(t.max_total_degree() <= 2, "path");
    text = format_tree(t);
  } else {
    Digraph d;
    if (c.kind == "two_clique") {
      d = gen_two_clique_host(c.k, c.clique_size);
      check(reverse(d) == d, "digon symmetry");
    } else if (c.kind == "blowup") {
      d = gen_blowup_cycle(c.len, c.s);
      auto p = degree_profile(d);
      check(p.delta_zero == static_cast<std::size_t>(c.s) && p.Delta_pm == static_cast<std::size_t>(c.s), "semidegree");
    } else if (c.kind == "girth6" || c.kind == "girth6_oriented") {
      d = c.kind == "girth6" ? gen_girth6_digon_host(c.q) : gen_girth6_oriented_host(c.q);
      check(is_c4_free(d), "no 4-cycles");
    } else if (c.kind == "digraph") {
      auto constraint = digraph_constraint_from_string(c.constraint);
      d = gen_random_digraph(c.n, c.m, constraint, c.seed);
      check(!find_cycle_of_types(d, forbidden_types(constraint)), std::string(to_string(constraint)));
    } else {
      throw Error(ErrorCode::BadKind, "generate kind '" + c.kind + "'");
    }
    text = format_digraph(d);
  }
  emit(text, c.out_path, out);
  return kExitOk;
}

// ---------------------------------------------------------------- peel

struct PeelConfig {
  std::string digraph;
  std::string threshold;
  std::size_t k = 0;
  std::string out_path, trace_path;
  std::string format = "text";
};

inline int cmd_peel(const PeelConfig& c, std::ostream& out) {
  Digraph d = load_digraph(c.digraph);
  HalfInt threshold;
  if (!c.threshold.empty())
    threshold = parse_half(c.threshold);
  else if (c.k > 0)
    threshold = HalfInt::half_of(c.k);
  else
    throw CLI::ValidationError("--d", "give --d or --k");
  PeelResult r = peel_to_pseudo_semidegree(d, threshold);
  Json trace = envelope("peel", 0);
  trace.update(to_json(r, threshold));
  if (!c.trace_path.empty()) emit(dump(trace), c.trace_path, out);
  if (!c.out_path.empty()) emit(format_digraph(r.peeled), c.out_path, out);
  if (c.format == "json")
    out << dump(trace);
  else if (c.out_path.empty())
    out << format_digraph(r.peeled);
  else
    out << "peeled " << r.arcs_removed() << " of " << d.size() << " arcs in " << r.trace.size() << " events\n";
  return kExitOk;
}

// ---------------------------------------------------------------- catalog

struct CatalogConfig {
  std::size_t k = 4;
  std::size_t bound = kDefaultCatalogBound;
  std::string out_dir;
};

inline int cmd_catalog(const CatalogConfig& c, std::ostream& out) {
  TreeCatalog cat = enumerate_oriented_trees(c.k, c.bound);
  if (c.out_dir.empty()) {
    out << "k=" << cat.k << " trees=" << cat.size() << "\n";
    for (const auto& code : cat.canonical) out << code << "\n";
    return kExitOk;
  }
  namespace fs = std::filesystem;
  fs::create_directories(c.out_dir);
  std::ostringstream index;
  for (std::size_t i = 0; i < cat.size(); ++i) {
    std::ostringstream name;
    name << "tree_k" << cat.k << '_' << std::setw(5) << std::setfill('0') << i << ".txt";
    emit(format_tree(cat.trees[i]), (fs::path(c.out_dir) / name.str()).string(), out);
    index << name.str() << ' ' << cat.canonical[i] << "\n";
  }
  emit(index.str(), (fs::path(c.out_dir) / "index.txt").string(), out);
  out << "wrote " << cat.size() << " trees to " << c.out_dir << "\n";
  return kExitOk;
}

}  // namespace cli

// Parses argv-style arguments (without the program name) and runs one
// subcommand. Returns the process exit code.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Embedding oriented trees in digraphs without oriented 4-cycles", "oritree"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));
  const std::vector<std::string> formats{"text", "json"};

  cli::StatsConfig stats;
  auto* s_stats = app.add_subcommand("stats", "Degree profile and 4-cycle summary of a digraph");
  s_stats->add_option("digraph", stats.digraph, "Digraph file")->required();
  s_stats->add_option("--format", stats.format)->check(CLI::IsMember(formats));

  cli::EmbedConfig embed;
  auto* s_embed = app.add_subcommand("embed", "Embed a tree into a digraph");
  s_embed->add_option("tree", embed.tree, "Tree file")->required();
  s_embed->add_option("digraph", embed.digraph, "Digraph file")->required();
  s_embed->add_option("--mode", embed.mode)->check(CLI::IsMember({"general", "antidirected", "arborescence"}));
  s_embed->add_option("--budget", embed.options.fallback_budget, "Node budget of the fallback search");
  s_embed->add_option("--seed", embed.options.seed);
  s_embed->add_flag("--oracle", embed.oracle, "Confirm failures with the exhaustive oracle");
  s_embed->add_flag("--assert-constructive", embed.options.assert_constructive,
                    "Treat any fallback search under holding hypotheses as a violation");
  s_embed->add_option("--out", embed.out_path, "Write the JSON report here");
  s_embed->add_option("--certificate", embed.certificate_path, "Write 't_v d_v' lines here");
  s_embed->add_option("--format", embed.format)->check(CLI::IsMember(formats));

  cli::VerifyConfig verify;
  auto* s_verify = app.add_subcommand("verify", "Run the embedder over families where the hypotheses hold");
  s_verify->add_option("--mode", verify.mode)->check(CLI::IsMember({"general", "antidirected", "arborescence"}));
  s_verify->add_option("--k", verify.k)->check(CLI::Range(1, 10));
  s_verify->add_option("--trials", verify.trials, "Random trees to draw, or a cap on enumerated trees");
  s_verify->add_option("--seed", verify.seed);
  s_verify->add_option("--trees", verify.trees)->check(CLI::IsMember({"random", "catalog", "paths"}));
  s_verify->add_option("--host", verify.host)->check(CLI::IsMember({"auto", "girth6", "girth6_oriented"}));
  s_verify->add_option("--q", verify.q)->check(CLI::Range(2, 4));
  s_verify->add_option("--budget", verify.budget);
  s_verify->add_flag("--assert-constructive", verify.assert_constructive);
  s_verify->add_option("--format", verify.format)->check(CLI::IsMember(formats));
  s_verify->add_option("--out", verify.out_path);

  cli::ExploreConfig explore;
  auto* s_explore = app.add_subcommand("explore", "Search small hosts for trees the oracle cannot embed");
  s_explore->add_option("--problem", explore.problem)->check(CLI::IsMember({"forbidden_family", "k2s", "girth"}));
  s_explore->add_option("--family", explore.family)->check(CLI::IsMember({"random", "blowup"}));
  s_explore->add_option("--forbid", explore.forbid, "Comma-separated 4-cycle types the hosts avoid");
  s_explore->add_option("--n", explore.n);
  s_explore->add_option("--m", explore.m);
  s_explore->add_option("--trials", explore.hosts, "Number of random hosts");
  s_explore->add_option("--k", explore.k, "Largest tree size")->check(CLI::Range(1, 8));
  s_explore->add_option("--s", explore.s, "Forbidden K_{2,s}");
  s_explore->add_option("--girth-l", explore.girth_l, "Hosts have underlying girth at least 2l+1");
  s_explore->add_option("--len", explore.len, "Blow-up cycle length");
  s_explore->add_option("--blow", explore.blow, "Blow-up class size");
  s_explore->add_option("--seed", explore.seed);
  s_explore->add_option("--budget", explore.budget, "Oracle node budget per pair");
  s_explore->add_option("--format", explore.format)->check(CLI::IsMember(formats));
  s_explore->add_option("--out", explore.out_path);

  cli::GenerateConfig gen;
  auto* s_gen = app.add_subcommand("generate", "Write a generated instance");
  s_gen->add_option("kind", gen.kind, "two_clique, blowup, girth6, girth6_oriented, tree or digraph")->required();
  s_gen->add_option("--k", gen.k);
  s_gen->add_option("--clique-size", gen.clique_size, "Two-clique host: clique order (default ceil(k/2))");
  s_gen->add_option("--len", gen.len);
  s_gen->add_option("--s", gen.s);
  s_gen->add_option("--q", gen.q);
  s_gen->add_option("--tree-kind", gen.tree_kind);
  s_gen->add_option("--n", gen.n);
  s_gen->add_option("--m", gen.m);
  s_gen->add_option("--constraint", gen.constraint);
  s_gen->add_option("--seed", gen.seed);
  s_gen->add_option("--out", gen.out_path);

  cli::PeelConfig peel;
  auto* s_peel = app.add_subcommand("peel", "Peel a digraph to a pseudo-semidegree threshold");
  s_peel->add_option("digraph", peel.digraph)->required();
  s_peel->add_option("--d", peel.threshold, "Threshold, a multiple of 1/2 such as 2 or 2.5");
  s_peel->add_option("--k", peel.k, "Use threshold k/2");
  s_peel->add_option("--out", peel.out_path, "Peeled digraph file");
  s_peel->add_option("--trace", peel.trace_path, "JSON trace file");
  s_peel->add_option("--format", peel.format)->check(CLI::IsMember(formats));

  cli::CatalogConfig catalog;
  auto* s_catalog = app.add_subcommand("catalog", "List all oriented trees with k arcs");
  s_catalog->add_option("--k", catalog.k)->required();
  s_catalog->add_option("--bound", catalog.bound);
  s_catalog->add_option("--out", catalog.out_dir, "Directory for one file per tree plus index.txt");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
    if (*s_stats) return cli::cmd_stats(stats, out);
    if (*s_embed) return cli::cmd_embed(embed, out);
    if (*s_verify) return cli::cmd_verify(verify, out);
    if (*s_explore) return cli::cmd_explore(explore, out);
    if (*s_gen) return cli::cmd_generate(gen, out);
    if (*s_peel) return cli::cmd_peel(peel, out);
    if (*s_catalog) return cli::cmd_catalog(catalog, out);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace oritree
