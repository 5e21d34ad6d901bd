// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "brute_force.hpp"
#include "fixtures.hpp"
#include "oritree/oritree.hpp"

using namespace oritree;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  Json log = Json::array();
};

struct Criterion {
  std::string id;
  std::string title;
  double limit_seconds;
  std::function<Outcome()> run;
};

Json report_line(const EmbedReport& r) {
  Json j = to_json(r);
  j.erase("moves");
  j["move_count"] = r.moves.size();
  return j;
}

bool check(Outcome& o, bool cond, const std::string& what) {
  if (!cond && o.pass) o.detail = what;
  o.pass = o.pass && cond;
  return cond;
}

// ---------------------------------------------------------------------------

Outcome a1_oracle_agreement() {
  Outcome o;
  std::vector<OrientedTree> trees;
  for (std::size_t k = 1; k <= 6; ++k) {
    auto cat = enumerate_oriented_trees(k);
    trees.insert(trees.end(), cat.trees.begin(), cat.trees.end());
  }
  const DigraphConstraint constraints[] = {DigraphConstraint::None, DigraphConstraint::C4Free,
                                           DigraphConstraint::C4StarFree};
  const std::size_t pairs = 600;
  std::size_t decided = 0, agree = 0, yes = 0, invalid = 0;
  Rng rng(20240601);
  EmbedOptions opt;
  opt.confirm_with_oracle = true;
  for (std::size_t i = 0; i < pairs; ++i) {
    const OrientedTree& t = trees[i < trees.size() ? i : rng.below(trees.size())];
    const std::size_t n = std::max<std::size_t>(t.order(), 4 + rng.below(11));
    const DigraphConstraint c = constraints[i % 3];
    std::size_t m = c == DigraphConstraint::None         ? n + rng.below(2 * n + 1)
                    : c == DigraphConstraint::C4Free     ? n - 1 + rng.below(n / 2 + 1)
                                                         : n + rng.below(n + 1);
    m = std::min(m, n * (n - 1));
    Digraph d;
    for (std::uint64_t attempt = 0;; ++attempt) {
      try {
        d = gen_random_digraph(n, m, c, 1000 * i + attempt);
        break;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::InfeasibleAfterRetries || m == 0) throw;
        --m;
      }
    }
    opt.seed = i;
    auto r = embed_tree(t, d, EmbedMode::GeneralOriented, opt);
    auto oracle = oracle_embed(t, d);
    if (!r.embedding.empty() && !validate_embedding(t, d, r.embedding)) ++invalid;
    if (oracle.decision == OracleDecision::Unknown) continue;
    ++decided;
    const bool oracle_yes = oracle.decision == OracleDecision::Yes;
    yes += oracle_yes;
    const bool match = oracle_yes ? r.status == EmbedStatus::Embedded : r.status == EmbedStatus::NotEmbeddable;
    agree += match;
    if (!match)
      o.log.push_back({{"pair", i}, {"tree", canonical_form(t)}, {"host", format_digraph(d)},
                       {"status", to_string(r.status)}});
  }
  o.log.push_back({{"pairs", pairs}, {"decided", decided}, {"agree", agree}, {"yes", yes}});
  check(o, decided >= 500, "fewer than 500 oracle-decided pairs");
  check(o, agree == decided, "engine and oracle disagree");
  check(o, invalid == 0, "invalid certificate");
  o.detail = o.detail.empty() ? "" : o.detail + "; ";
  o.detail += std::to_string(agree) + "/" + std::to_string(decided) + " decided pairs agree (" +
              std::to_string(yes) + " yes), " + std::to_string(invalid) + " invalid certificates";
  return o;
}

Outcome a2_paths_into_heawood() {
  Outcome o;
  const Digraph host = gen_girth6_digon_host(2);
  EmbedOptions opt;
  opt.assert_constructive = true;
  std::size_t paths = 0, embedded = 0, violations = 0, backtracks = 0;
  for (const auto& t : enumerate_oriented_trees(6).trees) {
    if (t.max_total_degree() > 2) continue;
    ++paths;
    auto r = embed_tree(t, host, EmbedMode::GeneralOriented, opt);
    embedded += r.status == EmbedStatus::Embedded;
    violations += r.status == EmbedStatus::HypothesisViolation;
    backtracks += r.count(MoveKind::Backtrack);
    o.log.push_back(report_line(r));
  }
  check(o, paths == 36, "expected 36 six-arc paths");
  check(o, embedded == paths, "not every path embedded");
  check(o, violations == 0 && backtracks == 0, "constructive path failed");
  o.detail = std::to_string(embedded) + "/" + std::to_string(paths) + " embedded, " + std::to_string(violations) +
             " violations, " + std::to_string(backtracks) + " backtracks" + (o.pass ? "" : "; " + o.detail);
  return o;
}

Outcome a3_ten_arc_trees() {
  Outcome o;
  const Digraph host = gen_girth6_digon_host(4);
  std::size_t trees = 0, embedded = 0, hyp = 0, constructive = 0;
  for (std::uint64_t seed = 0; trees < 200; ++seed) {
    auto t = gen_random_tree(10, TreeKind::Any, seed);
    if (t.max_total_degree() > 4) continue;
    ++trees;
    EmbedOptions opt;
    opt.seed = seed;
    auto r = embed_tree(t, host, EmbedMode::GeneralOriented, opt);
    hyp += r.hypotheses.all_hold();
    if (r.status == EmbedStatus::Embedded && validate_embedding(t, host, r.embedding)) ++embedded;
    constructive += r.count(MoveKind::Backtrack) == 0;
    o.log.push_back(report_line(r));
  }
  check(o, embedded == trees, "not every tree embedded with a valid certificate");
  o.detail = std::to_string(embedded) + "/" + std::to_string(trees) + " embedded and validated (" +
             std::to_string(hyp) + " with hypotheses, " + std::to_string(constructive) + " constructive)";
  return o;
}

Outcome a4_tightness() {
  Outcome o;
  std::ostringstream s;
  for (int k : {6, 8, 10}) {
    auto t = gen_random_tree(static_cast<std::size_t>(k), TreeKind::Spider, static_cast<std::uint64_t>(k));
    auto host = gen_two_clique_host(k);
    auto p = degree_profile(host);
    auto legs = t.total_degree(0);
    auto oracle = oracle_embed(t, host);
    check(o, legs == 3, "spider is not three-legged");
    check(o, 2 * p.delta_zero >= static_cast<std::size_t>(k), "semidegree below k/2");
    check(o, p.Delta_pm >= static_cast<std::size_t>(k), "Delta_pm below k");
    check(o, oracle.decision == OracleDecision::No, "oracle did not rule out the spider");
    s << "k=" << k << ":" << to_string(oracle.decision) << " ";
    o.log.push_back({{"k", k}, {"tree", canonical_form(t)}, {"delta0", p.delta_zero}, {"Delta_pm", p.Delta_pm},
                     {"oracle", to_string(oracle.decision)}, {"nodes", oracle.nodes_expanded}});
  }
  o.detail = s.str() + (o.pass ? "" : "; " + o.detail);
  return o;
}

Outcome a5_blowups() {
  Outcome o;
  std::ostringstream s;
  const CycleTypeSet expected{FourCycleType::TwoTwoBlock, FourCycleType::Alternating};
  for (int b : {2, 3}) {
    auto host = gen_blowup_cycle(3, b);
    // 2b arcs on 2b+1 vertices: the larger class cannot fit inside one part.
    auto t = gen_random_tree(static_cast<std::size_t>(2 * b), TreeKind::Antidirected, 5);
    auto oracle = oracle_embed(t, host);
    auto types = four_cycle_types_present(host);
    check(o, is_antidirected(t), "tree is not antidirected");
    check(o, oracle.decision == OracleDecision::No, "oracle did not rule out the tree");
    check(o, types == expected, "unexpected 4-cycle types");
    s << "s=" << b << ":" << to_string(oracle.decision) << " types=" << static_cast<int>(types.bits()) << " ";
    o.log.push_back({{"blow", b}, {"tree", canonical_form(t)}, {"oracle", to_string(oracle.decision)},
                     {"types", types.bits()}});
  }
  o.detail = s.str() + (o.pass ? "" : "; " + o.detail);
  return o;
}

Outcome a6_density() {
  Outcome o;
  try {
    auto host = gen_girth6_digon_host(3);
    auto r = corollary6_pipeline(host, fixtures::alternating_path(4));
    check(o, r.peel.trace.empty() && r.peel.peeled == host, "peel changed the girth-6 host");
    check(o, r.report.status == EmbedStatus::Embedded, "pipeline did not embed");
    o.log.push_back(report_line(r.report));
  } catch (const ConditionFailure& e) {
    check(o, false, std::string("ConditionFailed: ") + e.what());
  }
  std::size_t good = 0;
  const std::size_t n = 50;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto d = gen_random_digraph(n, 3 * n + 1 + seed % n, DigraphConstraint::None, seed);
    auto p = peel_to_pseudo_semidegree(d, HalfInt::whole(2));
    auto prof = degree_profile(p.peeled);
    good += p.peeled.size() > 0 && prof.pseudo_delta_zero >= 2;
    o.log.push_back({{"seed", seed}, {"arcs", d.size()}, {"kept", p.peeled.size()}});
  }
  check(o, good == 100, "a peeled digraph was empty or too sparse");
  o.detail = "girth-6 pipeline " + std::string(o.pass || good < 100 ? "ok" : "failed") + ", " +
             std::to_string(good) + "/100 dense digraphs keep pseudo-semidegree 2" +
             (o.pass ? "" : "; " + o.detail);
  return o;
}

Outcome a7_cycle_detection() {
  Outcome o;
  std::size_t agree = 0, implication = 0;
  const std::size_t trials = 200;
  for (std::uint64_t seed = 0; seed < trials; ++seed) {
    const std::size_t n = 4 + seed % 7;
    const std::size_t m = std::min(n * (n - 1), n / 2 + seed * 7 % (2 * n + 1));
    auto d = gen_random_digraph(n, m, DigraphConstraint::None, seed);
    auto present = brute::types_present(d);
    const bool any = present[0] || present[1] || present[2] || present[3];
    const bool non_directed = present[1] || present[2] || present[3];
    const bool c4 = is_c4_free(d), c4s = is_c4_star_free(d);
    const bool ok = c4 == !any && c4s == !non_directed && (find_forbidden_cycle(d, CycleMode::AllC4) ? any : true);
    agree += ok;
    implication += !c4 || c4s;
    if (!ok) o.log.push_back({{"seed", seed}, {"digraph", format_digraph(d)}});
  }
  check(o, agree == trials, "detector disagrees with 4-subset enumeration");
  check(o, implication == trials, "C4-free digraph with a non-directed 4-cycle");
  o.detail = std::to_string(agree) + "/" + std::to_string(trials) + " agree in both modes";
  return o;
}

Outcome a8_arborescences() {
  Outcome o;
  struct HostCase {
    Digraph host;
    std::size_t k_lo, k_hi;
  };
  const HostCase cases[] = {{gen_girth6_digon_host(4), 2, 8}, {gen_girth6_oriented_host(4), 4, 6}};
  std::size_t trees = 0, embedded = 0, violations = 0, skipped = 0;
  for (std::size_t c = 0; c < 2; ++c) {
    std::size_t made = 0;
    for (std::uint64_t seed = 0; made < 50; ++seed) {
      const std::size_t k = cases[c].k_lo + seed % (cases[c].k_hi - cases[c].k_lo + 1);
      auto t = gen_random_tree(k, TreeKind::OutArborescence, 1000 * c + seed);
      if (!check_hypotheses(t, cases[c].host, EmbedMode::Arborescence).all_hold()) {
        ++skipped;
        continue;
      }
      ++made;
      ++trees;
      EmbedOptions opt;
      opt.assert_constructive = true;
      auto r = embed_tree(t, cases[c].host, EmbedMode::Arborescence, opt);
      embedded += r.status == EmbedStatus::Embedded;
      violations += r.status == EmbedStatus::HypothesisViolation;
      o.log.push_back(report_line(r));
    }
  }
  check(o, embedded == trees && violations == 0, "an arborescence failed to embed constructively");
  o.detail = std::to_string(embedded) + "/" + std::to_string(trees) + " embedded, " + std::to_string(violations) +
             " violations (" + std::to_string(skipped) + " samples outside the hypotheses skipped)";
  return o;
}

Outcome a9_reverse_symmetry() {
  Outcome o;
  std::size_t equal = 0;
  EmbedOptions opt;
  opt.confirm_with_oracle = true;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto t = gen_random_tree(1 + seed % 7, TreeKind::Any, seed);
    const std::size_t n = std::max<std::size_t>(t.order(), 5 + seed % 6);
    auto d = gen_random_digraph(n, std::min(n * (n - 1), 2 * n + seed % n), DigraphConstraint::None, seed);
    auto a = embed_tree(t, d, EmbedMode::GeneralOriented, opt);
    auto b = embed_tree(reverse(t), reverse(d), EmbedMode::GeneralOriented, opt);
    equal += a.status == b.status;
    o.log.push_back({{"seed", seed}, {"status", to_string(a.status)}, {"reversed", to_string(b.status)}});
  }
  check(o, equal == 200, "status changed under reversal");
  o.detail = std::to_string(equal) + "/200 pairs keep their status under reversal";
  return o;
}

}  // namespace

int main() {
  using Clock = std::chrono::steady_clock;
  std::vector<Criterion> criteria{
      {"A1", "engine agrees with the exact oracle", 300, a1_oracle_agreement},
      {"A2", "six-arc paths into the Heawood digraph", 30, a2_paths_into_heawood},
      {"A3", "ten-arc trees into the q=4 girth-6 host", 120, a3_ten_arc_trees},
      {"A4", "three-legged spiders miss two-clique hosts", 120, a4_tightness},
      {"A5", "unbalanced antidirected trees miss blow-ups", 60, a5_blowups},
      {"A6", "density pipeline and peeling", 60, a6_density},
      {"A7", "4-cycle detection matches enumeration", 60, a7_cycle_detection},
      {"A8", "out-arborescences embed constructively", 60, a8_arborescences},
  };

  bool all = true;
  std::vector<std::string> first_logs;
  for (auto& c : criteria) {
    auto start = Clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(Clock::now() - start).count();
    bool in_time = secs <= c.limit_seconds;
    bool pass = out.pass && in_time;
    all = all && pass;
    first_logs.push_back(out.log.dump());
    std::printf("[%s] %s %s: %s (%.2fs, limit %.0fs)\n", pass ? "PASS" : "FAIL", c.id.c_str(), c.title.c_str(),
                out.detail.c_str(), secs, c.limit_seconds);
    std::fflush(stdout);
  }

  // A9: identical JSON on a rerun, and status symmetry under reversal.
  auto start = Clock::now();
  Outcome sym;
  std::size_t identical = 0;
  try {
    for (std::size_t i = 0; i < criteria.size(); ++i) {
      Outcome again = criteria[i].run();
      identical += again.log.dump() == first_logs[i];
    }
    sym = a9_reverse_symmetry();
  } catch (const std::exception& e) {
    sym.pass = false;
    sym.detail = std::string("exception: ") + e.what();
  }
  const bool a9 = sym.pass && identical == criteria.size();
  all = all && a9;
  std::printf("[%s] A9 deterministic output and reversal symmetry: %zu/%zu reruns byte-identical, %s (%.2fs)\n",
              a9 ? "PASS" : "FAIL", identical, criteria.size(), sym.detail.c_str(),
              std::chrono::duration<double>(Clock::now() - start).count());
  return all ? 0 : 1;
}
