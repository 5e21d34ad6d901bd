#include <gtest/gtest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "oritree/density.hpp"
#include "oritree/generators.hpp"

using namespace oritree;

namespace {

void expect_fixed_point(const Digraph& g, HalfInt d) {
  for (std::size_t v = 0; v < g.order(); ++v)
    for (Side s : {Side::Out, Side::In}) {
      std::size_t deg = s == Side::Out ? g.out_degree(static_cast<Vertex>(v)) : g.in_degree(static_cast<Vertex>(v));
      EXPECT_TRUE(deg == 0 || !d.exceeds(deg)) << "vertex " << v;
    }
}

Digraph random_digraph(std::uint64_t seed, std::size_t n = 14) {
  return gen_random_digraph(n, n + seed % (2 * n), DigraphConstraint::None, seed);
}

std::vector<std::string> failures(const Digraph& d, const OrientedTree& t) {
  try {
    corollary6_pipeline(d, t);
  } catch (const ConditionFailure& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConditionFailed);
    return e.which();
  }
  return {};
}

}  // namespace

TEST(HalfInt, Arithmetic) {
  auto h = HalfInt::half_of(5);
  EXPECT_EQ(h.str(), "2.5");
  EXPECT_EQ(h.ceil(), 3u);
  EXPECT_TRUE(h.exceeds(2));
  EXPECT_FALSE(h.exceeds(3));
  EXPECT_EQ(HalfInt::whole(2), HalfInt::half_of(4));
  EXPECT_EQ(HalfInt::whole(2).str(), "2");
  EXPECT_FALSE(HalfInt::whole(2).exceeds(2));
}

TEST(Peel, DirectedFourCycleIsFixed) {
  auto c4 = fixtures::directed_cycle(4);
  auto r = peel_to_pseudo_semidegree(c4, HalfInt::whole(1));
  EXPECT_EQ(r.peeled, c4);
  EXPECT_TRUE(r.trace.empty());
}

TEST(Peel, PathCollapses) {
  auto path = fixtures::directed_path(3).as_digraph();
  auto r = peel_to_pseudo_semidegree(path, HalfInt::whole(2));
  EXPECT_EQ(r.peeled.size(), 0u);
  EXPECT_EQ(r.peeled.order(), 4u);
  EXPECT_EQ(r.arcs_removed(), 3u);
  // Canonical order: vertex 0's out-side goes first.
  ASSERT_FALSE(r.trace.empty());
  EXPECT_EQ(r.trace[0], (PeelEvent{0, Side::Out, 1}));
}

TEST(Peel, HalfThresholdKeepsDegreeThree) {
  auto host = gen_girth6_digon_host(2);  // all side-degrees 3
  EXPECT_EQ(peel_to_pseudo_semidegree(host, HalfInt::half_of(5)).peeled, host);
  EXPECT_EQ(peel_to_pseudo_semidegree(host, HalfInt::half_of(6)).peeled, host);
  EXPECT_EQ(peel_to_pseudo_semidegree(host, HalfInt::half_of(7)).peeled.size(), 0u);
}

TEST(Peel, FixedPointAndTraceInvariants) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    Digraph d = random_digraph(seed);
    HalfInt thr = HalfInt::twice(1 + seed % 6);
    auto r = peel_to_pseudo_semidegree(d, thr);
    expect_fixed_point(r.peeled, thr);
    EXPECT_TRUE(is_spanning_subdigraph(r.peeled, d));
    EXPECT_EQ(r.arcs_removed() + r.peeled.size(), d.size());
    EXPECT_LE(r.trace.size(), 2 * d.order());
    std::set<std::pair<Vertex, Side>> seen;
    for (const auto& e : r.trace) {
      EXPECT_GT(e.arcs_removed, 0u);
      EXPECT_TRUE(thr.exceeds(e.arcs_removed));
      EXPECT_TRUE(seen.insert({e.vertex, e.side}).second) << "side emptied twice";
    }
    EXPECT_EQ(peel_to_pseudo_semidegree(r.peeled, thr).peeled, r.peeled);
  }
}

TEST(Peel, OrderDoesNotMatter) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Digraph d = random_digraph(seed, 16);
    HalfInt thr = HalfInt::twice(2 + seed % 4);
    auto canonical = peel_to_pseudo_semidegree(d, thr).peeled;
    for (std::uint64_t s = 0; s < 20; ++s)
      EXPECT_EQ(peel_to_pseudo_semidegree_random(d, thr, s).peeled, canonical) << "seed " << seed << "/" << s;
  }
}

TEST(Peel, MonotoneUnderArcDeletion) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Digraph d = random_digraph(seed);
    if (d.size() == 0) continue;
    std::vector<Arc> fewer(d.arcs().begin() + 1, d.arcs().end());
    Digraph smaller = build_digraph(d.order(), fewer);
    HalfInt thr = HalfInt::whole(2);
    EXPECT_TRUE(is_spanning_subdigraph(peel_to_pseudo_semidegree(smaller, thr).peeled,
                                       peel_to_pseudo_semidegree(d, thr).peeled));
  }
}

TEST(Peel, DenseDigraphsKeepArcs) {
  // More than (k-1)n arcs survive peeling at k/2.
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 30, k = 4;
    auto d = gen_random_digraph(n, (k - 1) * n + 1 + seed, DigraphConstraint::None, seed);
    auto r = peel_to_pseudo_semidegree(d, HalfInt::half_of(k));
    EXPECT_GT(r.peeled.size(), 0u);
    EXPECT_GE(degree_profile(r.peeled).pseudo_delta_zero, k / 2);
  }
}

TEST(Pipeline, GirthSixHostIsAlreadyFixed) {
  auto d = gen_girth6_digon_host(3);
  auto t = fixtures::alternating_path(4);
  auto r = corollary6_pipeline(d, t);
  EXPECT_TRUE(r.peel.trace.empty());
  EXPECT_EQ(r.peel.peeled, d);
  EXPECT_EQ(r.report.status, EmbedStatus::Embedded);
  EXPECT_TRUE(validate_embedding(t, d, r.report.embedding));
}

TEST(Pipeline, ReportsEveryFailedCondition) {
  auto sparse = fixtures::directed_cycle(6);
  auto w = failures(sparse, fixtures::directed_path(4));
  EXPECT_NE(std::find(w.begin(), w.end(), "antidirected"), w.end());
  EXPECT_NE(std::find(w.begin(), w.end(), "arc_density"), w.end());
  EXPECT_EQ(std::find(w.begin(), w.end(), "c4_star_free"), w.end());

  auto star = failures(gen_girth6_digon_host(3), fixtures::out_star(4));
  EXPECT_EQ(star, (std::vector<std::string>{"max_total_degree"}));
}

TEST(Pipeline, WitnessForNonDirectedFourCycle) {
  auto d = gen_two_clique_host(10);
  try {
    corollary6_pipeline(d, fixtures::alternating_path(4));
    FAIL() << "accepted a host with a non-directed 4-cycle";
  } catch (const ConditionFailure& e) {
    EXPECT_EQ(e.which(), (std::vector<std::string>{"c4_star_free"}));
    ASSERT_TRUE(e.witness().has_value());
    EXPECT_NE(e.witness()->type, FourCycleType::Directed);
  }
}
