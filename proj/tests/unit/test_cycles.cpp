#include <gtest/gtest.h>

#include <array>
#include <vector>

#include "brute_force.hpp"
#include "fixtures.hpp"
#include "oritree/cycles.hpp"
#include "oritree/generators.hpp"
#include "oritree/rng.hpp"

using namespace oritree;

namespace {

std::array<bool, 4> pat(const char* s) {
  std::array<bool, 4> p{};
  for (int i = 0; i < 4; ++i) p[i] = s[i] == 'F';
  return p;
}

Digraph random_small(std::uint64_t seed, std::size_t max_n = 10) {
  Rng rng(seed);
  std::size_t n = rng.between(1, static_cast<std::int64_t>(max_n));
  std::size_t pairs = n * (n - 1);
  std::size_t m = pairs == 0 ? 0 : rng.below(pairs / 2 + 1);
  return gen_random_digraph(n, m, DigraphConstraint::None, seed);
}

}  // namespace

TEST(ClassifyCycle, Examples) {
  EXPECT_EQ(classify_cycle(pat("FFFF")), FourCycleType::Directed);
  EXPECT_EQ(classify_cycle(pat("BBBB")), FourCycleType::Directed);
  EXPECT_EQ(classify_cycle(pat("FBFB")), FourCycleType::Alternating);
  EXPECT_EQ(classify_cycle(pat("BFFF")), FourCycleType::ThreeOne);
  EXPECT_EQ(classify_cycle(pat("FFBB")), FourCycleType::TwoTwoBlock);
  EXPECT_EQ(classify_cycle(pat("BFFB")), FourCycleType::TwoTwoBlock);
}

TEST(ClassifyCycle, MatchesRotationReflectionClasses) {
  for (unsigned mask = 0; mask < 16; ++mask) {
    std::array<bool, 4> p{};
    for (int i = 0; i < 4; ++i) p[i] = (mask >> i) & 1u;
    EXPECT_EQ(static_cast<int>(classify_cycle(p)), brute::pattern_type(p)) << "mask " << mask;
    // Global reversal keeps the class.
    std::array<bool, 4> flipped{};
    for (int i = 0; i < 4; ++i) flipped[i] = !p[i];
    EXPECT_EQ(classify_cycle(flipped), classify_cycle(p));
  }
}

TEST(FindForbiddenCycle, DirectedFourCycle) {
  auto c4 = fixtures::directed_cycle(4);
  EXPECT_FALSE(find_forbidden_cycle(c4, CycleMode::NonDirectedC4).has_value());
  auto w = find_forbidden_cycle(c4, CycleMode::AllC4);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->type, FourCycleType::Directed);
  EXPECT_EQ(format_witness(*w), "Directed 0 1 2 3");
  EXPECT_TRUE(is_c4_star_free(c4));
  EXPECT_FALSE(is_c4_free(c4));
}

TEST(FindForbiddenCycle, WitnessIsConsistent) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Digraph d = random_small(seed);
    for (auto mode : {CycleMode::AllC4, CycleMode::NonDirectedC4}) {
      auto w = find_forbidden_cycle(d, mode);
      if (!w) continue;
      EXPECT_TRUE(forbidden_types(mode).contains(w->type));
      std::array<bool, 4> pattern{};
      for (int i = 0; i < 4; ++i) {
        Vertex x = w->vertices[i], y = w->vertices[(i + 1) % 4];
        const Arc& a = w->arcs[i];
        EXPECT_TRUE(d.has_arc(a.tail, a.head));
        EXPECT_TRUE((a == Arc{x, y}) || (a == Arc{y, x}));
        pattern[i] = a == Arc{x, y};
        for (int j = i + 1; j < 4; ++j) EXPECT_NE(w->vertices[i], w->vertices[j]);
      }
      EXPECT_EQ(classify_cycle(pattern), w->type);
      EXPECT_LT(w->vertices[0], w->vertices[1]);
      EXPECT_LT(w->vertices[1], w->vertices[3]);
    }
  }
}

TEST(FindForbiddenCycle, AgreesWithFourSubsetEnumeration) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Digraph d = random_small(seed, 12);
    auto present = brute::types_present(d);
    bool any = present[0] || present[1] || present[2] || present[3];
    bool non_directed = present[1] || present[2] || present[3];
    EXPECT_EQ(is_c4_free(d), !any) << "seed " << seed;
    EXPECT_EQ(is_c4_star_free(d), !non_directed) << "seed " << seed;
    auto lib = four_cycle_types_present(d);
    for (auto t : kAllFourCycleTypes) EXPECT_EQ(lib.contains(t), present[static_cast<int>(t)]) << "seed " << seed;
    if (is_c4_free(d)) {
      EXPECT_TRUE(is_c4_star_free(d));
    }
  }
}

TEST(FindForbiddenCycle, UnderlyingFourCycleCharacterization) {
  // Digraph is C4-free iff the underlying simple graph has no 4-cycle.
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Digraph d = random_small(seed, 12);
    std::vector<Arc> both;
    for (const Arc& a : d.arcs()) {
      both.push_back(a);
      if (!d.has_arc(a.head, a.tail)) both.push_back({a.head, a.tail});
    }
    Digraph sym = build_digraph(d.order(), both);
    bool underlying_c4 = brute::types_present(sym)[0];
    EXPECT_EQ(is_c4_free(d), !underlying_c4);
  }
}

TEST(FindForbiddenCycle, ReverseInvarianceAndMonotonicity) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Digraph d = random_small(seed, 12);
    EXPECT_EQ(is_c4_free(d), is_c4_free(reverse(d)));
    EXPECT_EQ(is_c4_star_free(d), is_c4_star_free(reverse(d)));
    if (d.size() == 0 || !is_c4_free(d)) continue;
    std::vector<Arc> fewer(d.arcs().begin() + 1, d.arcs().end());
    EXPECT_TRUE(is_c4_free(build_digraph(d.order(), fewer)));
  }
}

TEST(FindForbiddenCycle, LexicographicallyLeastWitness) {
  // Two disjoint directed 4-cycles; the one on the smaller ids is reported.
  auto d = build_digraph(8, {{4, 5}, {5, 6}, {6, 7}, {7, 4}, {0, 1}, {1, 2}, {2, 3}, {3, 0}});
  auto w = find_forbidden_cycle(d, CycleMode::AllC4);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->vertices, (std::array<Vertex, 4>{0, 1, 2, 3}));
}

TEST(FindForbiddenCycle, DigonTupleReportsFirstTypeInCanonicalOrder) {
  // A 4-cycle of digons realizes all four types; Directed comes first.
  auto d = build_digraph(4, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {2, 3}, {3, 2}, {3, 0}, {0, 3}});
  EXPECT_EQ(find_forbidden_cycle(d, CycleMode::AllC4)->type, FourCycleType::Directed);
  EXPECT_EQ(find_forbidden_cycle(d, CycleMode::NonDirectedC4)->type, FourCycleType::ThreeOne);
  auto counts = four_cycle_type_counts(d);
  EXPECT_EQ(counts[0], 2u);   // FFFF, BBBB
  EXPECT_EQ(counts[1], 8u);
  EXPECT_EQ(counts[2], 4u);
  EXPECT_EQ(counts[3], 2u);
}

TEST(Hosts, BlowupHasOnlyBlockAndAlternating) {
  for (int s = 2; s <= 3; ++s) {
    auto d = gen_blowup_cycle(3, s);
    auto w = find_forbidden_cycle(d, CycleMode::AllC4);
    ASSERT_TRUE(w.has_value());
    EXPECT_TRUE(w->type == FourCycleType::TwoTwoBlock || w->type == FourCycleType::Alternating);
    auto present = brute::types_present(d);
    EXPECT_FALSE(present[0]);
    EXPECT_FALSE(present[1]);
    EXPECT_TRUE(present[2]);
    EXPECT_TRUE(present[3]);
    EXPECT_EQ(four_cycle_types_present(d),
              (CycleTypeSet{FourCycleType::TwoTwoBlock, FourCycleType::Alternating}));
  }
}

TEST(Hosts, TwoCliqueHasEveryType) {
  for (int k : {8, 10}) {
    auto d = gen_two_clique_host(k);
    EXPECT_FALSE(is_c4_free(d));
    EXPECT_FALSE(is_c4_star_free(d));
    EXPECT_EQ(four_cycle_types_present(d), CycleTypeSet::all());
  }
  auto small = gen_two_clique_host_small(10);
  EXPECT_FALSE(is_c4_free(small));
  EXPECT_FALSE(is_c4_star_free(small));
}

TEST(Hosts, GirthSixHostsAreFree) {
  for (int q = 2; q <= 4; ++q) {
    EXPECT_TRUE(is_c4_free(gen_girth6_digon_host(q)));
    EXPECT_TRUE(is_c4_star_free(gen_girth6_digon_host(q)));
    EXPECT_TRUE(is_c4_free(gen_girth6_oriented_host(q)));
  }
}

TEST(Hosts, AtMostThreeVertices) {
  EXPECT_TRUE(is_c4_free(fixtures::complete_digraph(3)));
  EXPECT_TRUE(is_c4_star_free(fixtures::complete_digraph(3)));
  EXPECT_TRUE(is_c4_free(build_digraph(0, {})));
}

TEST(CycleTypeNames, RoundTrip) {
  for (auto t : kAllFourCycleTypes) EXPECT_EQ(four_cycle_type_from_string(to_string(t)), t);
  EXPECT_FALSE(four_cycle_type_from_string("Square").has_value());
}
