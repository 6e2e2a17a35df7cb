#include <gtest/gtest.h>

#include <set>

#include "pchc/constructions.hpp"
#include "pchc/exact.hpp"

using namespace pchc;

TEST(BollobasErdos, TwoRegularClassesOfDegree2k) {
  for (std::size_t k = 1; k <= 4; ++k) {
    const auto g = bollobas_erdos(k);
    ASSERT_EQ(g.order(), 4 * k + 1);
    EXPECT_EQ(g.colour_count(), 2u);
    for (Vertex v = 0; v < g.order(); ++v) {
      std::size_t zeros = 0;
      for (Vertex u = 0; u < g.order(); ++u) zeros += u != v && g(u, v) == 0;
      EXPECT_EQ(zeros, 2 * k);
    }
    EXPECT_EQ(delta_mon(g), 2 * k);
  }
  EXPECT_THROW(bollobas_erdos(0), std::domain_error);
}

TEST(Oriented, ArcRules) {
  OrientedGraph og(4);
  og.add_arc(0, 1);
  EXPECT_THROW(og.add_arc(0, 1), std::invalid_argument);
  EXPECT_THROW(og.add_arc(1, 0), std::invalid_argument);
  EXPECT_THROW(og.add_arc(2, 2), std::invalid_argument);
  EXPECT_THROW(og.add_arc(2, 4), std::invalid_argument);
  EXPECT_TRUE(og.has_arc(0, 1));
  EXPECT_FALSE(og.has_arc(1, 0));
}

TEST(Oriented, ColourIsHeadAndMonoDegreeIsInDegree) {
  OrientedGraph og(5);
  og.add_arc(0, 1);
  og.add_arc(2, 1);
  og.add_arc(3, 1);
  og.add_arc(1, 4);
  const auto p = from_oriented(og);
  EXPECT_EQ(p.colour(0, 1), 1u);
  EXPECT_EQ(p.colour(1, 4), 4u);
  EXPECT_FALSE(p.has_edge(0, 2));
  // colour 1 appears three times at vertex 1
  EXPECT_EQ(delta_mon(p), og.max_in_degree());
  EXPECT_EQ(delta_mon(p), 3u);
}

TEST(Oriented, CompletionPolicies) {
  OrientedGraph og(4);
  og.add_arc(0, 1);
  og.add_arc(1, 2);
  const auto fresh = complete_with(from_oriented(og), CompletionPolicy::FreshRainbow);
  const auto single = complete_with(from_oriented(og), CompletionPolicy::SingleExtra);
  EXPECT_EQ(fresh(0, 1), 1u);
  EXPECT_EQ(single(1, 2), 2u);
  std::set<Colour> fresh_extra, single_extra;
  for (auto [u, v] : std::vector<std::pair<Vertex, Vertex>>{{0, 2}, {0, 3}, {1, 3}, {2, 3}}) {
    fresh_extra.insert(fresh(u, v));
    single_extra.insert(single(u, v));
    EXPECT_GE(fresh(u, v), 4u);
  }
  EXPECT_EQ(fresh_extra.size(), 4u);
  EXPECT_EQ(single_extra.size(), 1u);
}

TEST(Tournament, T2mShape) {
  for (std::size_t m = 2; m <= 6; ++m) {
    const auto t = tournament_t2m(m);
    EXPECT_EQ(t.order(), 2 * m);
    EXPECT_TRUE(t.is_tournament());
    EXPECT_EQ(t.in_degree(static_cast<Vertex>(2 * m - 1)), 0u);
    EXPECT_EQ(t.max_in_degree(), m);
    // colouring has delta_mon equal to the largest in-degree
    EXPECT_EQ(delta_mon(from_oriented(t)), m);
  }
  EXPECT_THROW(tournament_t2m(1), std::domain_error);
}

TEST(Tournament, DirectedCyclesMatchOracleCounts) {
  // directed cycle counts 1 and 12 from tests/oracle/derive.py
  EXPECT_EQ(enumerate_pc_cycles(from_oriented(tournament_t2m(2))).size(), 1u);
  EXPECT_EQ(enumerate_pc_cycles(from_oriented(tournament_t2m(3))).size(), 12u);
}

TEST(Layered, DegreesMatchDefinition) {
  for (std::size_t n = 2; n <= 14; ++n) {
    for (std::size_t l = 1; 2 * l <= n; ++l) {
      const auto g = layered_xy(n, l);
      EXPECT_EQ(delta_mon(g), n - l) << n << "," << l;
      EXPECT_EQ(min_colour_degree(g), l) << n << "," << l;
    }
  }
  const auto g = layered_xy(10, 3);
  EXPECT_EQ(delta_mon(g), 7u);
  EXPECT_EQ(min_colour_degree(g), 3u);
  EXPECT_EQ(g(0, 5), 1u);
  EXPECT_EQ(g(2, 9), 3u);
  EXPECT_EQ(g(4, 8), 1u);
  EXPECT_THROW(layered_xy(10, 0), std::domain_error);
  EXPECT_THROW(layered_xy(10, 6), std::domain_error);
}

TEST(RandomBoundedMono, RespectsCapAndIsDeterministic) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto g = random_bounded_mono(50, 20, seed);
    EXPECT_LE(delta_mon(g), 20u);
  }
  EXPECT_EQ(random_bounded_mono(30, 9, 42), random_bounded_mono(30, 9, 42));
  EXPECT_NE(random_bounded_mono(30, 9, 42), random_bounded_mono(30, 9, 43));
  EXPECT_LE(delta_mon(random_bounded_mono(10, 4, 5)), 4u);
  EXPECT_NO_THROW(random_bounded_mono(10, 9, 5, std::size_t{1}));
}

TEST(RandomBoundedMono, Errors) {
  EXPECT_THROW(random_bounded_mono(2, 1, 1), std::domain_error);
  EXPECT_THROW(random_bounded_mono(10, 0, 1), std::domain_error);
  EXPECT_THROW(random_bounded_mono(10, 2, 1, std::size_t{3}), GenerationError);
}
