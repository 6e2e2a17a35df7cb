#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "pchc/absorbing.hpp"
#include "pchc/constructions.hpp"
#include "pchc/harness.hpp"
#include "test_util.hpp"

using namespace pchc;

namespace {

std::uint64_t brute_count(const ColouredComplete& g, const Quad& q) {
  std::uint64_t c = 0;
  const Vertex n = static_cast<Vertex>(g.order());
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = 0; b < n; ++b)
      for (Vertex d = 0; d < n; ++d)
        for (Vertex e = 0; e < n; ++e) c += is_absorbing(g, q, Path4{a, b, d, e});
  return c;
}

Quad random_quad(std::size_t n, std::mt19937_64& rng) {
  std::vector<Vertex> v(n);
  std::iota(v.begin(), v.end(), 0);
  std::shuffle(v.begin(), v.end(), rng);
  return {v[0], v[1], v[2], v[3]};
}

}  // namespace

TEST(IsAbsorbing, RainbowAndMonochromatic) {
  const auto rb = ColouredComplete::rainbow(9);
  const auto mono = ColouredComplete::monochromatic(9);
  EXPECT_TRUE(is_absorbing(rb, {0, 1, 2, 3}, {4, 5, 6, 7}));
  EXPECT_TRUE(is_absorbing(rb, {8, 3, 1, 0}, {2, 7, 5, 4}));
  EXPECT_FALSE(is_absorbing(mono, {0, 1, 2, 3}, {4, 5, 6, 7}));
  EXPECT_FALSE(is_absorbing(rb, {0, 1, 2, 3}, {4, 5, 6, 3}));
  EXPECT_FALSE(is_absorbing(rb, {0, 1, 2, 3}, {4, 5, 6, 4}));
  EXPECT_FALSE(is_absorbing(rb, {0, 1, 2, 3}, {4, 5, 6, 40}));
}

TEST(IsAbsorbing, EndEdgeConditions) {
  // Rainbow except c(z2 x1) = c(x1 x2) with quad (0,1;2,3) and path (4,5,6,7).
  const auto side = test::from_rule(9, 100, [](Vertex u, Vertex v) {
    if ((u == 0 && v == 5) || (u == 0 && v == 1)) return Colour{0};
    return static_cast<Colour>(1 + u * 9 + v);
  });
  EXPECT_FALSE(is_absorbing(side, {0, 1, 2, 3}, {4, 5, 6, 7}));
  EXPECT_TRUE(is_absorbing(side, {0, 1, 2, 3}, {4, 8, 6, 7}));
  // c(y2 z3) = c(z3 z4).
  const auto tail = test::from_rule(9, 100, [](Vertex u, Vertex v) {
    if ((u == 3 && v == 6) || (u == 6 && v == 7)) return Colour{0};
    return static_cast<Colour>(1 + u * 9 + v);
  });
  EXPECT_FALSE(is_absorbing(tail, {0, 1, 2, 3}, {4, 5, 6, 7}));
  EXPECT_TRUE(is_absorbing(tail, {0, 1, 2, 3}, {4, 5, 8, 7}));
}

TEST(CountAbsorbing, TrivialColourings) {
  EXPECT_EQ(count_absorbing(ColouredComplete::rainbow(9), {0, 1, 2, 3}), 120u);
  EXPECT_EQ(count_absorbing(ColouredComplete::rainbow(9), {7, 2, 8, 4}), 120u);
  EXPECT_EQ(count_absorbing(ColouredComplete::monochromatic(9), {0, 1, 2, 3}), 0u);
  EXPECT_THROW(count_absorbing(ColouredComplete::rainbow(8), {0, 1, 2, 3}), std::domain_error);
  EXPECT_THROW(count_absorbing(ColouredComplete::rainbow(9), {0, 1, 2, 2}), std::domain_error);
}

TEST(CountAbsorbing, FrozenOracleValues) {
  EXPECT_EQ(count_absorbing(test::modular(9, 3), {0, 1, 2, 3}), 20u);
  EXPECT_EQ(count_absorbing(test::modular(10, 4), {0, 5, 2, 7}), 92u);
  EXPECT_EQ(count_absorbing(test::product(11, 5), {3, 1, 4, 9}), 0u);
  EXPECT_EQ(count_absorbing(test::product(12, 7), {11, 0, 6, 2}), 959u);
}

TEST(CountAbsorbing, MatchesEnumeration) {
  std::mt19937_64 rng(3);
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const auto g = random_bounded_mono(11, 4, seed);
    const Quad q = random_quad(11, rng);
    const auto fast = count_absorbing(g, q);
    EXPECT_EQ(fast, brute_count(g, q)) << seed;
    const auto listed = enumerate_absorbing(g, q);
    EXPECT_EQ(listed.size(), fast);
    for (const auto& p : listed) EXPECT_TRUE(is_absorbing(g, q, p));
  }
}

TEST(CountAbsorbing, VisitorStopsEarly) {
  std::size_t seen = 0;
  const auto visited = for_each_absorbing(ColouredComplete::rainbow(9), {0, 1, 2, 3},
                                          [&](const Path4&) { return ++seen < 7; });
  EXPECT_EQ(seen, 7u);
  EXPECT_EQ(visited, 7u);
}

TEST(CountAbsorbing, SpliceProperty) {
  std::mt19937_64 rng(9);
  std::size_t spliced = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto g = random_bounded_mono(20, 6, seed);
    std::vector<Vertex> all(20);
    std::iota(all.begin(), all.end(), 0);
    for (int t = 0; t < 20; ++t) {
      const auto p = random_pc_path(g, all, 6, rng);
      if (!p) continue;
      const Quad q{(*p)[0], (*p)[1], (*p)[4], (*p)[5]};
      for (const auto& z : enumerate_absorbing(g, q)) {
        if (std::find_first_of(p->begin(), p->end(), z.begin(), z.end()) != p->end()) continue;
        std::vector<Vertex> joined{z[0], z[1]};
        joined.insert(joined.end(), p->begin(), p->end());
        joined.push_back(z[2]);
        joined.push_back(z[3]);
        EXPECT_TRUE(is_properly_coloured_path(g, joined));
        ++spliced;
      }
    }
  }
  EXPECT_GT(spliced, 100u);
}

TEST(Family, RainbowSucceeds) {
  FamilyParams fp;
  fp.target_size = 2;
  fp.seed = 4;
  const auto r = sample_absorbing_family(ColouredComplete::rainbow(20), fp);
  ASSERT_TRUE(r.success);
  EXPECT_FALSE(r.family.empty());
  EXPECT_TRUE(r.coverage.universal());
  EXPECT_TRUE(r.coverage.exhaustive);
  std::set<Vertex> used;
  for (const auto& z : r.family) {
    EXPECT_TRUE(is_properly_coloured_path(ColouredComplete::rainbow(20), std::vector<Vertex>(z.begin(), z.end())));
    for (Vertex v : z) EXPECT_TRUE(used.insert(v).second);
  }
}

TEST(Family, MonochromaticFails) {
  FamilyParams fp;
  fp.target_size = 6;
  fp.retry_budget = 5;
  const auto r = sample_absorbing_family(ColouredComplete::monochromatic(20), fp);
  EXPECT_FALSE(r.success);
  EXPECT_EQ(r.coverage.covered, 0u);
  EXPECT_EQ(r.attempts, 5u);
}

TEST(Family, CoverageAgreesWithDirectCheck) {
  const auto g = random_bounded_mono(14, 4, 2);
  const std::vector<Path4> fam{{0, 1, 2, 3}, {4, 5, 6, 7}};
  const std::vector<Vertex> pool{8, 9, 10, 11, 12, 13};
  const auto cov = family_coverage(g, fam, pool, 1);
  EXPECT_TRUE(cov.exhaustive);
  EXPECT_EQ(cov.checked, 6u * 5 * 4 * 3);
  std::uint64_t covered = 0;
  for (Vertex a : pool)
    for (Vertex b : pool)
      for (Vertex c : pool)
        for (Vertex d : pool) {
          if (std::set<Vertex>{a, b, c, d}.size() < 4) continue;
          bool hit = false;
          for (const auto& z : fam) hit = hit || is_absorbing(g, {a, b, c, d}, z);
          covered += hit;
        }
  EXPECT_EQ(cov.covered, covered);
}

TEST(Family, SampledCoverageAboveThreshold) {
  UniversalityCheck check;
  check.exhaustive_limit = 10;
  check.samples = 500;
  const auto rb = ColouredComplete::rainbow(20);
  std::vector<Vertex> pool;
  for (Vertex v = 4; v < 20; ++v) pool.push_back(v);
  const auto cov = family_coverage(rb, {{0, 1, 2, 3}}, pool, 7, check);
  EXPECT_FALSE(cov.exhaustive);
  EXPECT_EQ(cov.checked, 500u);
  EXPECT_TRUE(cov.universal());
}

TEST(JoinEnds, TrivialColourings) {
  const auto rb = ColouredComplete::rainbow(10);
  const auto r = join_ends(rb, 0, 1, 2, 3, {}, 8);
  ASSERT_TRUE(r.path.has_value());
  EXPECT_EQ(r.path->size(), 2u);
  EXPECT_FALSE(join_ends(ColouredComplete::monochromatic(10), 0, 1, 2, 3, {}, 8).path.has_value());
}

TEST(JoinEnds, RespectsAvoidSet) {
  const auto rb = ColouredComplete::rainbow(10);
  const std::vector<Vertex> avoid{4, 5, 6, 7};
  const auto r = join_ends(rb, 0, 1, 2, 3, avoid, 8);
  ASSERT_TRUE(r.path.has_value());
  EXPECT_EQ(std::set<Vertex>(r.path->begin(), r.path->end()), (std::set<Vertex>{8, 9}));
  const std::vector<Vertex> most{4, 5, 6, 7, 8};
  EXPECT_FALSE(join_ends(rb, 0, 1, 2, 3, most, 8).path.has_value());
}

TEST(JoinEnds, RandomInstancesAlwaysJoin) {
  std::mt19937_64 rng(21);
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto g = random_bounded_mono(30, 10, seed);
    const Quad q = random_quad(30, rng);
    const auto r = join_ends(g, q[0], q[1], q[2], q[3], {}, 8);
    ASSERT_TRUE(r.path.has_value()) << seed;
    EXPECT_GE(r.path->size(), 2u);
    EXPECT_LE(r.path->size(), 8u);
    std::vector<Vertex> whole{q[0], q[1]};
    whole.insert(whole.end(), r.path->begin(), r.path->end());
    whole.push_back(q[2]);
    whole.push_back(q[3]);
    EXPECT_TRUE(is_properly_coloured_path(g, whole)) << seed;
  }
}

TEST(AbsorbingCycle, RainbowBuilds) {
  CycleParams cp;
  cp.family.target_size = 2;
  cp.family.seed = 3;
  cp.max_len = 4;
  const auto g = ColouredComplete::rainbow(30);
  const auto r = build_absorbing_cycle(g, cp);
  ASSERT_TRUE(r.cycle.has_value()) << r.message;
  const auto& ac = *r.cycle;
  EXPECT_TRUE(is_properly_coloured_cycle(g, ac.cycle));
  EXPECT_LE(ac.cycle.vertices.size(), ac.family.size() * (4 + cp.max_len));
  EXPECT_EQ(ac.connectors.size(), ac.family.size());
  EXPECT_TRUE(ac.coverage.universal());
  // Members appear as consecutive arcs.
  const auto& c = ac.cycle.vertices;
  for (const auto& z : ac.family) {
    const auto at = std::find(c.begin(), c.end(), z[0]);
    ASSERT_NE(at, c.end());
    const std::size_t i = at - c.begin();
    for (std::size_t t = 1; t < 4; ++t) EXPECT_EQ(c[(i + t) % c.size()], z[t]);
  }
}

TEST(AbsorbingCycle, MonochromaticFailsAtFamily) {
  CycleParams cp;
  cp.family.retry_budget = 3;
  cp.retry_budget = 2;
  const auto r = build_absorbing_cycle(ColouredComplete::monochromatic(20), cp);
  EXPECT_FALSE(r.cycle.has_value());
  EXPECT_EQ(r.failed_stage, CycleStage::Family);
  EXPECT_FALSE(r.message.empty());
}

TEST(AbsorbingCycle, RandomInstanceSizeBound) {
  CycleParams cp;
  cp.family.target_size = 6;
  cp.family.retry_budget = 10;
  cp.max_len = 6;
  cp.retry_budget = 3;
  std::size_t built = 0;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto g = random_bounded_mono(60, 21, seed, 59);
    cp.family.seed = seed;
    const auto r = build_absorbing_cycle(g, cp);
    if (!r.cycle) continue;
    ++built;
    EXPECT_LE(r.cycle->cycle.vertices.size(), (4 + cp.max_len) * r.cycle->family.size());
    Certificate cert{CertificateKind::PathCycleSystem, {r.cycle->cycle.vertices}, {}, {}};
    EXPECT_TRUE(verify_certificate(g, cert).verdict.valid);
  }
  EXPECT_GT(built, 0u);
}

TEST(AbsorbPath, PreconditionsAndSplice) {
  const auto g = ColouredComplete::rainbow(16);
  CycleParams cp;
  cp.family.target_size = 2;
  cp.family.seed = 5;
  cp.max_len = 3;
  const auto built = build_absorbing_cycle(g, cp);
  ASSERT_TRUE(built.cycle.has_value());
  const auto& ac = *built.cycle;
  std::vector<Vertex> outside;
  for (Vertex v = 0; v < 16; ++v) {
    if (std::find(ac.cycle.vertices.begin(), ac.cycle.vertices.end(), v) == ac.cycle.vertices.end())
      outside.push_back(v);
  }
  ASSERT_GE(outside.size(), 4u);
  EXPECT_THROW(absorb_path(g, ac, DirectedPath{{outside[0], outside[1], outside[2]}}), std::domain_error);
  EXPECT_THROW(absorb_path(g, ac, DirectedPath{{outside[0], outside[1], outside[2], ac.cycle.vertices[0]}}),
               std::domain_error);
  const DirectedPath p{outside};
  const auto out = absorb_path(g, ac, p);
  EXPECT_TRUE(is_properly_coloured_cycle(g, out));
  std::multiset<Vertex> want(ac.cycle.vertices.begin(), ac.cycle.vertices.end());
  want.insert(outside.begin(), outside.end());
  EXPECT_EQ(std::multiset<Vertex>(out.vertices.begin(), out.vertices.end()), want);
}

TEST(AbsorbPath, VerifiedFamilyAbsorbsRandomPaths) {
  const auto g = random_bounded_mono(40, 14, 2, 39);
  CycleParams cp;
  cp.family.target_size = 6;
  cp.family.retry_budget = 30;
  cp.max_len = 4;
  cp.max_order = 32;
  cp.family.seed = 2;
  const auto built = build_absorbing_cycle(g, cp);
  ASSERT_TRUE(built.cycle.has_value()) << built.message;
  const auto& ac = *built.cycle;
  std::vector<Vertex> outside;
  for (Vertex v = 0; v < 40; ++v) {
    if (std::find(ac.cycle.vertices.begin(), ac.cycle.vertices.end(), v) == ac.cycle.vertices.end())
      outside.push_back(v);
  }
  std::mt19937_64 rng(1);
  std::size_t done = 0;
  for (int t = 0; t < 30; ++t) {
    const auto p = random_pc_path(g, outside, 6, rng);
    if (!p) continue;
    const auto out = absorb_path(g, ac, DirectedPath{*p});
    EXPECT_TRUE(is_properly_coloured_cycle(g, out));
    EXPECT_EQ(out.vertices.size(), ac.cycle.vertices.size() + 6);
    ++done;
  }
  EXPECT_GT(done, 10u);
}
