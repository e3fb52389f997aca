#include <gtest/gtest.h>

#include "bsnoma/errors.hpp"
#include "bsnoma/es_oracle.hpp"
#include "support/fixtures.hpp"

using namespace bsnoma;

namespace {

EsConfig grid(const SystemParams& p, double p_step, double g_step, int threads = 1) {
  EsConfig es;
  es.p_max_w = p.p_max_w;
  es.p_step_w = p_step;
  es.gamma_step = g_step;
  es.threads = threads;
  return es;
}

}  // namespace

TEST(Es, SingletonGrid) {
  SystemParams p;
  const auto sc = fixtures::feasible_scenarios(1, 1, p, false).front();
  ASSERT_TRUE(check_constraints(p.p_max_w, {1.0, 1.0}, sc.channel, p).empty());
  const auto s = es_search(sc.channel, p, grid(p, p.p_max_w, 1.0));
  EXPECT_EQ(s.visited, 1);
  EXPECT_EQ(s.p_ce_w, p.p_max_w);
  EXPECT_EQ(s.gamma[0], 1.0);
  EXPECT_EQ(s.gamma[1], 1.0);
}

TEST(Es, EightPointGridMatchesHandEnumeration) {
  SystemParams p;
  for (const auto& sc : fixtures::feasible_scenarios(5, 10, p, false)) {
    const auto l = fixtures::link_of(sc.channel, p);
    const auto b = fixtures::budget_of(p);
    double best = -1.0, bp = 0, b1 = 0, b2 = 0;
    for (double pw : {5.0, 10.0})
      for (double g1 : {0.5, 1.0})
        for (double g2 : {0.5, 1.0}) {
          if (!oracle::feasible(l, b, pw, g1, g2, p.r_min, p.p_max_w, p.xi, p.p_c_rs_w)) continue;
          const double e = oracle::ee(l, b, pw, g1, g2);
          if (e > best) best = e, bp = pw, b1 = g1, b2 = g2;
        }
    ASSERT_GT(best, 0.0);
    const auto s = es_search(sc.channel, p, grid(p, 5.0, 0.5));
    EXPECT_EQ(s.visited, 8);
    EXPECT_EQ(s.p_ce_w, bp);
    EXPECT_EQ(s.gamma[0], b1);
    EXPECT_EQ(s.gamma[1], b2);
    EXPECT_NEAR(s.ee, best, 1e-12 * best);
  }
}

TEST(Es, VisitedCountFollowsGridSize) {
  SystemParams p;
  const auto sc = fixtures::feasible_scenarios(1, 1, p, false).front();
  const auto s = es_search(sc.channel, p, grid(p, p.p_max_w / 40, 0.03));
  EXPECT_EQ(s.visited, 40LL * 34 * 34);  // ceil(1 / 0.03) = 34
  EXPECT_GT(s.feasible_points, 0);
  EXPECT_LE(s.feasible_points, s.visited);
}

TEST(Es, DominatesEveryFeasibleGridPoint) {
  SystemParams p;
  const auto sc = fixtures::feasible_scenarios(1, 7, p, false).front();
  const auto es = grid(p, p.p_max_w / 50, 0.05);
  const auto s = es_search(sc.channel, p, es);
  const auto l = fixtures::link_of(sc.channel, p);
  const auto b = fixtures::budget_of(p);
  long long feasible = 0;
  for (int i = 1; i <= 50; ++i)
    for (int j = 1; j <= 20; ++j)
      for (int k = 1; k <= 20; ++k) {
        const double pw = std::min(i * es.p_step_w, p.p_max_w);
        const double g1 = std::min(j * 0.05, 1.0), g2 = std::min(k * 0.05, 1.0);
        if (!oracle::feasible(l, b, pw, g1, g2, p.r_min, p.p_max_w, p.xi, p.p_c_rs_w)) continue;
        ++feasible;
        EXPECT_GE(s.ee, oracle::ee(l, b, pw, g1, g2) * (1 - 1e-12));
      }
  EXPECT_EQ(feasible, s.feasible_points);
}

TEST(Es, RefinedNestedGridNeverWorse) {
  SystemParams p;
  for (const auto& sc : fixtures::feasible_scenarios(3, 20, p, false)) {
    double prev = 0.0;
    for (int level = 0; level < 3; ++level) {
      const double scale = 1 << level;
      const auto s = es_search(sc.channel, p, grid(p, p.p_max_w / (25 * scale), 0.1 / scale));
      EXPECT_GE(s.ee, prev);
      prev = s.ee;
    }
  }
}

TEST(Es, ResultIndependentOfThreads) {
  SystemParams p;
  const auto sc = fixtures::feasible_scenarios(1, 30, p, false).front();
  const auto a = es_search(sc.channel, p, grid(p, p.p_max_w / 100, 0.02, 1));
  for (int t : {2, 3, 7}) {
    const auto b = es_search(sc.channel, p, grid(p, p.p_max_w / 100, 0.02, t));
    EXPECT_EQ(a.p_ce_w, b.p_ce_w);
    EXPECT_EQ(a.gamma, b.gamma);
    EXPECT_EQ(a.ee, b.ee);
    EXPECT_EQ(a.feasible_points, b.feasible_points);
  }
}

TEST(Es, NotBelowAobwsBeyondGridSlack) {
  SystemParams p;
  for (const auto& sc : fixtures::feasible_scenarios(5, 40, p, false)) {
    const auto a = run_aobws(sc.channel, p);
    const auto es = grid(p, p.p_max_w / 200, 0.01);
    const auto s = es_search(sc.channel, p, es);
    double slack = 0.0;
    for (double dp : {-es.p_step_w, es.p_step_w}) {
      const double x = std::clamp(a.p_ce_w + dp, es.p_step_w, p.p_max_w);
      slack = std::max(slack, std::abs(exact_ee(x, a.gamma, sc.channel, p) - a.ee));
    }
    for (int k = 0; k < 2; ++k) {
      for (double dg : {-es.gamma_step, es.gamma_step}) {
        Pair g = a.gamma;
        g[k] = std::clamp(g[k] + dg, es.gamma_step, 1.0);
        slack = std::max(slack, std::abs(exact_ee(a.p_ce_w, g, sc.channel, p) - a.ee));
      }
    }
    EXPECT_GE(s.ee, a.ee - slack) << "seed " << sc.seed;
  }
}

TEST(Es, NoFeasiblePointRaises) {
  SystemParams p;
  p.r_min = 30.0;
  EXPECT_THROW(es_search(fixtures::reference_channel(p, 1), p, grid(p, 1.0, 0.25)),
               InfeasibleProblem);
}

TEST(Es, RejectsBadGrid) {
  SystemParams p;
  const auto ch = fixtures::reference_channel(p, 1);
  EXPECT_THROW(es_search(ch, p, grid(p, 0.0, 0.1)), InvalidArgument);
  EXPECT_THROW(es_search(ch, p, grid(p, 1.0, 0.0)), InvalidArgument);
  EXPECT_THROW(es_search(ch, p, grid(p, 20.0, 0.1)), InvalidArgument);
  auto wide = grid(p, 1.0, 0.1);
  wide.p_max_w = 2 * p.p_max_w;
  EXPECT_THROW(es_search(ch, p, wide), InvalidArgument);
}

TEST(Es, PinnedPowerSearchesReflectionsOnly) {
  SystemParams p;
  const auto sc = fixtures::feasible_scenarios(1, 1, p, false).front();
  const auto s = es_search_at_power(sc.channel, 0.05, p, grid(p, 1.0, 0.05));
  EXPECT_EQ(s.p_ce_w, 0.05);
  EXPECT_EQ(s.visited, 400);
}
