#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "cauchycl/catalog.hpp"
#include "cauchycl/descriptors.hpp"

using namespace cauchycl;

namespace {

Constellation named(const char* n) { return catalog_get(n).constellation; }

Constellation random_planar(std::mt19937_64& rng, std::size_t m) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<Point> pts;
  while (pts.size() < m) pts.push_back({u(rng), u(rng)});
  return Constellation(std::move(pts));
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::IoError;
}

const double kRectB = 1 + std::sqrt(2.0 / 3.0) + std::sqrt(2.0 / 5.0);
const double kKiteB = 1 + 4 / std::sqrt(5.0);

}  // namespace

TEST(Report, FourPointExample) {
  const auto r = report(named("asym4"));
  const double expected[] = {0.0, 0.25, 0.375, 0.375};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(r.angular[i], expected[i], 1e-15);
    EXPECT_EQ(r.collapse[i], i == 0);
    EXPECT_NEAR(r.large_noise_correct[i], expected[i], 1e-15);
    EXPECT_NEAR(r.large_noise_error[i], 1 - expected[i], 1e-15);
  }
  EXPECT_EQ(r.a_min, 0.0);
  EXPECT_NEAR(r.large_noise_avg_correct, 0.25, 1e-15);
  EXPECT_NEAR(r.b_max, 3.0, 1e-15);
  EXPECT_NEAR(r.d_min, 1.0, 1e-15);
  EXPECT_NEAR(r.power, 0.75, 1e-15);
  EXPECT_FALSE(r.angles_estimated);
  ASSERT_EQ(r.hull.size(), 4u);
  EXPECT_EQ(r.hull[0].tag, HullTag::edge_interior);
}

TEST(Report, PentagonAndCross) {
  const auto p = report(named("pentagon5"));
  for (double a : p.angular) EXPECT_NEAR(a, 0.2, 1e-14);
  EXPECT_NEAR(p.a_min, 0.2, 1e-14);
  EXPECT_NEAR(p.large_noise_avg_correct, 0.2, 1e-14);

  const auto x = report(named("cross5"));
  EXPECT_EQ(x.a_min, 0.0);
  EXPECT_TRUE(x.collapse[0]);
  for (std::size_t i = 1; i < 5; ++i) EXPECT_FALSE(x.collapse[i]);
  EXPECT_NEAR(x.large_noise_avg_correct, 0.2, 1e-14);
  // Same power, same average large-noise limit, different worst case.
  EXPECT_NEAR(x.power, p.power, 1e-14);
}

TEST(Report, RectangleAndKite) {
  const auto r = report(named("rect4"));
  const auto k = report(named("kite4"));
  EXPECT_NEAR(r.b_max, kRectB, 1e-14);
  EXPECT_NEAR(k.b_max, kKiteB, 1e-14);
  EXPECT_NEAR(r.a_min, 0.25, 1e-14);
  EXPECT_NEAR(k.a_min, 0.1475836176504333, 1e-14);
  EXPECT_NEAR(r.normalized_b_max, 1.9360666394099977, 1e-14);
  EXPECT_NEAR(k.normalized_b_max, 2.20478297741519, 1e-13);
}

TEST(Report, HigherDimensionUsesSampling) {
  // Regular simplex corners in R^3 plus the centroid: the centroid collapses.
  const Constellation c({{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}, {0, 0, 0}});
  const auto r = report(c);
  EXPECT_TRUE(r.angles_estimated);
  EXPECT_TRUE(r.hull.empty());
  EXPECT_TRUE(r.collapse[4]);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_FALSE(r.collapse[i]);
    EXPECT_GT(r.angular_std_error[i], 0.0);
  }
  double total = 0.0;
  for (double a : r.angular) total += a;
  EXPECT_NEAR(total, 1.0, 0.02);
}

TEST(Report, SinglePoint) {
  const auto r = report(Constellation({{1, 0}}));
  EXPECT_EQ(r.angular[0], 1.0);
  EXPECT_TRUE(r.burden.empty());
  EXPECT_FALSE(r.collapse[0]);
}

TEST(NormalizedBurden, Examples) {
  EXPECT_NEAR(normalized_burden_max(named("rect4"), 5.0 / 8.0), std::sqrt(5.0 / 8.0) * kRectB, 1e-14);
  EXPECT_NEAR(normalized_burden_max(named("rect4"), 5.0 / 8.0), 1.93606, 1e-5);
  EXPECT_NEAR(normalized_burden_max(named("kite4"), 5.0 / 8.0), 2.20477, 2e-5);
  EXPECT_NEAR(normalized_burden_max(named("asym4"), 1.0), 3.0, 1e-15);
  EXPECT_EQ(code_of([] { normalized_burden_max(named("rect4"), 0.0); }), ErrorCode::NonpositivePower);
}

TEST(JointObjective, Examples) {
  for (const char* n : {"asym4", "rect4", "kite4", "pentagon5"}) {
    const auto c = named(n);
    EXPECT_NEAR(joint_objective(c, 0.0, 0.7), -report(c).a_min, 1e-15);
    EXPECT_NEAR(joint_objective(c, 1.0, 0.7), normalized_burden_max(c, 0.7), 1e-15);
  }
  const double jr = joint_objective(named("rect4"), 0.5, 5.0 / 8.0);
  const double jk = joint_objective(named("kite4"), 0.5, 5.0 / 8.0);
  EXPECT_NEAR(jr, 0.8430333197049988, 1e-14);
  EXPECT_NEAR(jk, 1.0285996798823782, 1e-13);
  EXPECT_LT(jr, jk);
  EXPECT_EQ(code_of([] { joint_objective(named("rect4"), 1.5, 1.0); }), ErrorCode::LambdaOutOfRange);
  EXPECT_EQ(code_of([] { joint_objective(named("rect4"), -0.1, 1.0); }), ErrorCode::LambdaOutOfRange);
}

TEST(Screen, PentagonVersusCross) {
  for (double lambda : {0.0, 0.3, 1.0}) {
    const auto s = screen({{"pentagon", named("pentagon5")}, {"cross", named("cross5")}}, lambda);
    ASSERT_EQ(s.rejected.size(), 1u);
    EXPECT_EQ(s.rejected[0].id, "cross");
    EXPECT_EQ(s.rejected[0].reason, "geometric collapse");
    ASSERT_EQ(s.ranked.size(), 1u);
    EXPECT_EQ(s.ranked[0].id, "pentagon");
    EXPECT_FALSE(s.unequal_power_warning);
  }
}

TEST(Screen, RectangleBeforeKite) {
  const auto s = screen({{"kite", named("kite4")}, {"rect", named("rect4")}}, 1.0, 5.0 / 8.0);
  ASSERT_EQ(s.ranked.size(), 2u);
  EXPECT_EQ(s.ranked[0].id, "rect");
  EXPECT_EQ(s.ranked[1].id, "kite");
  EXPECT_TRUE(s.rejected.empty());
  EXPECT_NEAR(s.ranked[0].objective, 1.9360666394099977, 1e-14);
}

TEST(Screen, SingleAndErrors) {
  const auto s = screen({{"only", named("qam4")}}, 0.5);
  EXPECT_EQ(s.ranked.size(), 1u);
  EXPECT_TRUE(s.rejected.empty());
  EXPECT_EQ(code_of([] { screen({}, 0.5); }), ErrorCode::EmptyCandidateList);
  EXPECT_EQ(code_of([] { screen({{"a", named("qam4")}}, 2.0); }), ErrorCode::LambdaOutOfRange);
  EXPECT_EQ(code_of([] { screen({{"a", named("qam4")}}, 0.5, std::vector<double>{1, 2}); }), ErrorCode::InvalidValue);
}

TEST(Screen, PowerWarningAndTies) {
  const auto s = screen({{"a", named("qam4")}, {"b", named("rect4")}}, 0.5);
  EXPECT_TRUE(s.unequal_power_warning);
  // Identical candidates keep input order.
  const auto t = screen({{"first", named("qam4")}, {"second", named("qam4")}}, 0.5);
  EXPECT_EQ(t.ranked[0].id, "first");
  EXPECT_EQ(t.ranked[1].id, "second");
  EXPECT_FALSE(t.unequal_power_warning);
}

TEST(DescriptorProperty, CollapseMatchesHullInterior) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 200; ++t) {
    const auto c = random_planar(rng, 3 + t % 8);
    const auto r = report(c);
    for (std::size_t i = 0; i < c.size(); ++i) {
      const bool inside = r.hull[i].tag != HullTag::vertex;
      EXPECT_EQ(r.collapse[i], inside);
      EXPECT_DOUBLE_EQ(r.angular[i], angular_fraction(c, i).value);
    }
    double avg = 0.0;
    for (double a : r.angular) avg += a / c.size();
    EXPECT_NEAR(avg, r.large_noise_avg_correct, 1e-12);
  }
  // Points planted on hull edges.
  const auto sq = report(Constellation({{0, 0}, {2, 0}, {2, 2}, {0, 2}, {1, 0}, {2, 1.5}}));
  EXPECT_TRUE(sq.collapse[4]);
  EXPECT_TRUE(sq.collapse[5]);
}

TEST(DescriptorProperty, RankingInvariantUnderCommonScale) {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 30; ++t) {
    std::vector<Candidate> base, scaled;
    const double s = 0.2 + t * 0.15;
    for (int k = 0; k < 4; ++k) {
      auto c = random_planar(rng, 3 + k);
      auto sc = c.transformed([s](const Point& p) { return Point{s * p[0], s * p[1]}; });
      base.push_back({"c" + std::to_string(k), c});
      scaled.push_back({"c" + std::to_string(k), sc});
    }
    const double p0 = 1.3;
    const auto a = screen(base, 0.6, p0);
    const auto b = screen(scaled, 0.6, s * s * p0);
    ASSERT_EQ(a.ranked.size(), b.ranked.size());
    ASSERT_EQ(a.rejected.size(), b.rejected.size());
    for (std::size_t k = 0; k < a.ranked.size(); ++k) {
      EXPECT_EQ(a.ranked[k].id, b.ranked[k].id);
      EXPECT_NEAR(a.ranked[k].objective, b.ranked[k].objective, 1e-10);
    }
  }
}

TEST(DescriptorProperty, DominanceImpliesOrderForEveryLambda) {
  // Dominating pair: smaller normalized burden and larger worst angle.
  const auto rect = named("rect4"), kite = named("kite4");
  const double p0 = 5.0 / 8.0;
  ASSERT_LT(normalized_burden_max(rect, p0), normalized_burden_max(kite, p0));
  ASSERT_GT(report(rect).a_min, report(kite).a_min);
  for (int k = 1; k < 100; ++k) {
    const double lambda = k / 100.0;
    EXPECT_LT(joint_objective(rect, lambda, p0), joint_objective(kite, lambda, p0));
  }
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int t = 0; t < 1000; ++t) {
    const double nb = u(rng), am = u(rng) / 6, dn = u(rng) + 1e-3, da = u(rng) / 6 + 1e-3;
    const double lambda = (t % 99 + 1) / 100.0;
    EXPECT_LT(joint_objective_value(nb, am + da, lambda), joint_objective_value(nb + dn, am, lambda));
  }
}
