#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "cauchycl/bounds.hpp"
#include "cauchycl/catalog.hpp"

using namespace cauchycl;
using std::numbers::pi;

namespace {

Constellation asym4() { return catalog_get("asym4").constellation; }

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

}  // namespace

TEST(PairwiseTerm, Examples) {
  EXPECT_NEAR(pairwise_error_term(1, 0.5), 0.25, 1e-16);
  EXPECT_NEAR(pairwise_error_term(2, 1), 0.25, 1e-16);
  // Reference value from 50-digit arithmetic; a Simpson integral of the
  // scalar tail below confirms it independently.
  EXPECT_NEAR(pairwise_error_term(1, 0.01), 0.0063653491009727967, 1e-15);
  EXPECT_EQ(code_of([] { pairwise_error_term(0, 1); }), ErrorCode::NonpositiveInput);
  EXPECT_EQ(code_of([] { pairwise_error_term(1, -1); }), ErrorCode::NonpositiveInput);
}

TEST(PairwiseTerm, MatchesTailIntegral) {
  // Integral of the scalar Cauchy density over [a, inf), a = d/2, after the
  // substitution z = a/s, which leaves a smooth integrand on [0, 1].
  for (double d : {0.3, 1.0, 2.5})
    for (double g : {0.01, 0.2, 3.0}) {
      const double a = d / 2;
      auto f = [&](double s) { return g * a / (pi * (g * g * s * s + a * a)); };
      const int n = 20000;
      const double h = 1.0 / n;
      double sum = f(0.0) + f(1.0);
      for (int k = 1; k < n; ++k) sum += (k % 2 ? 4.0 : 2.0) * f(k * h);
      EXPECT_NEAR(sum * h / 3.0, pairwise_error_term(d, g), 1e-12) << d << " " << g;
    }
}

TEST(UnionBound, FourPointExample) {
  const auto c = asym4();
  const double expected[] = {0.01909604730291839, 0.015367912123681436, 0.014049623377235372,
                             0.014049623377235372};
  double mean = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(union_bound_symbol(c, i, 0.01), expected[i], 1e-15);
    mean += expected[i] / 4;
  }
  EXPECT_NEAR(union_bound_symbol(c, 0, 0.01), 3 * pairwise_error_term(1, 0.01), 1e-16);
  EXPECT_NEAR(union_bound_average(c, 0.01), mean, 1e-15);
}

TEST(UnionBound, Qam4AndLimits) {
  const auto q = catalog_get("qam4").constellation;
  const double expected = 2 * pairwise_error_term(2, 0.1) + pairwise_error_term(2 * std::sqrt(2.0), 0.1);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(union_bound_symbol(q, i, 0.1), expected, 1e-15);
    EXPECT_NEAR(union_bound_symbol(q, i, 0.1), 0.0859215417243641859, 1e-15);
  }
  EXPECT_NEAR(union_bound_symbol(asym4(), 2, 1e12), 1.5, 1e-9);
  EXPECT_NEAR(union_bound_average(Constellation({{0, 0}, {1, 0}}), 0.5), 0.25, 1e-16);
}

TEST(UnionBound, Errors) {
  const Constellation one({{0, 0}});
  EXPECT_EQ(code_of([&] { union_bound_symbol(one, 0, 1); }), ErrorCode::NotEnoughPoints);
  EXPECT_EQ(code_of([&] { union_bound_average(one, 1); }), ErrorCode::NotEnoughPoints);
  EXPECT_EQ(code_of([&] { burden(one, 0); }), ErrorCode::NotEnoughPoints);
  EXPECT_EQ(code_of([&] { burden_max(one); }), ErrorCode::NotEnoughPoints);
  EXPECT_EQ(code_of([&] { asymptotic_coefficient_symbol(one, 0); }), ErrorCode::NotEnoughPoints);
  EXPECT_EQ(code_of([&] { asymptotic_coefficient_average(one); }), ErrorCode::NotEnoughPoints);
  EXPECT_EQ(code_of([&] { union_bound_symbol(asym4(), 9, 1); }), ErrorCode::IndexOutOfRange);
}

TEST(Asymptotics, Coefficients) {
  const auto c = asym4();
  EXPECT_NEAR(asymptotic_coefficient_symbol(c, 0), 6 / pi, 1e-15);
  EXPECT_NEAR(asymptotic_coefficient_symbol(c, 1), 2 / pi * (1 + std::sqrt(2.0)), 1e-15);
  const auto q = catalog_get("qam4").constellation;
  for (std::size_t i = 0; i < 4; ++i)
    EXPECT_NEAR(asymptotic_coefficient_symbol(q, i), (2 + 1 / std::sqrt(2.0)) / pi, 1e-15);
  EXPECT_NEAR(asymptotic_coefficient_average(c), (3.5 + std::sqrt(2.0)) / pi, 1e-15);
  EXPECT_NEAR(asymptotic_coefficient_average(c), 1.5642427597218205, 1e-15);
  EXPECT_NEAR(asymptotic_coefficient_average(Constellation({{0, 0}, {0, 3}})), 2 / (3 * pi), 1e-16);
}

TEST(Burden, Examples) {
  const auto c = asym4();
  EXPECT_NEAR(burden(c, 0), 3.0, 1e-15);
  EXPECT_NEAR(burden_max(c), 3.0, 1e-15);
  const double rect = 1 + std::sqrt(2.0 / 3.0) + std::sqrt(2.0 / 5.0);
  const auto r = catalog_get("rect4").constellation;
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(burden(r, i), rect, 1e-14);
  EXPECT_NEAR(rect, 2.4489521129614022, 1e-15);
  EXPECT_NEAR(burden_max(r), rect, 1e-14);

  // Brute-force check of which kite point carries the worst burden: the
  // side points, at 1 + 4/sqrt(5); the tips carry 1/2 + 4/sqrt(5).
  const auto k = catalog_get("kite4").constellation;
  const double side = 1 + 4 / std::sqrt(5.0), tip = 0.5 + 4 / std::sqrt(5.0);
  EXPECT_NEAR(burden(k, 0), tip, 1e-14);
  EXPECT_NEAR(burden(k, 1), side, 1e-14);
  EXPECT_NEAR(burden(k, 2), tip, 1e-14);
  EXPECT_NEAR(burden(k, 3), side, 1e-14);
  EXPECT_NEAR(burden_max(k), side, 1e-14);
  EXPECT_GT(burden_max(k), burden_max(r));
}

TEST(BoundReport, ClampedAndRaw) {
  const auto rep = bound_report(asym4(), 50.0);
  EXPECT_GT(rep.per_symbol_exact_bound[0], 1.0);
  EXPECT_EQ(rep.per_symbol_exact_bound_clamped[0], 1.0);
  EXPECT_NEAR(rep.avg_asymptotic.value, rep.avg_asymptotic.coefficient * 50.0, 1e-12);
  for (double b : rep.per_symbol_exact_bound) EXPECT_LE(b, 1.5);
  EXPECT_EQ(code_of([] { bound_report(asym4(), 0.0); }), ErrorCode::NonpositiveInput);
}

// ---------------------------------------------------------------------------
// Properties

TEST(BoundsProperty, TermMonotoneAndRatioOnly) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.01, 10.0);
  for (int t = 0; t < 1000; ++t) {
    const double d = u(rng), g = u(rng), s = u(rng);
    EXPECT_GT(pairwise_error_term(d, g), pairwise_error_term(d * 1.01, g));
    EXPECT_LT(pairwise_error_term(d, g), pairwise_error_term(d, g * 1.01));
    EXPECT_NEAR(pairwise_error_term(d, g), pairwise_error_term(d / g, 1.0), 1e-14);
    EXPECT_NEAR(pairwise_error_term(d, g), pairwise_error_term(s * d, s * g), 1e-14);
    const double v = pairwise_error_term(d, g);
    EXPECT_GT(v, 0.0);
    EXPECT_LT(v, 0.5);
  }
}

TEST(BoundsProperty, CubicRemainder) {
  for (const auto& name : {"asym4", "qam4", "pentagon5", "kite4"}) {
    const auto c = catalog_get(name).constellation;
    for (std::size_t i = 0; i < c.size(); ++i) {
      // Least-squares slope of log|remainder| against log gamma.
      std::vector<double> xs, ys;
      for (int k = 0; k <= 20; ++k) {
        const double g = std::pow(10.0, -4.0 + 2.0 * k / 20.0);
        const double rem = std::abs(union_bound_symbol(c, i, g) - g * asymptotic_coefficient_symbol(c, i));
        xs.push_back(std::log(g));
        ys.push_back(std::log(rem));
      }
      double mx = 0, my = 0;
      for (std::size_t k = 0; k < xs.size(); ++k) mx += xs[k] / xs.size(), my += ys[k] / ys.size();
      double sxy = 0, sxx = 0;
      for (std::size_t k = 0; k < xs.size(); ++k) sxy += (xs[k] - mx) * (ys[k] - my), sxx += (xs[k] - mx) * (xs[k] - mx);
      EXPECT_GE(sxy / sxx, 2.9) << name << " symbol " << i;
    }
  }
}

TEST(BoundsProperty, AveragingRoutesAgree) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 100; ++t) {
    const auto c = random_planar(rng, 2 + t % 9);
    for (double g : {0.01, 0.5, 20.0})
      EXPECT_NEAR(union_bound_average(c, g), union_bound_average_pairwise(c, g), 1e-12);
    double mean = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      EXPECT_NEAR(asymptotic_coefficient_symbol(c, i), 2 / pi * burden(c, i), 1e-15 * burden(c, i));
      mean += asymptotic_coefficient_symbol(c, i) / c.size();
    }
    EXPECT_NEAR(asymptotic_coefficient_average(c), mean, 1e-12 * (1 + mean));
  }
}

TEST(BoundsProperty, BurdenScaleLaw) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 50; ++t) {
    const auto c = random_planar(rng, 2 + t % 6);
    for (double s : {0.25, 3.0}) {
      const auto sc = c.transformed([s](const Point& p) { return Point{s * p[0], s * p[1]}; });
      for (std::size_t i = 0; i < c.size(); ++i) EXPECT_NEAR(burden(sc, i), burden(c, i) / s, 1e-12 * burden(c, i) / s);
    }
  }
}
