#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "npl/lfunction.hpp"
#include "npl/polygon.hpp"

using namespace npl;

static CyclotomicInt ci(long p, long M, std::vector<long> v) {
  std::vector<ZZ> c(v.begin(), v.end());
  return cyclo_reduce(p, M, std::move(c));
}

TEST_CASE("config validation and degree") {
  CurveConfig cfg{5, 1, 3, 1, {1}};
  cfg.validate();
  CHECK(cfg.degree() == 3);
  CHECK(CurveConfig{5, 1, 3, 2, {1}}.degree() == 15);
  CHECK(CurveConfig{5, 2, 3, 1, {1, 1}}.degree() == 3);

  CHECK_THROWS(CurveConfig{4, 1, 3, 1, {1}}.validate());   // p not prime
  CHECK_THROWS(CurveConfig{5, 1, 1, 1, {1}}.validate());   // d too small
  CHECK_THROWS(CurveConfig{5, 1, 5, 1, {1}}.validate());   // p | d
  CHECK_THROWS(CurveConfig{5, 1, 3, 1, {0}}.validate());   // a = 0
  CHECK_THROWS(CurveConfig{5, 2, 3, 1, {1}}.validate());   // wrong length
}

TEST_CASE("known sums for d=3 p=5 a=1") {
  CurveConfig cfg{5, 1, 3, 1, {1}};
  auto s1 = exp_sum(cfg, 1);
  CHECK(s1 == ci(5, 1, {1, 1, 2, 0}));
  auto s2 = exp_sum(cfg, 2);
  CHECK(s2 == ci(5, 1, {-1, 0, 5, 0}));
}

TEST_CASE("L coefficients for d=3 p=5 a=1") {
  CurveConfig cfg{5, 1, 3, 1, {1}};
  std::vector<CyclotomicInt> sums;
  for (long m = 1; m <= 5; ++m) sums.push_back(exp_sum(cfg, m));
  auto c = l_from_sums(sums, 5);
  REQUIRE(c.size() == 6);
  CHECK(c[0] == ci(5, 1, {1, 0, 0, 0}));
  CHECK(c[1] == ci(5, 1, {1, 1, 2, 0}));
  CHECK(c[2] == ci(5, 1, {-2, -1, 3, 0}));
  CHECK(c[3] == ci(5, 1, {0, 0, -5, 0}));
  CHECK(c[4].is_zero());  // degree is exactly 3
  CHECK(c[5].is_zero());

  auto pts = coefficient_valuations(c, 1);
  auto np = lower_hull(pts);
  auto pred = predict_slopes_order_p(3, 5);
  CHECK(compare_polygons(pred.polygon(), np).verdict == Verdict::match);
}

TEST_CASE("slopes are independent of a for d=3 p=5") {
  auto pred = predict_slopes_order_p(3, 5);
  for (long a = 1; a <= 4; ++a) {
    CurveConfig cfg{5, 1, 3, 1, {a}};
    std::vector<CyclotomicInt> sums;
    for (long m = 1; m <= 3; ++m) sums.push_back(exp_sum(cfg, m));
    auto c = l_from_sums(sums, 3);
    auto np = lower_hull(coefficient_valuations(c, 1));
    CHECK(np.slopes == pred.slopes);
  }
}

TEST_CASE("depth two character d=3 p=5 a=1") {
  CurveConfig cfg{5, 1, 3, 2, {1}};
  auto s1 = exp_sum(cfg, 1);
  std::vector<ZZ> e1(25, ZZ(0));
  e1[0] = 1;
  e1[2] = 1;
  e1[6] = 1;
  e1[17] = 1;  // chi(0) + chi(2) + chi(6) + chi(17)
  CHECK(s1 == cyclo_reduce(5, 2, e1));

  auto s2 = exp_sum(cfg, 2);
  CHECK(s2 == ci(5, 2, {1, 2, -2, 0, 1, 0, 0, 2, 0, 1, 0, 2, 1, 0, 2, 2, 0, -2, 4, 0}));

  std::vector<CyclotomicInt> sums = {s1, s2, exp_sum(cfg, 3)};
  auto c = l_from_sums(sums, 3);
  auto pts = coefficient_valuations(c, 1);
  CHECK(pts[0].second == Valuation(QQ(0)));
  CHECK(pts[1].second == Valuation(QQ(0)));
  CHECK(pts[2].second == Valuation(frac(1, 10)));
  CHECK(pts[3].second == Valuation(frac(1, 5)));
}

TEST_CASE("quadratic base field d=3 q=25") {
  CurveConfig cfg{5, 2, 3, 1, {1, 1}};  // a = generator of F_25
  auto s1 = exp_sum(cfg, 1);
  CHECK(s1 == ci(5, 1, {-1, 0, -5, -5}));
  std::vector<CyclotomicInt> sums;
  for (long m = 1; m <= 3; ++m) sums.push_back(exp_sum(cfg, m));
  auto c = l_from_sums(sums, 3);
  CHECK(c[3] == ci(5, 1, {-25, 0, 0, 0}));
  auto pts = coefficient_valuations(c, 2);  // q-adic
  CHECK(pts[2].second == Valuation(frac(1, 2)));
  CHECK(pts[3].second == Valuation(QQ(1)));
  auto np = lower_hull(pts);
  CHECK(np.slopes == predict_slopes_order_p(3, 5, 2).slopes);
}

TEST_CASE("specialized enumerator agrees with the reference pipeline") {
  std::vector<CurveConfig> cfgs = {
      {5, 1, 3, 1, {1}},
      {5, 1, 3, 2, {2}},
      {5, 2, 3, 1, {1, 1}},
      {7, 1, 4, 1, {3}},
  };
  for (auto& cfg : cfgs) {
    for (long m = 1; m <= 2; ++m) {
      unsigned long q = 1;
      for (long i = 0; i < cfg.h * m; ++i) q *= cfg.p;
      if (q > 700) continue;
      CHECK(exp_sum(cfg, m) == exp_sum_reference(cfg, m));
    }
  }
}

TEST_CASE("threading does not change the sum") {
  CurveConfig cfg{5, 1, 3, 1, {2}};
  EnumOptions one{1, 200000000UL}, three{3, 200000000UL};
  for (long m = 3; m <= 5; ++m) CHECK(exp_sum(cfg, m, one) == exp_sum(cfg, m, three));
}

TEST_CASE("budget enforcement") {
  CurveConfig cfg{5, 1, 3, 1, {1}};
  EnumOptions tiny{1, 100};
  CHECK_THROWS_AS(exp_sum(cfg, 4, tiny), BudgetExceeded);
  try {
    exp_sum(cfg, 4, tiny);
  } catch (const BudgetExceeded& e) {
    CHECK(e.needed == 624);
    CHECK(e.budget == 100);
  }
}
