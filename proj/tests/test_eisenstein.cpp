#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "npl/eisenstein.hpp"

using namespace npl;

TEST_CASE("artin-hasse coefficients") {
  auto e5 = artin_hasse_coeffs(5, 10);
  CHECK(e5[0] == 1);
  CHECK(e5[1] == 1);
  CHECK(e5[2] == frac(1, 2));
  CHECK(e5[5] == frac(5, 24));  // 1/120 + 1/5
  auto e2 = artin_hasse_coeffs(2, 6);
  CHECK(e2[2] == 1);  // 1/2 + 1/2
  // p-integrality across primes
  for (long p : {2L, 3L, 5L, 7L}) {
    auto e = artin_hasse_coeffs(p, 25);
    for (auto& x : e) CHECK(vp_rational(x, p) >= Valuation(QQ(0)));
  }
}

TEST_CASE("ring construction and pi arithmetic") {
  auto R = make_eisenstein(5, 1, 4);
  CHECK(R.trust_threshold() == frac(4 * 4 - 6, 4));  // Np - guard/(p-1)
  EisElt one = eis_one(R);
  CHECK(eis_equal(eis_mul(one, one), one));
  // pi^(p-1) = -p
  EisElt pi = eis_zero(R);
  pi.c[1][0] = 1;
  EisElt pp = eis_pow(pi, 5 - 1);
  CHECK(eis_equal(pp, eis_from_int(R, ZZ(-5))));
  CHECK(eis_valuation_raw(pi) == Valuation(frac(1, 4)));
  CHECK(eis_valuation_raw(eis_from_int(R, ZZ(25))) == Valuation(QQ(2)));
  CHECK(!eis_valuation_raw(eis_zero(R)).finite());
}

TEST_CASE("splitting root") {
  auto R = make_eisenstein(5, 1, 4);
  EisElt g = solve_splitting_root(R);
  CHECK(eis_valuation_raw(g) == Valuation(frac(1, 4)));
  // leading digit: g = pi * (1 + O(pi))
  CHECK(g.c[1][0] % 5 == 1);

  // defining series with denominators cleared: p^2 g + p g^p + g^(p^2) has
  // true valuation far beyond the working precision, so it must vanish exactly
  // in the truncated representation
  EisElt s = eis_scale(ZZ(25), g);
  s = eis_add(s, eis_scale(ZZ(5), eis_pow(g, 5)));
  s = eis_add(s, eis_pow(g, 25));
  CHECK(s.is_zero());
}

TEST_CASE("splitting coefficients and the root of unity") {
  auto R = make_eisenstein(5, 1, 4);
  EisElt g = solve_splitting_root(R);
  long nmax = (5 - 1) * 4;
  auto gam = splitting_coeffs(R, g, nmax);
  REQUIRE((long)gam.size() == nmax + 1);
  CHECK(eis_equal(gam[0], eis_one(R)));
  CHECK(eis_equal(gam[1], g));
  // gamma_m * m! = gamma^m while m < p
  for (long m = 2; m < 5; ++m)
    CHECK(eis_equal(eis_scale(factorial(m), gam[m]), eis_pow(g, m)));
  for (long m = 0; m <= nmax; ++m)
    CHECK(eis_valuation_raw(gam[m]) >= Valuation(frac(m, 4)));

  // T = sum_m gamma_m is a nontrivial p-th root of unity: T^p = 1, v(T-1) = 1/4
  EisElt T = eis_zero(R);
  for (auto& t : gam) T = eis_add(T, t);
  CHECK(eis_equal(eis_pow(T, 5), eis_one(R)));
  CHECK(eis_valuation_raw(eis_sub(T, eis_one(R))) == Valuation(frac(1, 4)));
}

TEST_CASE("unit inversion") {
  auto R = make_eisenstein(5, 1, 4);
  EisElt g = solve_splitting_root(R);
  EisElt u = eis_add(eis_one(R), g);  // 1 + gamma, a unit
  EisElt v = eis_invert_unit(u);
  CHECK(eis_equal(eis_mul(u, v), eis_one(R)));
  EisElt w = eis_invert_unit(eis_from_int(R, ZZ(7)));
  CHECK(eis_equal(eis_mul(w, eis_from_int(R, ZZ(7))), eis_one(R)));
}

TEST_CASE("frobenius on the coefficient ring") {
  auto R = make_eisenstein(5, 2, 3);
  // phi fixes Z_p[pi]: check on 1 + pi
  EisElt x = eis_one(R);
  x.c[1][0] = 1;
  CHECK(eis_equal(eis_phi(x), x));
  // phi^2 = id on a degree-two coefficient ring
  EisElt y = eis_one(R);
  y.c[0][1] = 3;  // a genuine Z_q digit
  y.c[2][1] = 2;
  CHECK(!eis_equal(eis_phi(y), y));
  CHECK(eis_equal(eis_phi(eis_phi(y)), y));
  // multiplicative
  CHECK(eis_equal(eis_phi(eis_mul(x, y)), eis_mul(eis_phi(x), eis_phi(y))));

  // the splitting root lives in Z_p[pi], so phi fixes it
  EisElt g = solve_splitting_root(R);
  CHECK(eis_equal(eis_phi(g), g));
}

TEST_CASE("rational scaling requires p-unit denominators") {
  auto R = make_eisenstein(5, 1, 3);
  EisElt x = eis_from_int(R, ZZ(10));
  EisElt y = eis_scale_q(frac(1, 2), x);
  CHECK(eis_equal(eis_scale(ZZ(2), y), x));
  CHECK_THROWS(eis_scale_q(frac(1, 5), x));
}

TEST_CASE("checked valuations refuse untrustworthy readings") {
  auto R = make_eisenstein(5, 1, 3, 6);  // trust threshold 3 - 6/4 = 3/2
  EisElt small = eis_from_int(R, ZZ(25));  // raw valuation 2 >= 3/2
  CHECK(eis_valuation_raw(small) == Valuation(QQ(2)));
  CHECK_THROWS_AS((void)eis_valuation_checked(small), PrecisionError);
  EisElt ok = eis_from_int(R, ZZ(5));
  CHECK(eis_valuation_checked(ok) == Valuation(QQ(1)));
  CHECK_THROWS_AS((void)eis_valuation_checked(eis_zero(R)), PrecisionError);
}
