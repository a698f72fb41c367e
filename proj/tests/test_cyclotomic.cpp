#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "npl/cyclotomic.hpp"

using namespace npl;

TEST_CASE("degrees and basic elements") {
  CHECK(cyclo_degree(5, 1) == 4);
  CHECK(cyclo_degree(5, 2) == 20);
  CHECK(cyclo_degree(3, 3) == 18);
  CHECK(cyclo_zero(5, 1).is_zero());
  CHECK(cyclo_from_int(5, 1, ZZ(7)).c == std::vector<ZZ>({ZZ(7), ZZ(0), ZZ(0), ZZ(0)}));
}

TEST_CASE("character values and reduction") {
  // zeta^4 = -(1 + zeta + zeta^2 + zeta^3) for p = 5, M = 1
  auto z4 = character_value(5, 1, 4);
  CHECK(z4.c == std::vector<ZZ>({ZZ(-1), ZZ(-1), ZZ(-1), ZZ(-1)}));
  CHECK(character_value(5, 1, 0) == cyclo_from_int(5, 1, ZZ(1)));

  // 1 + zeta + ... + zeta^4 = 0
  auto all = cyclo_reduce(5, 1, {ZZ(1), ZZ(1), ZZ(1), ZZ(1), ZZ(1)});
  CHECK(all.is_zero());

  // exponent wraps mod p^M
  CHECK(character_value(5, 1, 4) == cyclo_reduce(5, 1, {ZZ(0), ZZ(0), ZZ(0), ZZ(0), ZZ(1)}));

  // multiplicativity of character values
  for (long a = 0; a < 25; ++a)
    for (long b : {3L, 11L})
      CHECK(character_value(5, 2, (a + b) % 25) ==
            cyclo_mul(character_value(5, 2, a), character_value(5, 2, b)));
}

TEST_CASE("resultants") {
  CHECK(resultant({ZZ(-2), ZZ(1)}, {ZZ(-7), ZZ(1)}) == -5);
  CHECK(resultant({ZZ(1), ZZ(0), ZZ(1)}, {ZZ(-2), ZZ(0), ZZ(1)}) == 9);
  // res(Phi_5, t - 1) = Phi_5(1) = 5 up to sign convention; check via valuation
  auto one_minus_zeta = cyclo_sub(cyclo_from_int(5, 1, ZZ(1)), character_value(5, 1, 1));
  CHECK(cyclo_valuation(one_minus_zeta) == Valuation(frac(1, 4)));
}

TEST_CASE("valuations on the cyclotomic field") {
  CHECK(!cyclo_valuation(cyclo_zero(5, 1)).finite());
  CHECK(cyclo_valuation(cyclo_from_int(5, 1, ZZ(1))) == Valuation(QQ(0)));
  CHECK(cyclo_valuation(cyclo_from_int(5, 1, ZZ(5))) == Valuation(QQ(1)));
  CHECK(cyclo_valuation(cyclo_from_int(5, 1, ZZ(50))) == Valuation(QQ(2)));
  CHECK(cyclo_valuation(character_value(5, 1, 3)) == Valuation(QQ(0)));

  // pi = 1 - zeta is a uniformizer: v(pi^k) = k/4
  auto pi = cyclo_sub(cyclo_from_int(5, 1, ZZ(1)), character_value(5, 1, 1));
  CyclotomicInt pk = cyclo_from_int(5, 1, ZZ(1));
  for (long k = 1; k <= 8; ++k) {
    pk = cyclo_mul(pk, pi);
    CHECK(cyclo_valuation(pk) == Valuation(frac(k, 4)));
  }

  // depth two: v(1 - zeta_25) = 1/20
  auto pi2 = cyclo_sub(cyclo_from_int(5, 2, ZZ(1)), character_value(5, 2, 1));
  CHECK(cyclo_valuation(pi2) == Valuation(frac(1, 20)));
  CHECK(cyclo_valuation(cyclo_mul(pi2, pi2)) == Valuation(frac(2, 20)));
}

TEST_CASE("galois twists preserve valuation") {
  auto x = cyclo_add(cyclo_from_int(5, 1, ZZ(3)),
                     cyclo_scale(ZZ(10), character_value(5, 1, 2)));
  for (long u : {1L, 2L, 3L, 4L}) {
    auto tx = galois_twist(x, u);
    CHECK(cyclo_valuation(tx) == cyclo_valuation(x));
  }
  // twist by 1 is the identity
  CHECK(galois_twist(x, 1) == x);
}
