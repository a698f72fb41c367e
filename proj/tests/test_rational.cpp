#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "npl/rational.hpp"

using namespace npl;

TEST_CASE("fraction construction canonicalizes") {
  CHECK(frac(2, 4) == frac(1, 2));
  CHECK(frac(-3, -6) == frac(1, 2));
  CHECK(frac(3, -6) == frac(-1, 2));
  CHECK(frac(0, 7) == QQ(0));
}

TEST_CASE("primality") {
  CHECK(is_prime(2));
  CHECK(is_prime(5));
  CHECK(is_prime(19));
  CHECK(!is_prime(1));
  CHECK(!is_prime(4));
  CHECK(!is_prime(21));
}

TEST_CASE("falling factorial and factorials") {
  CHECK(falling_factorial(ZZ(5), 3) == 60);
  CHECK(falling_factorial(ZZ(5), 0) == 1);
  CHECK(falling_factorial(ZZ(2), 4) == 0);  // crosses zero
  CHECK(falling_factorial(ZZ(-2), 3) == -24);
  CHECK(factorial(0) == 1);
  CHECK(factorial(5) == 120);
  CHECK(reciprocal_factorial(3) == frac(1, 6));
  CHECK(reciprocal_factorial(0) == 1);
  CHECK(reciprocal_factorial(-1) == 0);
  CHECK(reciprocal_factorial(-5) == 0);
}

TEST_CASE("integer and rational valuations") {
  CHECK(vp_int(ZZ(50), 5) == 2);
  CHECK(vp_int(ZZ(-50), 5) == 2);
  CHECK(vp_int(ZZ(7), 5) == 0);
  CHECK(vp_rational(frac(1, 48), 5) == Valuation(QQ(0)));
  CHECK(vp_rational(frac(50, 3), 5) == Valuation(QQ(2)));
  CHECK(vp_rational(frac(3, 50), 5) == Valuation(QQ(-2)));
  CHECK(!vp_rational(QQ(0), 5).finite());
  CHECK_THROWS(vp_rational(frac(1, 2), 4));
}

TEST_CASE("valuation ordering with infinity maximal") {
  Valuation inf = Valuation::infinite();
  Valuation zero{QQ(0)}, one{QQ(1)};
  CHECK(zero < one);
  CHECK(one < inf);
  CHECK(!(inf < inf));
  CHECK(inf == Valuation::infinite());
  CHECK((zero + one) == one);
  CHECK(!(zero + inf).finite());
  CHECK(std::min(one, zero) == zero);
}

TEST_CASE("valuation axioms on random rationals") {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<long> num(-400, 400);
  std::uniform_int_distribution<long> den(1, 400);
  for (long prime : {2L, 5L, 19L}) {
    for (int it = 0; it < 300; ++it) {
      QQ x = frac(num(rng), den(rng));
      QQ y = frac(num(rng), den(rng));
      Valuation vx = vp_rational(x, prime), vy = vp_rational(y, prime);
      CHECK(vp_rational(x * y, prime) == vx + vy);
      Valuation vsum = vp_rational(x + y, prime);
      CHECK(vsum >= std::min(vx, vy));
      if (vx != vy) CHECK(vsum == std::min(vx, vy));
    }
  }
}
