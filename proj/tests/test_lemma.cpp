#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "npl/lemma.hpp"

using namespace npl;

TEST_CASE("matrix construction d=3 p=5") {
  auto m1 = build_M(3, 5, 1, 1);
  REQUIRE(m1.s == 1);
  CHECK(m1.e[0][0] == frac(1, 2));  // 1/(0! 2!)

  auto m2 = build_M(3, 5, 1, 2);
  CHECK(m2.e[0][0] == frac(1, 2));
  CHECK(m2.e[0][1] == QQ(0));  // (ki - i - j)! at -1 kills the entry
  CHECK(m2.e[1][0] == frac(1, 6));  // 1/(1! 3!)
  CHECK(m2.e[1][1] == frac(1, 24));  // 1/(0! 4!)

  CHECK_THROWS(build_M(4, 3, 1, 2));  // k = (p+1)/d = 1 is outside the range
  CHECK_THROWS(build_M(3, 5, 5, 1));  // a = 0 mod p
  CHECK_THROWS(build_M(3, 7, 1, 1));  // p = +1 mod d
}

TEST_CASE("a-scaling is diagonal conjugation") {
  auto m1 = build_M(3, 5, 1, 2);
  auto m2 = build_M(3, 5, 2, 2);
  for (long i = 0; i < 2; ++i)
    for (long j = 0; j < 2; ++j) {
      ZZ scale = 1;
      for (long t = 0; t < (i + 1) + (j + 1); ++t) scale *= 2;
      CHECK(m2.e[i][j] == QQ(scale) * m1.e[i][j]);
    }
}

TEST_CASE("determinants and closed form") {
  auto m = build_M(3, 5, 1, 2);
  auto [det, v] = det_and_valuation(m, 5);
  CHECK(det == frac(1, 48));
  CHECK(v == Valuation(QQ(0)));
  CHECK(closed_form_det(3, 5, 1, 2) == frac(1, 48));

  CHECK(closed_form_det(5, 19, 1, 4) == frac(13, ZZ("3495111375716352000000")));
  auto m4 = build_M(5, 19, 1, 4);
  auto [d4, v4] = det_and_valuation(m4, 19);
  CHECK(d4 == closed_form_det(5, 19, 1, 4));
  CHECK(v4 == Valuation(QQ(0)));
}

TEST_CASE("series coefficients") {
  CHECK(lemma_c0(2, 1) == 1);
  CHECK(lemma_c0(3, 1) == 1);    // empty falling factorial
  CHECK(lemma_c0(2, 2) == -3);   // (-2-1)[1] = -3
  CHECK(lemma_c0(2, 3) == 20);   // (-4)(-5) for k=2, j=3

  // c_0 is the t = 0 coefficient of the triangular solve
  for (long k : {2L, 3L, 4L}) {
    for (long j = 1; j <= 6; ++j) {
      auto c = lemma_c_coeffs(k, j);
      REQUIRE((long)c.size() == j);
      CHECK(c[0] == lemma_c0(k, j));
    }
  }

  // the expansion reproduces ((k-1)x - 1)[j-1] at fresh points
  for (long k : {2L, 4L}) {
    for (long j = 1; j <= 5; ++j) {
      auto c = lemma_c_coeffs(k, j);
      for (long x = 0; x <= j; ++x) {
        QQ lhs = QQ(falling_factorial(ZZ((k - 1) * x - 1), j - 1));
        QQ rhs = 0;
        for (long t = 0; t < j; ++t)
          rhs += c[t] * QQ(falling_factorial(ZZ(x + j), t));
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("falling factorial to power basis") {
  auto c3 = falling_factorial_in_powers(3);  // x(x-1)(x-2) = x^3 - 3x^2 + 2x
  CHECK(c3 == std::vector<QQ>({QQ(0), QQ(2), QQ(-3), QQ(1)}));
  auto c0 = falling_factorial_in_powers(0);
  CHECK(c0 == std::vector<QQ>({QQ(1)}));
}

TEST_CASE("unit valuations of the leading series terms") {
  // v_p(c_0(j)) = 0 for 1 <= j <= d-1 whenever k = (p+1)/d >= 2
  std::vector<std::pair<long, long>> grid = {
      {3, 5}, {3, 11}, {4, 7}, {4, 11}, {5, 19}, {5, 29}, {6, 11}, {7, 13}};
  for (auto& [d, p] : grid) {
    long k = (p + 1) / d;
    for (long j = 1; j < d; ++j) CHECK(vp_rational(lemma_c0(k, j), p) == Valuation(QQ(0)));
  }
}

TEST_CASE("factorization chain verifies") {
  for (auto& [d, p] : std::vector<std::pair<long, long>>{{3, 5}, {4, 7}, {5, 19}}) {
    for (long a : {1L, 2L}) {
      for (long s = 1; s < d; ++s) {
        auto rep = verify_factorizations(d, p, a, s);
        CHECK(rep.ok);
        if (!rep.ok) MESSAGE(rep.detail);
      }
    }
  }
}
