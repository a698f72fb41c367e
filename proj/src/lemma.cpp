#include "npl/lemma.hpp"

#include <stdexcept>

namespace npl {

namespace {

long lemma_k(long d, long p, long s) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (d < 2 || (p + 1) % d != 0) throw std::invalid_argument("need p = -1 mod d");
  long k = (p + 1) / d;
  if (k < 2) throw std::invalid_argument("need (p+1)/d >= 2");
  if (s < 1 || s > d - 1) throw std::invalid_argument("need 1 <= s <= d-1");
  return k;
}

QQ qpow(const QQ& x, long e) {
  QQ r = 1, b = x;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

RationalMatrix mat_mul(const RationalMatrix& A, const RationalMatrix& B) {
  RationalMatrix C;
  C.s = A.s;
  C.e.assign(C.s, std::vector<QQ>(C.s, QQ(0)));
  for (long i = 0; i < C.s; ++i)
    for (long k = 0; k < C.s; ++k) {
      if (A.e[i][k] == 0) continue;
      for (long j = 0; j < C.s; ++j) C.e[i][j] += A.e[i][k] * B.e[k][j];
    }
  return C;
}

QQ det(const RationalMatrix& m) {
  RationalMatrix w = m;
  QQ d = 1;
  for (long c = 0; c < w.s; ++c) {
    long piv = -1;
    for (long r = c; r < w.s; ++r)
      if (w.e[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return QQ(0);
    if (piv != c) {
      std::swap(w.e[piv], w.e[c]);
      d = -d;
    }
    d *= w.e[c][c];
    for (long r = c + 1; r < w.s; ++r) {
      if (w.e[r][c] == 0) continue;
      QQ f = w.e[r][c] / w.e[c][c];
      for (long j = c; j < w.s; ++j) w.e[r][j] -= f * w.e[c][j];
    }
  }
  return d;
}

}  // namespace

RationalMatrix build_M(long d, long p, long a, long s) {
  long k = lemma_k(d, p, s);
  if (a % p == 0) throw std::invalid_argument("a must be a p-unit");
  RationalMatrix m;
  m.s = s;
  m.e.assign(s, std::vector<QQ>(s, QQ(0)));
  for (long i = 1; i <= s; ++i)
    for (long j = 1; j <= s; ++j)
      m.e[i - 1][j - 1] = qpow(QQ(a), i + j) * reciprocal_factorial(k * i - i - j) *
                          reciprocal_factorial(i + j);
  return m;
}

std::pair<QQ, Valuation> det_and_valuation(const RationalMatrix& m, long p) {
  QQ dd = det(m);
  return {dd, vp_rational(dd, p)};
}

QQ lemma_c0(long k, long j) { return QQ(falling_factorial(ZZ((1 - k) * j - 1), j - 1)); }

std::vector<QQ> lemma_c_coeffs(long k, long j) {
  // evaluate both sides at x = -j + r: (x+j)[t] becomes r[t], zero for t > r
  std::vector<QQ> c(j);
  for (long r = 0; r < j; ++r) {
    long x = -j + r;
    QQ lhs(falling_factorial(ZZ((k - 1) * x - 1), j - 1));
    for (long t = 0; t < r; ++t) lhs -= c[t] * QQ(falling_factorial(ZZ(r), t));
    c[r] = lhs / QQ(factorial(r));
  }
  return c;
}

std::vector<QQ> falling_factorial_in_powers(long n) {
  std::vector<QQ> c{QQ(1)};
  for (long i = 0; i < n; ++i) {
    // c <- c * (x - i)
    std::vector<QQ> nc(c.size() + 1, QQ(0));
    for (size_t t = 0; t < c.size(); ++t) {
      nc[t + 1] += c[t];
      nc[t] -= QQ(i) * c[t];
    }
    c = std::move(nc);
  }
  return c;
}

QQ closed_form_det(long d, long p, long a, long s) {
  long k = lemma_k(d, p, s);
  if (a % p == 0) throw std::invalid_argument("a must be a p-unit");
  QQ r = qpow(QQ(a), s * (s + 1));
  if ((s / 2) % 2) r = -r;
  for (long i = 1; i <= s; ++i) {
    r *= qpow(QQ(i), s - i) * lemma_c0(k, i);
    r /= QQ(factorial(k * i - i - 1)) * QQ(factorial(i + s));
  }
  return r;
}

FactorizationReport verify_factorizations(long d, long p, long a, long s) {
  long k = lemma_k(d, p, s);
  RationalMatrix M = build_M(d, p, a, s);

  auto sq = [&](auto fill) {
    RationalMatrix m;
    m.s = s;
    m.e.assign(s, std::vector<QQ>(s, QQ(0)));
    for (long i = 1; i <= s; ++i)
      for (long j = 1; j <= s; ++j) m.e[i - 1][j - 1] = fill(i, j);
    return m;
  };

  RationalMatrix Mpp = sq([&](long i, long j) {
    return QQ(falling_factorial(ZZ(k * i - i - 1), j - 1) *
              falling_factorial(ZZ(i + s), s - j));
  });
  RationalMatrix M1 = sq(
      [&](long i, long t) { return QQ(falling_factorial(ZZ(i + s), s - t)); });
  std::vector<std::vector<QQ>> cc(s + 1);
  for (long j = 1; j <= s; ++j) cc[j] = lemma_c_coeffs(k, j);
  RationalMatrix M2 =
      sq([&](long t, long j) { return t <= j ? cc[j][j - t] : QQ(0); });
  RationalMatrix M11 = sq([&](long i, long t) { return qpow(QQ(i + s), t - 1); });
  std::vector<std::vector<QQ>> st(s);
  for (long n = 0; n < s; ++n) st[n] = falling_factorial_in_powers(n);
  RationalMatrix M12 = sq([&](long t, long j) {
    return t - 1 <= s - j ? st[s - j][t - 1] : QQ(0);
  });

  FactorizationReport rep;
  auto fail = [&](const std::string& what) {
    rep.ok = false;
    rep.detail = what;
    return rep;
  };

  // M'' relates to M by clearing a and the row factorials
  for (long i = 1; i <= s; ++i)
    for (long j = 1; j <= s; ++j) {
      QQ lhs = QQ(factorial(k * i - i - 1) * factorial(i + s)) * M.e[i - 1][j - 1];
      QQ rhs = qpow(QQ(a), i + j) * Mpp.e[i - 1][j - 1];
      if (lhs != rhs)
        return fail("row-scaling identity fails at entry (" + std::to_string(i) + "," +
                    std::to_string(j) + ")");
    }
  RationalMatrix P = mat_mul(M1, M2);
  for (long i = 0; i < s; ++i)
    for (long j = 0; j < s; ++j)
      if (P.e[i][j] != Mpp.e[i][j])
        return fail("M'' = M1 M2 fails at entry (" + std::to_string(i + 1) + "," +
                    std::to_string(j + 1) + ")");
  RationalMatrix P2 = mat_mul(M11, M12);
  for (long i = 0; i < s; ++i)
    for (long j = 0; j < s; ++j)
      if (P2.e[i][j] != M1.e[i][j])
        return fail("M1 = M11 M12 fails at entry (" + std::to_string(i + 1) + "," +
                    std::to_string(j + 1) + ")");

  QQ vand = 1;
  for (long t = 1; t <= s; ++t) vand *= qpow(QQ(t), s - t);
  if (det(M11) != vand) return fail("det M11 is not the Vandermonde product");
  QQ sign = (s / 2) % 2 ? QQ(-1) : QQ(1);
  if (det(M12) != sign) return fail("det M12 is not (-1)^floor(s/2)");
  QQ c0prod = 1;
  for (long i = 1; i <= s; ++i) c0prod *= lemma_c0(k, i);
  if (det(M2) != c0prod) return fail("det M2 is not the c_0 product");
  return rep;
}

}  // namespace npl
