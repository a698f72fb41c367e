#include "npl/cyclotomic.hpp"

#include <algorithm>
#include <stdexcept>

namespace npl {

namespace {

long ipow(long b, long e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

long cyclo_degree(long p, long M) { return ipow(p, M - 1) * (p - 1); }

bool CyclotomicInt::is_zero() const {
  return std::all_of(c.begin(), c.end(), [](const ZZ& x) { return x == 0; });
}

CyclotomicInt cyclo_zero(long p, long M) {
  return CyclotomicInt{p, M, std::vector<ZZ>(cyclo_degree(p, M), ZZ(0))};
}

CyclotomicInt cyclo_from_int(long p, long M, const ZZ& n) {
  auto x = cyclo_zero(p, M);
  x.c[0] = n;
  return x;
}

CyclotomicInt cyclo_reduce(long p, long M, std::vector<ZZ> coeffs) {
  long deg = cyclo_degree(p, M);
  long P = ipow(p, M - 1);
  // Phi = sum_{i<p} t^(iP): t^deg = -sum_{i<p-1} t^(iP).
  // The i = p-1 subtraction lands on k itself and zeroes it.
  for (long k = static_cast<long>(coeffs.size()) - 1; k >= deg; --k) {
    ZZ v = coeffs[k];
    if (v != 0)
      for (long i = 0; i < p; ++i) coeffs[k - deg + i * P] -= v;
  }
  coeffs.resize(deg, ZZ(0));
  return CyclotomicInt{p, M, std::move(coeffs)};
}

CyclotomicInt character_value(long p, long M, long c) {
  if (c < 0 || c >= ipow(p, M)) throw std::invalid_argument("character_value: range");
  std::vector<ZZ> v(c + 1, ZZ(0));
  v[c] = 1;
  return cyclo_reduce(p, M, std::move(v));
}

CyclotomicInt cyclo_add(const CyclotomicInt& a, const CyclotomicInt& b) {
  CyclotomicInt r = a;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
  return r;
}

CyclotomicInt cyclo_sub(const CyclotomicInt& a, const CyclotomicInt& b) {
  CyclotomicInt r = a;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
  return r;
}

CyclotomicInt cyclo_mul(const CyclotomicInt& a, const CyclotomicInt& b) {
  long deg = cyclo_degree(a.p, a.M);
  std::vector<ZZ> t(2 * deg - 1, ZZ(0));
  for (long i = 0; i < deg; ++i)
    if (a.c[i] != 0)
      for (long j = 0; j < deg; ++j) t[i + j] += a.c[i] * b.c[j];
  return cyclo_reduce(a.p, a.M, std::move(t));
}

CyclotomicInt cyclo_scale(const ZZ& k, const CyclotomicInt& a) {
  CyclotomicInt r = a;
  for (auto& x : r.c) x *= k;
  return r;
}

CyclotomicInt galois_twist(const CyclotomicInt& a, long u) {
  long pM = ipow(a.p, a.M);
  if (u % a.p == 0) throw std::invalid_argument("galois_twist: u not coprime to p");
  long deg = cyclo_degree(a.p, a.M);
  std::vector<ZZ> t(pM, ZZ(0));
  for (long i = 0; i < deg; ++i)
    if (a.c[i] != 0) t[(static_cast<unsigned long>(i) * u) % pM] += a.c[i];
  return cyclo_reduce(a.p, a.M, std::move(t));
}

ZZ resultant(const std::vector<ZZ>& fin, const std::vector<ZZ>& gin) {
  auto f = fin, g = gin;
  while (!f.empty() && f.back() == 0) f.pop_back();
  while (!g.empty() && g.back() == 0) g.pop_back();
  if (f.empty() || g.empty()) return ZZ(0);
  long df = static_cast<long>(f.size()) - 1, dg = static_cast<long>(g.size()) - 1;
  long n = df + dg;
  if (n == 0) return ZZ(1);
  // Sylvester matrix: dg rows of f, df rows of g (descending-power layout)
  std::vector<std::vector<ZZ>> m(n, std::vector<ZZ>(n, ZZ(0)));
  for (long r = 0; r < dg; ++r)
    for (long j = 0; j <= df; ++j) m[r][r + df - j] = f[j];
  for (long r = 0; r < df; ++r)
    for (long j = 0; j <= dg; ++j) m[dg + r][r + dg - j] = g[j];
  // Bareiss fraction-free elimination
  ZZ prev = 1;
  long sign = 1;
  for (long k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      long sel = -1;
      for (long r = k + 1; r < n; ++r)
        if (m[r][k] != 0) {
          sel = r;
          break;
        }
      if (sel < 0) return ZZ(0);
      std::swap(m[k], m[sel]);
      sign = -sign;
    }
    for (long i = k + 1; i < n; ++i)
      for (long j = k + 1; j < n; ++j) {
        ZZ num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

Valuation cyclo_valuation(const CyclotomicInt& x) {
  if (x.is_zero()) return Valuation::infinite();
  long deg = cyclo_degree(x.p, x.M);
  long P = deg / (x.p - 1);  // p^(M-1)
  std::vector<ZZ> phi(deg + 1, ZZ(0));
  for (long i = 0; i < x.p; ++i) phi[i * P] = 1;
  ZZ res = resultant(phi, x.c);
  if (res == 0) throw std::logic_error("cyclo_valuation: zero resultant for nonzero element");
  return Valuation(frac(ZZ(vp_int(res, x.p)), ZZ(deg)));
}

}  // namespace npl
