#include "npl/eisenstein.hpp"

#include <algorithm>

namespace npl {

namespace {

ZqElt wrap(const EisensteinRing& R, const std::vector<ZZ>& digits) {
  return ZqElt{&R.fd, R.Np, digits};
}

void check_ring(const EisElt& a, const EisElt& b) {
  if (a.R != b.R) throw std::invalid_argument("mixed Eisenstein rings");
}

}  // namespace

QQ EisensteinRing::trust_threshold() const { return QQ(Np) - frac(guard, p - 1); }

EisensteinRing make_eisenstein(long p, long h, long Np, long guard) {
  if (!is_prime(p) || p < 3) throw std::invalid_argument("p must be an odd prime");
  if (Np < 2 || h < 1 || guard < 0) throw std::invalid_argument("bad ring parameters");
  EisensteinRing R;
  R.p = p;
  R.Np = Np;
  R.guard = guard;
  R.fd = make_extension(p, h);
  mpz_ui_pow_ui(R.pN.get_mpz_t(), (unsigned long)p, (unsigned long)Np);
  return R;
}

bool EisElt::is_zero() const {
  for (const auto& d : c)
    for (const ZZ& x : d)
      if (x != 0) return false;
  return true;
}

EisElt eis_zero(const EisensteinRing& R) {
  EisElt e;
  e.R = &R;
  e.c.assign(R.p - 1, std::vector<ZZ>(R.fd.n, ZZ(0)));
  return e;
}

EisElt eis_one(const EisensteinRing& R) {
  EisElt e = eis_zero(R);
  e.c[0][0] = 1;
  return e;
}

EisElt eis_from_int(const EisensteinRing& R, const ZZ& n) {
  EisElt e = eis_zero(R);
  ZZ v = n % R.pN;
  if (v < 0) v += R.pN;
  e.c[0][0] = v;
  return e;
}

EisElt eis_from_zq(const EisensteinRing& R, const ZqElt& y) {
  if (y.fd->p != R.p || y.fd->n != R.fd.n || y.N != R.Np)
    throw std::invalid_argument("Zq element does not match ring");
  EisElt e = eis_zero(R);
  e.c[0] = y.c;
  return e;
}

EisElt eis_add(const EisElt& a, const EisElt& b) {
  check_ring(a, b);
  const EisensteinRing& R = *a.R;
  EisElt e = eis_zero(R);
  for (size_t k = 0; k < e.c.size(); ++k)
    for (size_t j = 0; j < e.c[k].size(); ++j) {
      ZZ v = (a.c[k][j] + b.c[k][j]) % R.pN;
      e.c[k][j] = v;
    }
  return e;
}

EisElt eis_neg(const EisElt& a) {
  const EisensteinRing& R = *a.R;
  EisElt e = eis_zero(R);
  for (size_t k = 0; k < e.c.size(); ++k)
    for (size_t j = 0; j < e.c[k].size(); ++j)
      if (a.c[k][j] != 0) e.c[k][j] = R.pN - a.c[k][j];
  return e;
}

EisElt eis_sub(const EisElt& a, const EisElt& b) { return eis_add(a, eis_neg(b)); }

EisElt eis_mul(const EisElt& a, const EisElt& b) {
  check_ring(a, b);
  const EisensteinRing& R = *a.R;
  const long m = R.p - 1;
  // convolve pi-digits in Z_q, then fold pi^(m+r) = -p pi^r
  std::vector<ZqElt> acc(2 * m - 1, zq_zero(R.fd, R.Np));
  for (long i = 0; i < m; ++i) {
    bool zi = std::all_of(a.c[i].begin(), a.c[i].end(), [](const ZZ& x) { return x == 0; });
    if (zi) continue;
    ZqElt ai = wrap(R, a.c[i]);
    for (long j = 0; j < m; ++j) {
      ZqElt t = zq_mul(ai, wrap(R, b.c[j]));
      acc[i + j] = zq_add(acc[i + j], t);
    }
  }
  EisElt e = eis_zero(R);
  for (long k = 2 * m - 2; k >= m; --k) {
    ZqElt folded = acc[k];
    for (ZZ& x : folded.c) {
      x = (-(x * R.p)) % R.pN;
      if (x < 0) x += R.pN;
    }
    acc[k - m] = zq_add(acc[k - m], folded);
  }
  for (long k = 0; k < m; ++k) e.c[k] = acc[k].c;
  return e;
}

EisElt eis_pow(const EisElt& a, long e) {
  if (e < 0) throw std::invalid_argument("negative power");
  EisElt r = eis_one(*a.R);
  EisElt base = a;
  while (e) {
    if (e & 1) r = eis_mul(r, base);
    e >>= 1;
    if (e) base = eis_mul(base, base);
  }
  return r;
}

EisElt eis_scale(const ZZ& k, const EisElt& a) {
  const EisensteinRing& R = *a.R;
  EisElt e = eis_zero(R);
  ZZ kr = k % R.pN;
  if (kr < 0) kr += R.pN;
  for (size_t i = 0; i < e.c.size(); ++i)
    for (size_t j = 0; j < e.c[i].size(); ++j) e.c[i][j] = (a.c[i][j] * kr) % R.pN;
  return e;
}

EisElt eis_scale_q(const QQ& k, const EisElt& a) {
  const EisensteinRing& R = *a.R;
  ZZ den = k.get_den();
  ZZ inv;
  if (!mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), R.pN.get_mpz_t()))
    throw std::invalid_argument("denominator not prime to p");
  return eis_scale(k.get_num() * inv, a);
}

bool eis_equal(const EisElt& a, const EisElt& b) {
  check_ring(a, b);
  return a.c == b.c;
}

EisElt eis_phi(const EisElt& a) {
  const EisensteinRing& R = *a.R;
  EisElt e = eis_zero(R);
  for (size_t k = 0; k < e.c.size(); ++k) e.c[k] = frobenius_lift(wrap(R, a.c[k])).c;
  return e;
}

EisElt eis_invert_unit(const EisElt& a) {
  const EisensteinRing& R = *a.R;
  // invert the residue in F_q, then refine z <- z(2 - az)
  std::vector<long> res(R.fd.n);
  for (long j = 0; j < R.fd.n; ++j) {
    ZZ r = a.c[0][j] % R.p;
    res[j] = r.get_si();
  }
  FqElt r0 = fq_make(R.fd, res);
  if (r0.is_zero()) throw std::invalid_argument("not a unit");
  FqElt rinv = fq_pow(r0, R.fd.size() - 2);
  EisElt z = eis_zero(R);
  for (long j = 0; j < R.fd.n; ++j) z.c[0][j] = rinv.c[j];
  EisElt two = eis_from_int(R, ZZ(2));
  EisElt one = eis_one(R);
  for (int it = 0; it < 64; ++it) {
    EisElt az = eis_mul(a, z);
    if (eis_equal(az, one)) return z;
    z = eis_mul(z, eis_sub(two, az));
  }
  if (eis_equal(eis_mul(a, z), one)) return z;
  throw std::runtime_error("unit inversion failed to converge");
}

Valuation eis_valuation_raw(const EisElt& a) {
  const EisensteinRing& R = *a.R;
  Valuation best = Valuation::infinite();
  for (long k = 0; k < (long)a.c.size(); ++k)
    for (const ZZ& x : a.c[k]) {
      if (x == 0) continue;
      QQ v = frac(k, R.p - 1) + vp_int(x, R.p);
      if (Valuation(v) < best) best = Valuation(v);
    }
  return best;
}

Valuation eis_valuation_checked(const EisElt& a) {
  Valuation v = eis_valuation_raw(a);
  const QQ t = a.R->trust_threshold();
  if (!v.finite() || v.q() >= t)
    throw PrecisionError("valuation is beyond the working precision");
  return v;
}

std::vector<QQ> artin_hasse_coeffs(long p, long nmax) {
  std::vector<QQ> e(nmax + 1);
  e[0] = 1;
  for (long n = 1; n <= nmax; ++n) {
    QQ s = 0;
    for (long q = 1; q <= n; q *= p) s += e[n - q];
    e[n] = s / n;
    if (vp_rational(e[n], p) < Valuation(QQ(0)))
      throw std::logic_error("Artin-Hasse coefficient not p-integral");
  }
  return e;
}

EisElt solve_splitting_root(const EisensteinRing& R) {
  const long p = R.p;
  // terms (m, coeff) of g(u) = u - u^p + sum_{m>=2} (-1)^(s_m) p^(s_m - m) u^(p^m),
  // s_m = (p^m - 1)/(p - 1); gamma = pi u solves sum gamma^(p^m)/p^m = 0
  struct Term {
    long m;
    ZZ coeff;
  };
  std::vector<Term> terms;
  ZZ sm = 1;  // s_1
  for (long m = 2;; ++m) {
    sm = sm * p + 1;  // s_m
    ZZ ex = sm - m;
    if (ex >= R.Np) break;
    ZZ cf;
    mpz_ui_pow_ui(cf.get_mpz_t(), (unsigned long)p, ex.get_ui());
    if (mpz_odd_p(sm.get_mpz_t())) cf = -cf;
    terms.push_back({m, cf});
  }

  auto g = [&](const EisElt& u) {
    EisElt v = eis_sub(u, eis_pow(u, p));
    EisElt upm = u;
    long have = 0;  // upm = u^(p^have)
    for (const Term& t : terms) {
      while (have < t.m) {
        upm = eis_pow(upm, p);
        ++have;
      }
      v = eis_add(v, eis_scale(t.coeff, upm));
    }
    return v;
  };
  auto gprime = [&](const EisElt& u) {
    // 1 - p u^(p-1) + sum coeff p^m u^(p^m - 1)
    EisElt v = eis_sub(eis_one(R), eis_scale(ZZ(p), eis_pow(u, p - 1)));
    for (const Term& t : terms) {
      long pm = 1;  // p^m is small: s_m - m < Np bounds it
      for (long i = 0; i < t.m; ++i) pm *= p;
      EisElt upow = eis_pow(u, pm - 1);
      v = eis_add(v, eis_scale(t.coeff * pm, upow));
    }
    return v;
  };

  EisElt u = eis_one(R);
  for (int it = 0; it < 200; ++it) {
    EisElt gu = g(u);
    if (gu.is_zero()) break;
    u = eis_sub(u, eis_mul(gu, eis_invert_unit(gprime(u))));
  }
  if (!g(u).is_zero()) throw std::runtime_error("splitting root did not converge");

  // gamma = pi * u: shift digits up one slot, folding pi^(p-1) = -p
  EisElt gamma = eis_zero(R);
  for (long k = 0; k < p - 2; ++k) gamma.c[k + 1] = u.c[k];
  for (long j = 0; j < R.fd.n; ++j) {
    ZZ v = (-(u.c[p - 2][j] * p)) % R.pN;
    if (v < 0) v += R.pN;
    gamma.c[0][j] = v;
  }
  return gamma;
}

std::vector<EisElt> splitting_coeffs(const EisensteinRing& R, const EisElt& gamma,
                                     long nmax) {
  std::vector<QQ> e = artin_hasse_coeffs(R.p, nmax);
  std::vector<EisElt> out;
  out.reserve(nmax + 1);
  EisElt gpow = eis_one(R);
  for (long m = 0; m <= nmax; ++m) {
    if (m) gpow = eis_mul(gpow, gamma);
    EisElt gm = eis_scale_q(e[m], gpow);
    if (eis_valuation_raw(gm) < Valuation(frac(m, R.p - 1)))
      throw std::logic_error("splitting coefficient valuation too small");
    out.push_back(std::move(gm));
  }
  return out;
}

}  // namespace npl
