#include "npl/fields.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace npl {

namespace {

using Poly = std::vector<long>;  // little-endian, coefficients in [0, p)

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& mod, long p) {
  long n = static_cast<long>(mod.size()) - 1;
  std::vector<long> t(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i])
      for (size_t j = 0; j < b.size(); ++j) t[i + j] = (t[i + j] + a[i] * b[j]) % p;
  for (long k = static_cast<long>(t.size()) - 1; k >= n; --k)
    if (t[k]) {
      long c = t[k];
      for (long j = 0; j <= n; ++j)
        t[k - n + j] = ((t[k - n + j] - c * mod[j]) % p + p) % p;
    }
  t.resize(n, 0);
  return t;
}

Poly poly_powmod(Poly a, ZZ e, const Poly& mod, long p) {
  long n = static_cast<long>(mod.size()) - 1;
  Poly r(n, 0);
  r[0] = 1;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = poly_mulmod(r, a, mod, p);
    a = poly_mulmod(a, a, mod, p);
    e >>= 1;
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, long p) {
  trim(a);
  trim(b);
  auto inv = [p](long x) {
    long r = 1, base = ((x % p) + p) % p, e = p - 2;
    while (e) {
      if (e & 1) r = r * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return r;
  };
  while (!b.empty()) {
    // a mod b
    long db = static_cast<long>(b.size()) - 1;
    long ib = inv(b.back());
    while (static_cast<long>(a.size()) - 1 >= db && !a.empty()) {
      long da = static_cast<long>(a.size()) - 1;
      long c = a.back() * ib % p;
      for (long j = 0; j <= db; ++j)
        a[da - db + j] = ((a[da - db + j] - c * b[j]) % p + p) % p;
      trim(a);
    }
    std::swap(a, b);
  }
  return a;
}

std::vector<long> prime_factors(unsigned long n) {
  std::vector<long> f;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      f.push_back(static_cast<long>(d));
      while (n % d == 0) n /= d;
    }
  if (n > 1) f.push_back(static_cast<long>(n));
  return f;
}

}  // namespace

unsigned long FieldDesc::size() const {
  unsigned long s = 1;
  for (long i = 0; i < n; ++i) {
    if (s > (~0ul) / static_cast<unsigned long>(p))
      throw std::overflow_error("field size exceeds 64 bits");
    s *= static_cast<unsigned long>(p);
  }
  return s;
}

bool is_irreducible(const std::vector<long>& poly, long p) {
  long n = static_cast<long>(poly.size()) - 1;
  if (n < 1 || poly[n] != 1) return false;
  if (n == 1) return true;
  Poly t(n, 0);
  if (n >= 2)
    t[1] = 1;
  // s_k = t^(p^k) mod poly, by repeated p-th powers
  Poly s = t;
  std::vector<Poly> stations(n + 1);
  for (long k = 1; k <= n; ++k) {
    s = poly_powmod(s, ZZ(p), poly, p);
    stations[k] = s;
  }
  Poly diff = stations[n];
  diff[1] = ((diff[1] - 1) % p + p) % p;
  trim(diff);
  if (!diff.empty()) return false;  // t^(p^n) != t
  for (long l : prime_factors(static_cast<unsigned long>(n))) {
    Poly d = stations[n / l];
    d[1] = ((d[1] - 1) % p + p) % p;
    trim(d);
    Poly g = poly_gcd(poly, d, p);
    if (static_cast<long>(g.size()) - 1 != 0) return false;
  }
  return true;
}

FieldDesc make_extension(long p, long n) {
  if (!is_prime(p)) throw std::invalid_argument("make_extension: p not prime");
  if (n < 1) throw std::invalid_argument("make_extension: degree < 1");
  FieldDesc fd;
  fd.p = p;
  fd.n = n;
  unsigned long total = 1;
  for (long i = 0; i < n; ++i) total *= static_cast<unsigned long>(p);
  for (unsigned long r = 0; r < total; ++r) {
    std::vector<long> cand(n + 1);
    unsigned long x = r;
    for (long i = 0; i < n; ++i) {
      cand[i] = static_cast<long>(x % static_cast<unsigned long>(p));
      x /= static_cast<unsigned long>(p);
    }
    cand[n] = 1;
    if (is_irreducible(cand, p)) {
      fd.modulus = cand;
      return fd;
    }
  }
  throw std::logic_error("no irreducible polynomial found");  // impossible
}

std::vector<long> element_of_rank(const FieldDesc& fd, unsigned long r) {
  std::vector<long> c(fd.n);
  for (long i = 0; i < fd.n; ++i) {
    c[i] = static_cast<long>(r % static_cast<unsigned long>(fd.p));
    r /= static_cast<unsigned long>(fd.p);
  }
  return c;
}

unsigned long rank_of(const FieldDesc& fd, const std::vector<long>& x) {
  unsigned long r = 0;
  for (long i = fd.n - 1; i >= 0; --i)
    r = r * static_cast<unsigned long>(fd.p) + static_cast<unsigned long>(x[i]);
  return r;
}

bool FqElt::is_zero() const {
  return std::all_of(c.begin(), c.end(), [](long x) { return x == 0; });
}

FqElt fq_make(const FieldDesc& fd, std::vector<long> c) {
  if (static_cast<long>(c.size()) != fd.n) throw std::invalid_argument("fq_make: size");
  for (auto& x : c) x = ((x % fd.p) + fd.p) % fd.p;
  return FqElt{&fd, std::move(c)};
}

FqElt fq_zero(const FieldDesc& fd) { return FqElt{&fd, std::vector<long>(fd.n, 0)}; }

FqElt fq_one(const FieldDesc& fd) {
  auto e = fq_zero(fd);
  e.c[0] = 1;
  return e;
}

FqElt fq_add(const FqElt& a, const FqElt& b) {
  FqElt r = a;
  for (long i = 0; i < a.fd->n; ++i) r.c[i] = (a.c[i] + b.c[i]) % a.fd->p;
  return r;
}

FqElt fq_mul(const FqElt& a, const FqElt& b) {
  return FqElt{a.fd, poly_mulmod(a.c, b.c, a.fd->modulus, a.fd->p)};
}

FqElt fq_pow(const FqElt& a, unsigned long e) {
  FqElt r = fq_one(*a.fd), base = a;
  while (e) {
    if (e & 1) r = fq_mul(r, base);
    base = fq_mul(base, base);
    e >>= 1;
  }
  return r;
}

FqElt multiplicative_generator(const FieldDesc& fd) {
  unsigned long order = fd.size() - 1;
  auto factors = prime_factors(order);
  for (unsigned long r = 1; r < fd.size(); ++r) {
    FqElt x{&fd, element_of_rank(fd, r)};
    bool gen = true;
    for (long l : factors)
      if (fq_pow(x, order / static_cast<unsigned long>(l)) == fq_one(fd)) {
        gen = false;
        break;
      }
    if (gen) return x;
  }
  throw std::logic_error("no generator");  // impossible
}

std::vector<long> minimal_polynomial(const FqElt& a) {
  const FieldDesc& fd = *a.fd;
  long p = fd.p, n = fd.n;
  std::vector<std::vector<long>> pows;
  FqElt cur = fq_one(fd);
  for (long e = 0; e <= n; ++e) {
    pows.push_back(cur.c);
    cur = fq_mul(cur, a);
  }
  auto inv = [p](long x) {
    long r = 1, base = ((x % p) + p) % p, e = p - 2;
    while (e) {
      if (e & 1) r = r * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return r;
  };
  for (long e = 1; e <= n; ++e) {
    // solve sum_{i<e} l_i a^i = -a^e over F_p
    std::vector<std::vector<long>> ab(n, std::vector<long>(e + 1));
    for (long row = 0; row < n; ++row) {
      for (long i = 0; i < e; ++i) ab[row][i] = pows[i][row];
      ab[row][e] = (p - pows[e][row]) % p;
    }
    long rank = 0;
    std::vector<long> pivot_col;
    for (long col = 0; col < e && rank < n; ++col) {
      long sel = -1;
      for (long row = rank; row < n; ++row)
        if (ab[row][col]) {
          sel = row;
          break;
        }
      if (sel < 0) continue;
      std::swap(ab[rank], ab[sel]);
      long iv = inv(ab[rank][col]);
      for (auto& x : ab[rank]) x = x * iv % p;
      for (long row = 0; row < n; ++row)
        if (row != rank && ab[row][col]) {
          long f = ab[row][col];
          for (long j = 0; j <= e; ++j)
            ab[row][j] = ((ab[row][j] - f * ab[rank][j]) % p + p) % p;
        }
      pivot_col.push_back(col);
      ++rank;
    }
    bool consistent = true;
    for (long row = 0; row < n; ++row) {
      bool zero_lhs = true;
      for (long j = 0; j < e; ++j)
        if (ab[row][j]) zero_lhs = false;
      if (zero_lhs && ab[row][e]) consistent = false;
    }
    if (consistent && rank == e) {
      std::vector<long> mp(e + 1, 0);
      for (long k = 0; k < rank; ++k) mp[pivot_col[k]] = ab[k][e];
      mp[e] = 1;
      return mp;
    }
  }
  throw std::logic_error("minimal_polynomial: no relation found");  // impossible
}

FqElt embed(const FqElt& a, const FieldDesc& target) {
  if (a.fd->p != target.p) throw std::invalid_argument("embed: different p");
  if (a.fd->n == 1) {
    auto r = fq_zero(target);
    r.c[0] = a.c[0];
    return r;
  }
  if (target.n % a.fd->n != 0) throw std::invalid_argument("embed: degree mismatch");
  auto mp = minimal_polynomial(a);
  long e = static_cast<long>(mp.size()) - 1;
  if (e == 1) {
    auto r = fq_zero(target);
    r.c[0] = (target.p - mp[0]) % target.p;
    return r;
  }
  for (unsigned long r = 0; r < target.size(); ++r) {
    FqElt x{&target, element_of_rank(target, r)};
    FqElt acc = fq_zero(target);
    for (long j = e; j >= 0; --j) {
      acc = fq_mul(acc, x);
      acc.c[0] = (acc.c[0] + mp[j]) % target.p;
    }
    if (acc.is_zero()) return x;
  }
  throw std::logic_error("embed: no root in target field");
}

namespace {

ZZ pow_pN(long p, long N) {
  ZZ m;
  mpz_ui_pow_ui(m.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(N));
  return m;
}

}  // namespace

ZqElt zq_make(const FieldDesc& fd, long N, std::vector<ZZ> c) {
  if (static_cast<long>(c.size()) != fd.n) throw std::invalid_argument("zq_make: size");
  ZZ m = pow_pN(fd.p, N);
  for (auto& x : c) {
    x %= m;
    if (x < 0) x += m;
  }
  return ZqElt{&fd, N, std::move(c)};
}

ZqElt zq_from_residue(const FqElt& x, long N) {
  std::vector<ZZ> c(x.c.begin(), x.c.end());
  return ZqElt{x.fd, N, std::move(c)};
}

ZqElt zq_zero(const FieldDesc& fd, long N) { return ZqElt{&fd, N, std::vector<ZZ>(fd.n, 0)}; }

ZqElt zq_one(const FieldDesc& fd, long N) {
  auto e = zq_zero(fd, N);
  e.c[0] = 1;
  return e;
}

ZqElt zq_add(const ZqElt& a, const ZqElt& b) {
  ZZ m = pow_pN(a.fd->p, a.N);
  ZqElt r = a;
  for (long i = 0; i < a.fd->n; ++i) {
    r.c[i] += b.c[i];
    if (r.c[i] >= m) r.c[i] -= m;
  }
  return r;
}

ZqElt zq_sub(const ZqElt& a, const ZqElt& b) {
  ZZ m = pow_pN(a.fd->p, a.N);
  ZqElt r = a;
  for (long i = 0; i < a.fd->n; ++i) {
    r.c[i] -= b.c[i];
    if (r.c[i] < 0) r.c[i] += m;
  }
  return r;
}

ZqElt zq_mul(const ZqElt& a, const ZqElt& b) {
  const FieldDesc& fd = *a.fd;
  long n = fd.n;
  ZZ m = pow_pN(fd.p, a.N);
  std::vector<ZZ> t(2 * n - 1, ZZ(0));
  for (long i = 0; i < n; ++i)
    if (a.c[i] != 0)
      for (long j = 0; j < n; ++j) t[i + j] += a.c[i] * b.c[j];
  for (long k = 2 * n - 2; k >= n; --k)
    if (t[k] != 0) {
      ZZ c = t[k];
      for (long j = 0; j < n; ++j) t[k - n + j] -= c * fd.modulus[j];
      t[k] = 0;
    }
  t.resize(n);
  for (auto& x : t) {
    x %= m;
    if (x < 0) x += m;
  }
  return ZqElt{&fd, a.N, std::move(t)};
}

ZqElt zq_pow(const ZqElt& a, const ZZ& e) {
  ZqElt r = zq_one(*a.fd, a.N), base = a;
  ZZ k = e;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) r = zq_mul(r, base);
    base = zq_mul(base, base);
    k >>= 1;
  }
  return r;
}

bool zq_equal(const ZqElt& a, const ZqElt& b) { return a.N == b.N && a.c == b.c; }

FqElt zq_residue(const ZqElt& a) {
  std::vector<long> c(a.fd->n);
  for (long i = 0; i < a.fd->n; ++i) {
    ZZ r = a.c[i] % a.fd->p;
    c[i] = r.get_si();
  }
  return FqElt{a.fd, std::move(c)};
}

ZqElt teichmuller_lift(const FqElt& x, long N) {
  ZqElt y = zq_from_residue(x, N);
  ZZ Q = pow_pN(x.fd->p, x.fd->n);
  for (long k = 1; k < N; ++k) y = zq_pow(y, Q);
  return y;
}

std::vector<ZZ> trace_power_sums(const FieldDesc& fd, long N) {
  long n = fd.n;
  ZZ m = pow_pN(fd.p, N);
  std::vector<ZZ> ps(n);
  ps[0] = ZZ(n) % m;
  for (long k = 1; k < n; ++k) {
    ZZ s = ZZ(k) * fd.modulus[n - k];
    for (long j = 1; j < k; ++j) s += ZZ(fd.modulus[n - j]) * ps[k - j];
    s = (-s) % m;
    if (s < 0) s += m;
    ps[k] = s;
  }
  return ps;
}

ZZ trace_to_base(const ZqElt& y) {
  auto ps = trace_power_sums(*y.fd, y.N);
  ZZ m = pow_pN(y.fd->p, y.N);
  ZZ s = 0;
  for (long i = 0; i < y.fd->n; ++i) s += y.c[i] * ps[i];
  s %= m;
  if (s < 0) s += m;
  return s;
}

ZqElt zq_invert_unit(const ZqElt& w) {
  const FieldDesc& fd = *w.fd;
  // residue inverse, then quadratic Hensel refinement z <- z(2 - wz)
  FqElt wr = zq_residue(w);
  unsigned long Q = fd.size();
  FqElt zr = fq_pow(wr, Q - 2);
  ZqElt z = zq_from_residue(zr, w.N);
  ZqElt two = zq_zero(fd, w.N);
  two.c[0] = 2;
  for (long it = 0; it < w.N + 2; ++it) {
    ZqElt wz = zq_mul(w, z);
    z = zq_mul(z, zq_sub(two, wz));
    if (zq_equal(zq_mul(w, z), zq_one(fd, w.N))) break;
  }
  return z;
}

namespace {

ZqElt eval_modulus(const ZqElt& x, bool derivative) {
  const FieldDesc& fd = *x.fd;
  long n = fd.n;
  ZqElt acc = zq_zero(fd, x.N);
  for (long j = n; j >= (derivative ? 1 : 0); --j) {
    acc = zq_mul(acc, x);
    ZZ coef = (j == n) ? ZZ(1) : ZZ(fd.modulus[j]);
    if (derivative) coef *= j;
    acc.c[0] += coef;
  }
  ZZ m = pow_pN(fd.p, x.N);
  acc.c[0] %= m;
  if (acc.c[0] < 0) acc.c[0] += m;
  return acc;
}

}  // namespace

ZqElt frobenius_generator_image(const FieldDesc& fd, long N) {
  using Key = std::tuple<long, long, long, std::vector<long>>;
  static std::map<Key, std::vector<ZZ>> cache;
  static std::mutex mu;
  Key key{fd.p, fd.n, N, fd.modulus};
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return ZqElt{&fd, N, it->second};
  }
  // start from t^p in the residue field, Newton-lift to a root of the modulus
  FqElt gen = fq_zero(fd);
  gen.c[1 % fd.n] = 1;
  FqElt r0 = fq_pow(gen, static_cast<unsigned long>(fd.p));
  ZqElt R = zq_from_residue(r0, N);
  for (long it = 0; it < N + 2; ++it) {
    ZqElt val = eval_modulus(R, false);
    bool zero = std::all_of(val.c.begin(), val.c.end(), [](const ZZ& z) { return z == 0; });
    if (zero) break;
    ZqElt der = eval_modulus(R, true);
    R = zq_sub(R, zq_mul(val, zq_invert_unit(der)));
  }
  {
    ZqElt check = eval_modulus(R, false);
    bool zero = std::all_of(check.c.begin(), check.c.end(), [](const ZZ& z) { return z == 0; });
    if (!zero) throw std::logic_error("frobenius: Hensel lift failed (corrupt modulus?)");
  }
  std::lock_guard<std::mutex> lk(mu);
  cache.insert({key, R.c});
  return R;
}

ZqElt frobenius_lift(const ZqElt& y) {
  const FieldDesc& fd = *y.fd;
  if (fd.n == 1) return y;
  ZqElt R = frobenius_generator_image(fd, y.N);
  ZqElt acc = zq_zero(fd, y.N);
  ZZ m = pow_pN(fd.p, y.N);
  for (long j = fd.n - 1; j >= 0; --j) {
    acc = zq_mul(acc, R);
    acc.c[0] += y.c[j];
    acc.c[0] %= m;
  }
  return acc;
}

}  // namespace npl
