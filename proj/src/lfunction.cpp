#include "npl/lfunction.hpp"

#include <algorithm>
#include <numeric>
#include <thread>

namespace npl {

long CurveConfig::degree() const {
  long D = d;
  for (long i = 1; i < M; ++i) D *= p;
  return D;
}

void CurveConfig::validate() const {
  if (p < 2 || !is_prime(p)) throw std::invalid_argument("p must be prime");
  if (d < 2) throw std::invalid_argument("d must be at least 2");
  if (d % p == 0) throw std::invalid_argument("p must not divide d");
  if (h < 1 || M < 1) throw std::invalid_argument("h and M must be positive");
  if ((long)a.size() != h) throw std::invalid_argument("a must have h coordinates");
  bool nz = false;
  for (long c : a) {
    if (c < 0 || c >= p) throw std::invalid_argument("a coordinates must lie in [0,p)");
    if (c) nz = true;
  }
  if (!nz) throw std::invalid_argument("a must be nonzero");
}

namespace {

// Shared per-run context for the specialized enumerator. Field elements are
// coefficient vectors of length n; all arithmetic is mod W, which is p when
// only residues matter (M = 1) and p^M when Teichmueller digits are needed.
struct Hot {
  long n = 0;
  long W = 0;
  long p = 0;
  std::vector<long> mod;       // monic modulus, length n+1, coefficients in [0,p)
  std::vector<long long> ps;   // ps[i] = Tr(t^i) mod W
};

// z = x*y; z must not alias x or y; tmp has length 2n-1.
void hot_mul(const Hot& c, const long long* x, const long long* y, long long* z,
             long long* tmp) {
  const long n = c.n;
  std::fill(tmp, tmp + 2 * n - 1, 0LL);
  for (long i = 0; i < n; ++i) {
    if (!x[i]) continue;
    const long long xi = x[i];
    for (long j = 0; j < n; ++j) tmp[i + j] += xi * y[j];
  }
  for (long k = 2 * n - 2; k >= n; --k) {
    long long lead = tmp[k] % c.W;
    if (lead < 0) lead += c.W;
    if (!lead) continue;
    for (long j = 0; j < n; ++j) tmp[k - n + j] -= lead * c.mod[j];
  }
  for (long j = 0; j < n; ++j) {
    long long v = tmp[j] % c.W;
    z[j] = v < 0 ? v + c.W : v;
  }
}

// out = base^e, e >= 1; out must not alias base; sq and tmp are scratch (n, 2n-1).
void hot_pow(const Hot& c, const long long* base, unsigned long e, long long* out,
             long long* sq, long long* tmp) {
  int top = 63;
  while (!((e >> top) & 1UL)) --top;
  std::copy(base, base + c.n, out);
  for (int b = top - 1; b >= 0; --b) {
    hot_mul(c, out, out, sq, tmp);
    if ((e >> b) & 1UL) {
      hot_mul(c, sq, base, out, tmp);
    } else {
      std::copy(sq, sq + c.n, out);
    }
  }
}

struct WorkerArgs {
  const Hot* hot;
  unsigned long lo, hi;  // rank range [lo, hi), ranks >= 1
  long d, M;
  unsigned long Q;                 // field size p^n
  const std::vector<long long>* ahat;  // a (M=1) or Teich(a) (M>1), mod W
};

void enum_worker(const WorkerArgs& w, std::vector<unsigned long>& counts) {
  const Hot& c = *w.hot;
  const long n = c.n;
  std::vector<long long> x(n), y(n), pw(n), t1(n), t2(n), sq(n), tmp(2 * n - 1);
  // decode the starting rank into base-p digits, constant term fastest
  {
    unsigned long r = w.lo;
    for (long i = 0; i < n; ++i) {
      x[i] = (long long)(r % (unsigned long)c.p);
      r /= (unsigned long)c.p;
    }
  }
  for (unsigned long r = w.lo; r < w.hi; ++r) {
    const long long* yp;
    if (w.M == 1) {
      yp = x.data();
    } else {
      std::copy(x.begin(), x.end(), y.begin());
      for (long it = 1; it < w.M; ++it) {
        hot_pow(c, y.data(), w.Q, t1.data(), sq.data(), tmp.data());
        std::copy(t1.begin(), t1.end(), y.begin());
      }
      yp = y.data();
    }
    // fhat(y) = y^(d-1) * (y + ahat)
    if (w.d == 2) {
      std::copy(yp, yp + n, pw.begin());
    } else {
      hot_pow(c, yp, (unsigned long)(w.d - 1), pw.data(), sq.data(), tmp.data());
    }
    for (long i = 0; i < n; ++i) {
      long long v = yp[i] + (*w.ahat)[i];
      t1[i] = v >= c.W ? v - c.W : v;
    }
    hot_mul(c, pw.data(), t1.data(), t2.data(), tmp.data());
    long long tr = 0;
    for (long i = 0; i < n; ++i) tr += t2[i] * c.ps[i];
    tr %= c.W;
    if (tr < 0) tr += c.W;
    ++counts[(size_t)tr];
    // odometer step to the next rank
    for (long i = 0; i < n; ++i) {
      if (++x[i] < c.p) break;
      x[i] = 0;
    }
  }
}

unsigned long checked_pow(long p, long e, unsigned long cap) {
  unsigned long v = 1;
  for (long i = 0; i < e; ++i) {
    if (v > cap / (unsigned long)p) return 0;  // 0 signals overflow past cap
    v *= (unsigned long)p;
  }
  return v;
}

CyclotomicInt counts_to_sum(long p, long M, const std::vector<unsigned long>& counts) {
  std::vector<ZZ> v(counts.size());
  for (size_t i = 0; i < counts.size(); ++i) v[i] = ZZ((unsigned long)counts[i]);
  return cyclo_reduce(p, M, std::move(v));
}

}  // namespace

CyclotomicInt exp_sum(const CurveConfig& cfg, long m, const EnumOptions& opts) {
  cfg.validate();
  if (m < 1) throw std::invalid_argument("m must be positive");
  const long n = cfg.h * m;
  const unsigned long Q = checked_pow(cfg.p, n, ~0UL);
  if (Q == 0) throw BudgetExceeded(~0UL, opts.budget);  // overflows 64 bits
  if (Q - 1 > opts.budget) throw BudgetExceeded(Q - 1, opts.budget);

  const FieldDesc fd = make_extension(cfg.p, n);
  const long pM = (long)checked_pow(cfg.p, cfg.M, ~0UL >> 20);
  if (!pM) throw std::invalid_argument("p^M too large");
  const long W = pM;

  Hot hot;
  hot.n = n;
  hot.W = W;
  hot.p = cfg.p;
  hot.mod = fd.modulus;
  {
    std::vector<ZZ> ps = trace_power_sums(fd, cfg.M);
    hot.ps.resize(n);
    for (long i = 0; i < n; ++i) {
      ZZ r = ps[i] % W;
      if (r < 0) r += W;
      hot.ps[i] = r.get_si();
    }
  }

  // embed a, then lift it to its Teichmueller digits when M > 1
  std::vector<long long> ahat(n, 0);
  {
    FieldDesc base = make_extension(cfg.p, cfg.h);
    FqElt ae = embed(fq_make(base, cfg.a), fd);
    std::copy(ae.c.begin(), ae.c.end(), ahat.begin());
    if (cfg.M > 1) {
      std::vector<long long> t1(n), sq(n), tmp(2 * n - 1);
      for (long it = 1; it < cfg.M; ++it) {
        hot_pow(hot, ahat.data(), Q, t1.data(), sq.data(), tmp.data());
        ahat = t1;
      }
    }
  }

  const unsigned long total = Q - 1;
  int T = std::max(1, opts.threads);
  if (total < 4096) T = 1;
  if ((unsigned long)T > total) T = (int)total;

  std::vector<std::vector<unsigned long>> counts(T, std::vector<unsigned long>(pM, 0));
  std::vector<WorkerArgs> args(T);
  std::vector<std::thread> pool;
  unsigned long lo = 1;
  for (int t = 0; t < T; ++t) {
    unsigned long share = total / T + (t < (int)(total % T) ? 1 : 0);
    args[t] = WorkerArgs{&hot, lo, lo + share, cfg.d, cfg.M, Q, &ahat};
    lo += share;
  }
  if (T == 1) {
    enum_worker(args[0], counts[0]);
  } else {
    for (int t = 0; t < T; ++t)
      pool.emplace_back(enum_worker, std::cref(args[t]), std::ref(counts[t]));
    for (auto& th : pool) th.join();
  }
  std::vector<unsigned long> merged(pM, 0);
  for (int t = 0; t < T; ++t)
    for (long i = 0; i < pM; ++i) merged[i] += counts[t][i];
  return counts_to_sum(cfg.p, cfg.M, merged);
}

CyclotomicInt exp_sum_reference(const CurveConfig& cfg, long m) {
  cfg.validate();
  const long n = cfg.h * m;
  const FieldDesc fd = make_extension(cfg.p, n);
  const unsigned long Q = fd.size();
  long pM = 1;
  for (long i = 0; i < cfg.M; ++i) pM *= cfg.p;

  FieldDesc base = make_extension(cfg.p, cfg.h);
  FqElt ae = embed(fq_make(base, cfg.a), fd);
  ZqElt ahat = teichmuller_lift(ae, cfg.M);

  std::vector<unsigned long> counts(pM, 0);
  for (unsigned long r = 1; r < Q; ++r) {
    FqElt x = fq_make(fd, element_of_rank(fd, r));
    ZqElt y = teichmuller_lift(x, cfg.M);
    ZqElt fy = zq_mul(zq_pow(y, ZZ(cfg.d - 1)), zq_add(y, ahat));
    ZZ tr = trace_to_base(fy) % pM;
    if (tr < 0) tr += pM;
    ++counts[tr.get_ui()];
  }
  return counts_to_sum(cfg.p, cfg.M, counts);
}

std::vector<CyclotomicInt> l_from_sums(const std::vector<CyclotomicInt>& sums, long upto) {
  if (upto < 0) throw std::invalid_argument("upto must be nonnegative");
  if ((long)sums.size() < upto) throw std::invalid_argument("need S_1..S_upto");
  if (sums.empty()) return {cyclo_from_int(2, 1, 1)};
  const long p = sums[0].p, M = sums[0].M;
  std::vector<CyclotomicInt> c;
  c.push_back(cyclo_from_int(p, M, 1));
  for (long nn = 1; nn <= upto; ++nn) {
    CyclotomicInt acc = cyclo_zero(p, M);
    for (long mm = 1; mm <= nn; ++mm)
      acc = cyclo_add(acc, cyclo_mul(sums[mm - 1], c[nn - mm]));
    // n c_n = sum S_m c_{n-m}; the division is exact for a genuine L-series
    for (ZZ& co : acc.c) {
      if (!mpz_divisible_ui_p(co.get_mpz_t(), (unsigned long)nn))
        throw std::logic_error("L-coefficient recurrence produced a non-integer");
      mpz_divexact_ui(co.get_mpz_t(), co.get_mpz_t(), (unsigned long)nn);
    }
    c.push_back(std::move(acc));
  }
  return c;
}

std::vector<std::pair<long, Valuation>> coefficient_valuations(
    const std::vector<CyclotomicInt>& coeffs, long h) {
  std::vector<std::pair<long, Valuation>> out;
  for (size_t i = 0; i < coeffs.size(); ++i) {
    Valuation v = cyclo_valuation(coeffs[i]);
    if (v.finite()) v = Valuation(v.q() / h);
    out.emplace_back((long)i, v);
  }
  return out;
}

}  // namespace npl
