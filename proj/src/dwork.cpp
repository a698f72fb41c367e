#include "npl/dwork.hpp"

#include <algorithm>

namespace npl {

void DworkParams::fill_defaults() {
  if (trunc == 0) trunc = d * (d + 3) / 2;
  if (Np == 0) Np = d + 2;
}

void DworkParams::validate() const {
  if (!is_prime(p) || p < 3) throw std::invalid_argument("p must be an odd prime");
  if (d < 2 || (p + 1) % d != 0)
    throw std::invalid_argument("need p = -1 mod d");
  if (h < 1 || (long)a.size() != h) throw std::invalid_argument("bad h or a");
  if (trunc < d || Np < 3) throw std::invalid_argument("trunc or Np too small");
}

const EisElt& DworkMatrix::core(long i, long j) const {
  long k = prm.p * i - j;
  return k < 0 ? zero : F[k];
}

DworkMatrix build_dwork(const DworkParams& prm_in) {
  DworkParams prm = prm_in;
  prm.fill_defaults();
  prm.validate();

  DworkMatrix dm;
  dm.prm = prm;
  dm.ring = std::make_shared<EisensteinRing>(
      make_eisenstein(prm.p, prm.h, prm.Np, prm.guard));
  const EisensteinRing& R = *dm.ring;
  dm.zero = eis_zero(R);

  const long maxF = prm.p * (prm.trunc - 1);
  const long nmax = std::max(maxF / prm.d, maxF / (prm.d - 1)) + 1;
  EisElt gamma = solve_splitting_root(R);
  std::vector<EisElt> gm = splitting_coeffs(R, gamma, nmax);

  ZqElt ahat = teichmuller_lift(fq_make(R.fd, prm.a), prm.Np);
  std::vector<EisElt> apow;
  apow.push_back(eis_one(R));
  for (long n = 1; n <= maxF / (prm.d - 1); ++n)
    apow.push_back(eis_mul(apow.back(), eis_from_zq(R, ahat)));

  // F_k = sum over d m + (d-1) n = k of gamma_m gamma_n ahat^n
  dm.F.reserve(maxF + 1);
  for (long k = 0; k <= maxF; ++k) {
    EisElt acc = eis_zero(R);
    for (long m = 0; m * prm.d <= k; ++m) {
      long r = k - m * prm.d;
      if (r % (prm.d - 1)) continue;
      long n = r / (prm.d - 1);
      acc = eis_add(acc, eis_mul(gm[m], eis_mul(gm[n], apow[n])));
    }
    Valuation v = eis_valuation_raw(acc);
    if (v < Valuation(frac(k, prm.d * (prm.p - 1))))
      throw std::logic_error("matrix entry valuation below its lower bound");
    dm.F.push_back(std::move(acc));
  }
  return dm;
}

EisMatrix frobenius_power_product(const DworkMatrix& dm) {
  const long n = dm.prm.trunc;
  const EisensteinRing& R = *dm.ring;
  EisMatrix B(n, std::vector<EisElt>(n, eis_zero(R)));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) B[i][j] = dm.core(i, j);
  for (long step = 1; step < dm.prm.h; ++step) {
    // B <- A phi(B)
    EisMatrix Bp(n, std::vector<EisElt>(n, eis_zero(R)));
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) Bp[i][j] = eis_phi(B[i][j]);
    EisMatrix C(n, std::vector<EisElt>(n, eis_zero(R)));
    for (long i = 0; i < n; ++i)
      for (long k = 0; k < n; ++k) {
        const EisElt& aik = dm.core(i, k);
        if (aik.is_zero()) continue;
        for (long j = 0; j < n; ++j)
          C[i][j] = eis_add(C[i][j], eis_mul(aik, Bp[k][j]));
      }
    B = std::move(C);
  }
  return B;
}

namespace {

// det of A restricted to rows/columns idx, by subset dynamic programming
// (division free; 2^s states).
EisElt subset_det(const EisensteinRing& R, const EisMatrix& A,
                  const std::vector<long>& idx) {
  const long s = (long)idx.size();
  if (s == 0) return eis_one(R);
  std::vector<EisElt> dp((size_t)1 << s, eis_zero(R));
  dp[0] = eis_one(R);
  for (unsigned long mask = 1; mask < dp.size(); ++mask) {
    long k = __builtin_popcountl(mask);  // expand along row idx[k-1]
    long row = idx[k - 1];
    EisElt acc = eis_zero(R);
    bool plus = ((k - 1) % 2) == 0;  // cofactor sign (-1)^(row + col rank)
    for (long b = 0; b < s; ++b) {
      if (!((mask >> b) & 1UL)) continue;
      const EisElt& e = A[row][idx[b]];
      if (!e.is_zero()) {
        EisElt t = eis_mul(e, dp[mask & ~(1UL << b)]);
        acc = plus ? eis_add(acc, t) : eis_sub(acc, t);
      }
      plus = !plus;
    }
    dp[mask] = std::move(acc);
  }
  return dp.back();
}

}  // namespace

EisElt principal_minor(const DworkMatrix& dm, const EisMatrix& A,
                       const std::vector<long>& idx) {
  for (size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 0 || idx[i] >= dm.prm.trunc) throw std::invalid_argument("index range");
    if (i && idx[i] <= idx[i - 1]) throw std::invalid_argument("indices must increase");
  }
  return subset_det(*dm.ring, A, idx);
}

std::vector<Valuation> leading_minor_valuations(const DworkMatrix& dm, long smax) {
  if (smax >= dm.prm.trunc) throw std::invalid_argument("smax exceeds truncation");
  EisMatrix A(smax + 1);
  for (long i = 0; i <= smax; ++i)
    for (long j = 0; j <= smax; ++j) A[i].push_back(dm.core(i, j));
  std::vector<Valuation> out;
  std::vector<long> idx;
  for (long s = 0; s <= smax; ++s) {
    idx.push_back(s);
    out.push_back(eis_valuation_checked(subset_det(*dm.ring, A, idx)));
  }
  return out;
}

std::vector<Valuation> fredholm_valuations(const DworkMatrix& dm, const EisMatrix& A,
                                           long smax) {
  const EisensteinRing& R = *dm.ring;
  const long n = dm.prm.trunc;
  if (smax >= n) throw std::invalid_argument("smax exceeds truncation");
  std::vector<EisElt> acc(smax + 1, eis_zero(R));
  acc[0] = eis_one(R);
  // minors over idx have v >= sum(idx)/d, so subsets with sum >= trunc only
  // contribute beyond the cutoff and are skipped
  std::vector<long> idx;
  auto rec = [&](auto&& self, long start, long sum) -> void {
    for (long t = start; t < n; ++t) {
      if (sum + t >= n) break;
      idx.push_back(t);
      acc[idx.size()] = eis_add(acc[idx.size()], subset_det(R, A, idx));
      if ((long)idx.size() < smax) self(self, t + 1, sum + t);
      idx.pop_back();
    }
  };
  rec(rec, 0, 0);

  const QQ cutoff = std::min(frac(n, dm.prm.d), R.trust_threshold());
  std::vector<Valuation> out;
  for (long s = 0; s <= smax; ++s) {
    Valuation v = eis_valuation_raw(acc[s]);  // sign (-1)^s does not matter
    if (!v.finite() || v.q() >= cutoff)
      throw TruncationInsufficient("Fredholm coefficient " + std::to_string(s) +
                                   " is not resolved at this truncation");
    out.push_back(v);
  }
  return out;
}

std::vector<TransferBoundRow> transfer_bounds(const DworkMatrix& dm, long imax) {
  std::vector<Valuation> minors = leading_minor_valuations(dm, imax - 1);
  std::vector<TransferBoundRow> rows;
  for (long i = 1; i <= imax; ++i) {
    TransferBoundRow r;
    r.i = i;
    r.lower = frac(i * (i - 1), 2 * dm.prm.d);
    r.upper = frac(i * i - i + 1, 2 * dm.prm.d);
    r.value = minors[i - 1];
    r.pass = Valuation(r.lower) <= r.value && r.value <= Valuation(r.upper);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace npl
