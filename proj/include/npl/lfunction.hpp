#pragma once

#include <stdexcept>
#include <vector>

#include "npl/cyclotomic.hpp"
#include "npl/fields.hpp"

namespace npl {

// f(x) = x^d + a x^(d-1) over F_q, q = p^h, with a character of order p^M.
struct CurveConfig {
  long p = 0;
  long h = 1;
  long d = 0;
  long M = 1;
  std::vector<long> a;  // coefficients in the canonical F_{p^h} basis

  long degree() const;  // p^(M-1) * d, the L-polynomial degree
  void validate() const;
};

struct EnumOptions {
  int threads = 1;
  unsigned long budget = 200000000UL;  // max elements enumerated per sum
};

struct BudgetExceeded : std::runtime_error {
  unsigned long needed, budget;
  BudgetExceeded(unsigned long n, unsigned long b)
      : std::runtime_error("enumeration budget exceeded: need " + std::to_string(n) +
                           " elements, cap " + std::to_string(b)),
        needed(n),
        budget(b) {}
};

// S*_m = sum over the (q^m - 1)-th roots of unity x of chi(Tr(fhat(x))),
// chi(c) = zeta^(c mod p^M). Enumerates all nonzero vectors of F_{q^m}; for
// M = 1 pure residue arithmetic suffices, otherwise elements are Teichmueller
// lifted mod p^M. Exact; partition order never matters.
CyclotomicInt exp_sum(const CurveConfig& cfg, long m, const EnumOptions& opts = {});

// Reference path through the generic ZqElt pipeline (small fields only; used
// to cross-check the specialized enumerator).
CyclotomicInt exp_sum_reference(const CurveConfig& cfg, long m);

// Coefficients c_0..c_upto from n c_n = sum_{m<=n} S_m c_{n-m}; sums[i] = S_{i+1}.
// Throws if a coefficient fails to be integral (upstream bug by construction).
std::vector<CyclotomicInt> l_from_sums(const std::vector<CyclotomicInt>& sums, long upto);

// Newton-polygon input: (i, v_q(c_i)) with v_q = v_p / h.
std::vector<std::pair<long, Valuation>> coefficient_valuations(
    const std::vector<CyclotomicInt>& coeffs, long h);

}  // namespace npl
