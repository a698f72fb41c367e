#pragma once

#include <string>
#include <utility>
#include <vector>

#include "npl/rational.hpp"

namespace npl {

struct RationalMatrix {
  long s = 0;
  std::vector<std::vector<QQ>> e;  // s x s, 0-indexed storage of entries (i+1, j+1)
};

// M(s) with entries a^(i+j) / ((k i - i - j)! (i + j)!), k = (p+1)/d;
// negative-argument factorials make the entry zero.
RationalMatrix build_M(long d, long p, long a, long s);

// exact determinant by rational elimination, and its p-adic valuation
std::pair<QQ, Valuation> det_and_valuation(const RationalMatrix& m, long p);

// a^(s(s+1)) (-1)^floor(s/2) prod_i i^(s-i) c_0(i) / ((k i - i - 1)! (i + s)!)
QQ closed_form_det(long d, long p, long a, long s);

// c_0(j) = ((1-k)j - 1)[j-1] (falling factorial)
QQ lemma_c0(long k, long j);

// c_0(j)..c_{j-1}(j) with ((k-1)x - 1)[j-1] = sum_t c_t(j) (x+j)[t], obtained by
// evaluating at x = -j, -j+1, ... (the system is triangular there)
std::vector<QQ> lemma_c_coeffs(long k, long j);

// x[n] = sum_t coeffs[t] x^t (signed Stirling numbers of the first kind)
std::vector<QQ> falling_factorial_in_powers(long n);

struct FactorizationReport {
  bool ok = true;
  std::string detail;  // offending identity and entry when not ok
};

// Rebuilds the factorization chain M -> M'' = M1 M2, M1 = M11 M12 and checks
// the matrix identities plus det(M11), det(M12), det(M2) exactly.
FactorizationReport verify_factorizations(long d, long p, long a, long s);

}  // namespace npl
