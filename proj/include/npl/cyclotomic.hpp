#pragma once

#include <vector>

#include "npl/rational.hpp"

namespace npl {

// Element of Z[zeta] with zeta a primitive p^M-th root of unity, reduced mod
// the cyclotomic polynomial Phi_{p^M}(t) = sum_{i<p} t^(i * p^(M-1)).
// zeta is fixed as the residue class of t; the choice among primitive roots is
// a convention (Galois conjugates share every valuation we compute).
struct CyclotomicInt {
  long p = 0;
  long M = 1;
  std::vector<ZZ> c;  // length phi(p^M) = p^(M-1)(p-1)

  bool is_zero() const;
  friend bool operator==(const CyclotomicInt&, const CyclotomicInt&) = default;
};

long cyclo_degree(long p, long M);  // phi(p^M)

CyclotomicInt cyclo_zero(long p, long M);
CyclotomicInt cyclo_from_int(long p, long M, const ZZ& n);

// zeta^c for 0 <= c < p^M.
CyclotomicInt character_value(long p, long M, long c);

// Reduce an arbitrary-length integer coefficient vector mod Phi_{p^M}.
CyclotomicInt cyclo_reduce(long p, long M, std::vector<ZZ> coeffs);

CyclotomicInt cyclo_add(const CyclotomicInt& a, const CyclotomicInt& b);
CyclotomicInt cyclo_sub(const CyclotomicInt& a, const CyclotomicInt& b);
CyclotomicInt cyclo_mul(const CyclotomicInt& a, const CyclotomicInt& b);
CyclotomicInt cyclo_scale(const ZZ& k, const CyclotomicInt& a);

// Galois twist zeta -> zeta^u, u coprime to p (valuations are invariant).
CyclotomicInt galois_twist(const CyclotomicInt& a, long u);

// Exact resultant of integer polynomials (little-endian), via the Sylvester
// matrix and fraction-free elimination.
ZZ resultant(const std::vector<ZZ>& f, const std::vector<ZZ>& g);

// v_p(x) on Q_p(zeta): v_p(Norm(x)) / phi(p^M), computed as a resultant with
// Phi_{p^M}. p is totally ramified in Z[zeta], so the norm valuation splits
// evenly over the unique prime above p. +infinity iff x = 0.
Valuation cyclo_valuation(const CyclotomicInt& x);

}  // namespace npl
