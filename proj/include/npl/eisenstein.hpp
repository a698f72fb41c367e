#pragma once

#include <stdexcept>
#include <vector>

#include "npl/fields.hpp"
#include "npl/rational.hpp"

namespace npl {

struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// R = Z_q[pi] / (pi^(p-1) + p, p^Np) with Z_q unramified of degree h over Z_p.
// v(pi) = 1/(p-1). Working precision Np is in powers of p; valuations within
// guard/(p-1) of the cap are treated as unresolved.
struct EisensteinRing {
  long p = 0;
  long Np = 0;
  long guard = 6;
  FieldDesc fd;  // residue field F_{p^h}; elements keep pointers into this
  ZZ pN;         // p^Np

  QQ trust_threshold() const;  // Np - guard/(p-1)
};

EisensteinRing make_eisenstein(long p, long h, long Np, long guard = 6);

// c[k] holds the Z_q digit vector (length h, entries mod p^Np) of pi^k.
struct EisElt {
  const EisensteinRing* R = nullptr;
  std::vector<std::vector<ZZ>> c;

  bool is_zero() const;  // all stored digits vanish mod p^Np
};

EisElt eis_zero(const EisensteinRing& R);
EisElt eis_one(const EisensteinRing& R);
EisElt eis_from_int(const EisensteinRing& R, const ZZ& n);
EisElt eis_from_zq(const EisensteinRing& R, const ZqElt& y);
EisElt eis_add(const EisElt& a, const EisElt& b);
EisElt eis_sub(const EisElt& a, const EisElt& b);
EisElt eis_neg(const EisElt& a);
EisElt eis_mul(const EisElt& a, const EisElt& b);
EisElt eis_pow(const EisElt& a, long e);
EisElt eis_scale(const ZZ& k, const EisElt& a);
// scale by a rational whose denominator is prime to p
EisElt eis_scale_q(const QQ& k, const EisElt& a);
bool eis_equal(const EisElt& a, const EisElt& b);

// Frobenius: acts on the Z_q digits, fixes pi.
EisElt eis_phi(const EisElt& a);

EisElt eis_invert_unit(const EisElt& a);

// min over digits of k/(p-1) + v_p(digit); +infinity when the element is 0 in
// the truncated representation. Raw values at or beyond the trust threshold
// only mean "at least this large".
Valuation eis_valuation_raw(const EisElt& a);
// same, but refuses to vouch for values past the trust threshold
Valuation eis_valuation_checked(const EisElt& a);

// e_0..e_nmax of the Artin-Hasse series exp(sum_m x^(p^m)/p^m); p-integral.
std::vector<QQ> artin_hasse_coeffs(long p, long nmax);

// gamma with sum_m gamma^(p^m)/p^m = 0 and gamma = pi * (1 + O(pi)).
EisElt solve_splitting_root(const EisensteinRing& R);

// gamma_m = e_m gamma^m for m = 0..nmax; v(gamma_m) >= m/(p-1).
std::vector<EisElt> splitting_coeffs(const EisensteinRing& R, const EisElt& gamma,
                                     long nmax);

}  // namespace npl
