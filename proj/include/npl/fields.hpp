#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "npl/rational.hpp"

namespace npl {

// F_{p^n} presented as F_p[t]/(modulus); the modulus is the canonical one:
// first monic irreducible of degree n when coefficient vectors are ordered by
// rank (constant term varying fastest). Deterministic, so runs reproduce.
struct FieldDesc {
  long p = 0;
  long n = 0;
  std::vector<long> modulus;  // little-endian, length n+1, leading 1

  unsigned long size() const;  // p^n, must fit in 64 bits for enumeration
};

FieldDesc make_extension(long p, long n);

bool is_irreducible(const std::vector<long>& poly, long p);

// Decode rank r (0 <= r < p^n) into a coefficient vector; inverse of rank().
std::vector<long> element_of_rank(const FieldDesc& fd, unsigned long r);
unsigned long rank_of(const FieldDesc& fd, const std::vector<long>& x);

struct FqElt {
  const FieldDesc* fd = nullptr;
  std::vector<long> c;  // length n, entries in [0, p)

  bool is_zero() const;
  friend bool operator==(const FqElt&, const FqElt&) = default;
};

FqElt fq_make(const FieldDesc& fd, std::vector<long> c);
FqElt fq_zero(const FieldDesc& fd);
FqElt fq_one(const FieldDesc& fd);
FqElt fq_add(const FqElt& a, const FqElt& b);
FqElt fq_mul(const FqElt& a, const FqElt& b);
FqElt fq_pow(const FqElt& a, unsigned long e);

// Smallest-rank generator of the multiplicative group.
FqElt multiplicative_generator(const FieldDesc& fd);

// Minimal polynomial over F_p (monic, little-endian).
std::vector<long> minimal_polynomial(const FqElt& a);

// Image of a under the embedding F_{p^h} -> F_{p^n} (h | n) sending a to the
// smallest-rank root of its minimal polynomial. Exponential sums are invariant
// under the choice of root: the candidates are Frobenius conjugates.
FqElt embed(const FqElt& a, const FieldDesc& target);

// Element of the unramified ring Z_{p^n}/p^N = Z[t]/(p^N, modulus).
struct ZqElt {
  const FieldDesc* fd = nullptr;
  long N = 0;
  std::vector<ZZ> c;  // length n, entries in [0, p^N)
};

ZqElt zq_make(const FieldDesc& fd, long N, std::vector<ZZ> c);
ZqElt zq_from_residue(const FqElt& x, long N);
ZqElt zq_zero(const FieldDesc& fd, long N);
ZqElt zq_one(const FieldDesc& fd, long N);
ZqElt zq_add(const ZqElt& a, const ZqElt& b);
ZqElt zq_sub(const ZqElt& a, const ZqElt& b);
ZqElt zq_mul(const ZqElt& a, const ZqElt& b);
ZqElt zq_pow(const ZqElt& a, const ZZ& e);
bool zq_equal(const ZqElt& a, const ZqElt& b);
FqElt zq_residue(const ZqElt& a);

// The unique multiplicative lift: y = x mod p with y^Q = y mod p^N, Q = p^n.
// Iterates y <- y^Q exactly N-1 times from the integral lift.
ZqElt teichmuller_lift(const FqElt& x, long N);

// Trace of multiplication-by-y on the basis {1, g, ..., g^(n-1)}, i.e. the
// dot product with the power sums of the modulus roots (Newton's identities).
ZZ trace_to_base(const ZqElt& y);

// Power sums Tr(g^j) for j = 0..n-1, mod p^N.
std::vector<ZZ> trace_power_sums(const FieldDesc& fd, long N);

// Inverse of a unit (nonzero residue), Newton refinement from the residue field.
ZqElt zq_invert_unit(const ZqElt& w);

// The ring automorphism reducing to x -> x^p: Hensel-lifts the generator image
// and substitutes. Cached per (descriptor, N).
ZqElt frobenius_lift(const ZqElt& y);

// Generator image g -> phi(g) used by frobenius_lift (exposed for reuse).
ZqElt frobenius_generator_image(const FieldDesc& fd, long N);

}  // namespace npl
