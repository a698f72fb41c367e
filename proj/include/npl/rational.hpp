#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace npl {

typedef mpz_class ZZ;
typedef mpq_class QQ;

inline QQ frac(long num, long den) {
  QQ q(num, den);
  q.canonicalize();
  return q;
}

inline QQ frac(ZZ num, ZZ den) {
  QQ q(std::move(num), std::move(den));
  q.canonicalize();
  return q;
}

inline bool is_prime(long p) {
  if (p < 2) return false;
  ZZ z(p);
  return mpz_probab_prime_p(z.get_mpz_t(), 40) != 0;
}

// A p-adic valuation: an exact rational or +infinity (the valuation of zero).
// +infinity is absorbing under addition and maximal under comparison.
struct Valuation {
  std::optional<QQ> v;

  Valuation() : v(std::nullopt) {}
  Valuation(QQ x) : v(std::move(x)) {}
  Valuation(long x) : v(QQ(x)) {}

  static Valuation infinite() { return Valuation(); }
  bool finite() const { return v.has_value(); }
  const QQ& q() const {
    if (!v) throw std::logic_error("valuation is +infinity");
    return *v;
  }

  friend bool operator==(const Valuation& a, const Valuation& b) {
    if (a.finite() != b.finite()) return false;
    return !a.finite() || *a.v == *b.v;
  }
  friend bool operator!=(const Valuation& a, const Valuation& b) { return !(a == b); }
  friend bool operator<(const Valuation& a, const Valuation& b) {
    if (!a.finite()) return false;
    if (!b.finite()) return true;
    return *a.v < *b.v;
  }
  friend bool operator<=(const Valuation& a, const Valuation& b) { return a < b || a == b; }
  friend bool operator>(const Valuation& a, const Valuation& b) { return b < a; }
  friend bool operator>=(const Valuation& a, const Valuation& b) { return b <= a; }
  friend Valuation operator+(const Valuation& a, const Valuation& b) {
    if (!a.finite() || !b.finite()) return infinite();
    return Valuation(*a.v + *b.v);
  }

  std::string str() const { return finite() ? v->get_str() : "+inf"; }
};

// x[n] = x(x-1)...(x-n+1); x[0] = 1.
inline ZZ falling_factorial(const ZZ& x, long n) {
  if (n < 0) throw std::invalid_argument("falling_factorial: n < 0");
  ZZ r = 1;
  for (long i = 0; i < n; ++i) r *= x - i;
  return r;
}

inline ZZ factorial(long n) {
  if (n < 0) throw std::invalid_argument("factorial: n < 0");
  ZZ r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

// 1/n! for n >= 0, exactly 0 for n < 0. The n < 0 convention makes binomial-type
// sums and matrix entries with out-of-range indices vanish without special cases.
inline QQ reciprocal_factorial(long n) {
  if (n < 0) return QQ(0);
  return frac(ZZ(1), factorial(n));
}

// Exponent of p in a nonzero integer.
inline long vp_int(const ZZ& x, long p) {
  if (x == 0) throw std::invalid_argument("vp_int: zero");
  ZZ r, f(p);
  return static_cast<long>(mpz_remove(r.get_mpz_t(), x.get_mpz_t(), f.get_mpz_t()));
}

// Exponent of p in a rational (negative allowed); +infinity for zero.
inline Valuation vp_rational(const QQ& x, long p) {
  if (!is_prime(p)) throw std::invalid_argument("vp_rational: p not prime");
  if (x == 0) return Valuation::infinite();
  return Valuation(QQ(vp_int(x.get_num(), p) - vp_int(x.get_den(), p)));
}

}  // namespace npl
