#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "npl/eisenstein.hpp"
#include "npl/polygon.hpp"

namespace npl {

struct TruncationInsufficient : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DworkParams {
  long p = 0;
  long h = 1;
  long d = 0;
  std::vector<long> a;  // coefficients in the canonical F_{p^h} basis
  long trunc = 0;       // 0 -> d(d+3)/2
  long Np = 0;          // 0 -> d+2
  long guard = 6;

  void fill_defaults();
  void validate() const;
};

using EisMatrix = std::vector<std::vector<EisElt>>;

// Truncation of the nuclear matrix for f(x) = x^d + a x^(d-1): entries
// F_{p i - j} where F_k = sum_{d m + (d-1) n = k} gamma_m gamma_n ahat^n.
// The diagonal weight gamma^((p-1)i/d) of the weighted basis cancels on every
// principal minor, so it is not stored.
struct DworkMatrix {
  DworkParams prm;
  std::shared_ptr<EisensteinRing> ring;
  std::vector<EisElt> F;  // F_0 .. F_{p (trunc-1)}
  EisElt zero;

  const EisElt& core(long i, long j) const;  // F_{p i - j}, zero when p i < j
};

DworkMatrix build_dwork(const DworkParams& prm);

// A, phi(A), ..., phi^(h-1)(A) multiplied left to right (identity power for h=1).
EisMatrix frobenius_power_product(const DworkMatrix& dm);

// det of the principal submatrix on rows and columns idx (strictly increasing).
EisElt principal_minor(const DworkMatrix& dm, const EisMatrix& A,
                       const std::vector<long>& idx);

// v_p(det) of the leading principal minors {0}, {0,1}, ..., {0..smax}.
std::vector<Valuation> leading_minor_valuations(const DworkMatrix& dm, long smax);

// v_p of the Fredholm coefficients c_0..c_smax of det(1 - t A); subsets with
// sum(idx) >= trunc are pruned, which is sound because such minors have
// v_p >= trunc/d. Throws TruncationInsufficient when a value reaches the
// cutoff or the ring's trust threshold.
std::vector<Valuation> fredholm_valuations(const DworkMatrix& dm, const EisMatrix& A,
                                           long smax);

// sum_{s<i} s/d <= v_p(det leading i x i minor) <= (i^2 - i + 1)/(2d)
struct TransferBoundRow {
  long i = 0;
  QQ lower;
  Valuation value;
  QQ upper;
  bool pass = false;
};

std::vector<TransferBoundRow> transfer_bounds(const DworkMatrix& dm, long imax);

}  // namespace npl
