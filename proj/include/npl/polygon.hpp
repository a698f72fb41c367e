#pragma once

#include <string>
#include <vector>

#include "npl/rational.hpp"

namespace npl {

// Lower convex hull of (index, valuation) points. Points with +infinity
// valuation participate as inputs but never as hull vertices.
struct NewtonPolygon {
  std::vector<std::pair<long, Valuation>> points;
  std::vector<std::pair<long, QQ>> vertices;  // strictly convex hull subsequence
  std::vector<QQ> slopes;                     // with multiplicity, ascending

  // Hull height at integer abscissa i (must lie within the hull's index range).
  QQ value_at(long i) const;
};

NewtonPolygon lower_hull(std::vector<std::pair<long, Valuation>> points);

struct HypothesisCheck {
  std::string name;
  bool pass;
  std::string detail;
};

struct SlopePrediction {
  long d = 0, p = 0, h = 1, M = 1;
  std::vector<QQ> slopes;  // ascending, size p^(M-1) * d
  std::vector<HypothesisCheck> hypotheses;

  bool all_pass() const;
  NewtonPolygon polygon() const;  // hull spanned by the predicted slopes
};

// Slopes of the degree-d L-polynomial for the order-p character:
// w_i = (p+1)i/(d(p-1)) below the middle, 1/2 at i = d/2, shifted by -2d/(d(p-1))
// above. Hypotheses: p = -1 mod d and p > N(d) with N(d) = (d^2+3)/4 when h = 1,
// d^2/2 otherwise.
SlopePrediction predict_slopes_order_p(long d, long p, long h = 1);

// Slopes for a character of order p^M: {(i + w_j)/p^(M-1)}. Hypothesis:
// p > max{N(d), h(d^2-1)/(4d) + 1}. Reduces to predict_slopes_order_p at M = 1.
SlopePrediction predict_slopes(long d, long p, long h, long M);

// Vertices (k, k(k-1)/(2d)) for k = 0..K; slopes {0, 1/d, 2/d, ...}.
NewtonPolygon hodge_polygon(long d, long K);

struct GapReport {
  QQ gap;              // max over one period of NP - HP at integer break points
  QQ bound;            // (d^2-1)/(4d(p-1))
  bool within_bound;   // gap <= bound
  bool transfer_ok;    // gap < 1/h, the slope-transfer condition
};

GapReport gap_and_transfer(const SlopePrediction& pred, long d, long p, long h);

enum class Verdict { match, prefix_match, mismatch };

std::string verdict_name(Verdict v);

struct CompareResult {
  Verdict verdict;
  long diverge_index = -1;  // slope position (full mode) or point index (prefix)
  std::string detail;
};

// Full mode (prefix_upto < 0): exact equality of slope multisets.
// Prefix mode: every computed point with index <= prefix_upto must lie on or
// above the reference polygon, with equality at the reference's vertices.
CompareResult compare_polygons(const NewtonPolygon& reference,
                               const NewtonPolygon& computed,
                               long prefix_upto = -1);

}  // namespace npl
