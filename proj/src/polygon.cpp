#include "npl/polygon.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace npl {

QQ NewtonPolygon::value_at(long i) const {
  if (vertices.empty()) throw std::logic_error("empty polygon");
  if (i < vertices.front().first || i > vertices.back().first)
    throw std::out_of_range("value_at: index outside hull range");
  for (size_t k = 0; k + 1 < vertices.size(); ++k) {
    auto& [x1, y1] = vertices[k];
    auto& [x2, y2] = vertices[k + 1];
    if (i <= x2) return y1 + (y2 - y1) * frac(i - x1, x2 - x1);
  }
  return vertices.back().second;
}

NewtonPolygon lower_hull(std::vector<std::pair<long, Valuation>> points) {
  std::sort(points.begin(), points.end(),
            [](auto& a, auto& b) { return a.first < b.first; });
  for (size_t k = 0; k + 1 < points.size(); ++k)
    if (points[k].first == points[k + 1].first)
      throw std::invalid_argument("lower_hull: duplicate index");

  NewtonPolygon np;
  np.points = points;
  std::vector<std::pair<long, QQ>> hull;
  for (auto& [x, v] : points) {
    if (!v.finite()) continue;
    QQ y = v.q();
    // pop while the previous vertex is on or above the new segment
    while (hull.size() >= 2) {
      auto& [x1, y1] = hull[hull.size() - 2];
      auto& [x2, y2] = hull[hull.size() - 1];
      if ((y2 - y1) * (x - x1) >= (y - y1) * (x2 - x1))
        hull.pop_back();
      else
        break;
    }
    hull.emplace_back(x, y);
  }
  np.vertices = hull;
  for (size_t k = 0; k + 1 < hull.size(); ++k) {
    QQ s = (hull[k + 1].second - hull[k].second) / (hull[k + 1].first - hull[k].first);
    for (long i = 0; i < hull[k + 1].first - hull[k].first; ++i) np.slopes.push_back(s);
  }
  return np;
}

bool SlopePrediction::all_pass() const {
  for (auto& h : hypotheses)
    if (!h.pass) return false;
  return true;
}

NewtonPolygon SlopePrediction::polygon() const {
  std::vector<std::pair<long, Valuation>> pts;
  QQ acc = 0;
  pts.emplace_back(0, Valuation(QQ(0)));
  for (size_t i = 0; i < slopes.size(); ++i) {
    acc += slopes[i];
    pts.emplace_back(static_cast<long>(i) + 1, Valuation(acc));
  }
  return lower_hull(std::move(pts));
}

namespace {

// N(d): the prime-size hypothesis threshold.
QQ size_threshold(long d, long h) {
  return h == 1 ? frac(d * d + 3, 4) : frac(d * d, 2);
}

std::string qstr(const QQ& x) { return x.get_str(); }

}  // namespace

SlopePrediction predict_slopes_order_p(long d, long p, long h) {
  if (d < 2) throw std::invalid_argument("predict: d < 2");
  SlopePrediction sp;
  sp.d = d;
  sp.p = p;
  sp.h = h;
  sp.M = 1;

  bool prime = is_prime(p);
  sp.hypotheses.push_back({"p_prime", prime, "p = " + std::to_string(p)});
  bool cong = (p + 1) % d == 0;
  sp.hypotheses.push_back(
      {"p_congruent_-1_mod_d", cong,
       "p mod d = " + std::to_string(((p % d) + d) % d) + ", need d-1"});
  QQ nd = size_threshold(d, h);
  bool big = QQ(p) > nd;
  sp.hypotheses.push_back({"p_exceeds_size_bound", big,
                           "need p > " + qstr(nd) + (h == 1 ? " (prime field)" : " (general q)")});

  for (long i = 0; i < d; ++i) {
    if (2 * i < d)
      sp.slopes.push_back(frac((p + 1) * i, d * (p - 1)));
    else if (2 * i == d)
      sp.slopes.push_back(frac(1, 2));
    else
      sp.slopes.push_back(frac((p + 1) * i - 2 * d, d * (p - 1)));
  }
  std::sort(sp.slopes.begin(), sp.slopes.end());
  return sp;
}

SlopePrediction predict_slopes(long d, long p, long h, long M) {
  if (M < 1) throw std::invalid_argument("predict: M < 1");
  SlopePrediction base = predict_slopes_order_p(d, p, h);
  SlopePrediction sp;
  sp.d = d;
  sp.p = p;
  sp.h = h;
  sp.M = M;
  sp.hypotheses = base.hypotheses;
  // drop the plain size bound in favor of the combined one
  sp.hypotheses.pop_back();
  QQ transfer_floor = frac(h * (d * d - 1), 4 * d) + 1;
  QQ bound = std::max(size_threshold(d, h), transfer_floor);
  sp.hypotheses.push_back(
      {"p_exceeds_combined_bound", QQ(p) > bound, "need p > " + qstr(bound)});

  ZZ P = 1;
  for (long i = 1; i < M; ++i) P *= p;
  QQ Pq(P);
  for (ZZ i = 0; i < P; ++i)
    for (auto& w : base.slopes) sp.slopes.push_back((QQ(i) + w) / Pq);
  std::sort(sp.slopes.begin(), sp.slopes.end());
  return sp;
}

NewtonPolygon hodge_polygon(long d, long K) {
  if (d < 1 || K < 0) throw std::invalid_argument("hodge_polygon: bad args");
  std::vector<std::pair<long, Valuation>> pts;
  for (long k = 0; k <= K; ++k) pts.emplace_back(k, Valuation(frac(k * (k - 1), 2 * d)));
  return lower_hull(std::move(pts));
}

GapReport gap_and_transfer(const SlopePrediction& pred, long d, long p, long h) {
  if (pred.M != 1 || static_cast<long>(pred.slopes.size()) != d)
    throw std::invalid_argument("gap_and_transfer: need an order-p prediction");
  GapReport g;
  g.gap = 0;
  // NP - HP is d-periodic; both polygons break only at integers, so the max
  // over one period is attained at k = 0..d.
  QQ acc = 0;
  std::vector<QQ> sorted = pred.slopes;
  std::sort(sorted.begin(), sorted.end());
  for (long k = 0; k <= d; ++k) {
    QQ diff = acc - frac(k * (k - 1), 2 * d);
    if (diff > g.gap) g.gap = diff;
    if (k < d) acc += sorted[k];
  }
  g.bound = frac(d * d - 1, 4 * d * (p - 1));
  g.within_bound = g.gap <= g.bound;
  g.transfer_ok = g.gap < frac(1, h);
  return g;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::match: return "match";
    case Verdict::prefix_match: return "prefix-match";
    case Verdict::mismatch: return "mismatch";
  }
  return "?";
}

CompareResult compare_polygons(const NewtonPolygon& reference,
                               const NewtonPolygon& computed, long prefix_upto) {
  CompareResult r;
  if (prefix_upto < 0) {
    auto a = reference.slopes, b = computed.slopes;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a.size() != b.size()) {
      r.verdict = Verdict::mismatch;
      r.diverge_index = static_cast<long>(std::min(a.size(), b.size()));
      r.detail = "slope counts differ: " + std::to_string(a.size()) + " vs " +
                 std::to_string(b.size());
      return r;
    }
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) {
        r.verdict = Verdict::mismatch;
        r.diverge_index = static_cast<long>(i);
        r.detail = "slope " + std::to_string(i) + ": " + a[i].get_str() + " vs " +
                   b[i].get_str();
        return r;
      }
    r.verdict = Verdict::match;
    return r;
  }

  // prefix mode: computed points vs the reference hull
  std::map<long, bool> ref_vertex;
  for (auto& [x, y] : reference.vertices) ref_vertex[x] = true;
  for (auto& [x, v] : computed.points) {
    if (x > prefix_upto) continue;
    QQ want = reference.value_at(x);
    if (ref_vertex.count(x)) {
      if (!v.finite() || v.q() != want) {
        r.verdict = Verdict::mismatch;
        r.diverge_index = x;
        r.detail = "vertex " + std::to_string(x) + ": computed " + v.str() +
                   ", reference " + want.get_str();
        return r;
      }
    } else if (v.finite() && v.q() < want) {
      r.verdict = Verdict::mismatch;
      r.diverge_index = x;
      r.detail = "point " + std::to_string(x) + " below reference: " +
                 v.q().get_str() + " < " + want.get_str();
      return r;
    }
  }
  r.verdict = Verdict::prefix_match;
  return r;
}

}  // namespace npl
