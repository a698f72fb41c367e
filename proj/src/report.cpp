#include "npl/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "npl/dwork.hpp"
#include "npl/lemma.hpp"
#include "npl/lfunction.hpp"
#include "npl/polygon.hpp"

namespace npl {

namespace {

using json = nlohmann::ordered_json;

json jz(const ZZ& z) {
  if (mpz_fits_slong_p(z.get_mpz_t())) return (long)z.get_si();
  return z.get_str();
}

json jq(const QQ& q) { return json::array({jz(q.get_num()), jz(q.get_den())}); }

json jval(const Valuation& v) {
  if (!v.finite()) return nullptr;
  return jq(v.q());
}

std::string dec6(const QQ& q) {
  double x = mpq_get_d(q.get_mpq_t());
  char buf[48];
  snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::string qstr(const QQ& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::vector<QQ> slopes_below_one(const NewtonPolygon& np) {
  std::vector<QQ> out;
  for (const QQ& s : np.slopes)
    if (s < 1) out.push_back(s);
  return out;
}

}  // namespace

std::optional<Route> route_from_string(const std::string& s) {
  if (s == "predict") return Route::predict;
  if (s == "lfun") return Route::lfun;
  if (s == "dwork") return Route::dwork;
  if (s == "lemma") return Route::lemma;
  if (s == "verify") return Route::verify;
  return std::nullopt;
}

std::string cache_path(const std::string& dir, const SumKey& key) {
  std::string a;
  for (size_t i = 0; i < key.a.size(); ++i)
    a += (i ? "_" : "") + std::to_string(key.a[i]);
  return dir + "/p" + std::to_string(key.p) + "h" + std::to_string(key.h) + "d" +
         std::to_string(key.d) + "M" + std::to_string(key.M) + "/a" + a + "/m" +
         std::to_string(key.m);
}

void cache_sums(const std::string& dir, const SumKey& key, const CyclotomicInt& s) {
  std::filesystem::path path = cache_path(dir, key);
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  json doc;
  doc["schema"] = 1;
  doc["p"] = key.p;
  doc["h"] = key.h;
  doc["d"] = key.d;
  doc["M"] = key.M;
  doc["m"] = key.m;
  doc["a"] = key.a;
  doc["modulus"] = key.modulus;
  json coeffs = json::array();
  for (const ZZ& c : s.c) coeffs.push_back(c.get_str());
  doc["coeffs"] = std::move(coeffs);
  std::ofstream out(path);
  out << doc.dump() << "\n";
}

std::optional<CyclotomicInt> load_sums(const std::string& dir, const SumKey& key) {
  std::filesystem::path path = cache_path(dir, key);
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    json doc = json::parse(in);
    if (doc.at("schema") != 1 || doc.at("p") != key.p || doc.at("h") != key.h ||
        doc.at("d") != key.d || doc.at("M") != key.M || doc.at("m") != key.m ||
        doc.at("a") != json(key.a) || doc.at("modulus") != json(key.modulus))
      throw std::runtime_error("key fields do not match");
    const json& coeffs = doc.at("coeffs");
    CyclotomicInt s = cyclo_zero(key.p, key.M);
    if ((long)coeffs.size() != (long)s.c.size())
      throw std::runtime_error("coefficient count mismatch");
    for (size_t i = 0; i < s.c.size(); ++i) {
      const std::string& t = coeffs[i].get_ref<const std::string&>();
      if (mpz_set_str(s.c[i].get_mpz_t(), t.c_str(), 10) != 0)
        throw std::runtime_error("bad integer literal");
    }
    return s;
  } catch (const std::exception& e) {
    std::cerr << "warning: ignoring corrupt cache entry " << path << ": " << e.what()
              << "\n";
    return std::nullopt;
  }
}

namespace {

std::string resolve_cache_dir(const RunConfig& cfg) {
  if (cfg.no_cache) return "";
  const char* env = std::getenv("NPL_CACHE_DIR");
  if (env && *env) return env;
  return cfg.cache_dir;
}

struct RunState {
  json doc;
  std::string verdict = "match";
  bool hyp_failed = false;
  bool mismatch = false;
  bool starved = false;  // budget or precision kept a route from resolving
  long cache_hits = 0, cache_misses = 0;
  std::vector<QQ> predicted, brute, dwork_hull;
  bool have_brute = false, brute_complete = false, have_dwork = false;
};

void run_bruteforce(const RunConfig& cfg, const SlopePrediction& pred, RunState& st) {
  CurveConfig cc{cfg.p, cfg.h, cfg.d, cfg.M, cfg.a};
  cc.validate();
  const long D = cc.degree();
  const long B = cfg.max_m > 0 ? std::min(cfg.max_m, D) : D;

  long mb = 0;
  {
    unsigned long qm = 1, q = 1;
    bool over = false;
    for (long i = 0; i < cfg.h; ++i) {
      if (q > (cfg.budget + 1) / (unsigned long)cfg.p) over = true;
      q *= (unsigned long)cfg.p;
    }
    for (long m = 1; m <= B && !over; ++m) {
      if (qm > (cfg.budget + 1) / q) break;
      qm *= q;
      if (qm - 1 > cfg.budget) break;
      mb = m;
    }
  }
  json bf;
  if (mb < B) {
    st.starved = true;
    bf["budget_limited"] = true;
    bf["max_m_within_budget"] = mb;
  }

  std::string cdir = resolve_cache_dir(cfg);
  FieldDesc base = make_extension(cfg.p, cfg.h);
  EnumOptions opts;
  opts.threads = cfg.threads;
  opts.budget = cfg.budget;
  std::vector<CyclotomicInt> sums;
  for (long m = 1; m <= mb; ++m) {
    SumKey key{cfg.p, cfg.h, cfg.d, cfg.M, m, cfg.a, base.modulus};
    std::optional<CyclotomicInt> s;
    if (!cdir.empty()) s = load_sums(cdir, key);
    if (s) {
      ++st.cache_hits;
    } else {
      ++st.cache_misses;
      s = exp_sum(cc, m, opts);
      if (!cdir.empty()) cache_sums(cdir, key, *s);
    }
    sums.push_back(std::move(*s));
  }

  if (mb == 0) {
    bf["error"] = "budget excludes even m = 1";
    st.doc["bruteforce"] = std::move(bf);
    st.verdict = "prefix-match";
    return;
  }

  std::vector<CyclotomicInt> coeffs = l_from_sums(sums, mb);
  auto cvals = coefficient_valuations(coeffs, cfg.h);
  json cv = json::array();
  for (auto& [i, v] : cvals) cv.push_back(json::array({i, jval(v)}));
  bf["coeff_valuations"] = std::move(cv);
  NewtonPolygon poly = lower_hull(cvals);
  json js = json::array();
  for (const QQ& s : poly.slopes) js.push_back(jq(s));
  bf["slopes"] = std::move(js);
  st.brute = poly.slopes;
  st.have_brute = true;
  st.brute_complete = (mb == D);

  CompareResult cr = compare_polygons(pred.polygon(), poly, mb == D ? -1 : mb);
  bf["compare"] = {{"verdict", verdict_name(cr.verdict)}, {"detail", cr.detail}};
  st.doc["bruteforce"] = std::move(bf);
  if (cr.verdict == Verdict::mismatch) {
    st.mismatch = true;
    st.verdict = "mismatch";
  } else if (cr.verdict == Verdict::prefix_match) {
    st.verdict = "prefix-match";
  }
}

void run_dwork(const RunConfig& cfg, const SlopePrediction& pred, RunState& st) {
  DworkParams prm;
  prm.p = cfg.p;
  prm.h = cfg.h;
  prm.d = cfg.d;
  prm.a = cfg.a;
  prm.trunc = cfg.trunc;
  prm.guard = cfg.guard;
  prm.fill_defaults();

  json dw;
  bool resolved = false;
  std::vector<Valuation> minors, fred;
  std::vector<TransferBoundRow> tb;
  for (int attempt = 0; attempt < 3 && !resolved; ++attempt) {
    try {
      DworkMatrix dm = build_dwork(prm);
      minors = leading_minor_valuations(dm, cfg.d - 1);
      fred = fredholm_valuations(dm, frobenius_power_product(dm), cfg.d);
      tb = transfer_bounds(dm, cfg.d);
      resolved = true;
    } catch (const TruncationInsufficient&) {
      prm.trunc += cfg.d;
      prm.Np *= 2;
    } catch (const PrecisionError&) {
      prm.trunc += cfg.d;
      prm.Np *= 2;
    }
  }
  dw["params"] = {{"trunc", prm.trunc}, {"Np", prm.Np}};
  if (!resolved) {
    dw["error"] = "valuations unresolved at the attempted truncations";
    st.doc["dwork"] = std::move(dw);
    st.starved = true;
    return;
  }

  json jm = json::array();
  for (size_t s = 0; s < minors.size(); ++s)
    jm.push_back(json::array({(long)s, jval(minors[s])}));
  dw["minor_valuations"] = std::move(jm);
  json jf = json::array();
  for (size_t s = 0; s < fred.size(); ++s)
    jf.push_back(json::array({(long)s, jval(fred[s])}));
  dw["fredholm_valuations"] = std::move(jf);
  json jt = json::array();
  for (const auto& r : tb)
    jt.push_back({{"i", r.i},
                  {"lower", jq(r.lower)},
                  {"value", jval(r.value)},
                  {"upper", jq(r.upper)},
                  {"pass", r.pass}});
  dw["transfer_bounds"] = std::move(jt);

  bool ok = true;
  std::string why;
  for (const auto& r : tb)
    if (!r.pass) {
      ok = false;
      why = "transfer bound fails at i = " + std::to_string(r.i);
      break;
    }

  // leading minors should accumulate the predicted slopes (q-adic = p-adic/h)
  if (ok) {
    QQ acc = 0;
    for (size_t s = 0; s < minors.size(); ++s) {
      acc += pred.slopes[s];
      QQ got = minors[s].finite() ? minors[s].q() / cfg.h : QQ(-1);
      if (!minors[s].finite() || got != acc) {
        ok = false;
        why = "minor valuation differs from the predicted partial sum at s = " +
              std::to_string(s);
        break;
      }
    }
  }

  // Fredholm hull: slopes below 1 should be the predicted slope multiset
  std::vector<std::pair<long, Valuation>> pts;
  for (size_t s = 0; s < fred.size(); ++s) {
    Valuation v = fred[s];
    if (v.finite()) v = Valuation(v.q() / cfg.h);
    pts.emplace_back((long)s, v);
  }
  NewtonPolygon fp = lower_hull(pts);
  st.dwork_hull = fp.slopes;
  st.have_dwork = true;
  json jh = json::array();
  for (const QQ& s : fp.slopes) jh.push_back(jq(s));
  dw["fredholm_hull_slopes"] = std::move(jh);
  if (ok) {
    std::vector<QQ> lt1 = slopes_below_one(fp);
    std::vector<QQ> want = pred.slopes;  // all order-p slopes are below 1
    if (lt1 != want) {
      ok = false;
      why = "Fredholm slopes below 1 differ from the prediction";
    }
  }
  dw["consistent"] = ok;
  if (!ok) {
    dw["detail"] = why;
    st.mismatch = true;
    st.verdict = "mismatch";
  }
  st.doc["dwork"] = std::move(dw);
}

void run_lemma(const RunConfig& cfg, RunState& st) {
  if (cfg.h != 1) throw std::invalid_argument("lemma route needs h = 1");
  long a = cfg.a.at(0);
  json rows = json::array();
  bool all_ok = true;
  for (long s = 1; s <= cfg.d - 1; ++s) {
    RationalMatrix m = build_M(cfg.d, cfg.p, a, s);
    auto [det, v] = det_and_valuation(m, cfg.p);
    QQ cf = closed_form_det(cfg.d, cfg.p, a, s);
    FactorizationReport fr = verify_factorizations(cfg.d, cfg.p, a, s);
    bool ok = det == cf && v == Valuation(QQ(0)) && fr.ok;
    all_ok = all_ok && ok;
    rows.push_back({{"s", s},
                    {"det", json::array({det.get_num().get_str(), det.get_den().get_str()})},
                    {"valuation", jval(v)},
                    {"closed_form_matches", det == cf},
                    {"factorizations_ok", fr.ok},
                    {"detail", fr.detail}});
  }
  st.doc["lemma"] = std::move(rows);
  if (!all_ok) {
    st.mismatch = true;
    st.verdict = "mismatch";
  }
}

std::string render_csv(const RunState& st) {
  std::ostringstream o;
  o << "route,index,num,den\n";
  auto emit = [&](const char* route, const std::vector<QQ>& v) {
    for (size_t i = 0; i < v.size(); ++i)
      o << route << "," << i << "," << v[i].get_num().get_str() << ","
        << v[i].get_den().get_str() << "\n";
  };
  emit("predict", st.predicted);
  if (st.have_brute) emit("lfun", st.brute);
  if (st.have_dwork) emit("dwork", st.dwork_hull);
  return o.str();
}

std::string render_table(const RunConfig& cfg, const RunState& st) {
  std::ostringstream o;
  o << "p=" << cfg.p << " d=" << cfg.d << " h=" << cfg.h << " M=" << cfg.M << " a=[";
  for (size_t i = 0; i < cfg.a.size(); ++i) o << (i ? "," : "") << cfg.a[i];
  o << "]\n";
  if (st.doc.contains("hypotheses")) {
    o << "hypotheses:\n";
    for (const auto& h : st.doc["hypotheses"])
      o << "  " << h["name"].get<std::string>() << ": "
        << (h["pass"].get<bool>() ? "pass" : "FAIL") << "  ("
        << h["detail"].get<std::string>() << ")\n";
  }
  auto line = [&](const char* label, const std::vector<QQ>& v) {
    o << label << ":";
    for (const QQ& q : v) o << " " << qstr(q) << " (" << dec6(q) << ")";
    o << "\n";
  };
  line("predicted slopes", st.predicted);
  if (st.have_brute) line("bruteforce slopes", st.brute);
  if (st.have_dwork) line("dwork hull slopes", st.dwork_hull);
  o << "verdict: " << st.verdict << "\n";
  return o.str();
}

}  // namespace

VerifyReport run_report(const RunConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  RunState st;
  st.doc["schema"] = 1;

  VerifyReport rep;
  try {
    if (cfg.p < 2 || cfg.d < 2 || cfg.h < 1 || cfg.M < 1)
      throw std::invalid_argument("need p >= 2, d >= 2, h >= 1, M >= 1");
    if ((long)cfg.a.size() != cfg.h)
      throw std::invalid_argument("a must have h coordinates");
    for (long c : cfg.a)
      if (c < 0 || c >= cfg.p) throw std::invalid_argument("a coordinates out of range");

    json input;
    input["p"] = cfg.p;
    input["d"] = cfg.d;
    input["h"] = cfg.h;
    input["M"] = cfg.M;
    input["a"] = cfg.a;
    input["modulus"] =
        is_prime(cfg.p) ? json(make_extension(cfg.p, cfg.h).modulus) : json::array();
    st.doc["input"] = std::move(input);

    SlopePrediction pred = predict_slopes(cfg.d, cfg.p, cfg.h, cfg.M);
    json hyp = json::array();
    for (const auto& hc : pred.hypotheses)
      hyp.push_back({{"name", hc.name}, {"pass", hc.pass}, {"detail", hc.detail}});
    st.doc["hypotheses"] = std::move(hyp);
    json ps = json::array();
    for (const QQ& s : pred.slopes) ps.push_back(jq(s));
    st.doc["predicted_slopes"] = std::move(ps);
    st.predicted = pred.slopes;

    if (!pred.all_pass()) {
      st.hyp_failed = true;
      st.verdict = "hypothesis-failed";
    } else {
      switch (cfg.route) {
        case Route::predict:
          break;
        case Route::lfun:
          run_bruteforce(cfg, pred, st);
          break;
        case Route::dwork:
          run_dwork(cfg, pred, st);
          break;
        case Route::lemma:
          run_lemma(cfg, st);
          break;
        case Route::verify: {
          run_bruteforce(cfg, pred, st);
          if (cfg.M == 1 && cfg.h == 1) run_dwork(cfg, pred, st);
          if (st.have_brute && st.brute_complete && st.have_dwork) {
            std::vector<QQ> bl, dl;
            for (const QQ& s : st.brute)
              if (s < 1) bl.push_back(s);
            for (const QQ& s : st.dwork_hull)
              if (s < 1) dl.push_back(s);
            bool agree = bl == dl;
            st.doc["cross_check"] = {{"dwork_matches_bruteforce", agree}};
            if (!agree) {
              st.mismatch = true;
              st.verdict = "mismatch";
            }
          }
          break;
        }
      }
    }
  } catch (const BudgetExceeded& e) {
    st.doc["error"] = e.what();
    st.starved = true;
  } catch (const std::invalid_argument& e) {
    st.doc["error"] = e.what();
    st.hyp_failed = true;
    st.verdict = "hypothesis-failed";
  }

  st.doc["verdict"] = st.verdict;
  auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
  st.doc["timing"] = {{"total_s", dt.count()},
                      {"cache_hits", st.cache_hits},
                      {"cache_misses", st.cache_misses}};

  rep.verdict = st.verdict;
  if (st.hyp_failed)
    rep.exit_code = 2;
  else if (st.mismatch)
    rep.exit_code = 1;
  else if (st.starved)
    rep.exit_code = 3;
  else
    rep.exit_code = 0;

  if (cfg.format == "csv")
    rep.text = render_csv(st);
  else if (cfg.format == "table")
    rep.text = render_table(cfg, st);
  else
    rep.text = st.doc.dump(2) + "\n";
  return rep;
}

}  // namespace npl
