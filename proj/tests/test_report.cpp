#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "json.hpp"
#include "npl/lfunction.hpp"
#include "npl/report.hpp"

using namespace npl;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("npl-test-" + std::to_string(::getpid()) + "-" +
            std::to_string(reinterpret_cast<uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

json parsed(const VerifyReport& rep) { return json::parse(rep.text); }

}  // namespace

TEST_CASE("route parsing") {
  CHECK(route_from_string("predict") == Route::predict);
  CHECK(route_from_string("verify") == Route::verify);
  CHECK(route_from_string("lemma") == Route::lemma);
  CHECK(!route_from_string("nonsense").has_value());
}

TEST_CASE("sum cache round trip") {
  TempDir tmp;
  CurveConfig cfg{5, 1, 3, 1, {1}};
  auto s2 = exp_sum(cfg, 2);
  SumKey key{5, 1, 3, 1, 2, {1}, {0, 1}};
  cache_sums(tmp.path.string(), key, s2);
  auto back = load_sums(tmp.path.string(), key);
  REQUIRE(back.has_value());
  CHECK(*back == s2);

  // a different a misses
  SumKey other = key;
  other.a = {2};
  CHECK(!load_sums(tmp.path.string(), other).has_value());

  // layout: p{p}h{h}d{d}M{M}/a{...}/m{m}
  CHECK(cache_path(tmp.path.string(), key) ==
        tmp.path.string() + "/p5h1d3M1/a1/m2");
  SumKey two = key;
  two.a = {1, 2};
  two.h = 2;
  CHECK(cache_path(tmp.path.string(), two) ==
        tmp.path.string() + "/p5h2d3M1/a1_2/m2");

  // corruption: mangle the stored file, loader must refuse it
  std::ofstream(cache_path(tmp.path.string(), key)) << "{\"schema\":1,\"p\":7}";
  CHECK(!load_sums(tmp.path.string(), key).has_value());
}

TEST_CASE("verify run on the base example") {
  RunConfig cfg;
  cfg.p = 5;
  cfg.d = 3;
  cfg.a = {1};
  cfg.no_cache = true;
  VerifyReport rep = run_report(cfg);
  CHECK(rep.exit_code == 0);
  CHECK(rep.verdict == "match");

  json doc = parsed(rep);
  CHECK(doc["schema"] == 1);
  CHECK(doc["input"]["p"] == 5);
  CHECK(doc["input"]["modulus"] == json::array({0, 1}));
  CHECK(doc["predicted_slopes"] ==
        json::array({json::array({0, 1}), json::array({1, 2}), json::array({1, 2})}));
  for (auto& h : doc["hypotheses"]) CHECK(h["pass"] == true);
  CHECK(doc["bruteforce"]["compare"]["verdict"] == "match");
  CHECK(doc["dwork"]["consistent"] == true);
  CHECK(doc["cross_check"]["dwork_matches_bruteforce"] == true);
  CHECK(doc["verdict"] == "match");
  for (auto& row : doc["dwork"]["transfer_bounds"]) CHECK(row["pass"] == true);
}

TEST_CASE("hypothesis failures exit 2") {
  RunConfig cfg;
  cfg.p = 7;
  cfg.d = 3;  // 7 = +1 mod 3
  cfg.a = {1};
  cfg.no_cache = true;
  VerifyReport rep = run_report(cfg);
  CHECK(rep.exit_code == 2);
  CHECK(rep.verdict == "hypothesis-failed");

  RunConfig bad;
  bad.p = 4;
  bad.d = 3;
  bad.a = {1};
  bad.no_cache = true;
  CHECK(run_report(bad).exit_code == 2);
}

TEST_CASE("reports are deterministic and cache does not change them") {
  TempDir tmp;
  RunConfig cfg;
  cfg.p = 5;
  cfg.d = 3;
  cfg.a = {2};
  cfg.route = Route::lfun;
  cfg.cache_dir = tmp.path.string();
  VerifyReport cold = run_report(cfg);
  VerifyReport warm = run_report(cfg);
  json a = parsed(cold), b = parsed(warm);
  CHECK(a["timing"]["cache_misses"].get<long>() > 0);
  CHECK(b["timing"]["cache_hits"].get<long>() > 0);
  a.erase("timing");
  b.erase("timing");
  CHECK(a.dump() == b.dump());

  cfg.no_cache = true;
  VerifyReport nc1 = run_report(cfg);
  VerifyReport nc2 = run_report(cfg);
  json c = parsed(nc1), d = parsed(nc2);
  c.erase("timing");
  d.erase("timing");
  CHECK(c.dump() == d.dump());
  CHECK(c.dump() == a.dump());
}

TEST_CASE("prefix runs and budget exhaustion") {
  RunConfig cfg;
  cfg.p = 5;
  cfg.d = 3;
  cfg.a = {1};
  cfg.route = Route::lfun;
  cfg.max_m = 2;
  cfg.no_cache = true;
  VerifyReport rep = run_report(cfg);
  CHECK(rep.exit_code == 0);
  CHECK(rep.verdict == "prefix-match");

  RunConfig tiny = cfg;
  tiny.max_m = 0;
  tiny.budget = 10;  // cannot even enumerate F_5^x? it can: 4 elements, m=1 only
  VerifyReport starved = run_report(tiny);
  CHECK(starved.exit_code == 3);
}

TEST_CASE("output formats") {
  RunConfig cfg;
  cfg.p = 5;
  cfg.d = 3;
  cfg.a = {1};
  cfg.no_cache = true;
  cfg.format = "csv";
  VerifyReport csv = run_report(cfg);
  CHECK(csv.text.find("route,index,num,den") == 0);
  CHECK(csv.text.find("predict,0,0,1") != std::string::npos);
  CHECK(csv.text.find("predict,1,1,2") != std::string::npos);
  CHECK(csv.text.find("lfun,") != std::string::npos);
  CHECK(csv.text.find("dwork,") != std::string::npos);

  cfg.format = "table";
  VerifyReport tab = run_report(cfg);
  CHECK(tab.text.find("verdict: match") != std::string::npos);
  CHECK(tab.text.find("1/2") != std::string::npos);
}

TEST_CASE("lemma route") {
  RunConfig cfg;
  cfg.p = 5;
  cfg.d = 3;
  cfg.a = {2};
  cfg.route = Route::lemma;
  cfg.no_cache = true;
  VerifyReport rep = run_report(cfg);
  CHECK(rep.exit_code == 0);
  json doc = parsed(rep);
  auto& rows = doc["lemma"];
  REQUIRE(rows.size() == 2);
  for (auto& r : rows) {
    CHECK(r["closed_form_matches"] == true);
    CHECK(r["factorizations_ok"] == true);
  }
}
