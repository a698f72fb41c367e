#pragma once

#include <optional>
#include <string>
#include <vector>

#include "npl/cyclotomic.hpp"

namespace npl {

enum class Route { predict, lfun, dwork, lemma, verify };

std::optional<Route> route_from_string(const std::string& s);

struct RunConfig {
  long p = 0;
  long d = 0;
  long h = 1;
  long M = 1;
  std::vector<long> a;  // canonical-basis coordinates, length h
  Route route = Route::verify;
  long max_m = 0;  // 0 means the full L-degree
  long trunc = 0;  // 0 means the module default
  long guard = 6;
  int threads = 1;
  unsigned long budget = 200000000UL;
  std::string format = "json";  // json | csv | table
  std::string cache_dir;        // NPL_CACHE_DIR overrides when set
  bool no_cache = false;
};

struct VerifyReport {
  int exit_code = 0;
  std::string verdict;
  std::string text;  // rendered in the requested format
};

VerifyReport run_report(const RunConfig& cfg);

// Exponential-sum cache: one file per S_m, exact integer coordinates.
struct SumKey {
  long p = 0, h = 0, d = 0, M = 0, m = 0;
  std::vector<long> a, modulus;
};

std::string cache_path(const std::string& dir, const SumKey& key);
void cache_sums(const std::string& dir, const SumKey& key, const CyclotomicInt& s);
// nullopt when absent or when the entry does not round-trip the key
std::optional<CyclotomicInt> load_sums(const std::string& dir, const SumKey& key);

}  // namespace npl
