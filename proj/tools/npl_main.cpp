#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "npl/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Newton polygon checks for L-functions of x^d + a x^(d-1) over F_q"};
  app.set_help_flag("--help", "print usage");  // frees -h / --h for the field degree

  long p = 0, d = 0, h = 1, M = 1, max_m = 0, trunc = 0, guard = 6;
  int threads = 1;
  std::string a_str = "1", route = "verify", format = "json", cache_dir, out;
  bool no_cache = false;

  app.add_option("--p", p, "prime p")->required();
  app.add_option("--d", d, "degree d")->required();
  app.add_option("--h", h, "extension degree h (q = p^h)");
  app.add_option("--a", a_str,
                 "coefficient a: an integer (h = 1) or h comma-separated "
                 "coordinates in the canonical basis");
  app.add_option("--chi-level", M, "character order exponent M (order p^M)");
  app.add_option("--route", route, "route to run")
      ->check(CLI::IsMember({"predict", "lfun", "dwork", "lemma", "verify"}));
  app.add_option("--max-m", max_m, "cap the brute-force sums at S_m");
  app.add_option("--trunc", trunc, "nuclear matrix truncation override");
  app.add_option("--guard", guard, "precision guard (pi-adic digits)");
  app.add_option("--threads", threads, "worker threads for enumeration");
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("--cache-dir", cache_dir, "exponential-sum cache directory");
  app.add_flag("--no-cache", no_cache, "disable the sum cache");
  app.add_option("--out", out, "write the report to this file instead of stdout");

  CLI11_PARSE(app, argc, argv);

  npl::RunConfig cfg;
  cfg.p = p;
  cfg.d = d;
  cfg.h = h;
  cfg.M = M;
  cfg.max_m = max_m;
  cfg.trunc = trunc;
  cfg.guard = guard;
  cfg.threads = threads;
  cfg.format = format;
  cfg.cache_dir = cache_dir;
  cfg.no_cache = no_cache;
  cfg.route = *npl::route_from_string(route);

  // parse a; pad with zeros so an integer also works for h > 1
  {
    std::stringstream ss(a_str);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        cfg.a.push_back(std::stol(tok));
      } catch (const std::exception&) {
        std::cerr << "error: bad coordinate in --a: " << tok << "\n";
        return 2;
      }
    }
    if ((long)cfg.a.size() > h) {
      std::cerr << "error: --a has more than h coordinates\n";
      return 2;
    }
    cfg.a.resize(h, 0);
    if (p >= 2)
      for (long& c : cfg.a) c = ((c % p) + p) % p;
  }

  npl::VerifyReport rep = npl::run_report(cfg);
  if (out.empty()) {
    std::cout << rep.text;
  } else {
    std::ofstream f(out);
    if (!f) {
      std::cerr << "error: cannot write " << out << "\n";
      return 2;
    }
    f << rep.text;
  }
  return rep.exit_code;
}
