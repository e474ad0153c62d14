// flatrank: border rank lower bounds from exact flattening ranks.
//
//   flatrank bound --poly det --n 4 --method koszul-minor --d 2 --p 1
//   flatrank decompose --n 6 --d 3 --p 2
//   flatrank verify --suite quick
//
// Exit status: 0 success, 1 failed check or computation error, 2 usage error.

#include <cstdlib>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>

#include "flatrank/commands.hpp"
#include "flatrank/verify_suite.hpp"

namespace {

using namespace flatrank;

void print_table(const BoundRun& run, std::ostream& os) {
  const auto& c = run.certificate;
  const auto& rc = c.rank_certificate;
  auto row = [&os](const std::string& k, const std::string& v) { os << std::left << std::setw(12) << k << v << '\n'; };
  row("poly", c.poly + " (n = " + std::to_string(c.n) + ")");
  row("method", c.method + (c.method == "pieri" ? "" : ", d = " + std::to_string(c.d) + ", p = " + std::to_string(c.p)));
  row("matrix", std::to_string(run.rows) + " x " + std::to_string(run.cols) + ", nnz " + std::to_string(run.nnz));
  std::string how = rc.method == RankMethod::rational ? "over Q" : "mod " + std::to_string(rc.primes_used.front());
  if (rc.lower_bound_only) how += ", lower bound only";
  row("rank", to_string(c.rank) + " (" + how + ", " + std::to_string(rc.components) + " blocks, " +
                  std::to_string(rc.elapsed.count()) + " ms)");
  row("t", to_string(c.t) + " (" + run.t_source + ")");
  row("bound", to_string(c.bound) + " = ceil(" + to_string(c.rank) + " / " + to_string(c.t) + ")");
  if (!run.references.empty()) {
    os << "reference values:\n";
    for (const auto& r : run.references)
      os << "  " << std::left << std::setw(26) << r.name << std::setw(14) << r.value << r.note
         << (r.display_only ? " [estimate]" : "") << '\n';
  }
}

std::size_t parse_memory(const std::string& text) {
  std::size_t pos = 0;
  const double value = std::stod(text, &pos);
  std::string unit = text.substr(pos);
  double scale = 1;
  if (unit.empty() || unit == "M" || unit == "MiB") scale = double(1 << 20);
  else if (unit == "G" || unit == "GiB") scale = double(1 << 30);
  else if (unit == "K" || unit == "KiB") scale = 1024;
  else throw UsageError("--memory-cap: unknown unit '" + unit + "' (use MiB or GiB)");
  if (value <= 0) throw UsageError("--memory-cap must be positive");
  return static_cast<std::size_t>(value * scale);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Koszul-Young flattening ranks and symmetric border rank lower bounds"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> prime;
  bool exact = false;
  unsigned threads = 1;
  std::string cache_dir;
  std::string format = "table";
  std::uint64_t seed = 1;
  std::string memory_cap = "4GiB";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "table"}));
    sub->add_option("--seed", seed, "seed for random primes");
    sub->add_option("--memory-cap", memory_cap, "elimination memory cap, e.g. 512MiB or 4GiB (min 256MiB)");
  };

  BoundRequest request;
  std::optional<int> n, d, p;
  std::string method;
  auto* bound = app.add_subcommand("bound", "rank of a flattening and the resulting border rank bound");
  bound->add_option("--poly", request.poly, "det | perm | power | file:<path>")->required();
  bound->add_option("--n", n, "matrix size");
  bound->add_option("--method", method, "koszul-full | koszul-minor | pieri");
  bound->add_option("--d", d, "dual degree (default floor(n/2))");
  bound->add_option("--p", p, "exterior degree (default 2)");
  bound->add_option("--prime", prime, "rank modulo this prime");
  bound->add_flag("--exact", exact, "rank over Q by dense fraction-free elimination");
  bound->add_option("--cache-dir", cache_dir, "matrix cache directory (else $FLATRANK_CACHE)");
  add_common(bound);

  int dn = 0, dd = 0, dp = 2;
  auto* decompose = app.add_subcommand("decompose", "candidate image modules of det^{/\\p}_{d,n-d}");
  decompose->add_option("--n", dn, "matrix size")->required();
  decompose->add_option("--d", dd, "dual degree")->required();
  decompose->add_option("--p", dp, "exterior degree, 1 or 2");
  add_common(decompose);

  std::string suite = "quick";
  auto* verify = app.add_subcommand("verify", "regression checks");
  verify->add_option("--suite", suite, "quick | paper | hwv")->check(CLI::IsMember({"quick", "paper", "hwv"}));
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    RunConfig config;
    config.prime = prime;
    config.exact = exact;
    config.threads = threads;
    config.seed = seed;
    config.memory_cap_bytes = parse_memory(memory_cap);
    if (!cache_dir.empty())
      config.cache_dir = cache_dir;
    else if (const char* env = std::getenv("FLATRANK_CACHE"); env && *env)
      config.cache_dir = env;
    config.validate();

    if (*bound) {
      request.n = n;
      request.d = d;
      request.p = p;
      if (!method.empty()) request.method = parse_bound_method(method);
      const BoundRun run = run_bound(request, config);
      if (run.cache_file)
        std::cerr << (run.cache_hit ? "cache hit: " : "cache stored: ") << run.cache_file->string() << '\n';
      if (format == "json")
        std::cout << run.to_json().dump(2) << '\n';
      else
        print_table(run, std::cout);
      return 0;
    }
    if (*decompose) {
      const auto report = run_decompose(dn, dd, dp);
      if (format == "json")
        std::cout << report.json.dump(2) << '\n';
      else
        std::cout << report.text;
      return 0;
    }
    VerifyOptions vo{config.threads, config.seed, config.memory_cap_bytes};
    const bool json = format == "json";
    const auto results = run_suite(parse_suite(suite), vo, [json](const CheckResult& r) {
      if (!json)
        std::cout << (r.passed ? "PASS " : "FAIL ") << std::left << std::setw(30) << r.name << r.detail << " ("
                  << r.elapsed.count() << " ms)" << std::endl;
    });
    if (json) std::cout << to_json(results).dump(2) << '\n';
    const bool ok = all_passed(results);
    if (!json) std::cout << (ok ? "all checks passed" : "some checks FAILED") << '\n';
    return ok ? 0 : 1;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
