#pragma once

// The work behind the `bound` and `decompose` subcommands.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "flatrank/bounds.hpp"
#include "flatrank/polynomials.hpp"

namespace flatrank {

// Bad or incompatible arguments; the CLI maps it to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMinMemoryCap = std::size_t{256} << 20;

struct RunConfig {
  std::optional<std::uint64_t> prime;  // rank modulo this prime instead of the default
  bool exact = false;                  // rank over Q (dense, guarded)
  unsigned threads = 1;
  std::optional<std::filesystem::path> cache_dir;
  std::size_t memory_cap_bytes = std::size_t{4} << 30;
  std::uint64_t seed = 1;

  void validate() const;  // throws UsageError
};

enum class BoundMethod { koszul_full, koszul_minor, pieri };

std::string to_string(BoundMethod m);  // koszul_full, ...
BoundMethod parse_bound_method(const std::string& s);  // accepts koszul-full or koszul_full

struct BoundRequest {
  std::string poly;  // det | perm | power | file:<path>
  std::optional<int> n;
  std::optional<BoundMethod> method;
  std::optional<int> d;
  std::optional<int> p;
};

// det_n, perm_n, (x_{n,n})^n, or a polynomial read from a JSON file.
Polynomial resolve_polynomial(const std::string& poly, std::optional<int> n);

struct BoundRun {
  BoundCertificate certificate;
  std::string t_source;  // "computed" or "C(n^2-1,p)"
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t nnz = 0;
  bool cache_hit = false;
  std::optional<std::filesystem::path> cache_file;
  std::vector<ReferenceValue> references;

  // Everything but cache status; elapsed times only when with_timing.
  nlohmann::json to_json(bool with_timing = true) const;
};

BoundRun run_bound(const BoundRequest& request, const RunConfig& config);

struct DecomposeReport {
  int n = 0;
  int d = 0;
  int p = 0;
  nlohmann::json json;
  std::string text;
};

DecomposeReport run_decompose(int n, int d, int p);

}  // namespace flatrank
