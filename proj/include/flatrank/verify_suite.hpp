#pragma once

// Regression checks against the published numbers.
//
//   quick  small dimensions, the n = 3 Pieri ranks, the n = 3, 4 Koszul ranks,
//          formula identities, decompositions and the n = 5 hwv vectors
//   paper  quick, plus the n = 5 minor map, the n = 4 p = 2 baseline and
//          the full hwv sweep
//   hwv    every lemma vector for n = 5..8, d = floor(n/2)

#include <chrono>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "flatrank/exact_linalg.hpp"

namespace flatrank {

enum class Suite { quick, paper, hwv };

Suite parse_suite(std::string_view name);
std::string to_string(Suite suite);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  std::chrono::milliseconds elapsed{0};
};

struct VerifyOptions {
  unsigned threads = 1;
  std::uint64_t seed = 1;  // picks the second prime of two-prime checks
  std::size_t memory_cap_bytes = std::size_t{4} << 30;
};

// Ranks modulo kDefaultPrime and one seeded random prime; `agree` says
// whether the two coincide. The certificate lists both primes.
struct TwoPrimeRank {
  RankCertificate certificate;
  std::size_t first = 0;
  std::size_t second = 0;
  bool agree() const { return first == second; }
};
TwoPrimeRank rank_two_primes(const SparseMatrix& M, std::uint64_t seed, const RankOptions& opts = {});

// Recorded ranks of minor_koszul_matrix(4, 2, 2) and minor_koszul_matrix(5, 2, 2).
inline constexpr std::size_t kBaselineRankN4P2 = 4065;
inline constexpr std::size_t kBaselineRankN5P2 = 29376;

// Runs the checks in order; on_result, if set, sees each result as it finishes.
std::vector<CheckResult> run_suite(Suite suite, const VerifyOptions& opts = {},
                                   const std::function<void(const CheckResult&)>& on_result = {});

bool all_passed(const std::vector<CheckResult>& results);
nlohmann::json to_json(const std::vector<CheckResult>& results, bool with_timing = true);

}  // namespace flatrank
