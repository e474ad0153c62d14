#pragma once

// Exact rank of sparse matrices over prime fields and over the rationals.
//
// Both engines first split the matrix into the connected components of its
// row/column incidence graph; the rank is the sum of the component ranks.
// Flattenings of weight vectors are block diagonal in the torus weights, so
// the components are the weight blocks and elimination never sees the full
// matrix at once.

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "flatrank/rational.hpp"

namespace flatrank {

struct MatrixEntry {
  std::uint32_t row = 0;
  std::uint32_t col = 0;
  Rational value;
};

// Coordinate-format matrix. Duplicate coordinates are not allowed.
struct SparseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<MatrixEntry> entries;

  // Order-independent fingerprint of the nonzero pattern and values.
  std::uint64_t content_hash() const;
};

inline constexpr std::uint64_t kDefaultPrime = 1073741789;  // largest prime below 2^30

bool is_prime(std::uint64_t n);

class PrimeField {
 public:
  explicit PrimeField(std::uint64_t modulus = kDefaultPrime);

  std::uint64_t modulus() const { return p_; }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p_; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p_ - b) % p_; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t inv(std::uint64_t a) const;
  // Throws std::domain_error when the denominator vanishes mod p.
  std::uint64_t reduce(const Rational& q) const;

 private:
  std::uint64_t p_;
};

enum class RankMethod { modular, rational };

struct RankCertificate {
  std::size_t rank = 0;
  RankMethod method = RankMethod::modular;
  std::vector<std::uint64_t> primes_used;
  std::uint64_t matrix_hash = 0;
  std::chrono::milliseconds elapsed{0};
  // Set when the value is only known to be <= the rank over Q.
  bool lower_bound_only = false;
  std::size_t components = 0;

  nlohmann::json to_json(bool with_timing = true) const;
};

struct RankOptions {
  unsigned threads = 1;
  std::size_t memory_cap_bytes = std::size_t{4} << 30;
};

// Rank of M mod p: sparse elimination with Markowitz pivoting per component.
RankCertificate rank_mod_p(const SparseMatrix& M, const PrimeField& field, const RankOptions& opts = {});

struct RationalRankOptions {
  RankOptions base;
  // rows * cols above this needs multi_prime.
  std::size_t dense_guard = 10'000'000;
  bool multi_prime = false;
  int num_primes = 2;
  std::uint64_t seed = 1;
};

// Dense fraction-free (Bareiss) elimination over Z per component when
// rows * cols <= dense_guard; otherwise, in multi-prime mode, the maximum of
// the ranks modulo num_primes random primes, flagged as a lower bound.
RankCertificate rank_rational(const SparseMatrix& M, const RationalRankOptions& opts = {});

// Deterministic list of distinct random primes in [2^29, 2^30).
std::vector<std::uint64_t> random_primes(int count, std::uint64_t seed);

}  // namespace flatrank
