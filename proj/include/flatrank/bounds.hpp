#pragma once

// Border rank lower bounds from flattening ranks, the closed-form bounds for
// det_n, and the reference values they are compared against.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "flatrank/exact_linalg.hpp"
#include "flatrank/rational.hpp"

namespace flatrank {

// ceil(rank / t); throws std::invalid_argument for t < 1 or rank < 0.
BigInt flattening_bound(const BigInt& rank, const BigInt& t);

struct FormulaValue {
  int n = 0;
  std::string name;
  Rational value;
  BigInt integer_bound;  // ceil(value)

  nlohmann::json to_json() const;
};

// Koszul-Young bound from det^{/\2}, n >= 5.
FormulaValue main_theorem_value(int n);
// Bound from det^{/\1}, n >= 3.
FormulaValue preliminary_theorem_value(int n);

// dim im(det^{/\2}_{d,n-d}) / C(n,d)^2 as a rational function, 1 <= d <= n-2.
Rational f_formula(int n, int d);

// f(n,d) - f(n,d+1) (n-d)^2/(d+1)^2, the sign of which compares d and d+1.
Rational optimal_d_difference(int n, int d);

// argmax over 1 <= d <= n-2 of f(n,d) C(n,d)^2 (smallest d on ties), n >= 5.
int optimal_d(int n);

BigInt classical_bound(int n);  // C(n, floor(n/2))^2

struct ReferenceValue {
  std::string name;
  std::string value;  // exact integer or rational, or a decimal estimate
  bool display_only = false;  // not a theorem-grade number
  std::string note;
};

// Named values to print next to a computed bound for poly in {det, perm, ...}.
std::vector<ReferenceValue> reference_bounds(int n, const std::string& poly);

nlohmann::json to_json(const std::vector<ReferenceValue>& refs);

struct BoundCertificate {
  std::string poly;
  std::string method;  // koszul_full | koszul_minor | pieri
  int n = 0;
  int d = 0;
  int p = 0;
  BigInt rank;
  BigInt t;
  BigInt bound;
  RankCertificate rank_certificate;
  std::optional<RankCertificate> t_certificate;  // when t was computed rather than known

  nlohmann::json to_json(bool with_timing = true) const;
};

BoundCertificate make_certificate(std::string poly, std::string method, int n, int d, int p,
                                  const RankCertificate& rank, const BigInt& t);

}  // namespace flatrank
