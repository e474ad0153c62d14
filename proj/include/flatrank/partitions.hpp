#pragma once

// Partition combinatorics for GL(A) x GL(B) decompositions: conjugation,
// Schur module dimensions, the row/column Pieri rules and the Cauchy
// decomposition of exterior powers of A (x) B.

#include <compare>
#include <initializer_list>
#include <string>
#include <vector>

#include <json.hpp>

#include "flatrank/rational.hpp"

namespace flatrank {

// Weakly decreasing sequence of positive integers. Trailing zeros are
// stripped on construction so that equal partitions compare equal.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts);
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  // (head, 1^ones): a hook-like shape, e.g. hook(3, 2) == (3,1,1).
  static Partition with_ones(std::vector<int> head, int ones);

  const std::vector<int>& parts() const { return parts_; }
  std::size_t length() const { return parts_.size(); }
  int size() const;
  bool empty() const { return parts_.empty(); }
  // i-th part, 0-based; zero past the end.
  int operator[](std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }

  Partition conjugate() const;
  std::string to_string() const;

  auto operator<=>(const Partition&) const = default;

 private:
  std::vector<int> parts_;
};

inline Partition conjugate(const Partition& pi) { return pi.conjugate(); }

// All partitions of p, in decreasing lexicographic order.
std::vector<Partition> partitions_of(int p);

// dim S_pi C^N via the hook-content formula; zero when length(pi) > N.
BigInt schur_dim(const Partition& pi, int N);

// Shapes obtained by adding d boxes, no two in the same column, with length <= N.
// Decreasing lexicographic order.
std::vector<Partition> pieri_row(const Partition& pi, int d, int N);

// Shapes obtained by adding k boxes, no two in the same row, with length <= N.
std::vector<Partition> pieri_column(const Partition& pi, int k, int N);

struct ModuleTerm {
  Partition a;
  Partition b;
  int multiplicity = 1;

  bool operator==(const ModuleTerm&) const = default;
};

// Formal sum of irreducible GL(A) x GL(B) modules S_a A (x) S_b B.
class ModuleList {
 public:
  ModuleList() = default;

  // Accumulates multiplicity; mult must be positive.
  void add(const Partition& a, const Partition& b, int mult = 1);
  int multiplicity(const Partition& a, const Partition& b) const;
  bool contains(const Partition& a, const Partition& b) const { return multiplicity(a, b) > 0; }

  const std::vector<ModuleTerm>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  BigInt total_dimension(int N) const;

  // Entries sorted by (a, b) in decreasing lexicographic order.
  ModuleList sorted() const;

  // [{"a":[..],"b":[..],"mult":m,"dim_a":..,"dim_b":..}, ..., {"total_dim": D}]
  nlohmann::json to_json(int N) const;

 private:
  std::vector<ModuleTerm> entries_;
};

// Exterior power /\^p(A (x) B) = sum over |lambda| = p of S_lambda A (x) S_lambda' B.
ModuleList cauchy_wedge(int p, int Na, int Nb);

// /\^k A (x) /\^k B (x) /\^p(A (x) B) with dim A = dim B = n.
ModuleList decompose_exterior_tensor(int n, int k, int p);

// Domain of the degree-p minor Koszul map: /\^{n-d}A (x) /\^{n-d}B (x) /\^p(A (x) B).
ModuleList decompose_wedge_product(int n, int d, int p);

// Modules common to the domain and codomain of the minor Koszul map, each with
// the smaller of its two multiplicities. Partitions longer than n are absent.
ModuleList candidate_image(int n, int d, int p);

// Pairs that would appear in candidate_image(n, d, p) if dim A were unbounded
// but are dropped because a partition is longer than n.
ModuleList length_dropped_image(int n, int d, int p);

BigInt theoretical_image_dim(int n, int d, int p);

}  // namespace flatrank
