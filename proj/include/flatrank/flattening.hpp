#pragma once

// Koszul flattenings as sparse matrices.
//
// Variables are addressed by their row-major linear index 0..n^2-1; a wedge
// basis element is a strictly increasing list of such indices. Minor index
// sets are 1-based and strictly increasing.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "flatrank/exact_linalg.hpp"
#include "flatrank/polynomials.hpp"

namespace flatrank {

using Wedge = std::vector<int>;

// Writes x ^ w into out and returns the sign (-1)^#{y in w : y < x},
// or 0 (leaving out untouched) when x already occurs in w.
int wedge_insert(const Wedge& w, int x, Wedge& out);

// Sorts w in place; returns the sign of the sorting permutation, 0 on a repeat.
int normalize_wedge(Wedge& w);

std::string wedge_label(const Wedge& w, int n);

// Lexicographic ranking of k-subsets of {0, ..., m-1}.
class SubsetIndexer {
 public:
  SubsetIndexer(int m, int k);
  std::size_t size() const { return size_; }
  std::size_t rank(const std::vector<int>& subset) const;
  std::vector<int> unrank(std::size_t r) const;

 private:
  std::uint64_t choose(int a, int b) const;
  int m_;
  int k_;
  std::size_t size_;
  std::vector<std::vector<std::uint64_t>> table_;
};

struct MinorIndex {
  std::vector<int> I;
  std::vector<int> J;

  std::string label() const;  // "D[1,2|1,3]"
  auto operator<=>(const MinorIndex&) const = default;
};

enum class FlatteningKind { full, minor, pieri };
std::string to_string(FlatteningKind kind);

struct Basis {
  std::vector<std::string> rows;
  std::vector<std::string> cols;

  std::uint64_t hash() const;
};

struct FlatteningMatrix {
  FlatteningKind kind = FlatteningKind::full;
  std::string polynomial_id;
  int n = 0;
  int d = 0;
  int p = 0;
  Basis basis;
  SparseMatrix matrix;

  std::uint64_t basis_hash() const { return basis.hash(); }
};

// Rows: (wedge of size p+1, monomial of degree e-d-1); columns: (wedge of
// size p, dual monomial of degree d), both ordered wedge-major.
Basis full_koszul_basis(int n, int e, int d, int p);

// P^{/\p}: omega (x) alpha -> sum_x (x ^ omega) (x) d/dx (alpha -| P).
FlatteningMatrix full_koszul_matrix(const Polynomial& P, int d, int p, std::string polynomial_id = "");

// Domain basis element Delta^I_J (x) omega of a minor map, or a codomain one.
struct KoszulKey {
  MinorIndex minor;
  Wedge wedge;

  std::string label(int n) const;
  auto operator<=>(const KoszulKey&) const = default;
};

using KoszulVector = std::map<KoszulKey, Rational>;

// Columns: (MinorIndex with |I| = n-d, wedge of size p); rows: (MinorIndex
// with |I| = n-d-1, wedge of size p+1), both ordered minor-major.
Basis minor_koszul_basis(int n, int d, int p);

// det^{/\p}_{d,n-d}: Delta^I_J (x) omega ->
//   sum (-1)^{pos_I(i)+pos_J(j)} X^i_j ^ omega (x) Delta^{I-i}_{J-j}.
FlatteningMatrix minor_koszul_matrix(int n, int d, int p);

// The same map applied to a vector given in structured coordinates, for
// sizes where the matrix itself is too large to build.
KoszulVector apply_minor_koszul(int n, int d, int p, const KoszulVector& v);

enum class HwvLemma { p1_21, p1_1s, p2_a, p2_b, p2_c, p2_d, p2_e, p2_f };

const std::vector<HwvLemma>& all_hwv_lemmas();
std::string to_string(HwvLemma lemma);
HwvLemma parse_hwv_lemma(std::string_view id);
int hwv_degree(HwvLemma lemma);  // the p of the flattening it belongs to

// Projected highest weight vector in the domain of minor_koszul_matrix(n, d, p).
// Throws std::invalid_argument when the module does not fit in dimension n.
KoszulVector hwv_vector(HwvLemma lemma, int n, int d);

// The codomain coordinate singled out as non-cancelling for this lemma;
// empty when that coordinate is not a basis element for this (n, d).
std::optional<KoszulKey> hwv_expected_witness(HwvLemma lemma, int n, int d);

struct HwvResult {
  bool nonzero = false;
  KoszulKey witness;
  Rational coefficient;
  // False when the expected coordinate vanished and another one was reported.
  bool expected_witness = false;
  std::size_t image_terms = 0;
};

HwvResult verify_hwv_nonzero(HwvLemma lemma, int n, int d);

// Transpose A <-> B: X^i_j -> X^j_i, Delta^I_J -> Delta^J_I.
KoszulVector transpose(const KoszulVector& v, int n);

}  // namespace flatrank
