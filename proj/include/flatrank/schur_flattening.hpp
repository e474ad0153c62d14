#pragma once

// Young flattenings between Schur modules in the semistandard tableau basis
// (rows weakly increasing, columns strictly increasing).

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "flatrank/flattening.hpp"
#include "flatrank/partitions.hpp"
#include "flatrank/polynomials.hpp"

namespace flatrank {

// A filling of a Young diagram, stored column by column (top to bottom).
// Entries are variable indices 1..N.
class Tableau {
 public:
  Tableau() = default;
  explicit Tableau(std::vector<std::vector<int>> columns);
  static Tableau from_rows(const std::vector<std::vector<int>>& rows);

  const std::vector<std::vector<int>>& columns() const { return cols_; }
  Partition shape() const;
  int at(std::size_t row, std::size_t col) const { return cols_[col][row]; }
  bool is_semistandard() const;
  // Sorted multiset of entries.
  std::vector<int> content() const;
  std::string label() const;  // rows separated by '|', e.g. "1,1,2|2,3"

  auto operator<=>(const Tableau&) const = default;

 private:
  std::vector<std::vector<int>> cols_;
};

using TableauCombination = std::map<Tableau, Rational>;

// Straightening into the semistandard basis with a memo of solved fillings.
// Not thread safe; use one instance per thread.
class Straightener {
 public:
  TableauCombination straighten(const Tableau& filling);
  std::size_t memo_size() const { return memo_.size(); }

 private:
  const TableauCombination& straighten_sorted(const Tableau& t);
  std::map<Tableau, TableauCombination> memo_;
};

TableauCombination straighten(const Tableau& filling);

// All semistandard tableaux of the shape with entries in 1..N, in
// lexicographic order of their row reading words.
std::vector<Tableau> ssyt_enumerate(const Partition& shape, int N);

// shape with one box added at the end of each listed (1-based) row. Throws
// when the result is not a partition or two added boxes share a column.
Partition pieri_target_shape(const Partition& shape, const std::vector<int>& target_rows);

// pi_n = ((n-1)^{n+1}, ..., 1^{n+1}) and the rows 1, n+2, 2n+3, ... whose
// extension gives (n, pi_n).
Partition pi_shape(int n);
std::vector<int> pi_target_rows(int n);

Basis pieri_basis(const Partition& shape, const std::vector<int>& target_rows, int N);

// Column for T: sum over the monomials m of phi and over all distinct
// arrangements of the variables of m in the added boxes of
// coefficient(m) * straighten(T with the boxes appended).
FlatteningMatrix pieri_flattening_matrix(const Polynomial& phi, const Partition& shape,
                                         const std::vector<int>& target_rows, int N, unsigned threads = 1,
                                         std::string polynomial_id = "");

}  // namespace flatrank
