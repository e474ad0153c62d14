#pragma once

// Homogeneous polynomials with exact rational coefficients in the n^2
// variables X^i_j = a_i (x) b_j, ordered row-major: X^1_1, X^1_2, ..., X^n_n.

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "flatrank/rational.hpp"

namespace flatrank {

// 1-based (row, col) position of a variable in the generic n x n matrix.
struct VarIndex {
  int row = 1;
  int col = 1;

  int linear(int n) const { return (row - 1) * n + (col - 1); }
  static VarIndex from_linear(int index, int n) { return {index / n + 1, index % n + 1}; }

  auto operator<=>(const VarIndex&) const = default;
};

using Exponents = std::vector<int>;

class Polynomial {
 public:
  Polynomial() = default;
  // Zero polynomial of the given degree in n^2 variables.
  Polynomial(int n, int degree);

  int n() const { return n_; }
  int num_vars() const { return n_ * n_; }
  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t num_terms() const { return terms_.size(); }
  const std::map<Exponents, Rational>& terms() const { return terms_; }

  // Adds c * x^e; removes the term if the coefficient cancels.
  void add_term(const Exponents& e, const Rational& c);
  Rational coefficient(const Exponents& e) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  bool operator==(const Polynomial& other) const = default;

  Polynomial derivative(int var) const;
  Rational evaluate(std::span<const Rational> point) const;

  // e.g. "x[1,1]*x[2,2] - x[1,2]*x[2,1]"
  std::string to_string() const;

 private:
  void check_exponents(const Exponents& e) const;

  int n_ = 0;
  int degree_ = 0;
  std::map<Exponents, Rational> terms_;
};

Polynomial determinant_poly(int n);
Polynomial permanent_poly(int n);

// Minor on 1-based row set I and column set J (strictly increasing, |I| = |J|),
// as a polynomial in all n^2 variables. The empty minor is the constant 1.
Polynomial minor_poly(int n, std::span<const int> I, std::span<const int> J);

Polynomial variable_power(int n, VarIndex v, int e);
Polynomial linear_form_power(int n, std::span<const Rational> coeffs, int e);

// Apolarity contraction: every dual monomial acts as the bare iterated partial
// derivative (no factorial normalization).
Polynomial contract(const Polynomial& alpha, const Polynomial& P);

// Sum of r e-th powers of pseudorandom linear forms with coefficients in
// [-2, 2]; deterministic in seed.
Polynomial random_low_rank(int r, int e, int n, std::uint64_t seed);

// P(g x): substitutes X_k -> sum_l g[k][l] X_l for a num_vars x num_vars matrix g.
Polynomial substitute_linear(const Polynomial& P, const std::vector<std::vector<Rational>>& g);

// {"n":3,"degree":3,"terms":[{"exps":[...],"num":"1","den":"1"},...]}
nlohmann::json to_json(const Polynomial& P);
Polynomial polynomial_from_json(const nlohmann::json& j);

}  // namespace flatrank
