#include <doctest.h>

#include <random>

#include "flatrank/polynomials.hpp"

using namespace flatrank;

namespace {

Exponents unit(int n, std::initializer_list<std::pair<VarIndex, int>> powers) {
  Exponents e(static_cast<std::size_t>(n * n), 0);
  for (const auto& [v, k] : powers) e[static_cast<std::size_t>(v.linear(n))] += k;
  return e;
}

Polynomial monomial(int n, std::initializer_list<std::pair<VarIndex, int>> powers, Rational c = 1) {
  int deg = 0;
  for (const auto& pk : powers) deg += pk.second;
  Polynomial P(n, deg);
  P.add_term(unit(n, powers), c);
  return P;
}

Polynomial random_poly(std::mt19937_64& rng, int n, int degree, int terms) {
  std::uniform_int_distribution<int> var(0, n * n - 1), coef(-4, 4);
  Polynomial P(n, degree);
  for (int t = 0; t < terms; ++t) {
    Exponents e(static_cast<std::size_t>(n * n), 0);
    for (int k = 0; k < degree; ++k) ++e[static_cast<std::size_t>(var(rng))];
    P.add_term(e, coef(rng));
  }
  return P;
}

}  // namespace

TEST_SUITE("polynomials") {
  TEST_CASE("determinant and permanent") {
    CHECK(determinant_poly(1) == monomial(1, {{{1, 1}, 1}}));
    CHECK(determinant_poly(2) == monomial(2, {{{1, 1}, 1}, {{2, 2}, 1}}) - monomial(2, {{{1, 2}, 1}, {{2, 1}, 1}}));
    CHECK(permanent_poly(2) == monomial(2, {{{1, 1}, 1}, {{2, 2}, 1}}) + monomial(2, {{{1, 2}, 1}, {{2, 1}, 1}}));
    CHECK(determinant_poly(3).num_terms() == 6);
    CHECK(determinant_poly(4).num_terms() == 24);
    CHECK_THROWS(determinant_poly(0));
    CHECK_THROWS(permanent_poly(0));

    // g = x_(0,2)*x_(1,1)*x_(2,0) + ... in 0-based names
    const Polynomial perm3 = permanent_poly(3);
    const int sigma[6][3] = {{1, 2, 3}, {1, 3, 2}, {2, 1, 3}, {2, 3, 1}, {3, 1, 2}, {3, 2, 1}};
    for (const auto& s : sigma) {
      CHECK(perm3.coefficient(unit(3, {{{1, s[0]}, 1}, {{2, s[1]}, 1}, {{3, s[2]}, 1}})) == 1);
      const int inversions = (s[0] > s[1]) + (s[0] > s[2]) + (s[1] > s[2]);
      CHECK(determinant_poly(3).coefficient(unit(3, {{{1, s[0]}, 1}, {{2, s[1]}, 1}, {{3, s[2]}, 1}})) ==
            (inversions % 2 ? -1 : 1));
    }
    for (int n = 1; n <= 4; ++n) {
      const auto diff = permanent_poly(n) - determinant_poly(n);
      for (const auto& [e, c] : diff.terms()) CHECK((c == 2 || c == 0));
    }
  }

  TEST_CASE("evaluation at identity and all-ones") {
    for (int n = 1; n <= 5; ++n) {
      std::vector<Rational> id(static_cast<std::size_t>(n * n), 0), ones(static_cast<std::size_t>(n * n), 1);
      for (int i = 0; i < n; ++i) id[static_cast<std::size_t>(i * n + i)] = 1;
      CHECK(determinant_poly(n).evaluate(id) == 1);
      long fact = 1;
      for (int i = 2; i <= n; ++i) fact *= i;
      CHECK(permanent_poly(n).evaluate(ones) == fact);
    }
  }

  TEST_CASE("powers of linear forms") {
    const auto x33 = variable_power(3, {3, 3}, 3);
    CHECK(x33.num_terms() == 1);
    CHECK(x33.coefficient(unit(3, {{{3, 3}, 3}})) == 1);
    for (int e = 1; e <= 4; ++e) {
      std::vector<Rational> c(9, 0);
      c[0] = 1;
      CHECK(linear_form_power(3, c, e) == variable_power(3, {1, 1}, e));
    }
    std::vector<Rational> c(9, 0);
    c[0] = 1;
    c[1] = 1;
    const auto sq = linear_form_power(3, c, 2);
    CHECK(sq == monomial(3, {{{1, 1}, 2}}) + monomial(3, {{{1, 1}, 1}, {{1, 2}, 1}}, 2) + monomial(3, {{{1, 2}, 2}}));
    CHECK_THROWS(linear_form_power(3, std::vector<Rational>(9, 0), 2));
    CHECK_THROWS(variable_power(3, {4, 1}, 2));
  }

  TEST_CASE("contraction examples") {
    CHECK(contract(monomial(2, {{{1, 1}, 1}}), determinant_poly(2)) == monomial(2, {{{2, 2}, 1}}));
    CHECK(contract(monomial(2, {{{1, 2}, 1}}), variable_power(2, {1, 1}, 3)).is_zero());
    const std::vector<int> I{2, 3}, J{2, 3};
    const auto c = contract(monomial(3, {{{1, 1}, 1}}), determinant_poly(3));
    const auto m = minor_poly(3, I, J);
    CHECK(!c.is_zero());
    CHECK(c == m);  // bare derivative: multiple is exactly 1
    CHECK_THROWS(contract(determinant_poly(3), monomial(3, {{{1, 1}, 2}})));
    // bare derivative, no factorial normalization
    CHECK(contract(monomial(2, {{{1, 1}, 2}}), variable_power(2, {1, 1}, 3)) == monomial(2, {{{1, 1}, 1}}, 6));
  }

  TEST_CASE("contract agrees with repeated differentiation") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
      const int n = 1 + static_cast<int>(rng() % 3);
      const int degree = 1 + static_cast<int>(rng() % 4);
      const int ad = static_cast<int>(rng() % (degree + 1));
      const Polynomial P = random_poly(rng, n, degree, 1 + static_cast<int>(rng() % 6));
      Polynomial alpha(n, ad);
      Exponents e(static_cast<std::size_t>(n * n), 0);
      for (int k = 0; k < ad; ++k) ++e[rng() % e.size()];
      alpha.add_term(e, 1);
      Polynomial d = P;
      for (std::size_t v = 0; v < e.size(); ++v)
        for (int k = 0; k < e[v]; ++k) d = d.derivative(static_cast<int>(v));
      CHECK(contract(alpha, P) == d);
    }
  }

  TEST_CASE("contract is bilinear") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
      const int n = 2 + static_cast<int>(rng() % 2);
      const Polynomial P = random_poly(rng, n, 3, 5), Q = random_poly(rng, n, 3, 5);
      const Polynomial a = random_poly(rng, n, 2, 3), b = random_poly(rng, n, 2, 3);
      CHECK(contract(a, P + Q) == contract(a, P) + contract(a, Q));
      CHECK(contract(a + b, P) == contract(a, P) + contract(b, P));
      CHECK(contract(a * Rational(3, 2), P) == contract(a, P) * Rational(3, 2));
    }
  }

  TEST_CASE("random_low_rank") {
    CHECK(random_low_rank(2, 3, 2, 7) == random_low_rank(2, 3, 2, 7));
    CHECK(random_low_rank(2, 3, 2, 7).degree() == 3);
    CHECK(!(random_low_rank(2, 3, 2, 7) == random_low_rank(2, 3, 2, 8)));
    CHECK_THROWS(random_low_rank(0, 3, 2, 1));
  }

  TEST_CASE("invariants of stored terms") {
    Polynomial P(2, 2);
    P.add_term(unit(2, {{{1, 1}, 2}}), 3);
    P.add_term(unit(2, {{{1, 1}, 2}}), -3);
    CHECK(P.is_zero());
    CHECK_THROWS(P.add_term(unit(2, {{{1, 1}, 3}}), 1));
    CHECK_THROWS(P + Polynomial(2, 3));
  }

  TEST_CASE("json round trip") {
    for (const auto& P : {determinant_poly(3), permanent_poly(2), random_low_rank(2, 3, 2, 5) * Rational(1, 7)}) {
      const auto j = to_json(P);
      CHECK(polynomial_from_json(j) == P);
      CHECK(polynomial_from_json(nlohmann::json::parse(j.dump())) == P);
    }
  }
}
