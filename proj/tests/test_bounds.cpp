#include <doctest.h>

#include "flatrank/bounds.hpp"
#include "flatrank/partitions.hpp"

using namespace flatrank;

namespace {

const ReferenceValue* find(const std::vector<ReferenceValue>& refs, const std::string& name) {
  for (const auto& r : refs)
    if (r.name == name) return &r;
  return nullptr;
}

Rational frac(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Closed form of the main bound, evaluated term by term separately from the library.
Rational main_formula(long n) {
  if (n % 2 == 0) {
    const Rational c(binomial(n, n / 2));
    return (Rational(1) + frac(8 * (-8 + 6 * n * n + n * n * n), (n - 1) * (n + 2) * (n + 4) * (n + 4) * (n * n - 2))) * c * c;
  }
  const Rational c(binomial(n, (n - 1) / 2));
  return (Rational(1) + frac(16 * (9 + 8 * n + n * n), (n + 3) * (n + 5) * (n + 5) * (n * n - 2))) * c * c;
}

}  // namespace

TEST_SUITE("bounds") {
  TEST_CASE("flattening_bound examples and ceiling contract") {
    CHECK(flattening_bound(950, 70) == 14);
    CHECK(flattening_bound(934, 70) == 14);
    CHECK(flattening_bound(560, 15) == 38);
    CHECK(flattening_bound(0, 5) == 0);
    CHECK_THROWS(flattening_bound(5, 0));
    CHECK_THROWS(flattening_bound(-1, 3));
    for (long t = 1; t <= 1000; t += 37)
      for (long r = 0; r <= 1000; r += 41) {
        CHECK(flattening_bound(r * t, t) == r);
        CHECK(flattening_bound(r * t + 1, t) == r + 1);
        const BigInt b = flattening_bound(r * t + t / 2, t);
        CHECK(b * t >= r * t + t / 2);
        CHECK((b - 1) * t < r * t + t / 2);
      }
  }

  TEST_CASE("main bound values") {
    const auto m5 = main_theorem_value(5);
    CHECK(m5.value == Rational(2448, 23));
    CHECK(m5.integer_bound == 107);
    CHECK(m5.value.get_d() == doctest::Approx(106.4348).epsilon(1e-6));
    const auto m6 = main_theorem_value(6);
    CHECK(m6.value.get_d() == doctest::Approx(409.976).epsilon(1e-5));
    CHECK(m6.integer_bound == 410);
    for (int n = 5; n <= 20; ++n) CHECK(main_theorem_value(n).value == main_formula(n));
    CHECK_THROWS(main_theorem_value(4));
    for (int n = 5; n <= 6; ++n)
      CHECK(main_theorem_value(n).value == Rational(theoretical_image_dim(n, n / 2, 2)) / Rational(binomial(n * n - 1, 2)));
  }

  TEST_CASE("preliminary bound values") {
    CHECK(preliminary_theorem_value(4).value == Rational(112, 3));
    CHECK(preliminary_theorem_value(4).integer_bound == 38);
    CHECK(preliminary_theorem_value(3).value == 10);
    CHECK(Rational(theoretical_image_dim(3, 1, 1)) / 8 == 10);
    CHECK(preliminary_theorem_value(5).value == Rational(825, 8));
    CHECK(preliminary_theorem_value(5).integer_bound == 104);
    CHECK_THROWS(preliminary_theorem_value(2));
    for (int n = 3; n <= 10; ++n)
      CHECK(preliminary_theorem_value(n).value ==
            Rational(theoretical_image_dim(n, n / 2, 1)) / Rational(binomial(n * n - 1, 1)));
  }

  TEST_CASE("f formula") {
    CHECK(f_formula(5, 2) == Rational(7344, 25));
    CHECK(f_formula(4, 2) * 36 == 4065);
    for (int n = 5; n <= 12; ++n)
      for (int d = 1; d <= n - 2; ++d) {
        const Rational v = f_formula(n, d) * Rational(binomial(n, d) * binomial(n, d));
        CHECK(v.get_den() == 1);
        CHECK(v > 0);
        CHECK(v == Rational(theoretical_image_dim(n, d, 2)));
      }
    CHECK_THROWS(f_formula(5, 4));
    CHECK_THROWS(f_formula(5, 0));
  }

  TEST_CASE("optimal d") {
    CHECK(optimal_d(5) == 2);
    CHECK(optimal_d(8) == 4);
    for (int n = 5; n <= 12; ++n) CHECK(optimal_d(n) == n / 2);
    CHECK(optimal_d_difference(7, 2) < 0);
    CHECK(optimal_d_difference(7, 3) > 0);
    for (int n = 5; n <= 12; ++n) {
      const int h = n / 2;
      if (h - 1 >= 1) CHECK(optimal_d_difference(n, h - 1) < 0);
      if (h + 1 <= n - 2) CHECK(optimal_d_difference(n, h) > 0);
    }
    CHECK_THROWS(optimal_d(4));
  }

  TEST_CASE("improvement over the classical bound") {
    for (int n = 5; n <= 20; ++n) {
      CHECK(main_theorem_value(n).value > Rational(classical_bound(n)));
      CHECK(preliminary_theorem_value(n).value < main_theorem_value(n).value);
    }
    for (int n = 5; n <= 12; ++n) {
      const int h = n / 2;
      CHECK(main_theorem_value(n).value * Rational(binomial(n * n - 1, 2)) ==
            f_formula(n, h) * Rational(binomial(n, h) * binomial(n, h)));
    }
  }

  TEST_CASE("reference values") {
    const auto r4 = reference_bounds(4, "det");
    REQUIRE(find(r4, "classical_lower"));
    CHECK(find(r4, "classical_lower")->value == "36");
    CHECK(find(r4, "preliminary_lower")->value == "38");
    CHECK(find(r4, "main_lower") == nullptr);
    CHECK(find(reference_bounds(3, "det"), "classical_lower")->value == "9");
    const auto p3 = reference_bounds(3, "perm");
    CHECK(find(p3, "border_rank_upper")->value == "16");
    CHECK(find(p3, "border_rank_lower_pieri")->value == "14");
    const auto r5 = reference_bounds(5, "det");
    CHECK(find(r5, "main_lower")->value == "107");
    CHECK(find(r5, "symmetric_rank_lower")->value == std::to_string(100 + 25 - 9));
    CHECK(find(r5, "symmetric_rank_upper")->value == "1600");
    CHECK(find(r5, "asymptotic_estimate")->display_only);
    for (const auto& r : r5)
      if (r.name != "asymptotic_estimate") CHECK(!r.display_only);
    CHECK(to_json(r5).size() == r5.size());
    CHECK_THROWS(reference_bounds(1, "det"));
  }

  TEST_CASE("certificate") {
    RankCertificate rc;
    rc.rank = 560;
    rc.primes_used = {kDefaultPrime};
    const auto c = make_certificate("det", "koszul_minor", 4, 2, 1, rc, 15);
    CHECK(c.bound == 38);
    CHECK(c.bound * c.t >= c.rank);
    CHECK((c.bound - 1) * c.t < c.rank);
    const auto j = c.to_json(false);
    CHECK(j.at("poly") == "det");
    CHECK(j.at("n") == 4);
    CHECK(j.at("method") == "koszul_minor");
    CHECK(j.at("rank") == 560);
    CHECK(j.at("t") == 15);
    CHECK(j.at("bound") == 38);
    CHECK(j.at("prime") == kDefaultPrime);
    CHECK(!j.contains("elapsed_ms"));
    CHECK(c.to_json(true).contains("elapsed_ms"));
  }
}
