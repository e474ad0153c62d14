#include <doctest.h>

#include <algorithm>
#include <set>

#include "flatrank/bounds.hpp"
#include "flatrank/partitions.hpp"

using namespace flatrank;

namespace {

std::vector<Partition> all_partitions_up_to(int size) {
  std::vector<Partition> out;
  for (int s = 0; s <= size; ++s)
    for (const auto& p : partitions_of(s)) out.push_back(p);
  return out;
}

// Add k boxes one at a time in every possible way, then keep the results
// with at most one new box per row (or per column).
std::set<Partition> brute_force_add(const Partition& pi, int k, bool distinct_rows, int N) {
  std::set<std::pair<Partition, std::vector<int>>> frontier{{pi, {}}};
  for (int step = 0; step < k; ++step) {
    std::set<std::pair<Partition, std::vector<int>>> next;
    for (const auto& [p, added] : frontier) {
      for (std::size_t r = 0; r <= p.length(); ++r) {
        if (r > 0 && p[r] + 1 > p[r - 1]) continue;
        std::vector<int> parts = p.parts();
        if (r == parts.size()) parts.push_back(0);
        ++parts[r];
        auto a = added;
        a.push_back(distinct_rows ? static_cast<int>(r) : p[r]);  // row, or column of the new box
        std::sort(a.begin(), a.end());
        next.insert({Partition(parts), a});
      }
    }
    frontier = std::move(next);
  }
  std::set<Partition> out;
  for (const auto& [p, added] : frontier) {
    if (std::adjacent_find(added.begin(), added.end()) != added.end()) continue;
    if (p.length() <= static_cast<std::size_t>(N)) out.insert(p);
  }
  return out;
}

BigInt binom(long a, long b) { return binomial(a, b); }

}  // namespace

TEST_SUITE("partitions") {
  TEST_CASE("construction strips zeros and validates order") {
    CHECK(Partition({3, 1, 0, 0}) == Partition({3, 1}));
    CHECK(Partition({}).empty());
    CHECK_THROWS(Partition({1, 2}));
    CHECK(Partition::with_ones({3, 2}, 2) == Partition({3, 2, 1, 1}));
    CHECK(Partition({4, 3, 1}).size() == 8);
  }

  TEST_CASE("conjugate examples and involution") {
    CHECK(conjugate(Partition{4, 3, 1}) == Partition{3, 2, 2, 1});
    CHECK(conjugate(Partition{}) == Partition{});
    CHECK(conjugate(Partition{2, 2, 2, 2, 1, 1, 1, 1}) == Partition{8, 4});
    for (const auto& p : all_partitions_up_to(30 > 18 ? 18 : 30)) CHECK(conjugate(conjugate(p)) == p);
    for (const auto& p : partitions_of(30)) REQUIRE(conjugate(conjugate(p)) == p);
  }

  TEST_CASE("schur_dim examples") {
    CHECK(schur_dim(Partition{2, 2, 2, 2, 1, 1, 1, 1}, 9) == 1050);
    CHECK(schur_dim(Partition{3, 2, 2, 2, 2, 1, 1, 1, 1}, 9) == 1050);
    CHECK(schur_dim(Partition{2, 2, 2, 2, 1, 1, 1, 1}, 8) == 70);
    CHECK(schur_dim(Partition{1, 1, 1}, 3) == 1);
    CHECK(schur_dim(Partition{2, 1}, 3) == 8);
    CHECK(schur_dim(Partition{1, 1, 1, 1}, 3) == 0);
    CHECK(schur_dim(Partition{}, 5) == 1);
  }

  TEST_CASE("schur_dim of rows and columns") {
    for (int N = 1; N <= 9; ++N)
      for (int k = 1; k <= 8; ++k) {
        CHECK(schur_dim(Partition{k}, N) == binom(N + k - 1, k));
        CHECK(schur_dim(Partition::with_ones({}, k), N) == binom(N, k));
      }
  }

  TEST_CASE("pieri_row examples") {
    CHECK(pieri_row(Partition{}, 3, 9) == std::vector<Partition>{Partition{3}});
    CHECK(pieri_row(Partition{1}, 1, 2) == std::vector<Partition>{Partition{2}, Partition{1, 1}});
    CHECK(pieri_row(Partition{2, 1}, 2, 3) ==
          std::vector<Partition>{Partition{4, 1}, Partition{3, 2}, Partition{3, 1, 1}, Partition{2, 2, 1}});
  }

  TEST_CASE("pieri_column examples") {
    CHECK(pieri_column(Partition{}, 3, 9) == std::vector<Partition>{Partition{1, 1, 1}});
    CHECK(pieri_column(Partition{1}, 2, 2) == std::vector<Partition>{Partition{2, 1}});
    CHECK(pieri_column(Partition{2, 1}, 2, 4) ==
          std::vector<Partition>{Partition{3, 2}, Partition{3, 1, 1}, Partition{2, 2, 1}, Partition{2, 1, 1, 1}});
  }

  TEST_CASE("pieri rules against brute force and the conjugation route") {
    for (const auto& pi : all_partitions_up_to(6)) {
      for (int k = 0; k <= 4; ++k) {
        for (int N : {2, 3, 5, 9}) {
          const auto row = pieri_row(pi, k, N);
          const auto col = pieri_column(pi, k, N);
          CHECK(std::set<Partition>(row.begin(), row.end()) == brute_force_add(pi, k, false, N));
          CHECK(std::set<Partition>(col.begin(), col.end()) == brute_force_add(pi, k, true, N));
          std::set<Partition> via_conj;
          for (const auto& mu : pieri_row(conjugate(pi), k, 100))
            if (conjugate(mu).length() <= static_cast<std::size_t>(N)) via_conj.insert(conjugate(mu));
          CHECK(std::set<Partition>(col.begin(), col.end()) == via_conj);
        }
      }
    }
  }

  TEST_CASE("cauchy_wedge") {
    const auto w = cauchy_wedge(2, 3, 3);
    REQUIRE(w.size() == 2);
    CHECK(w.multiplicity(Partition{2}, Partition{1, 1}) == 1);
    CHECK(w.multiplicity(Partition{1, 1}, Partition{2}) == 1);
    CHECK(w.total_dimension(3) == 36);
    for (int n = 1; n <= 5; ++n) {
      const auto z = cauchy_wedge(0, n, n);
      REQUIRE(z.size() == 1);
      CHECK(z.contains(Partition{}, Partition{}));
      const auto one = cauchy_wedge(1, n, n);
      REQUIRE(one.size() == 1);
      CHECK(one.total_dimension(n) == n * n);
    }
    for (int N = 1; N <= 6; ++N)
      for (int p = 0; p <= 4; ++p) CHECK(cauchy_wedge(p, N, N).total_dimension(N) == binom(N * N, p));
  }

  TEST_CASE("decompose_wedge_product") {
    const auto zero = decompose_wedge_product(5, 2, 0);
    REQUIRE(zero.size() == 1);
    CHECK(zero.contains(Partition{1, 1, 1}, Partition{1, 1, 1}));
    CHECK(decompose_wedge_product(5, 2, 2).total_dimension(5) == 30000);

    const auto four = decompose_wedge_product(4, 2, 1);
    CHECK(four.size() == 4);
    CHECK(four.multiplicity(Partition{2, 1}, Partition{2, 1}) == 1);
    CHECK(four.multiplicity(Partition{2, 1}, Partition{1, 1, 1}) == 1);
    CHECK(four.multiplicity(Partition{1, 1, 1}, Partition{2, 1}) == 1);
    CHECK(four.multiplicity(Partition{1, 1, 1}, Partition{1, 1, 1}) == 1);
    CHECK(four.total_dimension(4) == 576);

    for (int n = 2; n <= 6; ++n)
      for (int d = 1; d < n; ++d)
        for (int p = 0; p <= 3; ++p)
          CHECK(decompose_wedge_product(n, d, p).total_dimension(n) == binom(n, d) * binom(n, d) * binom(n * n, p));
    CHECK_THROWS(decompose_wedge_product(4, 0, 1));
    CHECK_THROWS(decompose_wedge_product(4, 4, 1));
  }

  TEST_CASE("candidate_image p = 1 gives the three modules") {
    for (int n = 4; n <= 8; ++n) {
      for (int d = 1; d <= n - 2; ++d) {
        const int k = n - d;
        const auto im = candidate_image(n, d, 1);
        CHECK(im.size() == 3);
        CHECK(im.multiplicity(Partition::with_ones({2}, k - 1), Partition::with_ones({}, k + 1)) == 1);
        CHECK(im.multiplicity(Partition::with_ones({}, k + 1), Partition::with_ones({2}, k - 1)) == 1);
        CHECK(im.multiplicity(Partition::with_ones({2}, k - 1), Partition::with_ones({2}, k - 1)) == 1);
      }
    }
  }

  TEST_CASE("candidate_image p = 2 gives the nine modules") {
    for (int n = 5; n <= 9; ++n) {
      const int d = n / 2;
      const int k = n - d;
      const Partition t31 = Partition::with_ones({3}, k - 1);
      const Partition col = Partition::with_ones({}, k + 2);
      const Partition h21 = Partition::with_ones({2}, k);
      const Partition h221 = Partition::with_ones({2, 2}, k - 2);
      const std::vector<std::pair<Partition, Partition>> nine{{t31, col}, {col, t31}, {t31, h21},
                                                              {h21, t31}, {t31, h221}, {h221, t31},
                                                              {h21, h21}, {h21, h221}, {h221, h21}};
      const auto im = candidate_image(n, d, 2);
      INFO("n = " << n);
      CHECK(im.size() == 9);
      for (const auto& [a, b] : nine) {
        CHECK(a.size() == k + 2);
        CHECK(b.size() == k + 2);
        CHECK(im.multiplicity(a, b) == 1);
      }
      CHECK(length_dropped_image(n, d, 2).size() == 0);
    }
  }

  TEST_CASE("candidate_image length filter at small n") {
    const auto im = candidate_image(3, 1, 2);
    const auto dropped = length_dropped_image(3, 1, 2);
    CHECK(im.size() + dropped.size() == 9);
    CHECK(dropped.size() > 0);
    for (const auto& e : im.entries()) {
      CHECK(e.a.length() <= 3);
      CHECK(e.b.length() <= 3);
    }
    CHECK_THROWS(candidate_image(5, 2, 3));
  }

  TEST_CASE("theoretical_image_dim") {
    CHECK(theoretical_image_dim(4, 2, 1) == 20 * 4 + 4 * 20 + 20 * 20);
    CHECK(theoretical_image_dim(4, 2, 1) == 560);
    CHECK(theoretical_image_dim(5, 2, 2) == 29376);
    for (int n = 3; n <= 7; ++n)
      for (int d = 1; d < n; ++d)
        for (int p = 1; p <= 2; ++p)
          CHECK(theoretical_image_dim(n, d, p) <= binom(n, d) * binom(n, d) * binom(n * n, p));
    for (int n = 5; n <= 12; ++n) {
      const int d = n / 2;
      CHECK(Rational(theoretical_image_dim(n, d, 2)) == f_formula(n, d) * Rational(binom(n, d) * binom(n, d)));
    }
  }

  TEST_CASE("ModuleList json") {
    const auto j = candidate_image(6, 3, 1).to_json(6);
    REQUIRE(j.size() == 4);
    CHECK(j.back().at("total_dim") == 14175);
    CHECK(j.front().contains("dim_a"));
  }
}
