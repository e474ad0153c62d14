#include "flatrank/verify_suite.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

#include "flatrank/bounds.hpp"
#include "flatrank/flattening.hpp"
#include "flatrank/partitions.hpp"
#include "flatrank/polynomials.hpp"
#include "flatrank/schur_flattening.hpp"

namespace flatrank {

Suite parse_suite(std::string_view name) {
  if (name == "quick") return Suite::quick;
  if (name == "paper") return Suite::paper;
  if (name == "hwv") return Suite::hwv;
  throw std::invalid_argument("unknown suite '" + std::string(name) + "' (expected quick, paper or hwv)");
}

std::string to_string(Suite suite) {
  switch (suite) {
    case Suite::quick: return "quick";
    case Suite::paper: return "paper";
    case Suite::hwv: return "hwv";
  }
  return "?";
}

TwoPrimeRank rank_two_primes(const SparseMatrix& M, std::uint64_t seed, const RankOptions& opts) {
  std::uint64_t second = random_primes(1, seed).front();
  if (second == kDefaultPrime) second = random_primes(2, seed).back();
  TwoPrimeRank out;
  const auto a = rank_mod_p(M, PrimeField(kDefaultPrime), opts);
  const auto b = rank_mod_p(M, PrimeField(second), opts);
  out.first = a.rank;
  out.second = b.rank;
  out.certificate = a;
  out.certificate.rank = std::max(a.rank, b.rank);
  out.certificate.primes_used = {kDefaultPrime, second};
  out.certificate.elapsed = a.elapsed + b.elapsed;
  return out;
}

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

class Runner {
 public:
  Runner(const VerifyOptions& opts, const std::function<void(const CheckResult&)>& on_result)
      : opts_(opts), on_result_(on_result) {}

  template <class F>
  void check(std::string name, F&& body) {
    CheckResult r;
    r.name = std::move(name);
    const auto start = std::chrono::steady_clock::now();
    try {
      Outcome o = body();
      r.passed = o.passed;
      r.detail = std::move(o.detail);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    if (on_result_) on_result_(r);
    results_.push_back(std::move(r));
  }

  RankOptions rank_options() const { return {opts_.threads, opts_.memory_cap_bytes}; }
  const VerifyOptions& options() const { return opts_; }
  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  VerifyOptions opts_;
  const std::function<void(const CheckResult&)>& on_result_;
  std::vector<CheckResult> results_;
};

std::string str(std::size_t x) { return std::to_string(x); }

std::string two_prime_text(const TwoPrimeRank& r) {
  return r.agree() ? str(r.first) + " (two primes)" : str(r.first) + " vs " + str(r.second) + " (primes disagree)";
}

void check_schur_dims(Runner& run) {
  run.check("schur_dims_pi3", [] {
    const Partition pi = pi_shape(3);
    const Partition target = pieri_target_shape(pi, pi_target_rows(3));
    const BigInt a = schur_dim(pi, 9), b = schur_dim(target, 9), c = schur_dim(pi, 8);
    std::ostringstream os;
    os << "dim S_" << pi.to_string() << " C^9 = " << a << ", dim S_" << target.to_string() << " C^9 = " << b
       << ", dim S_" << pi.to_string() << " C^8 = " << c;
    return Outcome{a == 1050 && b == 1050 && c == 70 && target == Partition::with_ones({3, 2, 2, 2, 2}, 4), os.str()};
  });
}

void check_pieri(Runner& run) {
  const Partition shape = pi_shape(3);
  const auto rows = pi_target_rows(3);
  const unsigned threads = run.options().threads;
  auto pieri_rank = [&](const Polynomial& phi, const std::string& id) {
    const auto F = pieri_flattening_matrix(phi, shape, rows, 9, threads, id);
    return rank_two_primes(F.matrix, run.options().seed, run.rank_options());
  };
  std::size_t t = 0;
  run.check("pieri_rank_power", [&] {
    const auto r = pieri_rank(variable_power(3, {3, 3}, 3), "x33^3");
    t = r.first;
    return Outcome{r.agree() && r.first == 70, "rank F((x33)^3) = " + two_prime_text(r)};
  });
  for (const auto& [id, phi, want] : {std::tuple{std::string("det3"), determinant_poly(3), std::size_t{950}},
                                       std::tuple{std::string("perm3"), permanent_poly(3), std::size_t{934}}}) {
    run.check("pieri_rank_" + id, [&, id = id, phi = phi, want = want] {
      const auto r = pieri_rank(phi, id);
      if (t == 0) return Outcome{false, "rank " + two_prime_text(r) + ", t unavailable"};
      const BigInt bound = flattening_bound(BigInt(static_cast<unsigned long>(r.first)), BigInt(static_cast<unsigned long>(t)));
      return Outcome{r.agree() && r.first == want && bound == 14,
                     "rank = " + two_prime_text(r) + ", bound ceil(" + str(r.first) + "/" + str(t) + ") = " + to_string(bound)};
    });
  }
}

// rank of the Koszul flattening of (x11)^e at (d, p), computed
std::size_t power_t(int n, int e, int d, int p, const RankOptions& opts) {
  const auto F = full_koszul_matrix(variable_power(n, {1, 1}, e), d, p, "x11^" + std::to_string(e));
  return rank_mod_p(F.matrix, PrimeField(), opts).rank;
}

void check_koszul_small(Runner& run) {
  run.check("koszul_minor_n4_p1", [&] {
    const auto F = minor_koszul_matrix(4, 2, 1);
    const auto r = rank_two_primes(F.matrix, run.options().seed, run.rank_options());
    const auto dense = rank_rational(F.matrix, RationalRankOptions{run.rank_options()});
    const std::size_t t = power_t(4, 4, 2, 1, run.rank_options());
    const BigInt bound = flattening_bound(BigInt(static_cast<unsigned long>(dense.rank)), BigInt(static_cast<unsigned long>(t)));
    const bool ok = r.agree() && r.first == 560 && dense.rank == 560 && t == 15 && bound == 38 &&
                    theoretical_image_dim(4, 2, 1) == 560;
    return Outcome{ok, "rank = " + two_prime_text(r) + ", rational " + str(dense.rank) + ", t = " + str(t) +
                           ", bound " + to_string(bound)};
  });
  run.check("koszul_full_det3_d1_p2", [&] {
    const auto F = full_koszul_matrix(determinant_poly(3), 1, 2, "det3");
    const auto r = rank_two_primes(F.matrix, run.options().seed, run.rank_options());
    const auto dense = rank_rational(F.matrix, RationalRankOptions{run.rank_options()});
    const std::size_t t = power_t(3, 3, 1, 2, run.rank_options());
    const BigInt bound = flattening_bound(BigInt(static_cast<unsigned long>(dense.rank)), BigInt(static_cast<unsigned long>(t)));
    const bool ok = F.matrix.rows == 756 && F.matrix.cols == 324 && r.agree() && dense.rank == r.first && t == 28 &&
                    binomial(8, 2) == 28 && bound == 12;
    return Outcome{ok, str(F.matrix.rows) + "x" + str(F.matrix.cols) + ", rank = " + two_prime_text(r) + ", rational " +
                           str(dense.rank) + ", t = " + str(t) + ", bound " + to_string(bound)};
  });
}

void check_formulas(Runner& run) {
  run.check("formula_identities", [] {
    std::ostringstream bad;
    for (int n = 5; n <= 12; ++n) {
      const int h = n / 2;
      const BigInt c = binomial(n, h);
      if (main_theorem_value(n).value * Rational(binomial(n * n - 1, 2)) != f_formula(n, h) * Rational(c * c))
        bad << " identity n=" << n;
      if (Rational(theoretical_image_dim(n, h, 2)) != f_formula(n, h) * Rational(c * c)) bad << " image_dim n=" << n;
      if (optimal_d(n) != h) bad << " optimal_d n=" << n;
    }
    for (int n = 5; n <= 20; ++n) {
      if (!(main_theorem_value(n).value > Rational(classical_bound(n)))) bad << " classical n=" << n;
      if (!(preliminary_theorem_value(n).value < main_theorem_value(n).value)) bad << " preliminary n=" << n;
    }
    const std::string b = bad.str();
    return Outcome{b.empty(), b.empty() ? "n = 5..12 identities and optimal d, n = 5..20 improvements" : "failed:" + b};
  });
  run.check("formula_values", [] {
    const auto m5 = main_theorem_value(5);
    const auto p3 = preliminary_theorem_value(3);
    const auto p4 = preliminary_theorem_value(4);
    const Rational f52 = f_formula(5, 2) * Rational(100);
    const bool ok = m5.value == Rational(2448, 23) && m5.value * Rational(binomial(24, 2)) == 29376 && m5.integer_bound == 107 && p3.value == 10 &&
                    p4.value == Rational(112, 3) && p4.integer_bound == 38 && f52 == 29376 &&
                    f_formula(4, 2) * Rational(36) == 4065 && flattening_bound(29376, binomial(24, 2)) == 107;
    return Outcome{ok, "main(5) = " + to_string(m5.value) + ", prelim(3) = " + to_string(p3.value) +
                           ", prelim(4) = " + to_string(p4.value) + ", f(5,2)C(5,2)^2 = " + to_string(f52)};
  });
}

void check_decompositions(Runner& run) {
  run.check("decompose_6_3", [] {
    const auto two = candidate_image(6, 3, 2);
    const auto one = candidate_image(6, 3, 1);
    const Rational want = f_formula(6, 3) * Rational(400);
    const bool ok = two.size() == 9 && Rational(two.total_dimension(6)) == want && one.size() == 3 &&
                    length_dropped_image(6, 3, 2).size() == 0;
    return Outcome{ok, "p=2: " + str(two.size()) + " modules, total " + to_string(two.total_dimension(6)) +
                           " (f(6,3)*400 = " + to_string(want) + "); p=1: " + str(one.size()) + " modules"};
  });
}

void check_hwv(Runner& run, int n) {
  run.check("hwv_n" + std::to_string(n), [n] {
    const int d = n / 2;
    std::ostringstream os;
    bool ok = true;
    for (HwvLemma lemma : all_hwv_lemmas()) {
      const auto r = verify_hwv_nonzero(lemma, n, d);
      ok = ok && r.nonzero;
      os << to_string(lemma) << (r.nonzero ? (r.expected_witness ? " ok" : " ok(other witness)") : " ZERO") << "; ";
    }
    return Outcome{ok, os.str()};
  });
}

void check_n5(Runner& run) {
  run.check("koszul_minor_n5_p2", [&] {
    const auto F = minor_koszul_matrix(5, 2, 2);
    const auto r = rank_two_primes(F.matrix, run.options().seed, run.rank_options());
    const BigInt t = binomial(24, 2);
    const BigInt bound = flattening_bound(BigInt(static_cast<unsigned long>(r.first)), t);
    const bool ok = F.matrix.rows == 230000 && F.matrix.cols == 30000 && r.agree() && r.first == kBaselineRankN5P2 &&
                    BigInt(static_cast<unsigned long>(r.first)) == theoretical_image_dim(5, 2, 2) && bound == 107 &&
                    main_theorem_value(5).integer_bound == bound;
    return Outcome{ok, "230000x30000, rank = " + two_prime_text(r) + ", t = 276, bound " + to_string(bound)};
  });
}

void check_n4_gap(Runner& run) {
  run.check("koszul_minor_n4_p2_baseline", [&] {
    const auto F = minor_koszul_matrix(4, 2, 2);
    const auto r = rank_two_primes(F.matrix, run.options().seed, run.rank_options());
    RationalRankOptions ro{run.rank_options()};
    ro.dense_guard = F.matrix.rows * F.matrix.cols;  // blocks are small; the guard is for whole dense matrices
    const auto dense = rank_rational(F.matrix, ro);
    const std::size_t t = power_t(4, 4, 2, 2, run.rank_options());
    const BigInt bound = flattening_bound(BigInt(static_cast<unsigned long>(dense.rank)), BigInt(static_cast<unsigned long>(t)));
    const BigInt nine = theoretical_image_dim(4, 2, 2);
    const bool ok = r.agree() && dense.rank == r.first && dense.rank == kBaselineRankN4P2 && t == 105 && bound >= 38;
    std::ostringstream os;
    os << "rank = " << dense.rank << " (rational, baseline " << kBaselineRankN4P2 << "), nine-module count " << nine
       << ", t = " << t << ", bound " << bound << " >= 38; rank " << (dense.rank <= 3990 ? "<=" : ">")
       << " 3990 = 38*105";
    return Outcome{ok, os.str()};
  });
}

}  // namespace

std::vector<CheckResult> run_suite(Suite suite, const VerifyOptions& opts,
                                   const std::function<void(const CheckResult&)>& on_result) {
  Runner run(opts, on_result);
  if (suite == Suite::hwv) {
    for (int n = 5; n <= 8; ++n) check_hwv(run, n);
    return run.take();
  }
  check_schur_dims(run);
  check_pieri(run);
  check_koszul_small(run);
  check_formulas(run);
  check_decompositions(run);
  check_hwv(run, 5);
  if (suite == Suite::paper) {
    check_n5(run);
    check_n4_gap(run);
    for (int n = 6; n <= 8; ++n) check_hwv(run, n);
  }
  return run.take();
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.passed) return false;
  return true;
}

nlohmann::json to_json(const std::vector<CheckResult>& results, bool with_timing) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : results) {
    nlohmann::json j = {{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}};
    if (with_timing) j["elapsed_ms"] = r.elapsed.count();
    arr.push_back(std::move(j));
  }
  return {{"passed", all_passed(results)}, {"checks", arr}};
}

}  // namespace flatrank
