#include "flatrank/bounds.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace flatrank {

BigInt flattening_bound(const BigInt& rank, const BigInt& t) {
  if (t < 1) throw std::invalid_argument("flattening_bound: t must be positive");
  if (rank < 0) throw std::invalid_argument("flattening_bound: negative rank");
  return ceil(Rational(rank, t));
}

nlohmann::json FormulaValue::to_json() const {
  return {{"n", n},
          {"name", name},
          {"value", flatrank::to_string(value)},
          {"approx", value.get_d()},
          {"integer_bound", to_json_number(integer_bound)}};
}

namespace {

FormulaValue make_value(int n, std::string name, Rational value) {
  value.canonicalize();
  FormulaValue f{n, std::move(name), value, ceil(value)};
  return f;
}

Rational q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace

FormulaValue main_theorem_value(int n) {
  if (n < 5) throw std::invalid_argument("main_theorem_value: requires n >= 5");
  const long N = n;
  Rational factor;
  BigInt c;
  if (n % 2 == 0) {
    factor = 1 + q(8 * (-8 + 6 * N * N + N * N * N), (-1 + N) * (2 + N) * (4 + N) * (4 + N) * (-2 + N * N));
    c = binomial(N, N / 2);
  } else {
    factor = 1 + q(16 * (9 + 8 * N + N * N), (3 + N) * (5 + N) * (5 + N) * (-2 + N * N));
    c = binomial(N, (N - 1) / 2);
  }
  return make_value(n, "main_theorem", factor * Rational(c * c));
}

FormulaValue preliminary_theorem_value(int n) {
  if (n < 3) throw std::invalid_argument("preliminary_theorem_value: requires n >= 3");
  const long N = n;
  Rational factor;
  BigInt c;
  if (n % 2 == 0) {
    factor = 1 + q(4, (-1 + N) * (2 + N) * (2 + N));
    c = binomial(N, N / 2);
  } else {
    factor = 1 + q(8, (-1 + N) * (3 + N) * (3 + N));
    c = binomial(N, (N - 1) / 2);
  }
  return make_value(n, "preliminary_theorem", factor * Rational(c * c));
}

Rational f_formula(int n, int d) {
  if (d < 1 || d > n - 2) throw std::invalid_argument("f_formula: need 1 <= d <= n-2");
  const long N = n, D = d, K = n - d;
  auto term = [](long num, long den) {
    if (den == 0) throw std::domain_error("f_formula: zero denominator");
    return q(num, den);
  };
  Rational f = 0;
  f += term((N + 2) * (N + 1) * K * D * (D - 1), (K + 2) * (K + 2) * (K + 1));
  f += term((N + 2) * (N + 1) * (N + 1) * K * D, (K + 2) * (K + 2));
  f += term((N + 2) * (N + 1) * (N + 1) * K * N * (K - 1), 2 * (K + 2) * (K + 1));
  f += term((N + 1) * (N + 1) * N * (K - 1) * D, (K + 1) * (K + 2));
  f += term((N + 1) * (N + 1) * D * D, (K + 2) * (K + 2));
  return f;
}

Rational optimal_d_difference(int n, int d) {
  return f_formula(n, d) - f_formula(n, d + 1) * q(static_cast<long>(n - d) * (n - d), static_cast<long>(d + 1) * (d + 1));
}

int optimal_d(int n) {
  if (n < 5) throw std::invalid_argument("optimal_d: requires n >= 5");
  int best = 1;
  Rational best_value;
  for (int d = 1; d <= n - 2; ++d) {
    const BigInt c = binomial(n, d);
    const Rational v = f_formula(n, d) * Rational(c * c);
    if (d == 1 || v > best_value) {
      best = d;
      best_value = v;
    }
  }
  return best;
}

BigInt classical_bound(int n) {
  if (n < 1) throw std::invalid_argument("classical_bound: n must be positive");
  const BigInt c = binomial(n, n / 2);
  return c * c;
}

namespace {

std::string decimal(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

std::vector<ReferenceValue> reference_bounds(int n, const std::string& poly) {
  if (n < 2) throw std::invalid_argument("reference_bounds: requires n >= 2");
  std::vector<ReferenceValue> out;
  if (poly == "perm") {
    if (n == 3) {
      out.push_back({"border_rank_lower_pieri", "14", false, "Young flattening F_{pi3,pi3~}"});
      out.push_back({"border_rank_upper", "16", false, "Chow rank 4 and R_s(x_1...x_d) <= 2^{d-1}"});
      out.push_back({"chow_rank", "4", false, "cited constant"});
      out.push_back({"pieri_method_ceiling", "15", false, "dim S_{pi3}C^9 / dim S_{pi3}C^8 = 1050/70"});
    }
    return out;
  }
  const int h = n / 2;
  const BigInt classical = classical_bound(n);
  out.push_back({"classical_lower", to_string(classical), false, "C(n, floor(n/2))^2"});
  if (n >= 3) {
    const auto pre = preliminary_theorem_value(n);
    out.push_back({"preliminary_lower", to_string(pre.integer_bound), false, "ceil of " + to_string(pre.value)});
  }
  if (n >= 5) {
    const auto main = main_theorem_value(n);
    out.push_back({"main_lower", to_string(main.integer_bound), false, "ceil of " + to_string(main.value)});
  }
  out.push_back({"symmetric_rank_lower", to_string(BigInt(classical + n * n - (h + 1) * (h + 1))), false,
                 "C(n,floor(n/2))^2 + n^2 - (floor(n/2)+1)^2, symmetric rank (not border)"});
  out.push_back({"cactus_rank_lower", to_string(BigInt(binomial(2 * n, n) - binomial(2 * n - 2, n - 1))), false,
                 "C(2n,n) - C(2n-2,n-1), cited constant"});
  {
    BigInt power = 1;
    mpz_mul_2exp(power.get_mpz_t(), power.get_mpz_t(), static_cast<mp_bitcnt_t>(n - 1));
    Rational upper(power);
    BigInt fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    upper *= Rational(fact);
    for (int i = 0; i < n / 3; ++i) upper *= q(5, 6);
    out.push_back({"symmetric_rank_upper", to_string(upper), false, "(5/6)^floor(n/3) 2^(n-1) n!"});
  }
  {
    const double two = std::pow(2.0, 2 * n + 1);
    const double estimate = two / (std::numbers::pi * n) + two / (std::numbers::pi * std::pow(n, 4));
    out.push_back({"asymptotic_estimate", decimal(estimate), true, "2^{2n+1}/(pi n) + 2^{2n+1}/(pi n^4), display only"});
  }
  if (poly == "det" && n == 3) {
    out.push_back({"koszul_young_det3", "12", false, "det^{/\\2}_{1,2}"});
    out.push_back({"border_rank_lower_pieri", "14", false, "Young flattening F_{pi3,pi3~}"});
    out.push_back({"pieri_method_ceiling", "15", false, "dim S_{pi3}C^9 / dim S_{pi3}C^8 = 1050/70"});
  }
  return out;
}

nlohmann::json to_json(const std::vector<ReferenceValue>& refs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : refs)
    arr.push_back({{"name", r.name}, {"value", r.value}, {"display_only", r.display_only}, {"note", r.note}});
  return arr;
}

nlohmann::json BoundCertificate::to_json(bool with_timing) const {
  nlohmann::json j = {{"poly", poly},
                      {"n", n},
                      {"method", method},
                      {"d", d},
                      {"p", p},
                      {"rank", to_json_number(rank)},
                      {"t", to_json_number(t)},
                      {"bound", to_json_number(bound)},
                      {"lower_bound_only", rank_certificate.lower_bound_only},
                      {"rank_method", rank_certificate.method == RankMethod::modular ? "modular" : "rational"},
                      {"matrix_hash", rank_certificate.to_json(false).at("matrix_hash")}};
  if (rank_certificate.primes_used.size() == 1)
    j["prime"] = rank_certificate.primes_used.front();
  else if (!rank_certificate.primes_used.empty())
    j["primes"] = rank_certificate.primes_used;
  if (t_certificate) j["t_certificate"] = t_certificate->to_json(with_timing);
  if (with_timing) j["elapsed_ms"] = rank_certificate.elapsed.count();
  return j;
}

BoundCertificate make_certificate(std::string poly, std::string method, int n, int d, int p, const RankCertificate& rank,
                                  const BigInt& t) {
  BoundCertificate c;
  c.poly = std::move(poly);
  c.method = std::move(method);
  c.n = n;
  c.d = d;
  c.p = p;
  c.rank = BigInt(static_cast<unsigned long>(rank.rank));
  c.t = t;
  c.bound = flattening_bound(c.rank, t);
  c.rank_certificate = rank;
  return c;
}

}  // namespace flatrank
