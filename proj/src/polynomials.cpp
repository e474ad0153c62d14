#include "flatrank/polynomials.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace flatrank {

namespace {

int permutation_sign(const std::vector<int>& perm) {
  int inversions = 0;
  for (std::size_t a = 0; a < perm.size(); ++a)
    for (std::size_t b = a + 1; b < perm.size(); ++b)
      if (perm[a] > perm[b]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

Polynomial leibniz(int n, std::span<const int> I, std::span<const int> J, bool signed_sum) {
  const int k = static_cast<int>(I.size());
  Polynomial out(n, k);
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    Exponents e(static_cast<std::size_t>(n * n), 0);
    for (int a = 0; a < k; ++a) ++e[static_cast<std::size_t>(VarIndex{I[a], J[perm[a]]}.linear(n))];
    out.add_term(e, signed_sum ? Rational(permutation_sign(perm)) : Rational(1));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

void check_subset(int n, std::span<const int> S) {
  for (std::size_t a = 0; a < S.size(); ++a) {
    if (S[a] < 1 || S[a] > n) throw std::invalid_argument("minor index out of range");
    if (a > 0 && S[a] <= S[a - 1]) throw std::invalid_argument("minor index set must be strictly increasing");
  }
}

Polynomial linear_polynomial(int n, std::span<const Rational> coeffs) {
  Polynomial out(n, 1);
  for (int k = 0; k < n * n; ++k) {
    if (coeffs[static_cast<std::size_t>(k)] == 0) continue;
    Exponents e(static_cast<std::size_t>(n * n), 0);
    e[static_cast<std::size_t>(k)] = 1;
    out.add_term(e, coeffs[static_cast<std::size_t>(k)]);
  }
  return out;
}

Polynomial constant_one(int n) {
  Polynomial out(n, 0);
  out.add_term(Exponents(static_cast<std::size_t>(n * n), 0), 1);
  return out;
}

Polynomial power(const Polynomial& base, int e) {
  Polynomial out = constant_one(base.n());
  for (int i = 0; i < e; ++i) out = out * base;
  return out;
}

}  // namespace

Polynomial::Polynomial(int n, int degree) : n_(n), degree_(degree) {
  if (n < 1) throw std::invalid_argument("polynomial needs n >= 1");
  if (degree < 0) throw std::invalid_argument("polynomial degree must be nonnegative");
}

void Polynomial::check_exponents(const Exponents& e) const {
  if (e.size() != static_cast<std::size_t>(num_vars())) throw std::invalid_argument("exponent vector has wrong length");
  int total = 0;
  for (int x : e) {
    if (x < 0) throw std::invalid_argument("negative exponent");
    total += x;
  }
  if (total != degree_) throw std::invalid_argument("exponent vector does not match the degree");
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
  check_exponents(e);
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational Polynomial::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.n_ != n_ || other.degree_ != degree_) throw std::invalid_argument("adding polynomials of different shape");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.n_ != n_ || other.degree_ != degree_) throw std::invalid_argument("subtracting polynomials of different shape");
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coef] : terms_) coef *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.n() != b.n()) throw std::invalid_argument("multiplying polynomials in different variable sets");
  Polynomial out(a.n(), a.degree() + b.degree());
  Exponents e(static_cast<std::size_t>(a.num_vars()));
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::derivative(int var) const {
  if (var < 0 || var >= num_vars()) throw std::invalid_argument("derivative: variable out of range");
  if (degree_ == 0) return Polynomial(n_, 0);
  Polynomial out(n_, degree_ - 1);
  for (const auto& [e, c] : terms_) {
    const int k = e[static_cast<std::size_t>(var)];
    if (k == 0) continue;
    Exponents f = e;
    --f[static_cast<std::size_t>(var)];
    out.add_term(f, c * k);
  }
  return out;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != static_cast<std::size_t>(num_vars())) throw std::invalid_argument("evaluate: point has wrong size");
  Rational total = 0;
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (std::size_t k = 0; k < e.size(); ++k)
      for (int m = 0; m < e[k]; ++m) term *= point[k];
    total += term;
  }
  return total;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool constant = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
    bool wrote = false;
    if (mag != 1 || constant) {
      os << flatrank::to_string(mag);
      wrote = true;
    }
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      VarIndex v = VarIndex::from_linear(static_cast<int>(k), n_);
      if (wrote) os << '*';
      os << "x[" << v.row << ',' << v.col << ']';
      if (e[k] > 1) os << '^' << e[k];
      wrote = true;
    }
  }
  return os.str();
}

Polynomial determinant_poly(int n) {
  if (n < 1) throw std::invalid_argument("determinant_poly: n must be positive");
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 1);
  return leibniz(n, idx, idx, true);
}

Polynomial permanent_poly(int n) {
  if (n < 1) throw std::invalid_argument("permanent_poly: n must be positive");
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 1);
  return leibniz(n, idx, idx, false);
}

Polynomial minor_poly(int n, std::span<const int> I, std::span<const int> J) {
  if (I.size() != J.size()) throw std::invalid_argument("minor_poly: |I| != |J|");
  check_subset(n, I);
  check_subset(n, J);
  return leibniz(n, I, J, true);
}

Polynomial variable_power(int n, VarIndex v, int e) {
  if (e < 1) throw std::invalid_argument("variable_power: exponent must be positive");
  if (v.row < 1 || v.row > n || v.col < 1 || v.col > n) throw std::invalid_argument("variable_power: variable out of range");
  Polynomial out(n, e);
  Exponents ex(static_cast<std::size_t>(n * n), 0);
  ex[static_cast<std::size_t>(v.linear(n))] = e;
  out.add_term(ex, 1);
  return out;
}

Polynomial linear_form_power(int n, std::span<const Rational> coeffs, int e) {
  if (e < 1) throw std::invalid_argument("linear_form_power: exponent must be positive");
  if (coeffs.size() != static_cast<std::size_t>(n * n)) throw std::invalid_argument("linear_form_power: need n^2 coefficients");
  if (std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c == 0; }))
    throw std::invalid_argument("linear_form_power: zero linear form");
  return power(linear_polynomial(n, coeffs), e);
}

Polynomial contract(const Polynomial& alpha, const Polynomial& P) {
  if (alpha.n() != P.n()) throw std::invalid_argument("contract: different variable sets");
  if (alpha.degree() > P.degree()) throw std::invalid_argument("contract: dual degree exceeds polynomial degree");
  Polynomial out(P.n(), P.degree() - alpha.degree());
  Exponents rest(static_cast<std::size_t>(P.num_vars()));
  for (const auto& [ea, ca] : alpha.terms()) {
    for (const auto& [ep, cp] : P.terms()) {
      bool divides = true;
      BigInt factor = 1;
      for (std::size_t k = 0; k < rest.size() && divides; ++k) {
        if (ep[k] < ea[k]) {
          divides = false;
          break;
        }
        rest[k] = ep[k] - ea[k];
        for (int m = 0; m < ea[k]; ++m) factor *= ep[k] - m;
      }
      if (divides) out.add_term(rest, ca * cp * Rational(factor));
    }
  }
  return out;
}

Polynomial random_low_rank(int r, int e, int n, std::uint64_t seed) {
  if (r < 1 || e < 1) throw std::invalid_argument("random_low_rank: need r >= 1 and e >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-2, 2);
  Polynomial out(n, e);
  std::vector<Rational> coeffs(static_cast<std::size_t>(n * n));
  for (int i = 0; i < r; ++i) {
    bool zero = true;
    while (zero) {
      for (auto& c : coeffs) {
        c = dist(rng);
        if (c != 0) zero = false;
      }
    }
    out += linear_form_power(n, coeffs, e);
  }
  return out;
}

Polynomial substitute_linear(const Polynomial& P, const std::vector<std::vector<Rational>>& g) {
  const auto nv = static_cast<std::size_t>(P.num_vars());
  if (g.size() != nv) throw std::invalid_argument("substitute_linear: matrix has wrong size");
  std::vector<Polynomial> images;
  images.reserve(nv);
  for (const auto& row : g) {
    if (row.size() != nv) throw std::invalid_argument("substitute_linear: matrix has wrong size");
    images.push_back(linear_polynomial(P.n(), row));
  }
  Polynomial out(P.n(), P.degree());
  for (const auto& [e, c] : P.terms()) {
    Polynomial term = constant_one(P.n());
    for (std::size_t k = 0; k < nv; ++k)
      for (int m = 0; m < e[k]; ++m) term = term * images[k];
    out += term * c;
  }
  return out;
}

nlohmann::json to_json(const Polynomial& P) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : P.terms())
    terms.push_back({{"exps", e}, {"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}});
  return {{"n", P.n()}, {"degree", P.degree()}, {"terms", terms}};
}

Polynomial polynomial_from_json(const nlohmann::json& j) {
  Polynomial out(j.at("n").get<int>(), j.at("degree").get<int>());
  for (const auto& t : j.at("terms")) {
    auto e = t.at("exps").get<Exponents>();
    const auto& num = t.at("num");
    const auto& den = t.contains("den") ? t.at("den") : nlohmann::json("1");
    auto text = [](const nlohmann::json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    out.add_term(e, make_rational(text(num), text(den)));
  }
  return out;
}

}  // namespace flatrank
