#include "flatrank/rational.hpp"

#include <limits>
#include <stdexcept>

namespace flatrank {

BigInt binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

BigInt ceil(const Rational& q) {
  BigInt out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

std::string to_string(const BigInt& z) { return z.get_str(); }

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

BigInt parse_integer(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  BigInt z;
  if (z.set_str(s, 10) != 0) throw std::invalid_argument("malformed integer literal '" + s + "'");
  return z;
}

}  // namespace

Rational make_rational(std::string_view num, std::string_view den) {
  BigInt d = parse_integer(den);
  if (d == 0) throw std::invalid_argument("zero denominator");
  Rational q(parse_integer(num), d);
  q.canonicalize();
  return q;
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  return make_rational(text.substr(0, slash), text.substr(slash + 1));
}

nlohmann::json to_json_number(const BigInt& z) {
  if (mpz_fits_slong_p(z.get_mpz_t())) return static_cast<std::int64_t>(z.get_si());
  return z.get_str();
}

std::int64_t to_int64(const BigInt& z) {
  if (!mpz_fits_slong_p(z.get_mpz_t())) throw std::overflow_error("integer does not fit in 64 bits: " + z.get_str());
  return z.get_si();
}

}  // namespace flatrank
