#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>
#include <json.hpp>

namespace flatrank {

using BigInt = mpz_class;
using Rational = mpq_class;

// Binomial coefficient C(n, k); zero when k > n or k < 0.
BigInt binomial(long n, long k);

// Smallest integer >= q.
BigInt ceil(const Rational& q);

// "num" for integers, "num/den" otherwise.
std::string to_string(const BigInt& z);
std::string to_string(const Rational& q);

// Accepts "a", "a/b" (b nonzero). Throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);
Rational make_rational(std::string_view num, std::string_view den);

// Emits a JSON number when the value fits in 64 bits, a decimal string otherwise.
nlohmann::json to_json_number(const BigInt& z);

std::int64_t to_int64(const BigInt& z);

}  // namespace flatrank
