#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace aomega {

/// Exact signed integer. All module scalars, coefficients and elementary
/// divisors use this type.
using Integer = mpz_class;

/// p-adic valuation; std::nullopt stands for +infinity (the valuation of 0).
using Valuation = std::optional<std::int64_t>;

std::string to_string(const Integer& x);
Integer parse_integer(std::string_view text);

Integer gcd(const Integer& a, const Integer& b);
Integer pow(const Integer& base, unsigned long exponent);
std::int64_t ipow(std::int64_t base, unsigned exponent);

/// Largest k with p^k | x; nullopt for x = 0.
Valuation p_valuation(const Integer& x, std::int64_t p);

bool is_prime(std::int64_t n);

/// Floor division and the matching non-negative remainder (for positive m).
std::int64_t floor_div(std::int64_t a, std::int64_t m);
std::int64_t mod_floor(std::int64_t a, std::int64_t m);

}  // namespace aomega
