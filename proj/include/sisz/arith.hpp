#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sisz {

using Integer = mpz_class;
using Rational = mpq_class;

using IntVec = std::vector<Integer>;
using RatVec = std::vector<Rational>;

// Exact conversion: every finite double is a dyadic rational.
Rational to_rational(double value);
RatVec to_rational(const std::vector<double>& values);

Integer floor(const Rational& value);
Integer ceil(const Rational& value);
// value - floor(value), always in [0, 1).
Rational frac(const Rational& value);

// floor(sqrt(value)) for value >= 0.
Integer isqrt(const Integer& value);
// Smallest integer r >= 0 with r^k >= value (value >= 0, k >= 1).
Integer ceil_root(const Integer& value, unsigned k);
// Largest integer r >= 0 with r^k <= value.
Integer floor_root(const Integer& value, unsigned k);

std::int64_t to_int64(const Integer& value);  // throws std::overflow_error

Integer dot(const IntVec& a, const IntVec& b);
Rational dot(const RatVec& a, const RatVec& b);
Integer squared_norm(const IntVec& v);
Rational squared_norm(const RatVec& v);
Integer max_abs(const IntVec& v);
bool is_zero(const IntVec& v);

std::vector<double> to_double(const RatVec& v);
std::vector<double> to_double(const IntVec& v);
RatVec to_rational(const IntVec& v);

// "p/q" for non-integers, "p" otherwise.
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

// Shortest round-trip decimal representation; locale independent.
std::string format_double(double value);

}  // namespace sisz
