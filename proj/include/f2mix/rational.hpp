#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace f2mix {

// Exact arithmetic for densities and total-variation distances.  Floating
// point is never used on these paths: the separation bounds the selection
// logic relies on are tight enough that rounding could flip comparisons.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt pow2(std::size_t e) { return BigInt(1) << e; }

// 2^-e as an exact rational.
inline Rational inv_pow2(std::size_t e) { return Rational(BigInt(1), pow2(e)); }

// Parses a plain decimal ("0.3", "1", ".25") into an exact rational.
Rational parse_decimal(std::string_view s);

// Fixed-point decimal rendering (round half to even is not needed here; the
// callers only format human-facing copies of exact values).
std::string format_decimal(const Rational& r, int digits);

double to_double(const Rational& r);

// floor(num/den * 2^64), clamped to [0, 2^64-1]; the sampling threshold for a
// Bernoulli(num/den) coin driven by one 64-bit draw.  The quantization error
// is below 2^-64 and is documented at the oracle.
std::uint64_t bernoulli_threshold(const Rational& p);

} // namespace f2mix
