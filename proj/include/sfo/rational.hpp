#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <string>

namespace sfo {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt pow2(unsigned k) {
    return BigInt(1) << k;
}

// floor-safe log2 of a positive big integer, exact integer part plus a
// 62-bit mantissa correction.
inline double log2_big(const BigInt& x) {
    if (x <= 0) return -std::numeric_limits<double>::infinity();
    unsigned k = boost::multiprecision::msb(x);
    if (k <= 62) return std::log2(x.convert_to<double>());
    BigInt top = x >> (k - 62);
    return std::log2(top.convert_to<double>()) + static_cast<double>(k - 62);
}

inline double log2_rational(const Rational& r) {
    if (r == 0) return -std::numeric_limits<double>::infinity();
    return log2_big(boost::multiprecision::numerator(r)) -
           log2_big(boost::multiprecision::denominator(r));
}

inline std::string num_string(const Rational& r) {
    return boost::multiprecision::numerator(r).str();
}

inline std::string den_string(const Rational& r) {
    return boost::multiprecision::denominator(r).str();
}

// Ceiling with a one-nano guard so that formally integral thresholds
// (e.g. 72*73) do not round up on floating-point dust.
inline std::uint64_t ceil_guarded(double x) {
    double c = std::ceil(x - 1e-9);
    return c <= 0 ? 0 : static_cast<std::uint64_t>(c);
}

}  // namespace sfo
