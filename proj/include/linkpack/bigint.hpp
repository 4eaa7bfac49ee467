#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <string>

namespace linkpack {

using BigInt = boost::multiprecision::cpp_int;

/// Exact values are only materialised below this many decimal digits.
inline constexpr double kMaxExactDigits = 1e4;

inline BigInt big_pow(unsigned base, std::uint64_t exponent) {
  return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exponent));
}

/// Natural logarithm of a positive big integer.
inline double big_log(const BigInt& x) {
  const std::size_t bits = boost::multiprecision::msb(x) + 1;
  if (bits <= 1000) return std::log(x.convert_to<double>());
  const std::size_t shift = bits - 64;
  const BigInt top = x >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

inline std::string to_string(const BigInt& x) { return x.str(); }

}  // namespace linkpack
