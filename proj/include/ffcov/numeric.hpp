#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace ffcov {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt ipow(std::uint64_t base, int exp) {
  BigInt r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

/// Exact power for small arguments; callers keep results inside 64 bits.
inline std::int64_t ipow64(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string to_string(const BigInt& v) { return v.str(); }

}  // namespace ffcov
