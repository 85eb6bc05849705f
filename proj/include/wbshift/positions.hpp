#ifndef WBSHIFT_POSITIONS_HPP
#define WBSHIFT_POSITIONS_HPP

// Index arithmetic shared by 64-bit and arbitrary-precision position types.

#include <cmath>
#include <concepts>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <boost/multiprecision/cpp_int.hpp>

#include "wbshift/numerics.hpp"

namespace wbshift {

using BigIndex = boost::multiprecision::cpp_int;

template <class P>
concept Position = std::same_as<P, Index> || std::same_as<P, BigIndex>;

inline std::optional<Index> narrow(const BigIndex& v) {
  if (v > std::numeric_limits<Index>::max() || v < std::numeric_limits<Index>::min()) return std::nullopt;
  return static_cast<Index>(v);
}

inline Index narrow_or_throw(const BigIndex& v, const char* what) {
  auto n = narrow(v);
  if (!n) throw std::overflow_error(std::string(what) + ": value does not fit in 64 bits");
  return *n;
}

template <Position P>
Index to_index(const P& v, const char* what = "index") {
  if constexpr (std::same_as<P, Index>) {
    (void)what;
    return v;
  } else {
    return narrow_or_throw(v, what);
  }
}

template <Position P>
double to_double(const P& v) {
  if constexpr (std::same_as<P, Index>)
    return static_cast<double>(v);
  else
    return v.template convert_to<double>();
}

template <Position P>
bool is_odd(const P& v) {
  if constexpr (std::same_as<P, Index>)
    return (v & 1) != 0;
  else
    return boost::multiprecision::bit_test(abs(v), 0);
}

template <Position P>
std::string to_string(const P& v) {
  if constexpr (std::same_as<P, Index>)
    return std::to_string(v);
  else
    return v.str();
}

inline BigIndex parse_big_index(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw std::invalid_argument("malformed integer literal '" + text + "'");
  for (std::size_t i = start; i < text.size(); ++i)
    if (text[i] < '0' || text[i] > '9') throw std::invalid_argument("malformed integer literal '" + text + "'");
  return BigIndex(text);
}

// Checked arithmetic: 64-bit operations throw std::overflow_error instead of wrapping.
template <Position P>
P checked_add(const P& a, const P& b) {
  if constexpr (std::same_as<P, Index>) {
    Index r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("index addition overflows 64 bits");
    return r;
  } else {
    return a + b;
  }
}

template <Position P>
P checked_sub(const P& a, const P& b) {
  if constexpr (std::same_as<P, Index>) {
    Index r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("index subtraction overflows 64 bits");
    return r;
  } else {
    return a - b;
  }
}

template <Position P>
P checked_mul(const P& a, const P& b) {
  if constexpr (std::same_as<P, Index>) {
    Index r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("index multiplication overflows 64 bits");
    return r;
  } else {
    return a * b;
  }
}

template <Position P>
P checked_pow(Index base, Index exponent) {
  P result = 1;
  P b = base;
  for (Index e = 0; e < exponent; ++e) result = checked_mul<P>(result, b);
  return result;
}

/// log(|v| + 1) without materializing a double for huge v.
template <Position P>
double log_abs_plus_one(const P& v) {
  if constexpr (std::same_as<P, Index>) {
    return std::log1p(std::fabs(static_cast<double>(v)));
  } else {
    BigIndex a = abs(v) + 1;
    const auto bits = boost::multiprecision::msb(a);
    if (bits < 1000) return std::log(a.template convert_to<double>());
    const auto shift = bits - 60;
    BigIndex top = a >> shift;
    return std::log(top.template convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
  }
}

}  // namespace wbshift

#endif  // WBSHIFT_POSITIONS_HPP
