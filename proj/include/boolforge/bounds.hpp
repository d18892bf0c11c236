#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace boolforge {

namespace detail {

/// Largest t with t*t <= v.
inline std::uint64_t isqrt(std::uint64_t v) {
  if (v == 0) return 0;
  auto t = std::uint64_t(std::sqrt(double(v)));
  while (t > 0 && t * t > v) --t;
  while ((t + 1) * (t + 1) <= v) ++t;
  return t;
}

/// floor((a - b*sqrt(2)) / d) computed exactly; b*sqrt(2) is irrational
/// for b > 0, so the quotient is never an integer boundary case.
inline std::int64_t floor_sub_sqrt2(std::int64_t a, std::int64_t b, std::int64_t d) {
  if (b == 0) {
    std::int64_t q = a / d;
    if (a % d != 0 && a < 0) --q;
    return q;
  }
  const auto t = std::int64_t(isqrt(2 * std::uint64_t(b) * std::uint64_t(b)));
  const std::int64_t num = a - t - 1;  // a - ceil(b*sqrt(2))
  std::int64_t q = num / d;
  if (num % d != 0 && num < 0) --q;
  return q;
}

}  // namespace detail

/// Exact value of the covering radius bound 2^(n-1) - 2^(n/2-1), kept as
/// (int_part - sqrt2_part * sqrt(2)) / 2 so odd-n values need no floats.
struct CoveringRadiusBound {
  std::int64_t int_part = 0;    // numerator integer term
  std::int64_t sqrt2_part = 0;  // numerator coefficient of sqrt(2)

  double value() const { return (double(int_part) - double(sqrt2_part) * std::sqrt(2.0)) / 2.0; }
  bool is_integral() const { return sqrt2_part == 0; }
  std::int64_t floor() const { return detail::floor_sub_sqrt2(int_part, sqrt2_part, 2); }
  /// Exact integer value; only valid when is_integral().
  std::int64_t exact() const {
    if (!is_integral()) throw std::logic_error("bound is not an integer");
    return int_part / 2;
  }
};

/// Universal upper bound on nonlinearity, 2^(n-1) - 2^(n/2-1).  Integral
/// for even n, of the form (2^n - 2^((n-1)/2) * sqrt(2)) / 2 otherwise.
inline CoveringRadiusBound covering_radius_bound(int n) {
  if (n < 1 || n > 62) throw std::invalid_argument("covering_radius_bound: n out of range");
  if (n % 2 == 0)
    return {(std::int64_t{1} << n) - (std::int64_t{1} << (n / 2)), 0};
  return {std::int64_t{1} << n, std::int64_t{1} << ((n - 1) / 2)};
}

/// 2^(n-1) - 2^((n-1)/2), the value to exceed for odd n.
inline std::int64_t quadratic_bound(int n) {
  if (n < 3 || n % 2 == 0 || n > 62)
    throw std::invalid_argument("quadratic_bound: n must be odd and >= 3");
  return (std::int64_t{1} << (n - 1)) - (std::int64_t{1} << ((n - 1) / 2));
}

/// 2 * floor(2^(n-2) - 2^(n/2-2)), the sharper odd-n upper bound.
inline std::int64_t odd_upper_bound(int n) {
  if (n < 3 || n % 2 == 0 || n > 62)
    throw std::invalid_argument("odd_upper_bound: n must be odd and >= 3");
  // 2^(n/2-2) = 2^((n-5)/2) * sqrt(2); for n = 3 the inner value is (4 - sqrt(2))/2.
  if (n == 3) return 2 * detail::floor_sub_sqrt2(4, 1, 2);
  return 2 * detail::floor_sub_sqrt2(std::int64_t{1} << (n - 2),
                                     std::int64_t{1} << ((n - 5) / 2), 1);
}

}  // namespace boolforge
