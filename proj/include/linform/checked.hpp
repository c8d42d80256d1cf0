#pragma once

#include <cstdint>
#include <numeric>
#include <span>

#include "linform/error.hpp"

namespace linform {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) fail(ErrorCode::Overflow, "64-bit addition overflow");
  return out;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) fail(ErrorCode::Overflow, "64-bit multiplication overflow");
  return out;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_sub_overflow(a, b, &out)) fail(ErrorCode::Overflow, "64-bit subtraction overflow");
  return out;
}

inline std::int64_t gcd_of(std::span<const std::int64_t> xs) {
  std::int64_t g = 0;
  for (auto x : xs) g = std::gcd(g, x);
  return g;
}

/// Binomial coefficient, saturating at `cap + 1` so callers can test against a limit.
inline std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t r, std::uint64_t cap) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    acc = acc * (n - r + i) / i;
    if (acc > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(acc);
}

}  // namespace linform
