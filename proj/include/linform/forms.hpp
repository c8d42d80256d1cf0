#pragma once

// Linear forms f(x_1..x_m) = u_1 x_1 + ... + u_m x_m with positive integer
// coefficients, kept in normalized form (sorted ascending, gcd 1), plus the
// subset-sum table of the coefficient sequence.

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "linform/bits.hpp"
#include "linform/checked.hpp"
#include "linform/error.hpp"

namespace linform {

inline constexpr std::int64_t kDefaultCoefficientCap = 1'000'000;

class LinearForm {
 public:
  const std::vector<std::int64_t>& coeffs() const noexcept { return coeffs_; }
  std::size_t arity() const noexcept { return coeffs_.size(); }
  /// Sum of the coefficients.
  std::int64_t u_total() const noexcept { return u_total_; }
  /// Common factor removed during normalization.
  std::int64_t raw_gcd() const noexcept { return raw_gcd_; }
  std::int64_t max_coeff() const noexcept { return coeffs_.back(); }

  /// Membership in LF*(m): pairwise distinct coefficients.
  bool strictly_increasing() const noexcept {
    return std::adjacent_find(coeffs_.begin(), coeffs_.end()) == coeffs_.end();
  }

  friend bool operator==(const LinearForm& a, const LinearForm& b) noexcept {
    return a.coeffs_ == b.coeffs_;
  }
  friend auto operator<=>(const LinearForm& a, const LinearForm& b) noexcept {
    if (a.arity() != b.arity()) return a.arity() <=> b.arity();
    return a.coeffs_ <=> b.coeffs_;
  }

 private:
  friend LinearForm normalize_form(std::span<const std::int64_t>, std::int64_t);
  std::vector<std::int64_t> coeffs_;
  std::int64_t u_total_ = 0;
  std::int64_t raw_gcd_ = 1;
};

/// Sorts the coefficients and divides out their gcd. The coefficient sum of
/// the normalized form may not exceed `cap`.
inline LinearForm normalize_form(std::span<const std::int64_t> raw,
                                 std::int64_t cap = kDefaultCoefficientCap) {
  if (raw.empty()) fail(ErrorCode::EmptyCoefficients, "at least one coefficient is required");
  for (auto u : raw)
    if (u <= 0)
      fail(ErrorCode::NonPositiveCoefficient,
           "coefficient " + std::to_string(u) + " is not a positive integer");

  LinearForm f;
  f.raw_gcd_ = gcd_of(raw);
  f.coeffs_.assign(raw.begin(), raw.end());
  std::sort(f.coeffs_.begin(), f.coeffs_.end());
  std::int64_t total = 0;
  for (auto& u : f.coeffs_) {
    u /= f.raw_gcd_;
    total = checked_add(total, u);
  }
  if (total > cap)
    fail(ErrorCode::CoefficientCapExceeded,
         "coefficient sum " + std::to_string(total) + " exceeds cap " + std::to_string(cap));
  f.u_total_ = total;
  return f;
}

inline LinearForm normalize_form(std::initializer_list<std::int64_t> raw) {
  return normalize_form(std::span<const std::int64_t>(raw.begin(), raw.size()));
}

/// Parses a comma-separated decimal list such as "1,2,3".
inline std::vector<std::int64_t> parse_int_list(std::string_view text) {
  std::vector<std::int64_t> out;
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    std::string_view tok = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    std::int64_t v = 0;
    const auto* first = tok.data();
    const auto* last = tok.data() + tok.size();
    if (!tok.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (tok.empty() || ec != std::errc{} || ptr != last)
      fail(ErrorCode::ParseError, "cannot parse integer '" + std::string(tok) + "'");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

inline LinearForm parse_form(std::string_view text) {
  const auto raw = parse_int_list(text);
  return normalize_form(raw);
}

/// S(U): all subset sums of the coefficients, as a bit table over [0, U].
class SubsetSumSet {
 public:
  std::int64_t u_total() const noexcept { return static_cast<std::int64_t>(bits_.width()) - 1; }
  bool contains(std::int64_t n) const noexcept {
    return n >= 0 && n <= u_total() && bits_.test(static_cast<std::size_t>(n));
  }
  std::size_t size() const noexcept { return bits_.count(); }

  std::vector<std::int64_t> values() const {
    std::vector<std::int64_t> out;
    bits_.for_each_set([&](std::size_t i) { out.push_back(static_cast<std::int64_t>(i)); });
    return out;
  }

 private:
  friend SubsetSumSet subset_sums(const LinearForm&);
  BitTable bits_;
};

/// Shift-or dynamic programming: start from {0}, then S |= S << u for each coefficient.
inline SubsetSumSet subset_sums(const LinearForm& f) {
  SubsetSumSet s;
  s.bits_.reset(static_cast<std::size_t>(f.u_total()) + 1);
  s.bits_.set(0);
  for (auto u : f.coeffs()) s.bits_.or_shifted(s.bits_, static_cast<std::size_t>(u));
  return s;
}

inline bool is_complete(const LinearForm& f) {
  return subset_sums(f).size() == static_cast<std::size_t>(f.u_total()) + 1;
}

inline bool has_distinct_subset_sums(const LinearForm& f) {
  if (f.arity() >= 63) return false;  // 2^m exceeds any representable u_total + 1
  return subset_sums(f).size() == (std::size_t{1} << f.arity());
}

/// Every normalized form with arity in [min_m, max_m] and coefficients in
/// [1, max_coeff], ordered by arity then lexicographically.
inline std::vector<LinearForm> normalized_forms(std::size_t min_m, std::size_t max_m,
                                                std::int64_t max_coeff) {
  std::vector<LinearForm> out;
  std::vector<std::int64_t> cur;
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t m, std::int64_t lo) {
    if (cur.size() == m) {
      if (gcd_of(cur) == 1) out.push_back(normalize_form(cur));
      return;
    }
    for (std::int64_t u = lo; u <= max_coeff; ++u) {
      cur.push_back(u);
      rec(m, u);
      cur.pop_back();
    }
  };
  for (std::size_t m = std::max<std::size_t>(1, min_m); m <= max_m; ++m) rec(m, 1);
  return out;
}

inline std::string format_coeffs(const LinearForm& f) {
  std::string s = "(";
  for (std::size_t i = 0; i < f.arity(); ++i) {
    if (i) s += ",";
    s += std::to_string(f.coeffs()[i]);
  }
  return s + ")";
}

}  // namespace linform
