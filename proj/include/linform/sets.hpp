#pragma once

// Finite integer sets in affine-canonical form and exact computation of the
// image f(A) = { f(a_1, ..., a_m) : a_i in A }.
//
// Three independent routes compute the image:
//   - composition vectors: every image value is a dot product s . A where s
//     records how much coefficient mass lands on each element of A;
//   - tuple enumeration over all k^m argument tuples;
//   - a Minkowski sum of dilates u_1*A + ... + u_m*A over a bit table, used
//     by the search hot loops.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "linform/bits.hpp"
#include "linform/checked.hpp"
#include "linform/error.hpp"
#include "linform/forms.hpp"

namespace linform {

inline constexpr std::uint64_t kDefaultCompositionLimit = 10'000'000;

/// A finite set of integers translated to minimum 0 and divided by the gcd of
/// its elements.
class KSet {
 public:
  /// Wraps an already-canonical vector; throws NotCanonical otherwise.
  static KSet from_canonical(std::vector<std::int64_t> elems) {
    if (elems.empty()) fail(ErrorCode::EmptyInput, "a k-set needs at least one element");
    if (elems.front() != 0) fail(ErrorCode::NotCanonical, "canonical sets start at 0");
    for (std::size_t i = 1; i < elems.size(); ++i)
      if (elems[i] <= elems[i - 1]) fail(ErrorCode::NotCanonical, "elements must strictly increase");
    if (elems.size() >= 2 && gcd_of(elems) != 1)
      fail(ErrorCode::NotCanonical, "elements must have gcd 1");
    KSet s;
    s.elems_ = std::move(elems);
    return s;
  }

  const std::vector<std::int64_t>& elems() const noexcept { return elems_; }
  std::size_t k() const noexcept { return elems_.size(); }
  std::int64_t diameter() const noexcept { return elems_.back(); }

  friend bool operator==(const KSet&, const KSet&) = default;
  friend auto operator<=>(const KSet& a, const KSet& b) noexcept { return a.elems_ <=> b.elems_; }

 private:
  std::vector<std::int64_t> elems_;
};

inline KSet canonicalize(std::span<const std::int64_t> raw) {
  if (raw.empty()) fail(ErrorCode::EmptyInput, "cannot canonicalize an empty set");
  std::vector<std::int64_t> v(raw.begin(), raw.end());
  std::sort(v.begin(), v.end());
  if (std::adjacent_find(v.begin(), v.end()) != v.end())
    fail(ErrorCode::DuplicateElements, "set elements must be pairwise distinct");
  const std::int64_t lo = v.front();
  std::int64_t g = 0;
  for (auto& x : v) {
    x = checked_sub(x, lo);
    g = std::gcd(g, x);
  }
  if (g > 1)
    for (auto& x : v) x /= g;
  return KSet::from_canonical(std::move(v));
}

inline KSet canonicalize(std::initializer_list<std::int64_t> raw) {
  return canonicalize(std::span<const std::int64_t>(raw.begin(), raw.size()));
}

inline KSet reflect_canonical(const KSet& a) {
  std::vector<std::int64_t> v(a.elems().rbegin(), a.elems().rend());
  for (auto& x : v) x = a.diameter() - x;
  return KSet::from_canonical(std::move(v));
}

inline bool is_arithmetic_progression(std::span<const std::int64_t> sorted) {
  for (std::size_t i = 2; i < sorted.size(); ++i)
    if (sorted[i] - sorted[i - 1] != sorted[1] - sorted[0]) return false;
  return true;
}

inline bool is_arithmetic_progression(const KSet& a) { return is_arithmetic_progression(a.elems()); }

/// Set of distinct composition vectors for (f, k), stored row-major.
class CompositionSet {
 public:
  std::size_t k() const noexcept { return k_; }
  std::size_t size() const noexcept { return k_ == 0 ? 0 : data_.size() / k_; }
  std::span<const std::int64_t> operator[](std::size_t i) const noexcept {
    return {data_.data() + i * k_, k_};
  }

 private:
  friend CompositionSet composition_vectors(const LinearForm&, std::size_t, std::uint64_t);
  std::size_t k_ = 0;
  std::vector<std::int64_t> data_;
};

/// All bin-sum vectors (s_0..s_{k-1}) from assigning each coefficient to one of
/// k labeled bins. Runs of equal coefficients are distributed as multiplicity
/// splits rather than individually.
inline CompositionSet composition_vectors(const LinearForm& f, std::size_t k,
                                          std::uint64_t limit = kDefaultCompositionLimit) {
  if (k == 0) fail(ErrorCode::InvalidArgument, "k must be at least 1");

  struct Run {
    std::int64_t value;
    std::int64_t count;
  };
  std::vector<Run> runs;
  for (auto u : f.coeffs()) {
    if (!runs.empty() && runs.back().value == u)
      ++runs.back().count;
    else
      runs.push_back({u, 1});
  }

  std::uint64_t raw_count = 1;
  for (const auto& r : runs) {
    const auto splits = binomial_capped(static_cast<std::uint64_t>(r.count) + k - 1, k - 1, limit);
    const unsigned __int128 prod = static_cast<unsigned __int128>(raw_count) * splits;
    if (prod > limit)
      fail(ErrorCode::CapacityExceeded, "more than " + std::to_string(limit) +
                                            " composition vectors for k=" + std::to_string(k));
    raw_count = static_cast<std::uint64_t>(prod);
  }

  CompositionSet out;
  out.k_ = k;
  out.data_.reserve(raw_count * k);
  std::vector<std::int64_t> bins(k, 0);

  // Place `left` copies of runs[ri].value into bins [bin, k), then move on.
  auto place = [&](auto& self, std::size_t ri, std::size_t bin, std::int64_t left) -> void {
    if (ri == runs.size()) {
      out.data_.insert(out.data_.end(), bins.begin(), bins.end());
      return;
    }
    const std::int64_t v = runs[ri].value;
    if (bin + 1 == k) {
      bins[bin] += v * left;
      if (ri + 1 < runs.size())
        self(self, ri + 1, 0, runs[ri + 1].count);
      else
        self(self, ri + 1, 0, 0);
      bins[bin] -= v * left;
      return;
    }
    for (std::int64_t c = 0; c <= left; ++c) {
      bins[bin] += v * c;
      self(self, ri, bin + 1, left - c);
      bins[bin] -= v * c;
    }
  };
  place(place, 0, 0, runs.front().count);

  // Merge duplicates.
  const std::size_t n = out.data_.size() / k;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto row = [&](std::size_t i) { return std::span<const std::int64_t>(out.data_.data() + i * k, k); };
  auto less = [&](std::size_t a, std::size_t b) {
    auto ra = row(a), rb = row(b);
    return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
  };
  std::sort(order.begin(), order.end(), less);
  std::vector<std::int64_t> merged;
  merged.reserve(out.data_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) {
      auto prev = row(order[i - 1]), cur = row(order[i]);
      if (std::equal(prev.begin(), prev.end(), cur.begin())) continue;
    }
    auto r = row(order[i]);
    merged.insert(merged.end(), r.begin(), r.end());
  }
  out.data_ = std::move(merged);
  return out;
}

/// The image f(A) as a sorted set of distinct values.
struct ValueSet {
  std::vector<std::int64_t> values;
  std::size_t size() const noexcept { return values.size(); }
  friend bool operator==(const ValueSet&, const ValueSet&) = default;
};

inline ValueSet image_from_compositions(const CompositionSet& comps, std::span<const std::int64_t> a) {
  if (comps.k() != a.size())
    fail(ErrorCode::InvalidArgument, "composition width does not match set size");
  ValueSet out;
  out.values.reserve(comps.size());
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const auto s = comps[i];
    std::int64_t v = 0;
    for (std::size_t t = 0; t < a.size(); ++t) v = checked_add(v, checked_mul(s[t], a[t]));
    out.values.push_back(v);
  }
  std::sort(out.values.begin(), out.values.end());
  out.values.erase(std::unique(out.values.begin(), out.values.end()), out.values.end());
  return out;
}

/// Elements of `a` must be pairwise distinct; order is irrelevant.
inline ValueSet image(const LinearForm& f, std::span<const std::int64_t> a,
                      std::uint64_t limit = kDefaultCompositionLimit) {
  if (a.empty()) fail(ErrorCode::EmptyInput, "image of an empty set");
  return image_from_compositions(composition_vectors(f, a.size(), limit), a);
}

inline ValueSet image(const LinearForm& f, const KSet& a) { return image(f, a.elems()); }

/// Same image computed by walking all k^m argument tuples.
inline ValueSet image_by_tuples(const LinearForm& f, std::span<const std::int64_t> a,
                                std::uint64_t limit = kDefaultCompositionLimit) {
  if (a.empty()) fail(ErrorCode::EmptyInput, "image of an empty set");
  const std::size_t m = f.arity();
  const std::size_t k = a.size();
  std::uint64_t total = 1;
  for (std::size_t j = 0; j < m; ++j) {
    total *= k;
    if (total > limit) fail(ErrorCode::CapacityExceeded, "too many argument tuples");
  }
  std::vector<std::size_t> idx(m, 0);
  ValueSet out;
  out.values.reserve(total);
  while (true) {
    std::int64_t v = 0;
    for (std::size_t j = 0; j < m; ++j) v = checked_add(v, checked_mul(f.coeffs()[j], a[idx[j]]));
    out.values.push_back(v);
    std::size_t j = 0;
    while (j < m && ++idx[j] == k) idx[j++] = 0;
    if (j == m) break;
  }
  std::sort(out.values.begin(), out.values.end());
  out.values.erase(std::unique(out.values.begin(), out.values.end()), out.values.end());
  return out;
}

/// Computes |f(A)| for sorted non-negative A as the Minkowski sum of the
/// dilates u_j * A in a bit table of width U * max(A) + 1. Scratch tables are
/// reused across calls.
class ImageSizer {
 public:
  static constexpr std::size_t kMaxWidth = std::size_t{1} << 28;

  explicit ImageSizer(const LinearForm& f) : coeffs_(f.coeffs()), u_total_(f.u_total()) {}

  /// Whether the bit-table route applies to sets with this maximum element.
  bool fits(std::int64_t max_elem) const noexcept {
    return max_elem >= 0 && max_elem <= static_cast<std::int64_t>(kMaxWidth) / u_total_;
  }

  std::size_t size(std::span<const std::int64_t> sorted) {
    const std::int64_t hi = sorted.back();
    if (!fits(hi)) return image_by_compositions_size(sorted);
    std::int64_t partial = 0;  // sum of coefficients processed so far
    cur_.reset(1);
    cur_.set(0);
    for (auto u : coeffs_) {
      partial += u;
      next_.reset(static_cast<std::size_t>(partial * hi) + 1);
      for (auto x : sorted) next_.or_shifted(cur_, static_cast<std::size_t>(u * x));
      std::swap(cur_, next_);
    }
    return cur_.count();
  }

 private:
  std::size_t image_by_compositions_size(std::span<const std::int64_t> sorted) {
    return image(normalize_form(coeffs_, std::numeric_limits<std::int64_t>::max()), sorted).size();
  }

  std::vector<std::int64_t> coeffs_;
  std::int64_t u_total_;
  BitTable cur_;
  BitTable next_;
};

inline std::string format_set(std::span<const std::int64_t> a) {
  std::string s = "{";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(a[i]);
  }
  return s + "}";
}

inline std::string format_set(const KSet& a) { return format_set(a.elems()); }

}  // namespace linform
