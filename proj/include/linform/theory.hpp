#pragma once

// Closed-form values and case classifications for linear forms, and suites
// that check them against the engine over bounded families of forms.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "linform/engine.hpp"
#include "linform/error.hpp"
#include "linform/forms.hpp"
#include "linform/parallel.hpp"
#include "linform/sets.hpp"

namespace linform {

/// Minimum of N_f(k) over forms with m pairwise distinct coefficients.
constexpr std::int64_t nstar_formula(std::int64_t m, std::int64_t k) {
  return (m * m + m) / 2 * k - (m * m + m - 2) / 2;
}

/// N_f(k) = Uk - U + 1 for forms with complete coefficient sequences.
constexpr std::int64_t complete_formula(std::int64_t u_total, std::int64_t k) {
  return u_total * k - u_total + 1;
}

enum class BinaryCase { SumOfTwo, OnePlusTwo, General };

constexpr std::string_view to_string(BinaryCase c) noexcept {
  switch (c) {
    case BinaryCase::SumOfTwo: return "x1+x2";
    case BinaryCase::OnePlusTwo: return "x1+2x2";
    case BinaryCase::General: return "general";
  }
  return "unknown";
}

struct BinaryClassification {
  BinaryCase tag;
  bool exact;  ///< bound(k) is N_f(k) itself rather than a lower bound

  std::int64_t bound(std::int64_t k) const {
    switch (tag) {
      case BinaryCase::SumOfTwo: return 2 * k - 1;
      case BinaryCase::OnePlusTwo: return 3 * k - 2;
      case BinaryCase::General: return (7 * k - 5) / 2;  // (7k-6)/2 when k is even
    }
    return 1;
  }
};

inline BinaryClassification classify_binary(const LinearForm& f) {
  if (f.arity() != 2) fail(ErrorCode::NotBinary, "form " + format_coeffs(f) + " is not binary");
  const auto& u = f.coeffs();
  if (u[0] == 1 && u[1] == 1) return {BinaryCase::SumOfTwo, true};
  if (u[0] == 1 && u[1] == 2) return {BinaryCase::OnePlusTwo, true};
  return {BinaryCase::General, false};
}

/// Case table for N_f(2) of a normalized ternary form.
inline std::int64_t ternary_nf2_table(const LinearForm& f) {
  if (f.arity() != 3) fail(ErrorCode::NotTernary, "form " + format_coeffs(f) + " is not ternary");
  const auto u1 = f.coeffs()[0], u2 = f.coeffs()[1], u3 = f.coeffs()[2];
  if (u1 == u2 && u2 == u3) return 4;
  if (u1 == u2) return u3 == 2 * u1 ? 5 : 6;
  if (u2 == u3) return 6;
  return u1 + u2 == u3 ? 7 : 8;
}

/// Lower bound for ternary forms with distinct coefficients: 6k - 5 always,
/// 7k - 6 once N_f(2) = 8 (u1 + u2 != u3).
inline std::int64_t ternary_lower(const LinearForm& f, std::int64_t k) {
  if (f.arity() != 3) fail(ErrorCode::NotTernary, "form " + format_coeffs(f) + " is not ternary");
  if (!f.strictly_increasing())
    fail(ErrorCode::NotStrictlyIncreasing, "form " + format_coeffs(f) + " repeats a coefficient");
  const auto& u = f.coeffs();
  return u[0] + u[1] != u[2] ? 7 * k - 6 : 6 * k - 5;
}

enum class Suite { Thm23, Thm31, Lem32, Thm41, MfBounds };

constexpr std::string_view to_string(Suite s) noexcept {
  switch (s) {
    case Suite::Thm23: return "thm23";
    case Suite::Thm31: return "thm31";
    case Suite::Lem32: return "lem32";
    case Suite::Thm41: return "thm41";
    case Suite::MfBounds: return "mf_bounds";
  }
  return "unknown";
}

inline Suite suite_from_string(std::string_view s) {
  for (auto suite : {Suite::Thm23, Suite::Thm31, Suite::Lem32, Suite::Thm41, Suite::MfBounds})
    if (to_string(suite) == s) return suite;
  fail(ErrorCode::InvalidArgument, "unknown suite '" + std::string(s) + "'");
}

struct SuiteBounds {
  std::int64_t max_m = 3;
  std::int64_t max_coeff = 4;
  std::int64_t max_k = 5;
  std::optional<std::int64_t> diameter;  ///< default U * (k - 1) per instance
};

struct Mismatch {
  std::vector<std::int64_t> coeffs;
  std::int64_t k = 0;
  std::string check;
  std::int64_t expected = 0;
  std::int64_t got = 0;

  friend bool operator==(const Mismatch&, const Mismatch&) = default;
};

struct VerificationReport {
  Suite suite = Suite::Thm23;
  SuiteBounds bounds;
  std::uint64_t instances_checked = 0;
  std::vector<Mismatch> mismatches;
  bool passed = true;
};

namespace detail {

struct FormCheck {
  std::uint64_t instances = 0;
  std::vector<Mismatch> mismatches;

  void expect(bool ok, const LinearForm& f, std::int64_t k, std::string check, std::int64_t expected,
              std::int64_t got) {
    if (!ok) mismatches.push_back({f.coeffs(), k, std::move(check), expected, got});
  }
};

inline NfConfig suite_nf_config(const SuiteBounds& b, const LinearForm& f, std::int64_t k,
                                const SearchConfig& search) {
  NfConfig cfg;
  cfg.search = search;
  cfg.search.threads = 1;
  if (b.diameter) cfg.diameter = std::max(*b.diameter, k - 1);
  (void)f;
  return cfg;
}

inline std::vector<std::int64_t> progression(std::int64_t k) {
  std::vector<std::int64_t> v(static_cast<std::size_t>(k));
  std::iota(v.begin(), v.end(), 0);
  return v;
}

inline std::int64_t ipow(std::int64_t b, std::int64_t e) {
  std::int64_t r = 1;
  for (std::int64_t i = 0; i < e; ++i) r = checked_mul(r, b);
  return r;
}

inline std::int64_t choose(std::int64_t n, std::int64_t r) {
  if (r < 0 || r > n) return 0;
  return static_cast<std::int64_t>(binomial_capped(static_cast<std::uint64_t>(n),
                                                   static_cast<std::uint64_t>(r), UINT64_MAX / 2));
}

inline void check_thm23(const LinearForm& f, const SuiteBounds& b, const SearchConfig& s, FormCheck& out) {
  if (!f.strictly_increasing()) return;
  const auto m = static_cast<std::int64_t>(f.arity());
  bool is_first_m = true;
  for (std::int64_t j = 0; j < m; ++j) is_first_m &= f.coeffs()[static_cast<std::size_t>(j)] == j + 1;
  for (std::int64_t k = 1; k <= b.max_k; ++k) {
    const auto r = compute_nf(f, k, suite_nf_config(b, f, k, s));
    ++out.instances;
    out.expect(r.best >= nstar_formula(m, k), f, k, "best >= nstar", nstar_formula(m, k), r.best);
    out.expect(r.lower <= r.best, f, k, "lower <= best", r.best, r.lower);
    if (is_first_m) {
      out.expect(r.exact, f, k, "exact for (1..m)", 1, r.exact ? 1 : 0);
      out.expect(r.best == nstar_formula(m, k), f, k, "best == nstar for (1..m)", nstar_formula(m, k), r.best);
    }
  }
}

inline void check_thm31(const LinearForm& f, const SuiteBounds& b, const SearchConfig& s, FormCheck& out) {
  if (f.arity() != 2) return;
  const auto cls = classify_binary(f);
  for (std::int64_t k = 1; k <= b.max_k; ++k) {
    const auto r = compute_nf(f, k, suite_nf_config(b, f, k, s));
    ++out.instances;
    const std::int64_t predicted = cls.bound(k);
    if (cls.exact) {
      out.expect(r.exact, f, k, "exact", 1, r.exact ? 1 : 0);
      out.expect(r.best == predicted, f, k, "best == closed form", predicted, r.best);
    } else {
      out.expect(r.lower >= predicted, f, k, "certified lower >= (7k-5)/2", predicted, r.lower);
      out.expect(r.best >= predicted, f, k, "best >= (7k-5)/2", predicted, r.best);
      if (k == 3) out.expect(r.exact && r.best == 8, f, k, "N_f(3) = 8 exact", 8, r.exact ? r.best : -1);
    }
  }
}

inline void check_lem32(const LinearForm& f, FormCheck& out) {
  if (f.arity() != 3) return;
  ++out.instances;
  out.expect(ternary_nf2_table(f) == exact_nf2(f), f, 2, "table == |S(U)|", ternary_nf2_table(f),
             exact_nf2(f));
}

inline void check_thm41(const LinearForm& f, const SuiteBounds& b, const SearchConfig& s, FormCheck& out) {
  if (!is_complete(f)) return;
  for (std::int64_t k = 1; k <= b.max_k; ++k) {
    auto cfg = suite_nf_config(b, f, k, s);
    const auto r = compute_nf(f, k, cfg);
    ++out.instances;
    const auto predicted = complete_formula(f.u_total(), k);
    out.expect(r.exact, f, k, "exact", 1, r.exact ? 1 : 0);
    out.expect(r.best == predicted, f, k, "best == Uk-U+1", predicted, r.best);
    if (!r.exact) continue;
    const auto ap = KSet::from_canonical(progression(k));
    const bool only_ap = r.witness_count == 1 && r.witnesses.size() == 1 && r.witnesses.front() == ap;
    out.expect(only_ap, f, k, "minimizers == {progression}", 1,
               static_cast<std::int64_t>(r.witness_count));
  }
}

inline void check_mf(const LinearForm& f, const SuiteBounds& b, FormCheck& out) {
  const auto m = static_cast<std::int64_t>(f.arity());
  const bool dss = has_distinct_subset_sums(f);
  for (std::int64_t k = 1; k <= b.max_k; ++k) {
    const auto r = compute_mf(f, k);
    ++out.instances;
    const auto lo = choose(k, m);
    const auto hi = ipow(k, m);
    out.expect(r.value >= lo, f, k, "M_f >= C(k,m)", lo, r.value);
    out.expect(r.value <= hi, f, k, "M_f <= k^m", hi, r.value);
    if (k >= 2) out.expect((r.value == hi) == dss, f, k, "M_f = k^m iff distinct subset sums", dss ? hi : 0,
                           r.value);
    if (f.strictly_increasing()) {
      std::int64_t falling = 1;
      for (std::int64_t i = 0; i < m; ++i) falling *= std::max<std::int64_t>(k - i, 0);
      out.expect(r.value >= falling, f, k, "M_f >= k(k-1)...(k-m+1)", falling, r.value);
    }
  }
}

}  // namespace detail

/// Runs one suite over every normalized form within the bounds. Forms are
/// checked in parallel; mismatches are reported in form order.
inline VerificationReport verify_suite(Suite suite, const SuiteBounds& bounds,
                                       const SearchConfig& search = {}) {
  if (bounds.max_m < 1 || bounds.max_coeff < 1 || bounds.max_k < 1)
    fail(ErrorCode::InvalidArgument, "suite bounds must be positive");
  const auto forms = normalized_forms(1, static_cast<std::size_t>(bounds.max_m), bounds.max_coeff);
  std::vector<detail::FormCheck> per_form(forms.size());

  run_tasks(forms.size(), resolve_threads(search.threads), [&](std::size_t i) {
    const auto& f = forms[i];
    auto& out = per_form[i];
    switch (suite) {
      case Suite::Thm23: detail::check_thm23(f, bounds, search, out); break;
      case Suite::Thm31: detail::check_thm31(f, bounds, search, out); break;
      case Suite::Lem32: detail::check_lem32(f, out); break;
      case Suite::Thm41: detail::check_thm41(f, bounds, search, out); break;
      case Suite::MfBounds: detail::check_mf(f, bounds, out); break;
    }
  });

  VerificationReport rep;
  rep.suite = suite;
  rep.bounds = bounds;
  for (auto& c : per_form) {
    rep.instances_checked += c.instances;
    for (auto& mm : c.mismatches) rep.mismatches.push_back(std::move(mm));
  }
  rep.passed = rep.mismatches.empty();
  return rep;
}

}  // namespace linform
