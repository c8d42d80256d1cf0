#pragma once

// Bounded exploration: the spectrum of achievable image sizes |f(A)| over
// k-sets with a census of how many canonical sets reach each size, and scans
// over families of forms probing whether N_f(k) = Uk - U + 1 or AP-only
// minimizers force a complete coefficient sequence.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "linform/detail/canonical_walk.hpp"
#include "linform/engine.hpp"
#include "linform/forms.hpp"
#include "linform/parallel.hpp"
#include "linform/sets.hpp"
#include "linform/theory.hpp"

namespace linform {

struct ExploreConfig {
  unsigned threads = 0;
  std::uint64_t node_budget = 0;
};

struct SpectrumReport {
  LinearForm form;
  std::int64_t k = 0;
  std::int64_t diameter = 0;
  std::vector<std::int64_t> values;
  std::map<std::int64_t, std::uint64_t> census;  ///< image size -> number of sets
  bool is_interval = false;
  std::int64_t mf_value = 0;
  bool mf_reached = false;
  std::uint64_t sets = 0;  ///< canonical, reflection-deduplicated sets enumerated
};

namespace detail {

class CensusVisitor {
 public:
  explicit CensusVisitor(const LinearForm& f) : sizer_(f) {}
  bool descend(std::span<const std::int64_t>) { return true; }
  void leaf(std::span<const std::int64_t> set) {
    if (!is_reflection_representative(set)) return;
    ++census_[static_cast<std::int64_t>(sizer_.size(set))];
  }
  std::map<std::int64_t, std::uint64_t>& census() noexcept { return census_; }

 private:
  ImageSizer sizer_;
  std::map<std::int64_t, std::uint64_t> census_;
};

}  // namespace detail

/// Every |f(A)| achieved by canonical k-sets of diameter at most `diameter`,
/// with per-value counts over reflection classes.
inline SpectrumReport spectrum(const LinearForm& f, std::int64_t k, std::int64_t diameter,
                               const ExploreConfig& config = {}) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "k must be at least 1");
  if (diameter < k - 1)
    fail(ErrorCode::DiameterTooSmall, "diameter " + std::to_string(diameter) + " < k - 1");
  const auto ku = static_cast<std::size_t>(k);
  const std::size_t n_tasks = detail::walk_task_count(ku, diameter);
  detail::NodeBudget budget(config.node_budget);
  std::vector<std::map<std::int64_t, std::uint64_t>> parts(n_tasks);

  run_tasks(n_tasks, resolve_threads(config.threads), [&](std::size_t task) {
    detail::CensusVisitor vis(f);
    detail::walk_canonical_task(ku, diameter, task, vis, budget);
    parts[task] = std::move(vis.census());
  });

  SpectrumReport rep;
  rep.form = f;
  rep.k = k;
  rep.diameter = diameter;
  for (const auto& part : parts)
    for (const auto& [v, c] : part) rep.census[v] += c;
  for (const auto& [v, c] : rep.census) {
    rep.values.push_back(v);
    rep.sets += c;
  }
  rep.is_interval = !rep.values.empty() &&
                    rep.values.back() - rep.values.front() + 1 == static_cast<std::int64_t>(rep.values.size());
  rep.mf_value = compute_mf(f, k).value;
  rep.mf_reached = !rep.values.empty() && rep.values.back() == rep.mf_value;
  return rep;
}

/// Union of the spectra of all normalized forms of arity m with coefficients
/// up to max_coeff, at the default diameter U * (k - 1) of each form.
inline std::vector<std::int64_t> aggregate_spectrum(std::int64_t m, std::int64_t max_coeff, std::int64_t k,
                                                    const ExploreConfig& config = {}) {
  std::set<std::int64_t> all;
  for (const auto& f : normalized_forms(static_cast<std::size_t>(m), static_cast<std::size_t>(m), max_coeff)) {
    const auto d = std::max(detail::default_diameter(f, k), k - 1);
    for (auto v : spectrum(f, k, d, config).values) all.insert(v);
  }
  return {all.begin(), all.end()};
}

enum class ScanStatus { Consistent, CandidateCounterexample, Inconclusive, TheoremContradiction };

constexpr std::string_view to_string(ScanStatus s) noexcept {
  switch (s) {
    case ScanStatus::Consistent: return "consistent";
    case ScanStatus::CandidateCounterexample: return "candidate-counterexample";
    case ScanStatus::Inconclusive: return "inconclusive";
    case ScanStatus::TheoremContradiction: return "theorem-contradiction";
  }
  return "unknown";
}

enum class ScanKind { CompletenessConverse, ApMinimizerConverse };

constexpr std::string_view to_string(ScanKind s) noexcept {
  return s == ScanKind::CompletenessConverse ? "completeness" : "ap-minimizers";
}

struct ScanFinding {
  ScanKind kind = ScanKind::CompletenessConverse;
  LinearForm form;
  std::int64_t k = 0;
  std::int64_t diameter = 0;
  std::int64_t lower = 0;  ///< observed bracket for N_f(k)
  std::int64_t best = 0;
  bool exact = false;
  std::int64_t predicted = 0;  ///< Uk - U + 1
  bool complete = false;
  std::optional<std::uint64_t> minimizers;  ///< AP scan only
  std::optional<bool> all_ap;               ///< AP scan only
  ScanStatus status = ScanStatus::Inconclusive;
};

namespace detail {

inline NfConfig scan_config(std::optional<std::int64_t> diameter, std::int64_t k, const ExploreConfig& c) {
  NfConfig cfg;
  if (diameter) cfg.diameter = std::max(*diameter, k - 1);
  cfg.search.threads = 1;
  cfg.search.node_budget = c.node_budget;
  return cfg;
}

template <class Fn>
std::vector<ScanFinding> scan_forms(const std::vector<LinearForm>& forms, const ExploreConfig& config, Fn&& fn) {
  std::vector<std::optional<ScanFinding>> out(forms.size());
  run_tasks(forms.size(), resolve_threads(config.threads), [&](std::size_t i) { out[i] = fn(forms[i]); });
  std::vector<ScanFinding> findings;
  for (auto& f : out)
    if (f) findings.push_back(std::move(*f));
  return findings;
}

inline void fill_bracket(ScanFinding& s, const ExtremalResult& r) {
  s.form = r.form;
  s.k = r.k;
  s.diameter = r.diameter;
  s.lower = r.lower;
  s.best = r.best;
  s.exact = r.exact;
  s.predicted = complete_formula(r.form.u_total(), r.k);
}

}  // namespace detail

/// For incomplete forms, is N_f(k) = Uk - U + 1 ever attained? Needs k >= 2
/// (at k = 1 every form attains it).
inline std::vector<ScanFinding> scan_completeness_converse(std::int64_t m, std::int64_t max_coeff, std::int64_t k,
                                                           std::optional<std::int64_t> diameter = {},
                                                           const ExploreConfig& config = {}) {
  if (k < 2) fail(ErrorCode::InvalidArgument, "the completeness scan needs k >= 2");
  std::vector<LinearForm> forms;
  for (auto& f : normalized_forms(1, static_cast<std::size_t>(m), max_coeff))
    if (!is_complete(f)) forms.push_back(f);

  return detail::scan_forms(forms, config, [&](const LinearForm& f) -> std::optional<ScanFinding> {
    const auto r = compute_nf(f, k, detail::scan_config(diameter, k, config));
    ScanFinding s;
    s.kind = ScanKind::CompletenessConverse;
    detail::fill_bracket(s, r);
    s.complete = false;
    if (r.exact)
      s.status = r.best == s.predicted ? ScanStatus::CandidateCounterexample : ScanStatus::Consistent;
    else
      s.status = (r.lower <= s.predicted && s.predicted <= r.best) ? ScanStatus::Inconclusive
                                                                   : ScanStatus::Consistent;
    return s;
  });
}

/// Do AP-only minimizers force completeness? Needs k >= 3 (every set of at
/// most two elements is an AP). Complete forms with a non-AP minimizer are
/// reported as theorem contradictions.
inline std::vector<ScanFinding> scan_ap_minimizer_converse(std::int64_t m, std::int64_t max_coeff, std::int64_t k,
                                                           std::optional<std::int64_t> diameter = {},
                                                           const ExploreConfig& config = {}) {
  if (k < 3) fail(ErrorCode::InvalidArgument, "the AP-minimizer scan needs k >= 3");
  const auto forms = normalized_forms(1, static_cast<std::size_t>(m), max_coeff);
  const auto ap = KSet::from_canonical(detail::progression(k));

  return detail::scan_forms(forms, config, [&](const LinearForm& f) -> std::optional<ScanFinding> {
    const auto r = compute_nf(f, k, detail::scan_config(diameter, k, config));
    ScanFinding s;
    s.kind = ScanKind::ApMinimizerConverse;
    detail::fill_bracket(s, r);
    s.complete = is_complete(f);
    if (!r.exact) {
      // |f({0..k-1})| = Uk - U + 1, so a smaller hit rules the progression out.
      if (r.best < s.predicted) {
        s.all_ap = false;
        s.status = s.complete ? ScanStatus::TheoremContradiction : ScanStatus::Consistent;
      } else {
        s.status = ScanStatus::Inconclusive;
      }
      return s;
    }
    // {0, ..., k-1} is the only canonical AP of length k.
    const bool all_ap = r.witness_count == 1 && r.witnesses.front() == ap;
    s.minimizers = r.witness_count;
    s.all_ap = all_ap;
    if (s.complete && !all_ap)
      s.status = ScanStatus::TheoremContradiction;
    else if (!s.complete && all_ap)
      s.status = ScanStatus::CandidateCounterexample;
    else
      s.status = ScanStatus::Consistent;
    return s;
  });
}

}  // namespace linform
