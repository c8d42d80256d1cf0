#pragma once

// Exact and certified extremal values of linear forms over k-sets:
//   - lower-bound certificates for N_f(k) from the block decomposition of a
//     sorted set (blocks of length l overlapping in one element) and from the
//     case analysis for binary forms at k = 3;
//   - branch-and-bound search over canonical k-sets for the realized minimum;
//   - M_f(k) as the number of distinct composition vectors, with a g-adic witness.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "linform/checked.hpp"
#include "linform/detail/canonical_walk.hpp"
#include "linform/error.hpp"
#include "linform/forms.hpp"
#include "linform/parallel.hpp"
#include "linform/sets.hpp"

namespace linform {

/// N_f(2) exactly: every 2-set {a, b} has image {Ua + s(b - a) : s in S(U)}.
inline std::int64_t exact_nf2(const LinearForm& f) {
  return static_cast<std::int64_t>(subset_sums(f).size());
}

/// For a coprime binary form u1 x1 + u2 x2 with u1 < u2 and u2 >= 3, every
/// 3-set has at least 8 image values. Returns nullopt for the excluded forms
/// x1 + x2 and x1 + 2 x2.
inline std::optional<std::int64_t> binary_nf3_certificate(std::int64_t u1, std::int64_t u2) {
  if (u1 <= 0 || u2 <= 0) fail(ErrorCode::NonPositiveCoefficient, "coefficients must be positive");
  if (u1 > u2) std::swap(u1, u2);
  if (std::gcd(u1, u2) != 1) fail(ErrorCode::NotCoprime, "binary certificate needs gcd(u1, u2) = 1");
  if (u1 == u2 || u2 < 3) return std::nullopt;
  // Seven image values are always distinct; a seventh-only image would force
  // one of three coincidence patterns. Two of them reduce to
  // (u1^2 + u1 u2 - u2^2)(c - b) = 0, the third to (u2 - 2 u1)(c - a) = 0.
  const std::int64_t quad = checked_sub(checked_add(checked_mul(u1, u1), checked_mul(u1, u2)),
                                        checked_mul(u2, u2));
  if (quad == 0) fail(ErrorCode::Internal, "u1^2 + u1 u2 - u2^2 vanished for integers");
  if (u2 == 2 * u1) fail(ErrorCode::Internal, "coprime u2 = 2 u1 with u2 >= 3");
  return 8;
}

inline std::optional<std::int64_t> binary_nf3_certificate(const LinearForm& f) {
  if (f.arity() != 2) fail(ErrorCode::NotBinary, "form " + format_coeffs(f) + " is not binary");
  return binary_nf3_certificate(f.coeffs()[0], f.coeffs()[1]);
}

enum class CertificateKind { TrivialK1, Nf2SubsetSums, LemmaBlock, BinaryNf3CaseAnalysis };

constexpr std::string_view to_string(CertificateKind kind) noexcept {
  switch (kind) {
    case CertificateKind::TrivialK1: return "trivial-k1";
    case CertificateKind::Nf2SubsetSums: return "nf2-subset-sums";
    case CertificateKind::LemmaBlock: return "lemma-block";
    case CertificateKind::BinaryNf3CaseAnalysis: return "binary-nf3-case-analysis";
  }
  return "unknown";
}

inline CertificateKind certificate_kind_from_string(std::string_view s) {
  for (auto kind : {CertificateKind::TrivialK1, CertificateKind::Nf2SubsetSums,
                    CertificateKind::LemmaBlock, CertificateKind::BinaryNf3CaseAnalysis})
    if (to_string(kind) == s) return kind;
  fail(ErrorCode::ParseError, "unknown certificate kind '" + std::string(s) + "'");
}

struct Certificate {
  CertificateKind kind = CertificateKind::TrivialK1;
  std::int64_t ell = 1;
  std::int64_t lambda = 1;
  std::int64_t bound = 1;
  /// (l, N_f(l)) pairs the bound was computed from.
  std::vector<std::pair<std::int64_t, std::int64_t>> chain;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// Block bound for a single rung: split k - 1 = q (l - 1) + r; the q full
/// blocks contribute lambda - 1 new values each and the last block of r + 1
/// elements contributes at least N_f(r + 1).
inline std::int64_t block_bound(std::int64_t k, std::int64_t ell, std::int64_t lambda,
                                std::int64_t last_block) {
  const std::int64_t q = (k - 1) / (ell - 1);
  return checked_add(checked_mul(lambda - 1, q), last_block);
}

/// Recomputes a certificate's bound from its own fields.
inline std::int64_t recompute_bound(const Certificate& c, std::int64_t k) {
  switch (c.kind) {
    case CertificateKind::TrivialK1: return 1;
    case CertificateKind::BinaryNf3CaseAnalysis: return c.lambda;
    case CertificateKind::Nf2SubsetSums:
    case CertificateKind::LemmaBlock: {
      const std::int64_t r = (k - 1) % (c.ell - 1);
      std::int64_t last = 1;
      if (r > 0) {
        auto it = std::find_if(c.chain.begin(), c.chain.end(),
                               [&](const auto& p) { return p.first == r + 1; });
        if (it == c.chain.end()) fail(ErrorCode::InvalidArgument, "certificate chain lacks the last block");
        last = it->second;
      }
      return block_bound(k, c.ell, c.lambda, last);
    }
  }
  return 1;
}

/// Best block-decomposition lower bound for N_f(k) given exact small values
/// `known` (l -> N_f(l)); must contain l = 2.
inline Certificate lower_certificate(const LinearForm& f, std::int64_t k,
                                     std::map<std::int64_t, std::int64_t> known) {
  (void)f;
  if (k < 1) fail(ErrorCode::InvalidArgument, "k must be at least 1");
  if (k == 1) return {CertificateKind::TrivialK1, 1, 1, 1, {{1, 1}}};
  if (!known.contains(2)) fail(ErrorCode::MissingBaseValue, "known values must include N_f(2)");
  if (auto it = known.find(1); it != known.end() && it->second != 1)
    fail(ErrorCode::InconsistentKnown, "N_f(1) must be 1");
  known[1] = 1;
  if (known.begin()->first < 1) fail(ErrorCode::InconsistentKnown, "rung lengths must be positive");
  for (auto it = std::next(known.begin()); it != known.end(); ++it) {
    const auto& [l0, v0] = *std::prev(it);
    const auto& [l1, v1] = *it;
    if (v1 - v0 < l1 - l0)
      fail(ErrorCode::InconsistentKnown,
           "N_f(" + std::to_string(l1) + ") = " + std::to_string(v1) +
               " violates strict growth from N_f(" + std::to_string(l0) + ") = " + std::to_string(v0));
  }

  // Lower bound for N_f(n) from the nearest known rung at or below n.
  auto lower_at = [&](std::int64_t n) {
    auto it = std::prev(known.upper_bound(n));
    return it->second + (n - it->first);
  };

  Certificate best{};
  best.bound = 0;
  for (const auto& [ell, lambda] : known) {
    if (ell < 2) continue;
    const std::int64_t r = (k - 1) % (ell - 1);
    const std::int64_t last = r == 0 ? 1 : lower_at(r + 1);
    const std::int64_t bound = block_bound(k, ell, lambda, last);

    // The coarse form ((lambda-1)/(l-1)) k - lambda + 2 never beats the refined one.
    const std::int64_t num = checked_mul(lambda - 1, k);
    const std::int64_t coarse = (num + ell - 2) / (ell - 1) - lambda + 2;
    if (bound < coarse) fail(ErrorCode::Internal, "refined block bound below the coarse bound");

    if (bound > best.bound) {
      best.kind = (k == 2 && ell == 2) ? CertificateKind::Nf2SubsetSums : CertificateKind::LemmaBlock;
      best.ell = ell;
      best.lambda = lambda;
      best.bound = bound;
      best.chain = {{ell, lambda}};
      if (r > 0 && r + 1 != ell) best.chain.emplace_back(r + 1, last);
      std::sort(best.chain.begin(), best.chain.end());
    }
  }
  return best;
}

struct SearchConfig {
  unsigned threads = 0;              ///< 0: LINFORM_THREADS or hardware concurrency
  std::uint64_t node_budget = 0;     ///< 0: unlimited
  std::size_t witness_cap = 64;
  std::optional<std::int64_t> prune_at;
};

struct SearchResult {
  bool found = false;                ///< some set reached the pruning threshold
  std::int64_t best = 0;
  std::vector<KSet> witnesses;       ///< reflection-deduplicated, lexicographic, capped
  std::uint64_t witness_count = 0;   ///< all reflection-deduplicated witnesses
  bool witnesses_truncated = false;
  std::uint64_t nodes = 0;
};

namespace detail {

class MinSearchVisitor {
 public:
  MinSearchVisitor(const LinearForm& f, std::size_t k, std::int64_t threshold, std::size_t cap)
      : sizer_(f), k_(k), best_(threshold), cap_(cap) {}

  bool descend(std::span<const std::int64_t> prefix) {
    const auto size = static_cast<std::int64_t>(sizer_.size(prefix));
    // Each further element is a new maximum and adds at least one value.
    return size + static_cast<std::int64_t>(k_ - prefix.size()) <= best_;
  }

  void leaf(std::span<const std::int64_t> set) {
    const auto size = static_cast<std::int64_t>(sizer_.size(set));
    if (size > best_) return;
    if (size < best_) {
      best_ = size;
      witnesses_.clear();
      count_ = 0;
    }
    achieved_ = true;
    if (!is_reflection_representative(set)) return;
    ++count_;
    if (witnesses_.size() < cap_) witnesses_.emplace_back(set.begin(), set.end());
  }

  bool achieved() const noexcept { return achieved_; }
  std::int64_t best() const noexcept { return best_; }
  std::uint64_t count() const noexcept { return count_; }
  std::vector<std::vector<std::int64_t>>& witnesses() noexcept { return witnesses_; }

 private:
  ImageSizer sizer_;
  std::size_t k_;
  std::int64_t best_;
  std::size_t cap_;
  bool achieved_ = false;
  std::uint64_t count_ = 0;
  std::vector<std::vector<std::int64_t>> witnesses_;
};

inline std::int64_t default_diameter(const LinearForm& f, std::int64_t k) {
  return checked_mul(f.u_total(), std::max<std::int64_t>(k - 1, 0));
}

}  // namespace detail

/// Minimum of |f(A)| over canonical k-sets of diameter at most `diameter`.
///
/// Subtrees are split on the second element and searched independently, each
/// starting from the image size of {0, ..., k-1} (or prune_at, if smaller).
/// Results are merged in subtree order, so the output, including the node
/// count, does not depend on the number of threads.
inline SearchResult search_min(const LinearForm& f, std::int64_t k, std::int64_t diameter,
                               const SearchConfig& config = {}) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "k must be at least 1");
  if (diameter < k - 1)
    fail(ErrorCode::DiameterTooSmall, "diameter " + std::to_string(diameter) + " < k - 1 = " +
                                          std::to_string(k - 1));
  const auto ku = static_cast<std::size_t>(k);

  std::vector<std::int64_t> ap(ku);
  std::iota(ap.begin(), ap.end(), 0);
  std::int64_t threshold = static_cast<std::int64_t>(ImageSizer(f).size(ap));
  if (config.prune_at) threshold = std::min(threshold, *config.prune_at);

  const std::size_t n_tasks = detail::walk_task_count(ku, diameter);
  detail::NodeBudget budget(config.node_budget);
  struct TaskOut {
    bool achieved = false;
    std::int64_t best = 0;
    std::uint64_t count = 0;
    std::uint64_t nodes = 0;
    std::vector<std::vector<std::int64_t>> witnesses;
  };
  std::vector<TaskOut> outs(n_tasks);

  run_tasks(n_tasks, resolve_threads(config.threads), [&](std::size_t task) {
    detail::MinSearchVisitor vis(f, ku, threshold, config.witness_cap);
    TaskOut& out = outs[task];
    out.nodes = detail::walk_canonical_task(ku, diameter, task, vis, budget);
    out.achieved = vis.achieved();
    out.best = vis.best();
    out.count = vis.count();
    out.witnesses = std::move(vis.witnesses());
  });

  SearchResult res;
  for (const auto& o : outs) {
    res.nodes += o.nodes;
    if (!o.achieved) continue;
    if (!res.found || o.best < res.best) {
      res.found = true;
      res.best = o.best;
    }
  }
  if (!res.found) return res;
  for (auto& o : outs) {
    if (!o.achieved || o.best != res.best) continue;
    res.witness_count += o.count;
    for (auto& w : o.witnesses) {
      if (res.witnesses.size() >= config.witness_cap) break;
      res.witnesses.push_back(KSet::from_canonical(std::move(w)));
    }
  }
  res.witnesses_truncated = res.witness_count > res.witnesses.size();
  return res;
}

struct NfConfig {
  std::optional<std::int64_t> diameter;  ///< default U * (k - 1)
  std::int64_t ladder_max_ell = 4;
  SearchConfig search;
};

/// N_f(k) as a certified bracket [lower, best].
struct ExtremalResult {
  LinearForm form;
  std::int64_t k = 0;
  std::int64_t diameter = 0;
  std::int64_t lower = 0;
  Certificate certificate;
  std::int64_t best = 0;
  std::vector<KSet> witnesses;
  std::uint64_t witness_count = 0;
  bool witnesses_truncated = false;
  bool exact = false;
  std::uint64_t nodes = 0;
};

inline ExtremalResult compute_nf(const LinearForm& f, std::int64_t k, const NfConfig& config = {}) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "k must be at least 1");
  const bool binary_general = f.arity() == 2 && binary_nf3_certificate(f).has_value();

  auto certify = [&](std::int64_t n, const std::map<std::int64_t, std::int64_t>& known) {
    Certificate c = lower_certificate(f, n, known);
    if (n == 3 && binary_general && c.bound < 8)
      c = {CertificateKind::BinaryNf3CaseAnalysis, 3, 8, 8, {{3, 8}}};
    return c;
  };

  // Exact small values: a rung is accepted only when the search meets its certificate.
  std::map<std::int64_t, std::int64_t> ladder{{1, 1}, {2, exact_nf2(f)}};
  SearchConfig rung_config = config.search;
  rung_config.prune_at.reset();
  for (std::int64_t ell = 3; ell <= std::min(config.ladder_max_ell, k - 1); ++ell) {
    const std::int64_t lower = certify(ell, ladder).bound;
    const auto found = search_min(f, ell, detail::default_diameter(f, ell), rung_config);
    if (found.found && found.best == lower) ladder[ell] = lower;
  }

  ExtremalResult res;
  res.form = f;
  res.k = k;
  res.diameter = config.diameter.value_or(detail::default_diameter(f, k));
  res.certificate = certify(k, ladder);
  res.lower = res.certificate.bound;

  SearchConfig final_config = config.search;
  final_config.prune_at.reset();
  auto found = search_min(f, k, res.diameter, final_config);
  if (!found.found) fail(ErrorCode::Internal, "search did not realize the progression bound");
  if (found.best < res.lower)
    fail(ErrorCode::Internal, "certified lower bound " + std::to_string(res.lower) +
                                  " exceeds realized value " + std::to_string(found.best) +
                                  " for " + format_coeffs(f));
  res.best = found.best;
  res.witnesses = std::move(found.witnesses);
  res.witness_count = found.witness_count;
  res.witnesses_truncated = found.witnesses_truncated;
  res.nodes = found.nodes;
  res.exact = res.lower == res.best;
  return res;
}

struct Minimizers {
  std::vector<KSet> sets;
  std::uint64_t total = 0;
  bool truncated = false;
};

/// All canonical, reflection-deduplicated minimizing k-sets within `diameter`.
/// Refuses to answer unless N_f(k) is certified at that diameter.
inline Minimizers enumerate_minimizers(const LinearForm& f, std::int64_t k, std::int64_t diameter,
                                       const NfConfig& config = {}) {
  NfConfig cfg = config;
  cfg.diameter = diameter;
  auto r = compute_nf(f, k, cfg);
  if (!r.exact)
    fail(ErrorCode::NotCertifiedExact, "N_f(" + std::to_string(k) + ") for " + format_coeffs(f) +
                                           " is only bracketed in [" + std::to_string(r.lower) +
                                           ", " + std::to_string(r.best) + "]");
  return {std::move(r.witnesses), r.witness_count, r.witnesses_truncated};
}

struct MfResult {
  std::int64_t value = 0;
  std::vector<std::int64_t> witness;  ///< {1, g, g^2, ..., g^(k-1)}
  std::int64_t base = 0;              ///< g
};

/// M_f(k) = number of distinct composition vectors. The witness uses base
/// g = m * u_m + 1, larger than any bin sum, so distinct vectors give distinct
/// base-g numbers; its image size is verified before returning.
inline MfResult compute_mf(const LinearForm& f, std::int64_t k,
                           std::uint64_t limit = kDefaultCompositionLimit) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "k must be at least 1");
  const auto comps = composition_vectors(f, static_cast<std::size_t>(k), limit);
  MfResult res;
  res.value = static_cast<std::int64_t>(comps.size());
  res.base = checked_add(checked_mul(static_cast<std::int64_t>(f.arity()), f.max_coeff()), 1);
  std::int64_t p = 1;
  for (std::int64_t i = 0; i < k; ++i) {
    res.witness.push_back(p);
    if (i + 1 < k) p = checked_mul(p, res.base);
  }
  if (static_cast<std::int64_t>(image_from_compositions(comps, res.witness).size()) != res.value)
    fail(ErrorCode::Internal, "g-adic witness does not realize every composition vector");
  return res;
}

}  // namespace linform
