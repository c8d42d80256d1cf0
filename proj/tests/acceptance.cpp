// Acceptance gate. One line per criterion: PASS/FAIL, elapsed time, limit, detail.
// Exit status is nonzero if any criterion fails.
//
//   acceptance                   run every criterion
//   acceptance --write-snapshot  regenerate the scan snapshot, then run

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "linform/linform.hpp"
#include "support/oracle.hpp"

using namespace linform;

namespace {

using Vec = std::vector<std::int64_t>;

// Time limits in seconds; 0 means none is pinned.
constexpr double kLimitAc1 = 5.0;
constexpr double kLimitAc2 = 30.0;
constexpr double kLimitAc3 = 30.0;
constexpr double kLimitAc4 = 10.0;
constexpr std::uint64_t kSeed = 0x5eed2026;

const std::string kSnapshotPath = std::string(LINFORM_TEST_DATA_DIR) + "/scan_snapshot.jsonl";
bool g_write_snapshot = false;

struct Outcome {
  bool ok = true;
  std::string detail;
  std::uint64_t checks = 0;

  void expect(bool cond, const std::string& what) {
    ++checks;
    if (cond || !ok) {
      ok = ok && cond;
      return;
    }
    ok = false;
    detail = what;
  }
};

std::string str(const Vec& v) { return format_set(v); }

std::string where(const LinearForm& f, std::int64_t k) { return format_coeffs(f) + " k=" + std::to_string(k); }

Vec progression(std::int64_t k) {
  Vec v(static_cast<std::size_t>(k));
  for (std::int64_t i = 0; i < k; ++i) v[static_cast<std::size_t>(i)] = i;
  return v;
}

bool only_progression(const ExtremalResult& r) {
  return r.witness_count == 1 && r.witnesses.size() == 1 && r.witnesses[0].elems() == progression(r.k);
}

std::int64_t choose(std::int64_t n, std::int64_t r) {
  if (r < 0 || r > n) return 0;
  std::int64_t c = 1;
  for (std::int64_t i = 1; i <= r; ++i) c = c * (n - r + i) / i;
  return c;
}

std::int64_t ipow(std::int64_t b, std::int64_t e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Exact values for (1,1) and (1,2), minimizers the progression alone.
Outcome ac1() {
  Outcome o;
  for (std::int64_t k = 2; k <= 8; ++k) {
    const auto a = compute_nf(normalize_form({1, 1}), k);
    o.expect(a.exact && a.best == 2 * k - 1, "(1,1) k=" + std::to_string(k) + " best " + std::to_string(a.best));
    o.expect(only_progression(a), "(1,1) k=" + std::to_string(k) + " non-AP witness");
    const auto b = compute_nf(normalize_form({1, 2}), k);
    o.expect(b.exact && b.best == 3 * k - 2, "(1,2) k=" + std::to_string(k) + " best " + std::to_string(b.best));
    o.expect(only_progression(b), "(1,2) k=" + std::to_string(k) + " non-AP witness");
  }
  return o;
}

// Complete forms: N_f(k) = Uk - U + 1 and the progression is the only minimizer.
Outcome ac2() {
  Outcome o;
  std::size_t forms = 0;
  for (const auto& f : normalized_forms(1, 3, 4)) {
    if (!is_complete(f)) continue;
    ++forms;
    for (std::int64_t k = 1; k <= 5; ++k) {
      const auto r = compute_nf(f, k);
      const auto want = f.u_total() * k - f.u_total() + 1;
      o.expect(r.exact && r.best == want, where(f, k) + " best " + std::to_string(r.best) + " want " +
                                              std::to_string(want));
      const auto mz = enumerate_minimizers(f, k, f.u_total() * (k - 1));
      o.expect(mz.total == 1 && mz.sets.size() == 1 && mz.sets[0].elems() == progression(k),
               where(f, k) + " minimizers " + std::to_string(mz.total));
    }
  }
  // (1), (1,1), (1,2), (1,1,1), (1,1,2), (1,1,3), (1,2,2), (1,2,3), (1,2,4)
  o.expect(forms == 9, "expected 9 complete forms, got " + std::to_string(forms));
  o.detail = o.ok ? std::to_string(forms) + " complete forms" : o.detail;
  return o;
}

// Minimum over strictly increasing forms with u_m <= 6 equals the closed form, at (1,...,m).
Outcome ac3() {
  Outcome o;
  for (std::int64_t m = 2; m <= 3; ++m) {
    for (std::int64_t k = 1; k <= 5; ++k) {
      const auto want = (m * m + m) / 2 * k - (m * m + m - 2) / 2;
      std::int64_t min_best = -1;
      std::int64_t first_m_best = -1;
      for (const auto& f : normalized_forms(static_cast<std::size_t>(m), static_cast<std::size_t>(m), 6)) {
        if (!f.strictly_increasing()) continue;
        const auto r = compute_nf(f, k);
        o.expect(r.lower >= want, where(f, k) + " certified lower " + std::to_string(r.lower) + " < " +
                                      std::to_string(want));
        if (min_best < 0 || r.best < min_best) min_best = r.best;
        Vec first(static_cast<std::size_t>(m));
        for (std::int64_t j = 0; j < m; ++j) first[static_cast<std::size_t>(j)] = j + 1;
        if (f.coeffs() == first) {
          first_m_best = r.best;
          o.expect(r.exact, where(f, k) + " not certified exact");
        }
      }
      o.expect(min_best == want, "m=" + std::to_string(m) + " k=" + std::to_string(k) + " min " +
                                     std::to_string(min_best) + " want " + std::to_string(want));
      o.expect(first_m_best == want, "m=" + std::to_string(m) + " k=" + std::to_string(k) + " (1..m) gives " +
                                         std::to_string(first_m_best));
    }
  }
  return o;
}

// General binary forms: N_f(3) = 8 exact, certified lower bound for k = 4..6.
Outcome ac4() {
  Outcome o;
  for (const auto& raw : std::vector<Vec>{{1, 3}, {2, 3}, {1, 4}, {3, 4}, {2, 5}, {1, 5}}) {
    const auto f = normalize_form(raw);
    const auto r3 = compute_nf(f, 3);
    o.expect(r3.exact && r3.best == 8, where(f, 3) + " got [" + std::to_string(r3.lower) + ", " +
                                           std::to_string(r3.best) + "]");
    for (std::int64_t k = 4; k <= 6; ++k) {
      const auto want = k % 2 ? (7 * k - 5) / 2 : (7 * k - 6) / 2;
      const auto r = compute_nf(f, k);
      o.expect(r.lower >= want, where(f, k) + " certified lower " + std::to_string(r.lower) + " < " +
                                    std::to_string(want));
      o.expect(recompute_bound(r.certificate, k) == r.lower, where(f, k) + " certificate does not recheck");
    }
  }
  return o;
}

// Ternary N_f(2) table against subset sums, exhaustively to 16.
Outcome ac5() {
  Outcome o;
  std::size_t n = 0;
  for (const auto& f : normalized_forms(3, 3, 16)) {
    ++n;
    o.expect(ternary_nf2_table(f) == exact_nf2(f), format_coeffs(f) + " table " +
                                                       std::to_string(ternary_nf2_table(f)) + " vs " +
                                                       std::to_string(exact_nf2(f)));
  }
  if (o.ok) o.detail = std::to_string(n) + " ternary forms";
  return o;
}

void check_mf_witness(Outcome& o, const LinearForm& f, std::int64_t k, const MfResult& r) {
  o.expect(static_cast<std::int64_t>(r.witness.size()) == k, where(f, k) + " witness has wrong size");
  o.expect(static_cast<std::int64_t>(oracle::image_size(f.coeffs(), r.witness)) == r.value,
           where(f, k) + " witness image " + std::to_string(oracle::image_size(f.coeffs(), r.witness)) +
               " != M_f " + std::to_string(r.value));
}

// M_f: distinct subset sums give k^m, all-ones gives C(k+m-1, m), random sandwich.
Outcome ac6() {
  Outcome o;
  const auto dss = normalize_form({1, 2, 4});
  const Vec want{1, 8, 27, 64};
  for (std::int64_t k = 1; k <= 4; ++k) {
    const auto r = compute_mf(dss, k);
    o.expect(r.value == want[static_cast<std::size_t>(k - 1)], where(dss, k) + " M_f " + std::to_string(r.value));
    check_mf_witness(o, dss, k, r);
  }
  for (std::int64_t m = 1; m <= 4; ++m) {
    const auto ones = normalize_form(Vec(static_cast<std::size_t>(m), 1));
    for (std::int64_t k = 1; k <= 6; ++k) {
      const auto r = compute_mf(ones, k);
      o.expect(r.value == choose(k + m - 1, m), where(ones, k) + " M_f " + std::to_string(r.value));
      check_mf_witness(o, ones, k, r);
    }
  }
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<std::int64_t> pick_m(1, 4), pick_u(1, 12), pick_k(1, 6);
  for (int i = 0; i < 200; ++i) {
    const auto m = pick_m(rng);
    Vec raw(static_cast<std::size_t>(m));
    for (auto& u : raw) u = pick_u(rng);
    const auto f = normalize_form(raw);
    const auto k = pick_k(rng);
    const auto r = compute_mf(f, k);
    o.expect(choose(k, m) <= r.value && r.value <= ipow(k, m),
             where(f, k) + " M_f " + std::to_string(r.value) + " outside sandwich");
    check_mf_witness(o, f, k, r);
  }
  return o;
}

// Pruned search against unpruned enumeration, values and witness sets.
Outcome ac7() {
  Outcome o;
  std::size_t instances = 0;
  for (const auto& f : normalized_forms(1, 3, 4)) {
    for (std::int64_t k = 1; k <= 4; ++k) {
      for (std::int64_t d = k - 1; d <= 10; ++d) {
        const auto naive = oracle::naive_min(f.coeffs(), static_cast<std::size_t>(k), d);
        if (naive.best < 0) continue;  // no canonical k-set of diameter <= d
        ++instances;
        SearchConfig cfg;
        cfg.witness_cap = 1u << 20;
        const auto r = search_min(f, k, d, cfg);
        std::vector<Vec> got;
        for (const auto& w : r.witnesses) got.push_back(w.elems());
        const std::vector<Vec> expect(naive.witnesses.begin(), naive.witnesses.end());
        o.expect(r.found && r.best == naive.best, where(f, k) + " D=" + std::to_string(d) + " best " +
                                                      std::to_string(r.best) + " vs " +
                                                      std::to_string(naive.best));
        o.expect(got == expect && r.witness_count == expect.size(),
                 where(f, k) + " D=" + std::to_string(d) + " witness sets differ");
      }
    }
  }
  if (o.ok) o.detail = std::to_string(instances) + " instances";
  return o;
}

// Affine invariance, monotonicity in k, subset-sum symmetry, dual-path images, thread determinism.
Outcome ac8() {
  Outcome o;
  std::mt19937_64 rng(kSeed + 8);

  std::uniform_int_distribution<std::int64_t> pick_m(1, 4), pick_u(1, 9), pick_k(1, 6), pick_x(-20, 20),
      pick_c(-5, 5), pick_d(-50, 50);
  for (int i = 0; i < 1000; ++i) {
    Vec raw(static_cast<std::size_t>(pick_m(rng)));
    for (auto& u : raw) u = pick_u(rng);
    const auto f = normalize_form(raw);
    const auto k = static_cast<std::size_t>(pick_k(rng));
    std::set<std::int64_t> pts;
    while (pts.size() < k) pts.insert(pick_x(rng));
    const Vec a(pts.begin(), pts.end());
    std::int64_t c = 0;
    while (c == 0) c = pick_c(rng);
    const auto d = pick_d(rng);
    Vec b;
    for (auto x : a) b.push_back(c * x + d);
    o.expect(image(f, a).size() == image(f, b).size(),
             format_coeffs(f) + " A=" + str(a) + " c=" + std::to_string(c) + " d=" + std::to_string(d));
  }

  for (const auto& f : normalized_forms(1, 3, 4)) {
    // Both ends of the N_f bracket must increase strictly with k.
    std::int64_t prev_lower = 0, prev_best = 0, prev_m = 0;
    for (std::int64_t k = 1; k <= 5; ++k) {
      const auto n = compute_nf(f, k);
      const auto m = compute_mf(f, k).value;
      o.expect(n.lower > prev_lower, where(f, k) + " certified lower bound not strictly increasing");
      o.expect(n.best > prev_best, where(f, k) + " realized minimum not strictly increasing");
      o.expect(m > prev_m, where(f, k) + " M_f not strictly increasing");
      prev_lower = n.lower;
      prev_best = n.best;
      prev_m = m;
    }
  }

  for (const auto& f : normalized_forms(1, 5, 6)) {
    const auto s = subset_sums(f);
    for (std::int64_t v = 0; v <= f.u_total(); ++v)
      o.expect(s.contains(v) == s.contains(f.u_total() - v), format_coeffs(f) + " S not symmetric at " +
                                                                 std::to_string(v));
  }

  for (int i = 0; i < 300; ++i) {
    Vec raw(static_cast<std::size_t>(pick_m(rng)));
    for (auto& u : raw) u = pick_u(rng);
    const auto f = normalize_form(raw);
    const auto k = static_cast<std::size_t>(pick_k(rng));
    std::set<std::int64_t> pts;
    while (pts.size() < k) pts.insert(pick_x(rng) + 20);
    const Vec a(pts.begin(), pts.end());
    const auto lhs = image(f, a);
    const auto rhs = image_by_tuples(f, a);
    o.expect(lhs == rhs, format_coeffs(f) + " A=" + str(a) + " composition and tuple images differ");
    ImageSizer sizer(f);
    o.expect(sizer.size(a) == lhs.size(), format_coeffs(f) + " A=" + str(a) + " bitset size differs");
  }

  for (const auto& raw : std::vector<Vec>{{1, 3}, {2, 5}, {1, 2, 3}, {1, 1, 4}, {2, 3, 4}}) {
    const auto f = normalize_form(raw);
    std::string ref_nf, ref_spec;
    for (unsigned t : {1u, 2u, 8u}) {
      NfConfig cfg;
      cfg.search.threads = t;
      const auto nf = to_json(compute_nf(f, 4, cfg)).dump();
      const auto sp = to_json(spectrum(f, 3, 2 * f.u_total(), {t, 0})).dump();
      if (t == 1) {
        ref_nf = nf;
        ref_spec = sp;
      }
      o.expect(nf == ref_nf, format_coeffs(f) + " compute_nf differs at " + std::to_string(t) + " threads");
      o.expect(sp == ref_spec, format_coeffs(f) + " spectrum differs at " + std::to_string(t) + " threads");
    }
  }
  return o;
}

std::string run_scans(unsigned threads, std::size_t& candidates, std::size_t& contradictions,
                      std::size_t& inconclusive, std::size_t& findings) {
  std::ostringstream out;
  const ExploreConfig ec{threads, 0};
  auto record = [&](const std::vector<ScanFinding>& fs) {
    for (const auto& s : fs) {
      ++findings;
      candidates += s.status == ScanStatus::CandidateCounterexample;
      contradictions += s.status == ScanStatus::TheoremContradiction;
      inconclusive += s.status == ScanStatus::Inconclusive;
      out << to_json(s).dump() << "\n";
    }
  };
  for (std::int64_t k = 2; k <= 4; ++k) record(scan_completeness_converse(3, 5, k, std::nullopt, ec));
  for (std::int64_t k = 3; k <= 4; ++k) record(scan_ap_minimizer_converse(3, 5, k, std::nullopt, ec));
  return out.str();
}

// Both open-problem scans over m <= 3, coefficients <= 5, k <= 4, against the stored snapshot.
Outcome ac9() {
  Outcome o;
  std::size_t cand = 0, contra = 0, inconc = 0, n = 0;
  const auto text = run_scans(1, cand, contra, inconc, n);
  o.expect(cand == 0, std::to_string(cand) + " candidate counterexamples");
  o.expect(contra == 0, std::to_string(contra) + " theorem contradictions");

  std::size_t c2 = 0, t2 = 0, i2 = 0, n2 = 0;
  o.expect(run_scans(8, c2, t2, i2, n2) == text, "scan output depends on the thread count");

  if (g_write_snapshot) std::ofstream(kSnapshotPath) << text;
  std::ifstream in(kSnapshotPath);
  o.expect(static_cast<bool>(in), "missing snapshot " + kSnapshotPath + " (run with --write-snapshot)");
  std::stringstream stored;
  stored << in.rdbuf();
  o.expect(stored.str() == text, "scan output differs from " + kSnapshotPath);
  if (o.ok)
    o.detail = std::to_string(n) + " findings, 0 candidates, 0 contradictions, " + std::to_string(inconc) +
               " inconclusive";
  return o;
}

struct Criterion {
  const char* id;
  const char* name;
  double limit;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--write-snapshot") {
      g_write_snapshot = true;
    } else {
      std::cerr << "usage: acceptance [--write-snapshot]\n";
      return 2;
    }
  }

  const std::vector<Criterion> criteria{
      {"AC1", "binary exact values (1,1), (1,2)", kLimitAc1, ac1},
      {"AC2", "complete forms: Uk-U+1 and AP-only minimizers", kLimitAc2, ac2},
      {"AC3", "minimum over strictly increasing forms", kLimitAc3, ac3},
      {"AC4", "general binary forms", kLimitAc4, ac4},
      {"AC5", "ternary N_f(2) table", 0, ac5},
      {"AC6", "M_f values, sandwich and witnesses", 0, ac6},
      {"AC7", "pruned search equals naive enumeration", 0, ac7},
      {"AC8", "property suite", 0, ac8},
      {"AC9", "open-problem scans and snapshot", 0, ac9},
  };

  int failed = 0;
  double total = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    total += secs;
    bool pass = o.ok;
    std::string detail = o.detail;
    if (c.limit > 0 && secs > c.limit) {
      pass = false;
      detail = "over time limit" + (detail.empty() ? "" : "; " + detail);
    }
    failed += !pass;
    char timing[64];
    if (c.limit > 0)
      std::snprintf(timing, sizeof timing, "%7.2fs / %4.0fs", secs, c.limit);
    else
      std::snprintf(timing, sizeof timing, "%7.2fs        ", secs);
    std::cout << c.id << " " << (pass ? "PASS" : "FAIL") << " " << timing << "  " << c.name << " ["
              << o.checks << " checks]" << (detail.empty() ? "" : ": " + detail) << std::endl;
  }
  std::printf("%d of %zu criteria passed in %.2fs\n", static_cast<int>(criteria.size()) - failed, criteria.size(),
              total);
  return failed == 0 ? 0 : 1;
}
