#pragma once

// Command-line front end. run_cli() takes the arguments after the program
// name and writes to the given streams, so it can be driven from tests.
//
// Exit codes: 0 ok, 1 verification failed, 2 bad input, 3 budget or capacity exceeded.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "linform/cache.hpp"
#include "linform/engine.hpp"
#include "linform/explorer.hpp"
#include "linform/json_io.hpp"
#include "linform/theory.hpp"

namespace linform {

namespace cli_detail {

inline int exit_code_for(ErrorCode code) {
  if (code == ErrorCode::Internal) return 1;
  return is_resource_error(code) ? 3 : 2;
}

inline void print_nf(std::ostream& out, const ExtremalResult& r) {
  if (r.exact)
    out << "N_f(" << r.k << ") = " << r.best << " (exact)\n";
  else
    out << "N_f(" << r.k << ") in [" << r.lower << ", " << r.best << "] (bracket)\n";
  out << "  form         " << format_coeffs(r.form) << "  U=" << r.form.u_total();
  if (r.form.raw_gcd() != 1) out << "  (input scaled by " << r.form.raw_gcd() << ")";
  out << "\n  certificate  " << to_string(r.certificate.kind) << " ell=" << r.certificate.ell
      << " lambda=" << r.certificate.lambda << " bound=" << r.certificate.bound << "\n";
  out << "  searched     diameter " << r.diameter << ", " << r.nodes << " nodes\n";
  out << "  witnesses   ";
  for (const auto& w : r.witnesses) out << " " << format_set(w);
  if (r.witnesses_truncated) out << " ... (" << r.witness_count << " total)";
  out << "\n";
}

}  // namespace cli_detail

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extremal functions of linear forms over finite integer sets", "linform"};
  app.require_subcommand(1);

  std::string coeffs_text;
  std::int64_t k = 0;
  std::optional<std::int64_t> diameter;
  std::int64_t ladder = 4;
  bool json = false;
  std::string cache_path;
  std::uint64_t budget = 0;
  std::string suite_name;
  std::int64_t max_m = 3, max_coeff = 4, max_k = 5;
  std::string problem = "completeness";

  auto add_form_opts = [&](CLI::App* sub) {
    sub->add_option("--coeffs", coeffs_text, "Comma-separated coefficients, e.g. 1,2,3")->required();
    sub->add_option("--k", k, "Set size")->required()->check(CLI::PositiveNumber);
  };

  auto* nf = app.add_subcommand("nf", "Certified N_f(k)");
  add_form_opts(nf);
  nf->add_option("--diameter", diameter, "Search diameter (default U*(k-1))");
  nf->add_option("--ladder", ladder, "Largest certified rung length")->capture_default_str();
  nf->add_flag("--json", json);
  nf->add_option("--cache", cache_path, "JSON-lines result cache");
  nf->add_option("--budget-nodes", budget, "Abort after this many search nodes (0 = unlimited)");

  auto* mf = app.add_subcommand("mf", "Exact M_f(k) with a g-adic witness");
  add_form_opts(mf);
  mf->add_flag("--json", json);

  auto* mins = app.add_subcommand("minimizers", "Minimizing k-sets up to affine equivalence");
  add_form_opts(mins);
  mins->add_option("--diameter", diameter);
  mins->add_option("--ladder", ladder)->capture_default_str();
  mins->add_option("--budget-nodes", budget);
  mins->add_flag("--json", json);

  auto* spec = app.add_subcommand("spectrum", "Achievable image sizes and their census");
  add_form_opts(spec);
  spec->add_option("--diameter", diameter);
  spec->add_option("--budget-nodes", budget);
  spec->add_flag("--json", json);

  auto* ver = app.add_subcommand("verify", "Check closed forms against the engine");
  ver->add_option("--suite", suite_name, "thm23 | thm31 | lem32 | thm41 | mf_bounds")->required();
  ver->add_option("--max-m", max_m)->capture_default_str();
  ver->add_option("--max-coeff", max_coeff)->capture_default_str();
  ver->add_option("--max-k", max_k)->capture_default_str();
  ver->add_option("--diameter", diameter);
  ver->add_option("--budget-nodes", budget);
  ver->add_flag("--json", json);

  auto* scan = app.add_subcommand("scan", "Search for counterexamples to completeness converses");
  scan->add_option("--problem", problem, "completeness | ap-minimizers")->capture_default_str();
  scan->add_option("--m", max_m, "Largest arity")->capture_default_str();
  scan->add_option("--max-coeff", max_coeff)->capture_default_str();
  scan->add_option("--k", k)->required();
  scan->add_option("--diameter", diameter);
  scan->add_option("--budget-nodes", budget);

  auto* dump = app.add_subcommand("cache-dump", "Print every readable cache record");
  dump->add_option("--cache", cache_path)->required();

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }

  auto warn = [&](const std::string& msg) { err << "warning: " << msg << "\n"; };

  try {
    if (nf->parsed()) {
      const auto f = parse_form(coeffs_text);
      NfConfig cfg;
      cfg.diameter = diameter;
      cfg.ladder_max_ell = ladder;
      cfg.search.node_budget = budget;
      const std::int64_t d = diameter.value_or(detail::default_diameter(f, k));
      std::optional<ExtremalResult> result;
      if (!cache_path.empty()) {
        ResultCache cache(cache_path, warn);
        if (auto hit = cache.find({f.coeffs(), k, d, ladder}))
          result = extremal_from_json(hit->result, f.raw_gcd());
      }
      if (!result) {
        result = compute_nf(f, k, cfg);
        if (!cache_path.empty()) ResultCache(cache_path, warn).append(make_cache_record(*result, ladder));
      }
      if (json)
        out << to_json(*result).dump() << "\n";
      else
        cli_detail::print_nf(out, *result);
      return 0;
    }
    if (mf->parsed()) {
      const auto f = parse_form(coeffs_text);
      const auto r = compute_mf(f, k);
      if (json) {
        out << to_json(r, f, k).dump() << "\n";
      } else {
        out << "M_f(" << k << ") = " << r.value << "\n";
        out << "  witness " << format_set(r.witness) << " (g = " << r.base << ")\n";
      }
      return 0;
    }
    if (mins->parsed()) {
      const auto f = parse_form(coeffs_text);
      NfConfig cfg;
      cfg.ladder_max_ell = ladder;
      cfg.search.node_budget = budget;
      const std::int64_t d = diameter.value_or(detail::default_diameter(f, k));
      const auto mz = enumerate_minimizers(f, k, d, cfg);
      if (json) {
        out << to_json(mz, f, k, d).dump() << "\n";
      } else {
        out << "[";
        for (std::size_t i = 0; i < mz.sets.size(); ++i) out << (i ? ", " : "") << format_set(mz.sets[i]);
        out << "]\n";
        if (mz.truncated) out << "(" << mz.total << " minimizers in total)\n";
      }
      return 0;
    }
    if (spec->parsed()) {
      const auto f = parse_form(coeffs_text);
      const std::int64_t d = diameter.value_or(std::max(detail::default_diameter(f, k), k - 1));
      const auto r = spectrum(f, k, d, {.node_budget = budget});
      if (json) {
        out << to_json(r).dump() << "\n";
      } else {
        out << "values [";
        for (std::size_t i = 0; i < r.values.size(); ++i) out << (i ? "," : "") << r.values[i];
        out << "]" << (r.is_interval ? " (interval)" : "") << "\n";
        for (const auto& [v, c] : r.census) out << "  |f(A)| = " << v << ": " << c << " sets\n";
        out << "  M_f(" << k << ") = " << r.mf_value << (r.mf_reached ? " reached" : " not reached")
            << " within diameter " << d << "\n";
      }
      return 0;
    }
    if (ver->parsed()) {
      const auto suite = suite_from_string(suite_name);
      SuiteBounds b{max_m, max_coeff, max_k, diameter};
      SearchConfig sc;
      sc.node_budget = budget;
      const auto rep = verify_suite(suite, b, sc);
      if (json) {
        out << to_json(rep).dump() << "\n";
      } else {
        out << "suite " << to_string(rep.suite) << ": " << (rep.passed ? "passed" : "FAILED") << " ("
            << rep.instances_checked << " instances, " << rep.mismatches.size() << " mismatches)\n";
        for (const auto& m : rep.mismatches)
          out << "  " << format_set(m.coeffs) << " k=" << m.k << " " << m.check << ": expected "
              << m.expected << ", got " << m.got << "\n";
      }
      return rep.passed ? 0 : 1;
    }
    if (scan->parsed()) {
      ExploreConfig ec{.node_budget = budget};
      std::vector<ScanFinding> findings;
      if (problem == "completeness")
        findings = scan_completeness_converse(max_m, max_coeff, k, diameter, ec);
      else if (problem == "ap-minimizers")
        findings = scan_ap_minimizer_converse(max_m, max_coeff, k, diameter, ec);
      else
        fail(ErrorCode::InvalidArgument, "unknown scan problem '" + problem + "'");
      for (const auto& s : findings) out << to_json(s).dump() << "\n";
      return 0;
    }
    if (dump->parsed()) {
      for (const auto& rec : ResultCache(cache_path, warn).load()) out << to_json(rec).dump() << "\n";
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return cli_detail::exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace linform
