#pragma once

// JSON wire format. Keys are emitted in a fixed order and every number is an
// integer, so dump(parse(dump(x))) reproduces the same bytes.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "linform/engine.hpp"
#include "linform/explorer.hpp"
#include "linform/forms.hpp"
#include "linform/sets.hpp"
#include "linform/theory.hpp"

namespace linform {

using Json = nlohmann::ordered_json;

inline Json sets_to_json(const std::vector<KSet>& sets) {
  Json arr = Json::array();
  for (const auto& s : sets) arr.push_back(s.elems());
  return arr;
}

inline Json to_json(const LinearForm& f) { return Json{{"coeffs", f.coeffs()}}; }

inline Json to_json(const KSet& s) { return Json{{"set", s.elems()}}; }

inline Json to_json(const Certificate& c) {
  Json chain = Json::array();
  for (const auto& [ell, v] : c.chain) chain.push_back({ell, v});
  return Json{{"kind", to_string(c.kind)}, {"ell", c.ell}, {"lambda", c.lambda},
              {"bound", c.bound}, {"chain", chain}};
}

inline Certificate certificate_from_json(const Json& j) {
  Certificate c;
  c.kind = certificate_kind_from_string(j.at("kind").get<std::string>());
  c.ell = j.at("ell").get<std::int64_t>();
  c.lambda = j.at("lambda").get<std::int64_t>();
  c.bound = j.at("bound").get<std::int64_t>();
  for (const auto& p : j.at("chain")) c.chain.emplace_back(p.at(0).get<std::int64_t>(), p.at(1).get<std::int64_t>());
  return c;
}

inline Json to_json(const ExtremalResult& r) {
  return Json{{"coeffs", r.form.coeffs()},
              {"raw_gcd", r.form.raw_gcd()},
              {"k", r.k},
              {"diameter", r.diameter},
              {"lower", r.lower},
              {"certificate", to_json(r.certificate)},
              {"best", r.best},
              {"exact", r.exact},
              {"witnesses", sets_to_json(r.witnesses)},
              {"witness_count", r.witness_count},
              {"witnesses_truncated", r.witnesses_truncated},
              {"nodes", r.nodes}};
}

/// Rebuilds a result; the form is renormalized from "coeffs", so "raw_gcd" is
/// taken from the caller.
inline ExtremalResult extremal_from_json(const Json& j, std::int64_t raw_gcd = 1) {
  ExtremalResult r;
  std::vector<std::int64_t> coeffs = j.at("coeffs").get<std::vector<std::int64_t>>();
  for (auto& u : coeffs) u *= raw_gcd;
  r.form = normalize_form(coeffs);
  r.k = j.at("k").get<std::int64_t>();
  r.diameter = j.at("diameter").get<std::int64_t>();
  r.lower = j.at("lower").get<std::int64_t>();
  r.certificate = certificate_from_json(j.at("certificate"));
  r.best = j.at("best").get<std::int64_t>();
  r.exact = j.at("exact").get<bool>();
  for (const auto& w : j.at("witnesses")) r.witnesses.push_back(KSet::from_canonical(w.get<std::vector<std::int64_t>>()));
  r.witness_count = j.at("witness_count").get<std::uint64_t>();
  r.witnesses_truncated = j.at("witnesses_truncated").get<bool>();
  r.nodes = j.at("nodes").get<std::uint64_t>();
  return r;
}

inline Json to_json(const MfResult& r, const LinearForm& f, std::int64_t k) {
  return Json{{"coeffs", f.coeffs()}, {"raw_gcd", f.raw_gcd()}, {"k", k},
              {"value", r.value}, {"base", r.base}, {"witness", r.witness}};
}

inline Json to_json(const Minimizers& mz, const LinearForm& f, std::int64_t k, std::int64_t diameter) {
  return Json{{"coeffs", f.coeffs()}, {"k", k}, {"diameter", diameter},
              {"minimizers", sets_to_json(mz.sets)}, {"total", mz.total}, {"truncated", mz.truncated}};
}

inline Json to_json(const SpectrumReport& r) {
  Json census = Json::object();
  for (const auto& [v, c] : r.census) census[std::to_string(v)] = c;
  return Json{{"coeffs", r.form.coeffs()}, {"k", r.k}, {"diameter", r.diameter},
              {"values", r.values}, {"census", census}, {"is_interval", r.is_interval},
              {"mf_reached", r.mf_reached}, {"mf", r.mf_value}, {"sets", r.sets}};
}

inline Json to_json(const SuiteBounds& b) {
  Json j{{"max_m", b.max_m}, {"max_coeff", b.max_coeff}, {"max_k", b.max_k}};
  j["diameter"] = b.diameter ? Json(*b.diameter) : Json(nullptr);
  return j;
}

inline Json to_json(const VerificationReport& r) {
  Json mm = Json::array();
  for (const auto& m : r.mismatches)
    mm.push_back(Json{{"coeffs", m.coeffs}, {"k", m.k}, {"check", m.check},
                      {"expected", m.expected}, {"got", m.got}});
  return Json{{"suite", to_string(r.suite)}, {"bounds", to_json(r.bounds)},
              {"checked", r.instances_checked}, {"mismatches", mm}, {"passed", r.passed}};
}

inline Json to_json(const ScanFinding& s) {
  Json j{{"scan", to_string(s.kind)}, {"coeffs", s.form.coeffs()}, {"k", s.k},
         {"diameter", s.diameter}, {"observed_nf", {s.lower, s.best}}, {"exact", s.exact},
         {"predicted", s.predicted}, {"complete", s.complete}};
  if (s.minimizers) j["minimizers"] = *s.minimizers;
  if (s.all_ap) j["all_ap"] = *s.all_ap;
  j["status"] = to_string(s.status);
  return j;
}

}  // namespace linform
