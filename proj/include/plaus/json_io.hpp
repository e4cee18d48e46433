#pragma once

// JSON interchange. Input documents (test space, order, measure, stored
// violation certificates) and output reports. Every rational travels as a
// "p/q" string, never as a float; documents serialize through ordered_json
// with fixed key order, so identical inputs produce identical bytes.

#include <plaus/agreement.hpp>
#include <plaus/order.hpp>
#include <plaus/rational.hpp>
#include <plaus/testspace.hpp>

#include <json.hpp>

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace plaus {

using Json = nlohmann::ordered_json;

namespace detail {

inline const Json& require(const Json& j, const char* key, const char* doc) {
  if (!j.is_object()) throw ParseError(std::string(doc) + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string(doc) + ": missing key '" + key + "'");
  return *it;
}

inline std::vector<std::string> string_array(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + ": expected an array of strings");
  std::vector<std::string> out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_string()) throw ParseError(std::string(what) + ": expected an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

inline Rational rational_field(const Json& j, const char* what) {
  if (j.is_number_integer())
    return Rational(static_cast<long>(j.get<long long>()));
  if (!j.is_string())
    throw ParseError(std::string(what) + ": rationals must be \"p/q\" strings");
  return rational_from_string(j.get<std::string>());
}

}  // namespace detail

inline Json event_to_json(const Event& e) { return Json(e); }

inline Event event_from_json(const Json& j) {
  return make_event(detail::string_array(j, "event"));
}

inline Json space_to_json(const TestSpace& ts) {
  Json j;
  j["outcomes"] = ts.outcomes();
  Json tests = Json::array();
  for (const auto& t : ts.tests()) tests.push_back(event_to_json(t));
  j["tests"] = std::move(tests);
  return j;
}

inline TestSpace space_from_json(const Json& j) {
  std::vector<std::string> outcomes =
      detail::string_array(detail::require(j, "outcomes", "test space document"), "outcomes");
  const Json& jt = detail::require(j, "tests", "test space document");
  if (!jt.is_array()) throw ParseError("test space document: 'tests' must be an array");
  std::vector<Event> tests;
  tests.reserve(jt.size());
  for (const auto& t : jt) tests.push_back(Event(detail::string_array(t, "test")));
  return validate_test_space(std::move(outcomes), std::move(tests));
}

inline std::string rel_name(ComparisonRel rel) {
  switch (rel) {
    case ComparisonRel::Weak: return "weak";
    case ComparisonRel::Strict: return "strict";
    case ComparisonRel::Equiv: return "equiv";
  }
  throw std::logic_error("unknown comparison relation");
}

inline ComparisonRel rel_from_name(const std::string& name) {
  if (name == "weak") return ComparisonRel::Weak;
  if (name == "strict") return ComparisonRel::Strict;
  if (name == "equiv") return ComparisonRel::Equiv;
  throw ParseError("comparison 'rel' must be \"weak\", \"strict\" or \"equiv\", got \"" + name +
                   "\"");
}

inline std::string scope_name(ScopePolicy policy) {
  return policy == ScopePolicy::Full ? "full" : "active";
}

inline ScopePolicy scope_from_name(const std::string& name) {
  if (name == "active") return ScopePolicy::Active;
  if (name == "full") return ScopePolicy::Full;
  throw ParseError("'scope' must be \"active\" or \"full\", got \"" + name + "\"");
}

struct OrderDocument {
  TestSpace space;
  std::vector<Comparison> comparisons;
  ScopePolicy scope = ScopePolicy::Active;
};

inline Json comparison_to_json(const Comparison& c) {
  Json j;
  j["lhs"] = event_to_json(c.lhs);
  j["rhs"] = event_to_json(c.rhs);
  j["rel"] = rel_name(c.rel);
  return j;
}

inline Json order_document_to_json(const OrderDocument& doc) {
  Json j;
  j["space"] = space_to_json(doc.space);
  Json comps = Json::array();
  for (const auto& c : doc.comparisons) comps.push_back(comparison_to_json(c));
  j["comparisons"] = std::move(comps);
  j["scope"] = scope_name(doc.scope);
  return j;
}

inline OrderDocument order_document_from_json(const Json& j) {
  OrderDocument doc;
  doc.space = space_from_json(detail::require(j, "space", "order document"));
  const Json& jc = detail::require(j, "comparisons", "order document");
  if (!jc.is_array()) throw ParseError("order document: 'comparisons' must be an array");
  for (const auto& c : jc) {
    Comparison cmp;
    cmp.lhs = event_from_json(detail::require(c, "lhs", "comparison"));
    cmp.rhs = event_from_json(detail::require(c, "rhs", "comparison"));
    const Json& rel = detail::require(c, "rel", "comparison");
    if (!rel.is_string()) throw ParseError("comparison 'rel' must be a string");
    cmp.rel = rel_from_name(rel.get<std::string>());
    doc.comparisons.push_back(std::move(cmp));
  }
  if (auto it = j.find("scope"); it != j.end()) {
    if (!it->is_string()) throw ParseError("'scope' must be a string");
    doc.scope = scope_from_name(it->get<std::string>());
  }
  return doc;
}

/// Weights object keyed by outcome; every outcome of the space appears,
/// zeros included, so two equal measures serialize identically.
inline Json measure_to_json(const Measure& mu) {
  Json j = Json::object();
  for (const auto& x : mu.space.outcomes()) j[x] = to_string(mu.of_outcome(x));
  return j;
}

inline Measure measure_from_json(const TestSpace& ts, const Json& j) {
  if (!j.is_object()) throw ParseError("measure document: expected an object of weights");
  Measure mu;
  mu.space = ts;
  const auto& known = ts.outcomes();
  for (const auto& [x, w] : j.items()) {
    if (!std::binary_search(known.begin(), known.end(), x))
      throw ParseError("measure document: unknown outcome '" + x + "'");
    Rational r = detail::rational_field(w, "measure weight");
    if (r != 0) mu.weight[x] = r;
  }
  validate_measure(mu);
  return mu;
}

inline Json term_to_json(const WitnessTerm& t) {
  Json j;
  j["low"] = event_to_json(t.low);
  j["high"] = event_to_json(t.high);
  j["weight"] = to_string(t.weight);
  return j;
}

inline WitnessTerm term_from_json(const Json& j) {
  WitnessTerm t;
  t.low = event_from_json(detail::require(j, "low", "witness term"));
  t.high = event_from_json(detail::require(j, "high", "witness term"));
  t.weight = detail::rational_field(detail::require(j, "weight", "witness term"), "weight");
  return t;
}

inline Json terms_to_json(const std::vector<WitnessTerm>& terms) {
  Json arr = Json::array();
  for (const auto& t : terms) arr.push_back(term_to_json(t));
  return arr;
}

inline std::vector<WitnessTerm> terms_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("'terms' must be an array");
  std::vector<WitnessTerm> out;
  out.reserve(j.size());
  for (const auto& t : j) out.push_back(term_from_json(t));
  return out;
}

inline Json families_to_json(const WitnessFamilies& fam) {
  Json j;
  j["copies"] = fam.copies.get_str();
  Json fa = Json::array(), fb = Json::array();
  for (const auto& e : fam.family_a) fa.push_back(event_to_json(e));
  for (const auto& e : fam.family_b) fb.push_back(event_to_json(e));
  j["family_a"] = std::move(fa);
  j["family_b"] = std::move(fb);
  return j;
}

inline Json violation_to_json(const ArchimedeanViolation& v) {
  Json j;
  j["a"] = event_to_json(v.a);
  j["b"] = event_to_json(v.b);
  j["terms"] = terms_to_json(v.terms);
  j["families"] = families_to_json(v.families);
  return j;
}

/// Reads the portable core of a stored certificate — conclusion pair and
/// weighted terms — and re-expands the families from scratch.
inline ArchimedeanViolation violation_from_json(const Json& j) {
  ArchimedeanViolation v;
  v.a = event_from_json(detail::require(j, "a", "violation document"));
  v.b = event_from_json(detail::require(j, "b", "violation document"));
  v.terms = terms_from_json(detail::require(j, "terms", "violation document"));
  v.families = witness_families(v.terms, v.a, v.b);
  return v;
}

/// Fixed note attached to every report: how generators are oriented and
/// which conclusion pairs the violation scan covers.
inline Json convention_json() {
  Json j;
  j["generator_orientation"] = "e_high - e_low per weak pair (low, high)";
  j["violation_scan"] = "pairs (a, b) with (b, a) not weak";
  return j;
}

inline Json archimedean_report_to_json(const ArchimedeanReport& r) {
  Json j;
  j["kind"] = "archimedean_report";
  j["convention"] = convention_json();
  j["archimedean"] = r.archimedean;
  j["pairs_scanned"] = r.pairs_scanned;
  j["generator_count"] = r.generator_count;
  Json vs = Json::array();
  for (const auto& v : r.violations) vs.push_back(violation_to_json(v));
  j["violations"] = std::move(vs);
  return j;
}

inline std::string verdict_name(AgreementVerdict v) {
  switch (v) {
    case AgreementVerdict::Agrees: return "agrees";
    case AgreementVerdict::AlmostAgrees: return "almost_agrees";
    case AgreementVerdict::Fails: return "fails";
  }
  throw std::logic_error("unknown agreement verdict");
}

inline Json agreement_report_to_json(const AgreementReport& r) {
  Json j;
  j["kind"] = "agreement_report";
  j["convention"] = convention_json();
  j["mode"] = r.requested == AgreementMode::Agree ? "agree" : "almost";
  j["verdict"] = verdict_name(r.verdict);
  j["measure"] = measure_to_json(r.measure);
  Json vp = Json::array();
  for (const auto& p : r.violated_pairs) {
    Json e;
    e["a"] = event_to_json(p.a);
    e["b"] = event_to_json(p.b);
    e["direction"] = p.direction;
    vp.push_back(std::move(e));
  }
  j["violated_pairs"] = std::move(vp);
  return j;
}

inline Json agreeing_result_to_json(const AgreeingResult& r) {
  Json j;
  j["kind"] = "agreeing_result";
  j["convention"] = convention_json();
  switch (r.status) {
    case AgreeStatus::Agrees:
      j["status"] = "agrees";
      j["measure"] = measure_to_json(r.measure);
      j["margin"] = to_string(r.margin);
      break;
    case AgreeStatus::NotTotal:
      j["status"] = "not_total";
      j["incomparable"] = Json::array({event_to_json(r.incomparable->first),
                                       event_to_json(r.incomparable->second)});
      break;
    case AgreeStatus::NotArchimedean:
      j["status"] = "not_archimedean";
      j["violation"] = violation_to_json(*r.violation);
      break;
  }
  return j;
}

inline Json almost_agreeing_result_to_json(const AlmostAgreeingResult& r, const TestSpace& ts) {
  Json j;
  j["kind"] = "almost_agreeing_result";
  j["convention"] = convention_json();
  j["feasible"] = r.feasible;
  if (r.feasible) {
    j["measure"] = measure_to_json(r.measure);
  } else {
    Json ob;
    ob["target"] = "negated unit";
    ob["unit_test"] = event_to_json(ts.tests().front());
    ob["terms"] = terms_to_json(r.obstruction);
    j["obstruction"] = std::move(ob);
  }
  return j;
}

}  // namespace plaus
