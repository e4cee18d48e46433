#pragma once

// The decision core: build the convex cone induced by a plausibility order,
// decide the Archimedean condition with family-of-events witnesses, and
// construct agreeing / almost-agreeing probability measures.
//
// Conventions (recorded in every emitted report):
//   - one generator e_B - e_A per weak pair (A,B), "higher minus lower";
//   - the Archimedean scan covers ordered pairs (A,B) with (B,A) not weak,
//     so both strictly-lower and incomparable conclusion pairs count;
//   - a pair (A,B) violates iff e_A - e_B lies in the cone; the reported
//     certificate minimizes total coefficient mass over the deduplicated
//     generator columns, and families expand it with N = lcm of the
//     coefficient denominators.

#include <plaus/cone.hpp>
#include <plaus/lp.hpp>
#include <plaus/order.hpp>
#include <plaus/outcome_vector.hpp>
#include <plaus/rational.hpp>
#include <plaus/testspace.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace plaus {

class ScopeTooLarge : public std::runtime_error {
public:
  ScopeTooLarge(std::size_t pairs, std::size_t cap)
      : std::runtime_error("pair scan needs " + std::to_string(pairs) +
                           " pairs, above the cap of " + std::to_string(cap)),
        pair_count(pairs),
        pair_cap(cap) {}
  std::size_t pair_count, pair_cap;
};

class NotACertificate : public std::runtime_error {
public:
  explicit NotACertificate(const std::string& what) : std::runtime_error(what) {}
};

struct ConeGenerator {
  OutcomeVector vec;  // e_high - e_low
  Event low, high;
};

struct ConeSystem {
  TestSpace space;
  std::vector<Event> scope;
  std::vector<ConeGenerator> generators;
  Event unit_test;
  OutcomeVector unit;                  // e_{unit_test}
  std::vector<std::string> universe;   // all outcomes, sorted
};

/// One generator per weak pair (A,B), A != B, in scope-index scan order.
inline ConeSystem build_cone(const PlausibilityOrder& order) {
  ConeSystem cone;
  cone.space = order.space();
  cone.scope = order.scope();
  cone.unit_test = order.designated_test();
  cone.unit = OutcomeVector::indicator(cone.unit_test);
  cone.universe = order.space().outcomes();

  const std::size_t n = order.size();
  std::vector<OutcomeVector> indicators;
  indicators.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    indicators.push_back(OutcomeVector::indicator(order.event(i)));

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !order.weak_at(i, j)) continue;
      ConeGenerator g;
      g.low = order.event(i);
      g.high = order.event(j);
      g.vec = indicators[j] - indicators[i];
      cone.generators.push_back(std::move(g));
    }
  return cone;
}

/// One term of a cone decomposition: weight * (e_high - e_low), with
/// (low, high) a weak pair of the order it was produced from.
struct WitnessTerm {
  Event low, high;
  Rational weight;
};

struct WitnessFamilies {
  std::vector<Event> family_a, family_b;  // premise lows/highs, then copies of a/b
  Integer copies;                         // N
};

/// Exact multiset equality of outcome occurrences across the two families.
inline bool verify_witness_families(const WitnessFamilies& w) {
  std::map<std::string, Integer> counts;
  for (const auto& e : w.family_a)
    for (const auto& x : e) counts[x] += 1;
  for (const auto& e : w.family_b)
    for (const auto& x : e) counts[x] -= 1;
  for (const auto& [x, c] : counts) {
    (void)x;
    if (c != 0) return false;
  }
  return w.family_a.size() == w.family_b.size();
}

/// Expands decomposition terms for e_a - e_b into two equal-multiset event
/// families: N*weight copies of each term's (low, high) pair, with N
/// clearing every denominator, then N copies of a and b appended.
inline WitnessFamilies witness_families(const std::vector<WitnessTerm>& terms, const Event& a,
                                        const Event& b) {
  OutcomeVector combo;
  for (const auto& t : terms) {
    if (t.weight <= 0) throw NotACertificate("non-positive decomposition weight");
    combo.add_scaled(OutcomeVector::indicator(t.high), t.weight);
    combo.add_scaled(OutcomeVector::indicator(t.low), -t.weight);
  }
  if (!(combo == OutcomeVector::indicator(a) - OutcomeVector::indicator(b)))
    throw NotACertificate("terms do not decompose e_" + event_label(a) + " - e_" +
                          event_label(b));

  Integer n_copies(1);
  for (const auto& t : terms)
    mpz_lcm(n_copies.get_mpz_t(), n_copies.get_mpz_t(), t.weight.get_den_mpz_t());

  WitnessFamilies w;
  w.copies = n_copies;
  for (const auto& t : terms) {
    Rational scaled = t.weight * Rational(n_copies);
    Integer reps = scaled.get_num();  // integral by choice of N
    for (Integer k(0); k < reps; ++k) {
      w.family_a.push_back(t.low);
      w.family_b.push_back(t.high);
    }
  }
  for (Integer k(0); k < n_copies; ++k) {
    w.family_a.push_back(a);
    w.family_b.push_back(b);
  }
  return w;
}

/// Coefficient-vector form, parallel to cone.generators.
inline WitnessFamilies witness_families(const ConeSystem& cone,
                                        const std::vector<Rational>& coefficients,
                                        const Event& a, const Event& b) {
  if (coefficients.size() != cone.generators.size())
    throw NotACertificate("coefficient count does not match generator count");
  std::vector<WitnessTerm> terms;
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    if (coefficients[i] < 0) throw NotACertificate("negative coefficient");
    if (coefficients[i] == 0) continue;
    terms.push_back({cone.generators[i].low, cone.generators[i].high, coefficients[i]});
  }
  return witness_families(terms, a, b);
}

struct ArchimedeanViolation {
  Event a, b;                      // e_a - e_b is in the cone; (b,a) not weak
  std::vector<WitnessTerm> terms;  // minimal-mass decomposition of e_a - e_b
  WitnessFamilies families;
};

/// Re-derives every claim of a violation from the order alone: each term's
/// pair is weak with positive weight, the terms sum to e_a - e_b, (b,a) is
/// not weak, and the expanded families have equal outcome multisets.
inline bool verify_violation(const PlausibilityOrder& order, const ArchimedeanViolation& v) {
  if (order.weak(v.b, v.a)) return false;
  OutcomeVector combo;
  for (const auto& t : v.terms) {
    if (t.weight <= 0) return false;
    if (!order.weak(t.low, t.high)) return false;
    combo.add_scaled(OutcomeVector::indicator(t.high), t.weight);
    combo.add_scaled(OutcomeVector::indicator(t.low), -t.weight);
  }
  if (!(combo == OutcomeVector::indicator(v.a) - OutcomeVector::indicator(v.b))) return false;
  return verify_witness_families(v.families);
}

struct ArchimedeanReport {
  bool archimedean = true;
  std::vector<ArchimedeanViolation> violations;  // in pair scan order
  std::size_t pairs_scanned = 0;
  std::size_t generator_count = 0;  // weak pairs (A,B), A != B
};

struct ScanOptions {
  std::size_t pair_cap = 1'000'000;
  unsigned threads = 1;
};

namespace detail {

inline std::vector<OutcomeVector> generator_vectors(const ConeSystem& cone) {
  std::vector<OutcomeVector> vecs;
  vecs.reserve(cone.generators.size());
  for (const auto& g : cone.generators) vecs.push_back(g.vec);
  return vecs;
}

/// Distinct generator columns of the order's cone. Weak pairs sharing one
/// difference vector share a column; the first pair (scan order) stands for
/// it. Feasibility questions only see vectors, so nothing is lost.
struct DedupedGenerators {
  std::vector<OutcomeVector> vectors;
  std::vector<std::pair<std::size_t, std::size_t>> rep_pair;
  std::size_t closure_count = 0;
};

inline Event event_difference(const Event& a, const Event& b) {
  Event out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline DedupedGenerators dedup_generators(const PlausibilityOrder& order) {
  DedupedGenerators out;
  const std::size_t n = order.size();
  std::map<std::pair<Event, Event>, std::size_t> seen;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !order.weak_at(i, j)) continue;
      ++out.closure_count;
      const Event& lo = order.event(i);
      const Event& hi = order.event(j);
      std::pair<Event, Event> key{event_difference(lo, hi), event_difference(hi, lo)};
      if (seen.find(key) != seen.end()) continue;
      seen.emplace(std::move(key), out.vectors.size());
      out.vectors.push_back(OutcomeVector::indicator(hi) - OutcomeVector::indicator(lo));
      out.rep_pair.emplace_back(i, j);
    }
  return out;
}

inline std::vector<WitnessTerm> terms_from_deduped(const PlausibilityOrder& order,
                                                   const DedupedGenerators& gens,
                                                   const std::vector<Rational>& coeffs) {
  std::vector<WitnessTerm> terms;
  for (std::size_t t = 0; t < coeffs.size(); ++t) {
    if (coeffs[t] == 0) continue;
    const auto& [i, j] = gens.rep_pair[t];
    terms.push_back({order.event(i), order.event(j), coeffs[t]});
  }
  return terms;
}

/// Decides all candidate pairs in one shot. The system {sum(lambda_g g) +
/// sum(mu_s d_s) = 0, lambda, mu >= 0, sum(mu) = 1} is infeasible exactly
/// when one functional separates every difference d_s at once — i.e. no
/// candidate pair is trapped; feasibility means at least one is.
inline std::optional<OutcomeVector> batch_scan_separator(
    const std::vector<std::string>& universe, const std::vector<OutcomeVector>& gen_vecs,
    const std::vector<OutcomeVector>& diffs) {
  if (diffs.empty()) return OutcomeVector{};
  LinearProgram lp;
  const std::size_t ng = gen_vecs.size();
  for (std::size_t i = 0; i < ng + diffs.size(); ++i)
    lp.add_var(VarSign::NonNegative, Rational(0));

  for (std::size_t r = 0; r < universe.size(); ++r) {
    const std::string& x = universe[r];
    std::vector<std::pair<std::size_t, Rational>> coeffs;
    for (std::size_t i = 0; i < ng; ++i) {
      Rational c = gen_vecs[i].at(x);
      if (c != 0) coeffs.emplace_back(i, std::move(c));
    }
    for (std::size_t s = 0; s < diffs.size(); ++s) {
      Rational c = diffs[s].at(x);
      if (c != 0) coeffs.emplace_back(ng + s, std::move(c));
    }
    lp.add_row(std::move(coeffs), Rel::Equal, Rational(0));
  }
  std::vector<std::pair<std::size_t, Rational>> norm;
  for (std::size_t s = 0; s < diffs.size(); ++s) norm.emplace_back(ng + s, Rational(1));
  lp.add_row(std::move(norm), Rel::Equal, Rational(1));

  LPResult sol = lp_solve(lp);
  if (sol.status != LPStatus::Infeasible) return std::nullopt;

  OutcomeVector rho;
  for (std::size_t r = 0; r < universe.size(); ++r)
    if (sol.dual[r] != 0) rho.set(universe[r], -sol.dual[r]);
  for (const auto& g : gen_vecs)
    if (dot(rho, g) < 0)
      throw CertificateError("batched separator fails a generator");
  for (const auto& d : diffs)
    if (dot(rho, d) <= 0)
      throw CertificateError("batched separator fails a candidate difference");
  return rho;
}

struct DiffVerdict {
  bool trapped = false;
  std::vector<Rational> coefficients;  // over the deduplicated columns
};

}  // namespace detail

struct OrderUnitResult {
  bool separated = false;
  OutcomeVector separator;             // separated: rho.g >= 0, rho.(-u) < 0
  std::vector<WitnessTerm> decomposition;  // otherwise: -u = sum of terms
};

/// Checks -u outside the cone; equivalently, whether any normalizable
/// monotone functional exists at all.
inline OrderUnitResult verify_order_unit(const ConeSystem& cone) {
  ConeResult r = cone_membership(detail::generator_vectors(cone), -cone.unit, cone.universe);
  OrderUnitResult out;
  out.separated = !r.in_cone;
  if (r.in_cone) {
    for (std::size_t i = 0; i < r.coefficients.size(); ++i) {
      if (r.coefficients[i] == 0) continue;
      out.decomposition.push_back(
          {cone.generators[i].low, cone.generators[i].high, r.coefficients[i]});
    }
  } else {
    out.separator = std::move(r.separator);
  }
  return out;
}

/// Scans every ordered pair (A,B) whose reversal is not a weak relation and
/// tests e_A - e_B for cone membership. One batched LP decides the clean
/// case outright; otherwise distinct difference vectors are resolved one LP
/// each, with separators found along the way soundly screening later
/// vectors. Verdicts are ground truth, so reports do not depend on the
/// thread count.
inline ArchimedeanReport check_archimedean(const PlausibilityOrder& order,
                                           const ScanOptions& opts = {}) {
  const std::size_t n = order.size();

  std::vector<std::pair<std::size_t, std::size_t>> scanned;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && !order.weak_at(j, i)) scanned.emplace_back(i, j);
  if (scanned.size() > opts.pair_cap) throw ScopeTooLarge(scanned.size(), opts.pair_cap);

  detail::DedupedGenerators gens = detail::dedup_generators(order);

  ArchimedeanReport report;
  report.pairs_scanned = scanned.size();
  report.generator_count = gens.closure_count;

  std::vector<OutcomeVector> indicators;
  indicators.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    indicators.push_back(OutcomeVector::indicator(order.event(i)));

  // Distinct candidate differences e_A - e_B, first-appearance order.
  std::vector<OutcomeVector> diff_vecs;
  std::vector<std::size_t> diff_of_pair(scanned.size());
  {
    std::map<std::pair<Event, Event>, std::size_t> seen;
    for (std::size_t k = 0; k < scanned.size(); ++k) {
      const auto& [i, j] = scanned[k];
      const Event& a = order.event(i);
      const Event& b = order.event(j);
      std::pair<Event, Event> key{detail::event_difference(a, b),
                                  detail::event_difference(b, a)};
      auto it = seen.find(key);
      if (it == seen.end()) {
        it = seen.emplace(std::move(key), diff_vecs.size()).first;
        diff_vecs.push_back(indicators[i] - indicators[j]);
      }
      diff_of_pair[k] = it->second;
    }
  }

  const std::vector<std::string>& universe = order.space().outcomes();
  {
    std::vector<OutcomeVector> negated;
    negated.reserve(diff_vecs.size());
    for (const auto& d : diff_vecs) negated.push_back(-d);
    if (detail::batch_scan_separator(universe, gens.vectors, negated).has_value())
      return report;  // one functional clears every candidate pair
  }

  std::vector<detail::DiffVerdict> verdicts(diff_vecs.size());
  auto scan_range = [&](std::size_t begin, std::size_t end) {
    std::vector<OutcomeVector> separators;
    for (std::size_t k = begin; k < end; ++k) {
      const OutcomeVector& v = diff_vecs[k];
      bool screened = false;
      for (const auto& rho : separators)
        if (dot(rho, v) < 0) {
          screened = true;
          break;
        }
      if (screened) continue;
      ConeResult r = cone_membership(gens.vectors, v, universe);
      if (r.in_cone) {
        verdicts[k].trapped = true;
        verdicts[k].coefficients = std::move(r.coefficients);
      } else {
        separators.push_back(std::move(r.separator));
      }
    }
  };

  unsigned threads = opts.threads == 0 ? 1 : opts.threads;
  if (threads <= 1 || diff_vecs.size() < 2 * threads) {
    scan_range(0, diff_vecs.size());
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk = (diff_vecs.size() + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      std::size_t begin = t * chunk;
      std::size_t end = std::min(diff_vecs.size(), begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(scan_range, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  for (std::size_t k = 0; k < scanned.size(); ++k) {
    const detail::DiffVerdict& verdict = verdicts[diff_of_pair[k]];
    if (!verdict.trapped) continue;
    const auto& [i, j] = scanned[k];
    ArchimedeanViolation viol;
    viol.a = order.event(i);
    viol.b = order.event(j);
    viol.terms = detail::terms_from_deduped(order, gens, verdict.coefficients);
    viol.families = witness_families(viol.terms, viol.a, viol.b);
    report.violations.push_back(std::move(viol));
  }
  report.archimedean = report.violations.empty();
  return report;
}

struct AlmostAgreeingResult {
  bool feasible = false;
  Measure measure;                      // feasible
  std::vector<WitnessTerm> obstruction; // otherwise: -e_T = sum of terms
};

/// A measure mapping every weak pair to <=, from the separator of -u;
/// infeasibility returns the decomposition certifying no such measure.
inline AlmostAgreeingResult find_almost_agreeing(const PlausibilityOrder& order) {
  detail::DedupedGenerators gens = detail::dedup_generators(order);
  OutcomeVector unit = OutcomeVector::indicator(order.designated_test());
  ConeResult r = cone_membership(gens.vectors, -unit, order.space().outcomes());
  AlmostAgreeingResult out;
  if (r.in_cone) {
    out.obstruction = detail::terms_from_deduped(order, gens, r.coefficients);
    return out;
  }
  Rational scale = dot(r.separator, unit);
  if (scale <= 0) throw CertificateError("separator of -u has non-positive unit value");
  out.feasible = true;
  out.measure.space = order.space();
  for (const auto& [x, w] : r.separator.entries()) out.measure.weight[x] = w / scale;
  validate_measure(out.measure);
  return out;
}

enum class AgreeStatus { Agrees, NotTotal, NotArchimedean };

struct AgreeingResult {
  AgreeStatus status = AgreeStatus::Agrees;
  Measure measure;                                      // Agrees
  Rational margin;                                      // Agrees: optimal t
  std::optional<std::pair<Event, Event>> incomparable;  // NotTotal
  std::optional<ArchimedeanViolation> violation;        // NotArchimedean
};

/// Measure agreeing with a total order, via one max-margin LP:
///   maximize t  s.t.  rho.g >= 0 (generators), rho.(e_B - e_A) >= t
///   (strictly-lower pairs), rho.u = 1, t <= 1.
/// Agreement maps one-directional pairs to strictly-less, so the margin
/// constraints cover every pair whose reversal is not weak. t > 0 yields
/// the measure; t = 0 pins a pair inside the cone and reports it with its
/// family witness.
inline AgreeingResult find_agreeing(const PlausibilityOrder& order) {
  AgreeingResult out;
  TotalityResult tot = is_total(order);
  if (!tot.total) {
    out.status = AgreeStatus::NotTotal;
    out.incomparable = tot.incomparable;
    return out;
  }

  const std::size_t n = order.size();
  detail::DedupedGenerators gens = detail::dedup_generators(order);
  const std::vector<std::string>& outcomes = order.space().outcomes();
  OutcomeVector unit = OutcomeVector::indicator(order.designated_test());

  {
    ConeResult r = cone_membership(gens.vectors, -unit, outcomes);
    if (r.in_cone) {
      out.status = AgreeStatus::NotArchimedean;
      ArchimedeanViolation viol;
      viol.a = Event{};
      viol.b = order.designated_test();
      viol.terms = detail::terms_from_deduped(order, gens, r.coefficients);
      viol.families = witness_families(viol.terms, viol.a, viol.b);
      out.violation = std::move(viol);
      return out;
    }
  }

  std::vector<OutcomeVector> indicators;
  indicators.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    indicators.push_back(OutcomeVector::indicator(order.event(i)));

  std::vector<std::pair<std::size_t, std::size_t>> strict_pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && !order.weak_at(j, i)) strict_pairs.emplace_back(i, j);

  std::vector<OutcomeVector> strict_diffs;  // e_B - e_A, distinct
  std::vector<std::size_t> diff_of_pair(strict_pairs.size());
  {
    std::map<std::pair<Event, Event>, std::size_t> seen;
    for (std::size_t k = 0; k < strict_pairs.size(); ++k) {
      const auto& [i, j] = strict_pairs[k];
      const Event& a = order.event(i);
      const Event& b = order.event(j);
      std::pair<Event, Event> key{detail::event_difference(a, b),
                                  detail::event_difference(b, a)};
      auto it = seen.find(key);
      if (it == seen.end()) {
        it = seen.emplace(std::move(key), strict_diffs.size()).first;
        strict_diffs.push_back(indicators[j] - indicators[i]);
      }
      diff_of_pair[k] = it->second;
    }
  }

  LinearProgram lp;
  std::vector<std::size_t> var_of_outcome;
  for (std::size_t x = 0; x < outcomes.size(); ++x)
    var_of_outcome.push_back(lp.add_var(VarSign::Free, Rational(0)));
  std::size_t t_var = lp.add_var(VarSign::Free, Rational(1));
  auto outcome_index = [&](const std::string& x) {
    return static_cast<std::size_t>(
        std::lower_bound(outcomes.begin(), outcomes.end(), x) - outcomes.begin());
  };
  auto vec_row = [&](const OutcomeVector& v) {
    std::vector<std::pair<std::size_t, Rational>> coeffs;
    for (const auto& [x, c] : v.entries()) coeffs.emplace_back(var_of_outcome[outcome_index(x)], c);
    return coeffs;
  };
  for (const auto& g : gens.vectors) lp.add_row(vec_row(g), Rel::GreaterEq, Rational(0));
  for (const auto& d : strict_diffs) {
    auto coeffs = vec_row(d);
    coeffs.emplace_back(t_var, Rational(-1));
    lp.add_row(std::move(coeffs), Rel::GreaterEq, Rational(0));
  }
  lp.add_row(vec_row(unit), Rel::Equal, Rational(1));
  lp.add_row({{t_var, Rational(1)}}, Rel::LessEq, Rational(1));

  LPResult sol = lp_solve_via_dual(lp);
  if (sol.status != LPStatus::Optimal)
    throw CertificateError("margin program must be solvable once -u is separated");

  if (sol.objective > 0) {
    out.status = AgreeStatus::Agrees;
    out.margin = sol.objective;
    out.measure.space = order.space();
    for (std::size_t x = 0; x < outcomes.size(); ++x)
      if (sol.primal[var_of_outcome[x]] != 0)
        out.measure.weight[outcomes[x]] = sol.primal[var_of_outcome[x]];
    validate_measure(out.measure);
    return out;
  }

  // Zero margin: at least one pair is trapped; report the first in scan
  // order, which is also the first violation check_archimedean reports.
  std::vector<std::optional<detail::DiffVerdict>> memo(strict_diffs.size());
  for (std::size_t k = 0; k < strict_pairs.size(); ++k) {
    std::size_t d = diff_of_pair[k];
    if (!memo[d].has_value()) {
      ConeResult r = cone_membership(gens.vectors, -strict_diffs[d], outcomes);
      detail::DiffVerdict verdict;
      verdict.trapped = r.in_cone;
      if (r.in_cone) verdict.coefficients = std::move(r.coefficients);
      memo[d] = std::move(verdict);
    }
    if (!memo[d]->trapped) continue;
    const auto& [i, j] = strict_pairs[k];
    out.status = AgreeStatus::NotArchimedean;
    ArchimedeanViolation viol;
    viol.a = order.event(i);
    viol.b = order.event(j);
    viol.terms = detail::terms_from_deduped(order, gens, memo[d]->coefficients);
    viol.families = witness_families(viol.terms, viol.a, viol.b);
    out.violation = std::move(viol);
    return out;
  }
  throw CertificateError("zero margin without a trapped pair");
}

enum class AgreementMode { Agree, Almost };
enum class AgreementVerdict { Agrees, AlmostAgrees, Fails };

struct ViolatedPair {
  Event a, b;
  std::string direction;  // weak_exceeds | strict_not_below | below_but_unordered
};

struct AgreementReport {
  AgreementMode requested = AgreementMode::Almost;
  AgreementVerdict verdict = AgreementVerdict::Fails;
  Measure measure;
  std::vector<ViolatedPair> violated_pairs;
};

/// Exhaustive exact check of a measure against the order. ALMOST: weak
/// pairs map to <=. AGREE: additionally strict pairs map to < and every
/// measure-<= pair is a weak relation.
inline AgreementReport verify_agreement(const PlausibilityOrder& order, const Measure& mu,
                                        AgreementMode mode) {
  validate_measure(mu);
  AgreementReport report;
  report.requested = mode;
  report.measure = mu;

  const std::size_t n = order.size();
  std::vector<Rational> value;
  value.reserve(n);
  for (std::size_t i = 0; i < n; ++i) value.push_back(mu.of_event(order.event(i)));

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (order.weak_at(i, j) && value[i] > value[j])
        report.violated_pairs.push_back({order.event(i), order.event(j), "weak_exceeds"});
      if (mode == AgreementMode::Agree) {
        if (order.strict_at(i, j) && !(value[i] < value[j]))
          report.violated_pairs.push_back({order.event(i), order.event(j), "strict_not_below"});
        if (value[i] <= value[j] && !order.weak_at(i, j))
          report.violated_pairs.push_back({order.event(i), order.event(j), "below_but_unordered"});
      }
    }

  if (!report.violated_pairs.empty())
    report.verdict = AgreementVerdict::Fails;
  else
    report.verdict =
        mode == AgreementMode::Agree ? AgreementVerdict::Agrees : AgreementVerdict::AlmostAgrees;
  return report;
}

}  // namespace plaus
