#pragma once

// Brute-force reference procedures: bounded integer search for cone
// membership, direct family enumeration for the Archimedean condition, and
// the one-separation-per-pair averaged construction of an agreeing measure
// on top of Fourier-Motzkin elimination. None of this touches the simplex
// engine; overlap with the main decision path is limited to the basic
// vocabulary types.

#include <plaus/agreement.hpp>
#include <plaus/order.hpp>
#include <plaus/outcome_vector.hpp>
#include <plaus/rational.hpp>
#include <plaus/testspace.hpp>

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace plaus {

class TooManyGenerators : public std::runtime_error {
public:
  TooManyGenerators(std::size_t count, std::size_t cap)
      : std::runtime_error("exhaustive search over " + std::to_string(count) +
                           " generators, above the cap of " + std::to_string(cap)),
        generator_count(count),
        generator_cap(cap) {}
  std::size_t generator_count, generator_cap;
};

class SeparationFailed : public std::runtime_error {
public:
  SeparationFailed(Event a_, Event b_)
      : std::runtime_error("no monotone functional puts " + event_label(a_) +
                           " strictly below " + event_label(b_)),
        a(std::move(a_)),
        b(std::move(b_)) {}
  Event a, b;
};

struct OracleConfig {
  unsigned max_coefficient = 3;
  std::size_t max_family_length = 4;
  std::size_t max_events = 24;
};

/// True iff v decomposes as a non-negative integer combination of the
/// generators with every coefficient at most `bound`, after scaling v to
/// clear its denominators. Finding a combination proves cone membership;
/// not finding one at this bound decides nothing by itself.
inline bool brute_cone_membership(const std::vector<OutcomeVector>& generators,
                                  const OutcomeVector& v, unsigned bound) {
  constexpr std::size_t kGeneratorCap = 10;
  if (generators.size() > kGeneratorCap) throw TooManyGenerators(generators.size(), kGeneratorCap);

  Integer den(1);
  for (const auto& [x, c] : v.entries()) {
    (void)x;
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  }
  OutcomeVector target = Rational(den) * v;

  std::function<bool(std::size_t, const OutcomeVector&)> step =
      [&](std::size_t idx, const OutcomeVector& acc) -> bool {
    if (idx == generators.size()) return acc == target;
    OutcomeVector cur = acc;
    for (unsigned k = 0;; ++k) {
      if (step(idx + 1, cur)) return true;
      if (k == bound) return false;
      cur += generators[idx];
    }
  };
  return step(0, OutcomeVector{});
}

struct OracleViolation {
  Event a, b;                             // conclusion pair; (b,a) not weak
  std::vector<Event> family_a, family_b;  // premises in index order, conclusion last
};

/// Enumerates every family up to the configured total length: a multiset of
/// premise pairs (A_i, B_i) — weak or reflexive — plus one conclusion pair
/// (A, B) with (B, A) not weak, such that the combined outcome multisets of
/// the two sides coincide. Exhaustive within the bounds.
inline std::vector<OracleViolation> brute_archimedean(const PlausibilityOrder& order,
                                                      const OracleConfig& config = {}) {
  if (config.max_family_length < 1)
    throw std::invalid_argument("family length bound must be at least 1");
  if (order.size() > config.max_events) throw ScopeTooLarge(order.size(), config.max_events);

  const std::size_t n = order.size();
  const std::vector<std::string>& outcomes = order.space().outcomes();
  const std::size_t m = outcomes.size();
  auto xindex = [&](const std::string& x) {
    return static_cast<std::size_t>(
        std::lower_bound(outcomes.begin(), outcomes.end(), x) - outcomes.begin());
  };

  std::vector<std::vector<int>> cnt(n, std::vector<int>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& x : order.event(i)) cnt[i][xindex(x)] = 1;

  struct Premise {
    std::size_t i, j;
    std::vector<int> delta;  // cnt[i] - cnt[j]
  };
  std::vector<Premise> premises;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && !order.weak_at(i, j)) continue;
      Premise p{i, j, std::vector<int>(m, 0)};
      for (std::size_t x = 0; x < m; ++x) p.delta[x] = cnt[i][x] - cnt[j][x];
      premises.push_back(std::move(p));
    }

  std::vector<OracleViolation> found;
  const std::size_t max_premises = config.max_family_length - 1;
  std::vector<int> sum(m, 0);
  std::vector<std::size_t> chosen;

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || order.weak_at(b, a)) continue;
      std::vector<int> target(m, 0);
      for (std::size_t x = 0; x < m; ++x) target[x] = cnt[b][x] - cnt[a][x];

      std::function<void(std::size_t)> extend = [&](std::size_t start) {
        if (sum == target) {
          OracleViolation v;
          v.a = order.event(a);
          v.b = order.event(b);
          for (std::size_t p : chosen) {
            v.family_a.push_back(order.event(premises[p].i));
            v.family_b.push_back(order.event(premises[p].j));
          }
          v.family_a.push_back(v.a);
          v.family_b.push_back(v.b);
          found.push_back(std::move(v));
        }
        if (chosen.size() == max_premises) return;
        for (std::size_t p = start; p < premises.size(); ++p) {
          for (std::size_t x = 0; x < m; ++x) sum[x] += premises[p].delta[x];
          chosen.push_back(p);
          extend(p);
          chosen.pop_back();
          for (std::size_t x = 0; x < m; ++x) sum[x] -= premises[p].delta[x];
        }
      };
      extend(0);
    }
  return found;
}

namespace detail {

/// One inequality: sum(a.x) >= b, strict when flagged.
struct FMRow {
  std::vector<Rational> a;
  Rational b;
  bool strict = false;
};

inline void fm_normalize(FMRow& r) {
  for (const auto& c : r.a) {
    if (c == 0) continue;
    Rational scale = abs(c);
    for (auto& e : r.a) e /= scale;
    r.b /= scale;
    return;
  }
}

/// Fourier-Motzkin elimination with back-substitution: a satisfying point,
/// or nothing when the system is inconsistent.
inline std::optional<std::vector<Rational>> fm_solve(std::vector<FMRow> rows, std::size_t nvars) {
  std::vector<std::vector<FMRow>> lowers(nvars), uppers(nvars);
  for (std::size_t k = nvars; k-- > 0;) {
    std::vector<FMRow> kept;
    std::vector<FMRow> pos, neg;
    for (auto& r : rows) {
      if (r.a[k] > 0)
        pos.push_back(std::move(r));
      else if (r.a[k] < 0)
        neg.push_back(std::move(r));
      else
        kept.push_back(std::move(r));
    }
    std::set<std::pair<std::vector<Rational>, std::pair<Rational, bool>>> seen;
    for (auto& r : kept) {
      fm_normalize(r);
      seen.insert({r.a, {r.b, r.strict}});
    }
    for (const auto& p : pos)
      for (const auto& ng : neg) {
        FMRow combo;
        combo.a.assign(nvars, Rational(0));
        Rational pk = p.a[k], nk = -ng.a[k];
        for (std::size_t t = 0; t < k; ++t) combo.a[t] = nk * p.a[t] + pk * ng.a[t];
        combo.b = nk * p.b + pk * ng.b;
        combo.strict = p.strict || ng.strict;
        fm_normalize(combo);
        seen.insert({std::move(combo.a), {std::move(combo.b), combo.strict}});
      }
    rows.clear();
    for (const auto& [a, tail] : seen) rows.push_back(FMRow{a, tail.first, tail.second});
    lowers[k] = std::move(pos);
    uppers[k] = std::move(neg);
  }

  for (const auto& r : rows)
    if (r.b > 0 || (r.strict && r.b == 0)) return std::nullopt;

  std::vector<Rational> x(nvars, Rational(0));
  for (std::size_t k = 0; k < nvars; ++k) {
    bool has_lo = false, has_hi = false, lo_strict = false, hi_strict = false;
    Rational lo, hi;
    auto rest_of = [&](const FMRow& r) {
      Rational rest(0);
      for (std::size_t t = 0; t < k; ++t)
        if (r.a[t] != 0) rest += r.a[t] * x[t];
      return rest;
    };
    for (const auto& r : lowers[k]) {
      Rational bound = (r.b - rest_of(r)) / r.a[k];
      if (!has_lo || bound > lo) {
        lo = bound;
        lo_strict = r.strict;
        has_lo = true;
      } else if (bound == lo && r.strict) {
        lo_strict = true;
      }
    }
    for (const auto& r : uppers[k]) {
      Rational bound = (r.b - rest_of(r)) / r.a[k];  // a[k] < 0 flips the sense
      if (!has_hi || bound < hi) {
        hi = bound;
        hi_strict = r.strict;
        has_hi = true;
      } else if (bound == hi && r.strict) {
        hi_strict = true;
      }
    }
    if (has_lo && has_hi) {
      x[k] = lo == hi ? lo : (lo + hi) / 2;
    } else if (has_lo) {
      x[k] = lo_strict ? lo + 1 : lo;
    } else if (has_hi) {
      x[k] = hi_strict ? hi - 1 : hi;
    }
  }
  return x;
}

}  // namespace detail

/// Complete membership decision by elimination over the coefficient space:
/// lambda_i >= 0 with one pair of opposed inequalities per outcome pinning
/// sum(lambda_i g_i) = v exactly.
inline bool fm_cone_membership(const std::vector<OutcomeVector>& generators,
                               const OutcomeVector& v) {
  std::set<std::string> support;
  for (const auto& g : generators)
    for (const auto& [x, c] : g.entries()) {
      (void)c;
      support.insert(x);
    }
  for (const auto& [x, c] : v.entries()) {
    (void)c;
    support.insert(x);
  }

  const std::size_t ng = generators.size();
  std::vector<detail::FMRow> rows;
  for (std::size_t i = 0; i < ng; ++i) {
    detail::FMRow r;
    r.a.assign(ng, Rational(0));
    r.a[i] = 1;
    r.b = 0;
    rows.push_back(std::move(r));
  }
  for (const auto& x : support) {
    detail::FMRow ge;
    ge.a.assign(ng, Rational(0));
    for (std::size_t i = 0; i < ng; ++i) ge.a[i] = generators[i].at(x);
    ge.b = v.at(x);
    detail::FMRow le;
    le.a.assign(ng, Rational(0));
    for (std::size_t i = 0; i < ng; ++i) le.a[i] = -ge.a[i];
    le.b = -ge.b;
    rows.push_back(std::move(ge));
    rows.push_back(std::move(le));
  }
  return detail::fm_solve(std::move(rows), ng).has_value();
}

/// The per-pair construction: for every pair (A,B) with (B,A) not weak,
/// find one monotone functional with rho(e_B - e_A) >= 1, normalize it on
/// the designated test, and average the results across all pairs.
inline Measure averaged_agreeing_measure(const PlausibilityOrder& order) {
  TotalityResult tot = is_total(order);
  if (!tot.total) throw std::invalid_argument("averaged construction needs a total order");

  const std::vector<std::string>& outcomes = order.space().outcomes();
  const std::size_t m = outcomes.size();
  auto xindex = [&](const std::string& x) {
    return static_cast<std::size_t>(
        std::lower_bound(outcomes.begin(), outcomes.end(), x) - outcomes.begin());
  };
  const std::size_t n = order.size();

  std::vector<detail::FMRow> base;
  {
    std::set<std::vector<Rational>> seen;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || !order.weak_at(i, j)) continue;
        detail::FMRow r;
        r.a.assign(m, Rational(0));
        for (const auto& x : order.event(j)) r.a[xindex(x)] += 1;
        for (const auto& x : order.event(i)) r.a[xindex(x)] -= 1;
        r.b = 0;
        if (seen.insert(r.a).second) base.push_back(std::move(r));
      }
  }

  std::vector<Rational> acc(m, Rational(0));
  std::size_t separations = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || order.weak_at(j, i)) continue;
      std::vector<detail::FMRow> rows = base;
      detail::FMRow sep;
      sep.a.assign(m, Rational(0));
      for (const auto& x : order.event(j)) sep.a[xindex(x)] += 1;
      for (const auto& x : order.event(i)) sep.a[xindex(x)] -= 1;
      sep.b = 1;
      rows.push_back(std::move(sep));

      auto sol = detail::fm_solve(std::move(rows), m);
      if (!sol.has_value()) throw SeparationFailed(order.event(i), order.event(j));

      Rational unit(0);
      for (const auto& x : order.designated_test()) unit += (*sol)[xindex(x)];
      if (unit <= 0) throw std::logic_error("separating functional has non-positive unit value");
      for (std::size_t x = 0; x < m; ++x) acc[x] += (*sol)[x] / unit;
      ++separations;
    }

  if (separations == 0) throw std::logic_error("order has no strictly comparable pair");

  Measure mu;
  mu.space = order.space();
  for (std::size_t x = 0; x < m; ++x) {
    Rational w = acc[x] / Rational(static_cast<long>(separations));
    if (w != 0) mu.weight[outcomes[x]] = w;
  }
  validate_measure(mu);
  return mu;
}

}  // namespace plaus
