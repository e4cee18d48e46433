#pragma once

// Shared fixtures for the test suite: the two canonical obstruction orders,
// a total completion of the second one, and seeded random generators for
// spaces, measures and consistent partial orders. Everything is
// deterministic given the RNG seed.

#include <plaus/agreement.hpp>
#include <plaus/order.hpp>
#include <plaus/testspace.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace fixtures {

using namespace plaus;

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// The triangle space with the possibility assignment that traps e_empty -
/// e_y in the cone: the x singleton collapses to the bottom, y and z to the
/// top.
inline std::vector<Comparison> triangle_possibility_comparisons() {
  return {{{"x"}, {}, ComparisonRel::Equiv},
          {{"y"}, {"x", "y"}, ComparisonRel::Equiv},
          {{"z"}, {"x", "y"}, ComparisonRel::Equiv}};
}

inline PlausibilityOrder triangle_possibility_order(ScopePolicy policy = ScopePolicy::Active) {
  return build_order(make_triangle(), triangle_possibility_comparisons(), policy);
}

inline TestSpace kps_space() { return make_classical({"1", "2", "3", "4", "5"}); }

/// Four strict comparisons on the five-outcome classical space whose
/// weighted sum cancels to zero: individually satisfiable, jointly not.
inline std::vector<Comparison> kps_comparisons() {
  return {{{"1", "3"}, {"4"}, ComparisonRel::Strict},
          {{"1", "4"}, {"2", "3"}, ComparisonRel::Strict},
          {{"3", "4"}, {"1", "5"}, ComparisonRel::Strict},
          {{"2", "5"}, {"1", "3", "4"}, ComparisonRel::Strict}};
}

inline PlausibilityOrder kps_order(ScopePolicy policy = ScopePolicy::Active) {
  return build_order(kps_space(), kps_comparisons(), policy);
}

/// A hand-built total completion of the four comparisons on their active
/// scope: every scope event gets a level respecting subset monotonicity,
/// and a chain of comparisons pins the whole preorder.
inline PlausibilityOrder kps_total_completion() {
  std::vector<std::pair<Event, int>> levels = {
      {{}, 0},           {{"1"}, 2},         {{"2"}, 2},      {{"3"}, 2},
      {{"4"}, 4},        {{"5"}, 4},         {{"1", "3"}, 3}, {{"1", "4"}, 5},
      {{"2", "3"}, 6},   {{"3", "4"}, 6},    {{"1", "5"}, 7}, {{"2", "5"}, 7},
      {{"1", "3", "4"}, 8}, {{"1", "2", "3", "4", "5"}, 9}};
  std::stable_sort(levels.begin(), levels.end(),
                   [](const auto& a, const auto& b) { return a.second < b.second; });
  std::vector<Comparison> chain;
  for (std::size_t i = 1; i < levels.size(); ++i)
    chain.push_back({levels[i - 1].first, levels[i].first,
                     levels[i - 1].second == levels[i].second ? ComparisonRel::Equiv
                                                              : ComparisonRel::Strict});
  return build_order(kps_space(), chain, ScopePolicy::Active);
}

/// A test space and an exact measure on it, built together: the first test
/// gets a random composition of 1, every later test reuses some already
/// weighted outcomes with total mass < 1 and spreads the remainder over
/// fresh ones. Occasional zero weights included.
struct SpaceWithMeasure {
  TestSpace space;
  Measure measure;
};

inline SpaceWithMeasure random_space_with_measure(Rng& rng, std::size_t max_outcomes = 6,
                                                  std::size_t max_tests = 4) {
  static const std::vector<std::string> pool = {"a", "b", "c", "d", "e", "f", "g", "h"};
  const std::size_t n = pick(rng, 2, max_outcomes);
  std::vector<std::string> labels(pool.begin(), pool.begin() + n);

  std::map<std::string, Rational> weight;
  std::vector<Event> tests;
  std::vector<std::string> pending = labels;
  std::shuffle(pending.begin(), pending.end(), rng);
  std::vector<std::string> weighted;

  auto spread = [&](const std::vector<std::string>& members, const Rational& mass) {
    std::vector<long> parts(members.size());
    long total = 0;
    for (auto& p : parts) {
      p = static_cast<long>(pick(rng, members.size() == 1 ? 1 : 0, 5));
      total += p;
    }
    if (total == 0) {
      parts[pick(rng, 0, parts.size() - 1)] = 1;
      total = 1;
    }
    for (std::size_t i = 0; i < members.size(); ++i)
      weight[members[i]] = Rational(mass * make_rational(parts[i], total));
  };

  const std::size_t want_tests = pick(rng, 1, max_tests);
  while (!pending.empty()) {
    std::vector<std::string> reused;
    Rational reused_mass(0);
    for (const auto& x : weighted)
      if (pick(rng, 0, 2) == 0) {
        Rational m = reused_mass + weight[x];
        if (m < 1) {
          reused.push_back(x);
          reused_mass = m;
        }
      }
    std::size_t tests_left = want_tests > tests.size() ? want_tests - tests.size() : 1;
    std::size_t take = tests_left <= 1 ? pending.size()
                                       : pick(rng, 1, std::max<std::size_t>(
                                                          1, pending.size() / tests_left + 1));
    take = std::min(take, pending.size());
    std::vector<std::string> fresh(pending.end() - static_cast<long>(take), pending.end());
    pending.resize(pending.size() - take);
    spread(fresh, Rational(1) - reused_mass);
    Event t = fresh;
    t.insert(t.end(), reused.begin(), reused.end());
    tests.push_back(make_event(std::move(t)));
    weighted.insert(weighted.end(), fresh.begin(), fresh.end());
  }

  // A few extra tests from existing outcomes whose mass happens to be 1.
  for (std::size_t attempt = 0; attempt < 6 && tests.size() < want_tests; ++attempt) {
    std::vector<std::string> subset;
    Rational mass(0);
    for (const auto& x : weighted)
      if (pick(rng, 0, 1) == 0) {
        subset.push_back(x);
        mass += weight[x];
      }
    if (mass == 1 && !subset.empty()) tests.push_back(make_event(std::move(subset)));
  }

  SpaceWithMeasure out;
  out.space = validate_test_space(labels, tests);
  out.measure.space = out.space;
  for (const auto& [x, w] : weight)
    if (w != 0) out.measure.weight[x] = w;
  validate_measure(out.measure);
  return out;
}

/// Random consistent order on a random space: repeatedly propose a random
/// comparison between scoped events and keep it whenever the closure stays
/// consistent.
struct RandomOrderResult {
  TestSpace space;
  std::vector<Comparison> comparisons;
  PlausibilityOrder order;
};

inline RandomOrderResult random_consistent_order(Rng& rng, std::size_t max_outcomes = 5,
                                                 std::size_t max_tests = 3,
                                                 std::size_t rounds = 8) {
  SpaceWithMeasure base = random_space_with_measure(rng, max_outcomes, max_tests);
  std::vector<Event> events = enumerate_events(base.space);
  std::vector<Comparison> kept;
  PlausibilityOrder order = build_order(base.space, kept, ScopePolicy::Active);
  for (std::size_t round = 0; round < rounds; ++round) {
    const Event& a = events[pick(rng, 0, events.size() - 1)];
    const Event& b = events[pick(rng, 0, events.size() - 1)];
    if (a == b) continue;
    ComparisonRel rel = static_cast<ComparisonRel>(pick(rng, 0, 2));
    kept.push_back({a, b, rel});
    try {
      order = build_order(base.space, kept, ScopePolicy::Active);
    } catch (const InconsistentOrder&) {
      kept.pop_back();
    } catch (const Axiom3Violation&) {
      kept.pop_back();
    }
  }
  return RandomOrderResult{base.space, kept, std::move(order)};
}

}  // namespace fixtures
