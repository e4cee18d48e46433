#include <catch2/catch_amalgamated.hpp>
#include <plaus/agreement.hpp>
#include <plaus/json_io.hpp>
#include <plaus/oracle.hpp>

#include "support.hpp"

#include <set>

using namespace plaus;

namespace {

OutcomeVector ev(std::vector<std::string> members) { return OutcomeVector::indicator(members); }

bool has_generator(const ConeSystem& cone, const Event& low, const Event& high) {
  for (const auto& g : cone.generators)
    if (g.low == low && g.high == high && g.vec == ev(high) - ev(low)) return true;
  return false;
}

PlausibilityOrder rebuild_full(const PlausibilityOrder& order) {
  return build_order(order.space(), emitted_comparisons(order), ScopePolicy::Full);
}

}  // namespace

TEST_CASE("cone generators cover axiom and user pairs in both directions", "[agreement]") {
  ConeSystem cone = build_cone(fixtures::triangle_possibility_order());
  CHECK(cone.unit_test == Event{"x", "y"});
  CHECK(cone.unit == ev({"x", "y"}));
  CHECK(has_generator(cone, {}, {"x"}));
  CHECK(has_generator(cone, {}, {"y"}));
  CHECK(has_generator(cone, {"x", "y"}, {"y", "z"}));
  CHECK(has_generator(cone, {"y", "z"}, {"x", "y"}));
  CHECK(has_generator(cone, {"x"}, {"x", "y"}));
  for (const auto& g : cone.generators) CHECK(!g.vec.is_zero());
}

TEST_CASE("the axioms-only two-outcome cone has exactly five generators", "[agreement]") {
  ConeSystem cone = build_cone(build_order(make_classical({"1", "2"}), {}));
  REQUIRE(cone.generators.size() == 5);
  CHECK(has_generator(cone, {}, {"1"}));
  CHECK(has_generator(cone, {}, {"2"}));
  CHECK(has_generator(cone, {}, {"1", "2"}));
  CHECK(has_generator(cone, {"1"}, {"1", "2"}));
  CHECK(has_generator(cone, {"2"}, {"1", "2"}));
}

TEST_CASE("the negated unit stays separated for satisfiable orders", "[agreement]") {
  OrderUnitResult tri = verify_order_unit(build_cone(build_order(make_triangle(), {})));
  CHECK(tri.separated);
  CHECK(dot(tri.separator, ev({"x", "y"})) > 0);

  OrderUnitResult kps = verify_order_unit(build_cone(fixtures::kps_order()));
  CHECK(kps.separated);
}

TEST_CASE("the possibility collapse absorbs the negated unit", "[agreement]") {
  OrderUnitResult res =
      verify_order_unit(build_cone(fixtures::triangle_possibility_order()));
  REQUIRE(!res.separated);
  OutcomeVector sum;
  for (const auto& t : res.decomposition) {
    CHECK(t.weight > 0);
    sum.add_scaled(ev(t.high) - ev(t.low), t.weight);
  }
  CHECK(sum == -ev({"x", "y"}));
}

TEST_CASE("a cone closing both directions of the unit absorbs its negation", "[agreement]") {
  PlausibilityOrder base = build_order(make_classical({"1", "2"}), {});
  ConeSystem cone = build_cone(base);
  for (const auto& g : build_cone(base).generators)
    cone.generators.push_back(ConeGenerator{-g.vec, g.high, g.low});
  OrderUnitResult res = verify_order_unit(cone);
  REQUIRE(!res.separated);
  OutcomeVector sum;
  for (const auto& t : res.decomposition) {
    CHECK(t.weight > 0);
    sum.add_scaled(ev(t.high) - ev(t.low), t.weight);
  }
  CHECK(sum == -cone.unit);
}

TEST_CASE("possibility collapse on the triangle is caught with verified families",
          "[agreement]") {
  PlausibilityOrder order = fixtures::triangle_possibility_order();
  ArchimedeanReport report = check_archimedean(order);
  REQUIRE(!report.archimedean);
  REQUIRE(!report.violations.empty());
  for (const auto& v : report.violations) {
    CHECK(verify_violation(order, v));
    CHECK(verify_witness_families(v.families));
  }
  CHECK(report.pairs_scanned > 0);
  CHECK(report.generator_count > 0);
}

TEST_CASE("the four-comparison obstruction reproduces the canonical families",
          "[agreement]") {
  PlausibilityOrder order = fixtures::kps_order();
  ArchimedeanReport report = check_archimedean(order);
  REQUIRE(!report.archimedean);

  const ArchimedeanViolation* hit = nullptr;
  for (const auto& v : report.violations)
    if (v.a == Event{"2", "5"} && v.b == Event{"1", "3", "4"}) hit = &v;
  REQUIRE(hit != nullptr);

  REQUIRE(hit->terms.size() == 3);
  std::set<std::pair<Event, Event>> pairs;
  for (const auto& t : hit->terms) {
    CHECK(t.weight == 1);
    pairs.insert({t.low, t.high});
  }
  CHECK(pairs == std::set<std::pair<Event, Event>>{{{"1", "3"}, {"4"}},
                                                   {{"1", "4"}, {"2", "3"}},
                                                   {{"3", "4"}, {"1", "5"}}});

  CHECK(hit->families.copies == 1);
  CHECK(hit->families.family_a ==
        std::vector<Event>{{"1", "3"}, {"1", "4"}, {"3", "4"}, {"2", "5"}});
  CHECK(hit->families.family_b ==
        std::vector<Event>{{"4"}, {"2", "3"}, {"1", "5"}, {"1", "3", "4"}});
  CHECK(verify_violation(order, *hit));
}

TEST_CASE("measure-induced orders always pass the family scan", "[agreement]") {
  fixtures::Rng rng(60601);
  for (int i = 0; i < 30; ++i) {
    auto [space, mu] = fixtures::random_space_with_measure(rng);
    ArchimedeanReport report = check_archimedean(order_from_measure(mu, ScopePolicy::Full));
    CHECK(report.archimedean);
    CHECK(report.violations.empty());
  }
}

TEST_CASE("family expansion takes the least common multiple of denominators",
          "[agreement]") {
  std::vector<WitnessTerm> terms = {{{}, {"p"}, Rational(1, 2)},
                                    {{}, {"p"}, Rational(1, 2)},
                                    {{}, {"q"}, Rational(1, 3)},
                                    {{}, {"q"}, Rational(1, 3)},
                                    {{}, {"q"}, Rational(1, 3)}};
  WitnessFamilies fam = witness_families(terms, {"p", "q"}, {});
  CHECK(fam.copies == 6);
  // 6*(1/2) = 3 copies of each half term, 6*(1/3) = 2 of each third term.
  CHECK(fam.family_a.size() == 3 + 3 + 2 + 2 + 2 + 6);
  CHECK(fam.family_b.size() == fam.family_a.size());
  CHECK(verify_witness_families(fam));
}

TEST_CASE("degenerate one-step families stay multiset-equal", "[agreement]") {
  Event top{"x", "y"};
  WitnessFamilies fam = witness_families({{{}, top, Rational(1)}}, top, {});
  CHECK(fam.copies == 1);
  CHECK(fam.family_a == std::vector<Event>{{}, top});
  CHECK(fam.family_b == std::vector<Event>{top, {}});
  CHECK(verify_witness_families(fam));

  CHECK_THROWS_AS(witness_families({{{}, top, Rational(1)}}, Event{}, top), NotACertificate);
}

TEST_CASE("certificates with wrong sums or signs are rejected", "[agreement]") {
  Event top{"x", "y"};
  CHECK_THROWS_AS(witness_families({{{}, top, Rational(2)}}, top, Event{}), NotACertificate);
  CHECK_THROWS_AS(witness_families({{{}, top, Rational(-1)}}, top, Event{}), NotACertificate);
  CHECK_THROWS_AS(witness_families({{{}, top, Rational(0)}}, top, Event{}), NotACertificate);
}

TEST_CASE("violation verification re-derives every claim", "[agreement]") {
  PlausibilityOrder order = fixtures::kps_order();
  ArchimedeanViolation good = check_archimedean(order).violations.front();
  REQUIRE(verify_violation(order, good));

  ArchimedeanViolation swapped = good;
  std::swap(swapped.a, swapped.b);
  CHECK(!verify_violation(order, swapped));

  ArchimedeanViolation reweighted = good;
  reweighted.terms.front().weight += 1;
  CHECK(!verify_violation(order, reweighted));

  ArchimedeanViolation foreign = good;
  foreign.terms.front().low = Event{"2"};
  CHECK(!verify_violation(order, foreign));
}

TEST_CASE("pair scans respect the configured cap", "[agreement]") {
  ScanOptions tiny;
  tiny.pair_cap = 3;
  CHECK_THROWS_AS(check_archimedean(fixtures::kps_order(), tiny), ScopeTooLarge);
}

TEST_CASE("scan reports are identical across thread counts", "[agreement]") {
  for (int run = 0; run < 2; ++run) {
    PlausibilityOrder order =
        run == 0 ? fixtures::triangle_possibility_order() : fixtures::kps_order();
    ScanOptions sequential;
    ScanOptions parallel;
    parallel.threads = 4;
    Json a = archimedean_report_to_json(check_archimedean(order, sequential));
    Json b = archimedean_report_to_json(check_archimedean(order, parallel));
    CHECK(a.dump() == b.dump());
  }
}

TEST_CASE("no probability weighting satisfies the possibility collapse", "[agreement]") {
  AlmostAgreeingResult res = find_almost_agreeing(fixtures::triangle_possibility_order());
  REQUIRE(!res.feasible);
  OutcomeVector sum;
  PlausibilityOrder order = fixtures::triangle_possibility_order();
  for (const auto& t : res.obstruction) {
    CHECK(t.weight > 0);
    CHECK(order.weak(t.low, t.high));
    sum.add_scaled(ev(t.high) - ev(t.low), t.weight);
  }
  CHECK(sum == -ev({"x", "y"}));
}

TEST_CASE("axiom-only and measure-induced orders admit almost-agreeing weightings",
          "[agreement]") {
  PlausibilityOrder bare = build_order(make_triangle(), {});
  AlmostAgreeingResult res = find_almost_agreeing(bare);
  REQUIRE(res.feasible);
  CHECK(verify_agreement(bare, res.measure, AgreementMode::Almost).verdict ==
        AgreementVerdict::AlmostAgrees);

  Measure mu;
  mu.space = make_classical({"1", "2", "3"});
  mu.weight = {{"1", Rational(1, 6)}, {"2", Rational(1, 3)}, {"3", Rational(1, 2)}};
  PlausibilityOrder mo = order_from_measure(mu, ScopePolicy::Full);
  AlmostAgreeingResult mres = find_almost_agreeing(mo);
  REQUIRE(mres.feasible);
  CHECK(verify_agreement(mo, mres.measure, AgreementMode::Almost).verdict ==
        AgreementVerdict::AlmostAgrees);

  PlausibilityOrder trivial = build_order(make_classical({"1"}), {});
  AlmostAgreeingResult tres = find_almost_agreeing(trivial);
  REQUIRE(tres.feasible);
  CHECK(tres.measure.of_outcome("1") == 1);
}

TEST_CASE("perfect agreement needs totality", "[agreement]") {
  AgreeingResult res = find_agreeing(build_order(make_classical({"1", "2"}), {}));
  REQUIRE(res.status == AgreeStatus::NotTotal);
  REQUIRE(res.incomparable.has_value());
  CHECK(res.incomparable->first == Event{"1"});
  CHECK(res.incomparable->second == Event{"2"});
}

TEST_CASE("the triangle possibility order admits no agreeing measure", "[agreement]") {
  PlausibilityOrder order = fixtures::triangle_possibility_order();
  AgreeingResult res = find_agreeing(order);
  REQUIRE(res.status == AgreeStatus::NotArchimedean);
  REQUIRE(res.violation.has_value());
  CHECK(verify_violation(order, *res.violation));
}

TEST_CASE("the completed four-comparison order is trapped with the unit certificate",
          "[agreement]") {
  PlausibilityOrder total = fixtures::kps_total_completion();
  REQUIRE(is_total(total).total);
  for (const auto& c : fixtures::kps_comparisons()) CHECK(total.strict(c.lhs, c.rhs));

  AgreeingResult res = find_agreeing(total);
  REQUIRE(res.status == AgreeStatus::NotArchimedean);
  REQUIRE(res.violation.has_value());
  CHECK(verify_violation(total, *res.violation));

  ArchimedeanReport report = check_archimedean(total);
  const ArchimedeanViolation* hit = nullptr;
  for (const auto& v : report.violations)
    if (v.a == Event{"2", "5"} && v.b == Event{"1", "3", "4"}) hit = &v;
  REQUIRE(hit != nullptr);
  // The completion adds weak pairs, so the decomposition may be shorter
  // than the three-step one in the sparse order.
  REQUIRE(!hit->terms.empty());
  CHECK(verify_violation(total, *hit));
}

TEST_CASE("agreeing measures induce the source order on the full event lattice",
          "[agreement]") {
  Measure mu;
  mu.space = make_classical({"1", "2", "3"});
  mu.weight = {{"1", Rational(1, 6)}, {"2", Rational(1, 3)}, {"3", Rational(1, 2)}};
  PlausibilityOrder order = order_from_measure(mu, ScopePolicy::Full);
  AgreeingResult res = find_agreeing(order);
  REQUIRE(res.status == AgreeStatus::Agrees);
  CHECK(res.margin > 0);
  CHECK(verify_agreement(order, res.measure, AgreementMode::Agree).verdict ==
        AgreementVerdict::Agrees);

  PlausibilityOrder induced = order_from_measure(res.measure, ScopePolicy::Full);
  REQUIRE(induced.size() == order.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = 0; j < order.size(); ++j)
      CHECK(induced.weak_at(i, j) == order.weak_at(i, j));
}

TEST_CASE("weak-only chains still force strict separation in agreement mode",
          "[agreement]") {
  PlausibilityOrder order = build_order(
      make_classical({"1", "2"}), {{{"1"}, {"2"}, ComparisonRel::Weak}}, ScopePolicy::Active);
  AgreeingResult res = find_agreeing(order);
  REQUIRE(res.status == AgreeStatus::Agrees);
  CHECK(res.measure.of_outcome("1") < res.measure.of_outcome("2"));
  CHECK(res.measure.of_outcome("1") > 0);
  CHECK(verify_agreement(order, res.measure, AgreementMode::Agree).verdict ==
        AgreementVerdict::Agrees);
}

TEST_CASE("uniform weights fail the possibility collapse in both modes", "[agreement]") {
  PlausibilityOrder order = fixtures::triangle_possibility_order(ScopePolicy::Full);
  Measure uniform;
  uniform.space = make_triangle();
  uniform.weight = {{"x", Rational(1, 2)}, {"y", Rational(1, 2)}, {"z", Rational(1, 2)}};

  AgreementReport almost = verify_agreement(order, uniform, AgreementMode::Almost);
  CHECK(almost.verdict == AgreementVerdict::Fails);
  bool weak_exceeds_at_x = false;
  for (const auto& p : almost.violated_pairs)
    if (p.a == Event{"x"} && p.b == Event{} && p.direction == "weak_exceeds")
      weak_exceeds_at_x = true;
  CHECK(weak_exceeds_at_x);

  AgreementReport agree = verify_agreement(order, uniform, AgreementMode::Agree);
  CHECK(agree.verdict == AgreementVerdict::Fails);
  bool strict_tie = false;
  for (const auto& p : agree.violated_pairs)
    if (p.a == Event{"x"} && p.b == Event{"y"} && p.direction == "strict_not_below")
      strict_tie = true;
  CHECK(strict_tie);
}

TEST_CASE("orders induced by a measure agree with that measure", "[agreement]") {
  fixtures::Rng rng(60602);
  for (int i = 0; i < 25; ++i) {
    auto [space, mu] = fixtures::random_space_with_measure(rng);
    PlausibilityOrder order = order_from_measure(mu, ScopePolicy::Full);
    CHECK(verify_agreement(order, mu, AgreementMode::Agree).verdict ==
          AgreementVerdict::Agrees);
  }
}

TEST_CASE("family-scan success guarantees an almost-agreeing weighting", "[agreement]") {
  fixtures::Rng rng(60603);
  int archimedean_seen = 0;
  for (int i = 0; i < 40; ++i) {
    PlausibilityOrder order = fixtures::random_consistent_order(rng).order;
    ArchimedeanReport report = check_archimedean(order);
    AlmostAgreeingResult res = find_almost_agreeing(order);
    if (report.archimedean) {
      ++archimedean_seen;
      REQUIRE(res.feasible);
      PlausibilityOrder full = rebuild_full(order);
      CHECK(verify_agreement(full, res.measure, AgreementMode::Almost).verdict ==
            AgreementVerdict::AlmostAgrees);
    } else if (!res.feasible) {
      // Infeasibility certifies the scan's verdict: the negated unit
      // decomposes over weak pairs.
      CHECK(!report.violations.empty());
    }
  }
  CHECK(archimedean_seen > 5);
}

TEST_CASE("agreeing measures exist exactly for total family-scan-clean orders",
          "[agreement]") {
  fixtures::Rng rng(60604);
  int agrees_seen = 0;
  for (int i = 0; i < 40; ++i) {
    PlausibilityOrder order = fixtures::random_consistent_order(rng).order;
    AgreeingResult res = find_agreeing(order);
    if (res.status == AgreeStatus::Agrees) {
      ++agrees_seen;
      CHECK(is_total(order).total);
      CHECK(check_archimedean(order).archimedean);
      PlausibilityOrder full = rebuild_full(order);
      CHECK(verify_agreement(full, res.measure, AgreementMode::Agree).verdict ==
            AgreementVerdict::Agrees);
    } else if (res.status == AgreeStatus::NotArchimedean) {
      CHECK(!check_archimedean(order).archimedean);
      CHECK(verify_violation(order, *res.violation));
    }
  }
  CHECK(agrees_seen > 3);
}

TEST_CASE("single-program and per-pair-average constructions agree on feasibility",
          "[agreement]") {
  fixtures::Rng rng(60605);
  std::vector<PlausibilityOrder> orders;
  for (int i = 0; i < 12; ++i) {
    auto [space, mu] = fixtures::random_space_with_measure(rng, 5, 3);
    orders.push_back(order_from_measure(mu, ScopePolicy::Active));
  }
  for (int i = 0; i < 30; ++i) {
    PlausibilityOrder candidate = fixtures::random_consistent_order(rng, 4, 2, 6).order;
    if (is_total(candidate).total) orders.push_back(candidate);
  }
  REQUIRE(orders.size() >= 12);
  for (const PlausibilityOrder& order : orders) {
    AgreeingResult lp_path = find_agreeing(order);
    bool averaged_ok = true;
    Measure averaged;
    try {
      averaged = averaged_agreeing_measure(order);
    } catch (const SeparationFailed&) {
      averaged_ok = false;
    }
    CHECK((lp_path.status == AgreeStatus::Agrees) == averaged_ok);
    if (lp_path.status == AgreeStatus::Agrees && averaged_ok) {
      CHECK(verify_agreement(order, lp_path.measure, AgreementMode::Agree).verdict ==
            AgreementVerdict::Agrees);
      CHECK(verify_agreement(order, averaged, AgreementMode::Agree).verdict ==
            AgreementVerdict::Agrees);
    }
  }

  PlausibilityOrder kps_total = fixtures::kps_total_completion();
  CHECK(find_agreeing(kps_total).status == AgreeStatus::NotArchimedean);
  CHECK_THROWS_AS(averaged_agreeing_measure(kps_total), SeparationFailed);
}
