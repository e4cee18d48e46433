#include <catch2/catch_amalgamated.hpp>
#include <plaus/testspace.hpp>

#include "support.hpp"

#include <algorithm>
#include <set>

using namespace plaus;

TEST_CASE("validation accepts the canonical examples", "[testspace]") {
  TestSpace tri = validate_test_space({"x", "y", "z"}, {{"x", "y"}, {"y", "z"}, {"z", "x"}});
  CHECK(tri.outcomes() == std::vector<std::string>{"x", "y", "z"});
  CHECK(tri.tests().size() == 3);

  TestSpace minimal = validate_test_space({"a"}, {{"a"}});
  CHECK(minimal.tests() == std::vector<Event>{{"a"}});
}

TEST_CASE("validation rejects malformed spaces", "[testspace]") {
  CHECK_THROWS_AS(validate_test_space({"a", "b"}, {{"a"}}), CoverViolation);
  CHECK_THROWS_AS(validate_test_space({"a"}, {{}}), EmptyTest);
  CHECK_THROWS_AS(validate_test_space({"a", "a"}, {{"a"}}), DuplicateOutcomeId);
  CHECK_THROWS_AS(validate_test_space({"a"}, {{"a", "b"}}), UnknownOutcomeInTest);
  CHECK_THROWS_AS(validate_test_space({"a b"}, {{"a b"}}), BadOutcomeId);
  CHECK_THROWS_AS(validate_test_space({""}, {{""}}), BadOutcomeId);
}

TEST_CASE("canonicalization sorts and deduplicates", "[testspace]") {
  TestSpace ts = validate_test_space({"c", "a", "b"}, {{"c", "a"}, {"a", "c"}, {"b"}});
  CHECK(ts.outcomes() == std::vector<std::string>{"a", "b", "c"});
  CHECK(ts.tests() == std::vector<Event>{{"b"}, {"a", "c"}});
}

TEST_CASE("event enumeration lists every subset of every test once", "[testspace]") {
  TestSpace tri = make_triangle();
  std::vector<Event> events = enumerate_events(tri);
  CHECK(events == std::vector<Event>{{}, {"x"}, {"y"}, {"z"}, {"x", "y"}, {"x", "z"}, {"y", "z"}});

  CHECK(enumerate_events(make_classical({"1", "2", "3", "4", "5"})).size() == 32);
}

TEST_CASE("event enumeration reports the count instead of exploding", "[testspace]") {
  std::vector<std::string> labels;
  for (int i = 1; i <= 20; ++i) labels.push_back("o" + std::to_string(i));
  TestSpace big = make_classical(labels);
  CHECK_THROWS_MATCHES(enumerate_events(big, 4096), EventExplosion,
                       Catch::Matchers::Predicate<EventExplosion>(
                           [](const EventExplosion& e) { return e.count == 1048576; }));
}

TEST_CASE("event enumeration output is closed downward", "[testspace]") {
  fixtures::Rng rng(7101);
  for (int i = 0; i < 10; ++i) {
    TestSpace ts = fixtures::random_space_with_measure(rng).space;
    std::vector<Event> events = enumerate_events(ts);
    std::set<Event> have(events.begin(), events.end());
    for (const auto& e : events)
      for (std::size_t drop = 0; drop < e.size(); ++drop) {
        Event sub = e;
        sub.erase(sub.begin() + static_cast<long>(drop));
        CHECK(have.count(sub) == 1);
      }
  }
}

TEST_CASE("event membership", "[testspace]") {
  TestSpace tri = make_triangle();
  CHECK(is_event(tri, {"x", "y"}));
  CHECK(is_event(tri, {"x", "z"}));
  CHECK(!is_event(tri, {"x", "y", "z"}));
  CHECK(is_event(tri, {}));
  CHECK_THROWS_AS(is_event(tri, {"w"}), UnknownOutcome);
}

TEST_CASE("every singleton is an event", "[testspace]") {
  fixtures::Rng rng(7102);
  for (int i = 0; i < 10; ++i) {
    TestSpace ts = fixtures::random_space_with_measure(rng).space;
    for (const auto& x : ts.outcomes()) CHECK(is_event(ts, {x}));
  }
}

TEST_CASE("classical space has a single all-outcome test", "[testspace]") {
  TestSpace kps = make_classical({"1", "2", "3", "4", "5"});
  CHECK(kps.tests() == std::vector<Event>{{"1", "2", "3", "4", "5"}});
  CHECK(make_classical({"a"}).tests() == std::vector<Event>{{"a"}});
  CHECK_THROWS_AS(make_classical({}), EmptyLabelList);
}

TEST_CASE("triangle factory matches its definition", "[testspace]") {
  TestSpace tri = make_triangle();
  CHECK(tri.outcomes() == std::vector<std::string>{"x", "y", "z"});
  CHECK(tri.tests() == std::vector<Event>{{"x", "y"}, {"x", "z"}, {"y", "z"}});
  for (const auto& t : tri.tests()) CHECK(t.size() == 2);
  CHECK(enumerate_events(tri).size() == 7);
}

TEST_CASE("event helpers normalize member lists", "[testspace]") {
  CHECK(make_event({"b", "a", "b"}) == Event{"a", "b"});
  CHECK(event_label({"a", "b"}) == "{a,b}");
  CHECK(event_label({}) == "{}");
  CHECK(event_less({"z"}, {"a", "b"}));
  CHECK(event_less({"a", "b"}, {"a", "c"}));
}
