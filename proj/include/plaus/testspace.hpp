#pragma once

// Test spaces: an outcome set together with a covering family of finite
// tests. An event is any subset of some test. Everything here is immutable
// after construction and kept in a canonical sorted order so that downstream
// reports are byte-deterministic.

#include <plaus/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace plaus {

/// Sorted, duplicate-free list of outcome ids. The canonical event form.
using Event = std::vector<std::string>;

class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

class CoverViolation : public ValidationError {
public:
  explicit CoverViolation(const std::string& outcome)
      : ValidationError("outcome in no test: " + outcome), outcome(outcome) {}
  std::string outcome;
};

class EmptyTest : public ValidationError {
public:
  EmptyTest() : ValidationError("empty test") {}
};

class DuplicateOutcomeId : public ValidationError {
public:
  explicit DuplicateOutcomeId(const std::string& id)
      : ValidationError("duplicate outcome id: " + id), outcome(id) {}
  std::string outcome;
};

class UnknownOutcomeInTest : public ValidationError {
public:
  explicit UnknownOutcomeInTest(const std::string& id)
      : ValidationError("test mentions unknown outcome: " + id), outcome(id) {}
  std::string outcome;
};

class UnknownOutcome : public ValidationError {
public:
  explicit UnknownOutcome(const std::string& id)
      : ValidationError("unknown outcome: " + id), outcome(id) {}
  std::string outcome;
};

class BadOutcomeId : public ValidationError {
public:
  explicit BadOutcomeId(const std::string& id)
      : ValidationError("outcome id must be a non-empty whitespace-free token: '" + id + "'") {}
};

class EmptyLabelList : public ValidationError {
public:
  EmptyLabelList() : ValidationError("label list is empty") {}
};

class EventExplosion : public std::runtime_error {
public:
  EventExplosion(Integer count, bool exact, std::size_t cap)
      : std::runtime_error("event count " + std::string(exact ? "" : ">= ") +
                           count.get_str() + " exceeds cap " + std::to_string(cap)),
        count(std::move(count)),
        exact(exact) {}
  Integer count;  // exact when `exact`, otherwise a lower bound
  bool exact;
};

inline Event make_event(std::vector<std::string> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return members;
}

inline bool is_subset(const Event& a, const Event& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline std::string event_label(const Event& e) {
  if (e.empty()) return "{}";
  std::string out = "{";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) out += ",";
    out += e[i];
  }
  return out + "}";
}

/// Orders events by (size, lexicographic members); the canonical scope order.
inline bool event_less(const Event& a, const Event& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

class TestSpace {
public:
  const std::vector<std::string>& outcomes() const { return outcomes_; }
  const std::vector<Event>& tests() const { return tests_; }

  bool has_outcome(const std::string& id) const {
    return std::binary_search(outcomes_.begin(), outcomes_.end(), id);
  }

  /// True iff members is a subset of some test.
  bool is_event(const Event& members) const {
    for (const auto& id : members)
      if (!has_outcome(id)) throw UnknownOutcome(id);
    for (const auto& t : tests_)
      if (is_subset(members, t)) return true;
    return false;
  }

  friend TestSpace validate_test_space(std::vector<std::string> outcomes,
                                       std::vector<Event> tests);

private:
  std::vector<std::string> outcomes_;
  std::vector<Event> tests_;
};

/// Canonicalizes and checks the test-space invariants: unique well-formed
/// outcome ids, non-empty tests over known outcomes, every outcome covered.
inline TestSpace validate_test_space(std::vector<std::string> outcomes,
                                     std::vector<Event> tests) {
  for (const auto& id : outcomes) {
    if (id.empty()) throw BadOutcomeId(id);
    for (char c : id)
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') throw BadOutcomeId(id);
  }
  std::sort(outcomes.begin(), outcomes.end());
  for (std::size_t i = 1; i < outcomes.size(); ++i)
    if (outcomes[i] == outcomes[i - 1]) throw DuplicateOutcomeId(outcomes[i]);

  for (auto& t : tests) {
    t = make_event(std::move(t));
    if (t.empty()) throw EmptyTest();
    for (const auto& id : t)
      if (!std::binary_search(outcomes.begin(), outcomes.end(), id))
        throw UnknownOutcomeInTest(id);
  }
  std::sort(tests.begin(), tests.end(), event_less);
  tests.erase(std::unique(tests.begin(), tests.end()), tests.end());

  std::set<std::string> covered;
  for (const auto& t : tests) covered.insert(t.begin(), t.end());
  for (const auto& id : outcomes)
    if (!covered.count(id)) throw CoverViolation(id);

  TestSpace ts;
  ts.outcomes_ = std::move(outcomes);
  ts.tests_ = std::move(tests);
  return ts;
}

inline bool is_event(const TestSpace& ts, const Event& members) {
  return ts.is_event(members);
}

/// Exact count of distinct events, by inclusion-exclusion over the tests:
/// |union of power sets| = sum over non-empty test subsets S of
/// (-1)^(|S|+1) * 2^|intersection of S|. Only used for small test families.
inline Integer count_events_exact(const TestSpace& ts) {
  const auto& tests = ts.tests();
  const std::size_t m = tests.size();
  Integer total = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << m); ++mask) {
    Event inter;
    bool first = true;
    for (std::size_t i = 0; i < m; ++i) {
      if (!(mask >> i & 1)) continue;
      if (first) {
        inter = tests[i];
        first = false;
      } else {
        Event next;
        std::set_intersection(inter.begin(), inter.end(), tests[i].begin(),
                              tests[i].end(), std::back_inserter(next));
        inter = std::move(next);
      }
      if (inter.empty()) break;
    }
    Integer term = 1;
    term <<= inter.size();
    if (__builtin_popcountll(mask) % 2 == 1)
      total += term;
    else
      total -= term;
  }
  return total;
}

constexpr std::size_t kDefaultEventCap = 4096;

/// All distinct events in (size, lex) order. Throws EventExplosion instead of
/// truncating when the count exceeds the cap. The reported count is exact for
/// up to 20 tests (inclusion-exclusion); beyond that it is a lower bound.
inline std::vector<Event> enumerate_events(const TestSpace& ts,
                                           std::size_t cap = kDefaultEventCap) {
  if (ts.tests().size() <= 20) {
    Integer count = count_events_exact(ts);
    if (count > static_cast<unsigned long>(cap))
      throw EventExplosion(count, /*exact=*/true, cap);
  }
  std::set<Event> seen;
  for (const auto& t : ts.tests()) {
    const std::size_t n = t.size();
    // Local finiteness bounds n; tests this large always blow the cap.
    if (n >= 63) throw EventExplosion(Integer(cap + 1), /*exact=*/false, cap);
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
      Event e;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1) e.push_back(t[i]);
      seen.insert(std::move(e));
      if (seen.size() > cap)
        throw EventExplosion(Integer(static_cast<unsigned long>(seen.size())),
                             /*exact=*/false, cap);
    }
  }
  std::vector<Event> events(seen.begin(), seen.end());
  std::sort(events.begin(), events.end(), event_less);
  return events;
}

/// Classical sample space: one test containing every outcome.
inline TestSpace make_classical(std::vector<std::string> labels) {
  if (labels.empty()) throw EmptyLabelList();
  Event all = make_event(labels);
  return validate_test_space(std::move(labels), {all});
}

/// The three-outcome, three-test space ({x,y,z}, {{x,y},{y,z},{z,x}}).
inline TestSpace make_triangle() {
  return validate_test_space({"x", "y", "z"}, {{"x", "y"}, {"y", "z"}, {"z", "x"}});
}

}  // namespace plaus
