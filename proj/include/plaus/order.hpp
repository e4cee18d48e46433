#pragma once

// Comparative plausibility orders over a scope of events. build_order closes
// user comparisons under the three plausibility axioms:
//   1. all tests are equivalent,
//   2. A subset of B implies A weakly below B,
//   3. the empty event lies strictly below every test,
// detecting strict cycles and axiom-3 violations with explicit witnesses.
// Orders are immutable after construction; weak/strict are dense bit
// matrices over the scope.

#include <plaus/rational.hpp>
#include <plaus/testspace.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace plaus {

enum class ComparisonRel { Weak, Strict, Equiv };
enum class ScopePolicy { Active, Full };

struct Comparison {
  Event lhs;
  Event rhs;
  ComparisonRel rel = ComparisonRel::Weak;
};

class NotAnEvent : public ValidationError {
public:
  explicit NotAnEvent(const Event& e)
      : ValidationError(event_label(e) + " is not an event of this test space"), event(e) {}
  Event event;
};

/// A strict cycle: events e_0, e_1, ..., e_k = e_0 where each step is a
/// single user comparison or axiom instance and at least one step is strict.
class InconsistentOrder : public std::runtime_error {
public:
  explicit InconsistentOrder(std::vector<Event> cycle_events)
      : std::runtime_error(describe(cycle_events)), cycle(std::move(cycle_events)) {}
  std::vector<Event> cycle;

private:
  static std::string describe(const std::vector<Event>& cyc) {
    std::string out = "order is inconsistent; strict cycle:";
    for (const auto& e : cyc) out += " " + event_label(e);
    return out;
  }
};

/// The closure derives T weakly below the empty event for some test T,
/// contradicting axiom 3. `chain` walks T down to the empty event one user
/// comparison or axiom instance at a time.
class Axiom3Violation : public std::runtime_error {
public:
  Axiom3Violation(Event test_event, std::vector<Event> chain_events)
      : std::runtime_error(describe(test_event, chain_events)),
        test(std::move(test_event)),
        chain(std::move(chain_events)) {}
  Event test;
  std::vector<Event> chain;

private:
  static std::string describe(const Event& t, const std::vector<Event>& chain) {
    std::string out = "test " + event_label(t) + " is forced weakly below the empty event:";
    for (const auto& e : chain) out += " " + event_label(e);
    return out;
  }
};

class EmptyMeasureList : public ValidationError {
public:
  EmptyMeasureList() : ValidationError("envelope requires at least one measure") {}
};

class BadMeasure : public ValidationError {
public:
  explicit BadMeasure(const std::string& what) : ValidationError(what) {}
};

namespace detail {

/// Square bit matrix with 64-bit row words; rows support in-place OR, which
/// is all the transitive closure needs.
class BitMatrix {
public:
  explicit BitMatrix(std::size_t n = 0)
      : n_(n), words_(n == 0 ? 1 : (n + 63) / 64), data_(n * words_, 0) {}

  std::size_t size() const { return n_; }

  bool get(std::size_t i, std::size_t j) const {
    return (data_[i * words_ + j / 64] >> (j % 64)) & 1u;
  }
  void set(std::size_t i, std::size_t j) { data_[i * words_ + j / 64] |= std::uint64_t(1) << (j % 64); }

  void or_row_into(std::size_t src, std::size_t dst) {
    const std::uint64_t* s = &data_[src * words_];
    std::uint64_t* d = &data_[dst * words_];
    for (std::size_t w = 0; w < words_; ++w) d[w] |= s[w];
  }

  void or_row_from(const BitMatrix& other, std::size_t src, std::size_t dst) {
    const std::uint64_t* s = &other.data_[src * other.words_];
    std::uint64_t* d = &data_[dst * words_];
    for (std::size_t w = 0; w < words_; ++w) d[w] |= s[w];
  }

  /// Reflexive-transitive closure (Warshall with word-parallel rows).
  void close() {
    for (std::size_t i = 0; i < n_; ++i) set(i, i);
    for (std::size_t k = 0; k < n_; ++k)
      for (std::size_t i = 0; i < n_; ++i)
        if (get(i, k)) or_row_into(k, i);
  }

  bool operator==(const BitMatrix& other) const {
    return n_ == other.n_ && data_ == other.data_;
  }

private:
  std::size_t n_, words_;
  std::vector<std::uint64_t> data_;
};

}  // namespace detail

class PlausibilityOrder {
public:
  PlausibilityOrder(TestSpace space, std::vector<Event> scope, ScopePolicy policy,
                    detail::BitMatrix weak, detail::BitMatrix strict)
      : space_(std::move(space)),
        scope_(std::move(scope)),
        policy_(policy),
        weak_(std::move(weak)),
        strict_(std::move(strict)) {}

  const TestSpace& space() const { return space_; }
  const std::vector<Event>& scope() const { return scope_; }
  ScopePolicy policy() const { return policy_; }
  std::size_t size() const { return scope_.size(); }
  const Event& event(std::size_t i) const { return scope_[i]; }

  std::size_t index_of(const Event& e) const {
    auto it = std::lower_bound(scope_.begin(), scope_.end(), e, event_less);
    if (it == scope_.end() || *it != e) throw NotAnEvent(e);
    return static_cast<std::size_t>(it - scope_.begin());
  }

  bool in_scope(const Event& e) const {
    auto it = std::lower_bound(scope_.begin(), scope_.end(), e, event_less);
    return it != scope_.end() && *it == e;
  }

  bool weak_at(std::size_t i, std::size_t j) const { return weak_.get(i, j); }
  bool strict_at(std::size_t i, std::size_t j) const { return strict_.get(i, j); }
  bool weak(const Event& a, const Event& b) const { return weak_.get(index_of(a), index_of(b)); }
  bool strict(const Event& a, const Event& b) const { return strict_.get(index_of(a), index_of(b)); }
  bool equiv_at(std::size_t i, std::size_t j) const { return weak_.get(i, j) && weak_.get(j, i); }

  /// The unit test used wherever a single designated test is needed; tests
  /// are stored sorted, so this is the lexicographically first one.
  const Event& designated_test() const { return space_.tests().front(); }

private:
  TestSpace space_;
  std::vector<Event> scope_;
  ScopePolicy policy_;
  detail::BitMatrix weak_, strict_;
};

struct Measure {
  TestSpace space;
  std::map<std::string, Rational> weight;  // absent outcomes weigh 0

  Rational of_outcome(const std::string& x) const {
    auto it = weight.find(x);
    return it == weight.end() ? Rational(0) : it->second;
  }

  Rational of_event(const Event& e) const {
    Rational sum(0);
    for (const auto& x : e) sum += of_outcome(x);
    return sum;
  }
};

/// Non-negative weights on known outcomes, summing to exactly 1 on every test.
inline void validate_measure(const Measure& m) {
  for (const auto& [x, w] : m.weight) {
    if (!m.space.has_outcome(x)) throw BadMeasure("measure weights unknown outcome " + x);
    if (w < 0) throw BadMeasure("measure weight of " + x + " is negative: " + to_string(w));
  }
  for (const auto& t : m.space.tests()) {
    Rational sum = m.of_event(t);
    if (sum != 1)
      throw BadMeasure("measure sums to " + to_string(sum) + " on test " + event_label(t));
  }
}

namespace detail {

inline std::vector<Event> assemble_scope(const TestSpace& ts,
                                         const std::vector<Event>& mentioned,
                                         ScopePolicy policy, std::size_t event_cap) {
  std::vector<Event> scope;
  if (policy == ScopePolicy::Full) {
    scope = enumerate_events(ts, event_cap);
  } else {
    scope.push_back(Event{});
    for (const auto& x : ts.outcomes()) scope.push_back(Event{x});
    for (const auto& t : ts.tests()) scope.push_back(t);
    for (const auto& e : mentioned) scope.push_back(e);
    std::sort(scope.begin(), scope.end(), event_less);
    scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
  }
  return scope;
}

/// One base edge = one user comparison or one axiom instance.
struct BaseEdges {
  std::vector<std::pair<std::size_t, std::size_t>> weak;    // includes strict
  std::vector<std::pair<std::size_t, std::size_t>> strict;  // user strict only
};

inline std::size_t scope_index(const std::vector<Event>& scope, const Event& e) {
  auto it = std::lower_bound(scope.begin(), scope.end(), e, event_less);
  return static_cast<std::size_t>(it - scope.begin());
}

/// Shortest base-edge path src -> dst (both known reachable), as events.
inline std::vector<Event> base_path(const std::vector<Event>& scope, const BaseEdges& edges,
                                    std::size_t src, std::size_t dst) {
  const std::size_t n = scope.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& [u, v] : edges.weak) adj[u].push_back(v);
  std::vector<std::size_t> prev(n, n);
  std::vector<bool> seen(n, false);
  std::queue<std::size_t> q;
  q.push(src);
  seen[src] = true;
  while (!q.empty()) {
    std::size_t u = q.front();
    q.pop();
    if (u == dst) break;
    for (std::size_t v : adj[u])
      if (!seen[v]) {
        seen[v] = true;
        prev[v] = u;
        q.push(v);
      }
  }
  std::vector<Event> path;
  for (std::size_t at = dst;; at = prev[at]) {
    path.push_back(scope[at]);
    if (at == src) break;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace detail

/// Closes `comparisons` under the plausibility axioms over the assembled
/// scope. Throws InconsistentOrder on a strict cycle and Axiom3Violation
/// when some test is forced weakly below the empty event.
inline PlausibilityOrder build_order(const TestSpace& ts,
                                     const std::vector<Comparison>& comparisons,
                                     ScopePolicy policy = ScopePolicy::Active,
                                     std::size_t event_cap = kDefaultEventCap) {
  std::vector<Comparison> canon;
  canon.reserve(comparisons.size());
  std::vector<Event> mentioned;
  for (const auto& c : comparisons) {
    Event l = make_event(c.lhs);
    Event r = make_event(c.rhs);
    if (!ts.is_event(l)) throw NotAnEvent(l);
    if (!ts.is_event(r)) throw NotAnEvent(r);
    mentioned.push_back(l);
    mentioned.push_back(r);
    canon.push_back(Comparison{std::move(l), std::move(r), c.rel});
  }

  std::vector<Event> scope = detail::assemble_scope(ts, mentioned, policy, event_cap);
  const std::size_t n = scope.size();

  detail::BaseEdges edges;
  for (const auto& c : canon) {
    std::size_t l = detail::scope_index(scope, c.lhs);
    std::size_t r = detail::scope_index(scope, c.rhs);
    edges.weak.emplace_back(l, r);
    if (c.rel == ComparisonRel::Equiv) edges.weak.emplace_back(r, l);
    if (c.rel == ComparisonRel::Strict) edges.strict.emplace_back(l, r);
  }
  // Axiom 2: subset pairs within scope.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && is_subset(scope[i], scope[j])) edges.weak.emplace_back(i, j);
  // Axiom 1: all tests equivalent (star through the first test closes it).
  std::size_t first_test = detail::scope_index(scope, ts.tests().front());
  for (const auto& t : ts.tests()) {
    std::size_t ti = detail::scope_index(scope, t);
    if (ti == first_test) continue;
    edges.weak.emplace_back(first_test, ti);
    edges.weak.emplace_back(ti, first_test);
  }

  detail::BitMatrix weak(n);
  for (const auto& [u, v] : edges.weak) weak.set(u, v);
  weak.close();

  // A user strict edge closing into a weak cycle is a contradiction
  // regardless of axiom 3, so it is diagnosed first.
  for (const auto& [u, v] : edges.strict)
    if (weak.get(v, u)) {
      std::vector<Event> cycle{scope[u]};
      std::vector<Event> back = detail::base_path(scope, edges, v, u);
      cycle.insert(cycle.end(), back.begin(), back.end());
      throw InconsistentOrder(std::move(cycle));
    }

  std::size_t empty_idx = detail::scope_index(scope, Event{});
  for (const auto& t : ts.tests()) {
    std::size_t ti = detail::scope_index(scope, t);
    if (weak.get(ti, empty_idx))
      throw Axiom3Violation(t, detail::base_path(scope, edges, ti, empty_idx));
  }

  // Axiom 3: the empty event strictly below every test.
  for (const auto& t : ts.tests())
    edges.strict.emplace_back(empty_idx, detail::scope_index(scope, t));

  // strict = weak-chain through at least one strict edge:
  // (i,j) strict iff some strict edge (u,v) has i -> u and v -> j weakly.
  detail::BitMatrix strict(n);
  for (const auto& [u, v] : edges.strict)
    for (std::size_t i = 0; i < n; ++i)
      if (weak.get(i, u)) strict.or_row_from(weak, v, i);

  return PlausibilityOrder(ts, std::move(scope), policy, std::move(weak), std::move(strict));
}

struct TotalityResult {
  bool total = true;
  std::optional<std::pair<Event, Event>> incomparable;
};

inline TotalityResult is_total(const PlausibilityOrder& order) {
  const std::size_t n = order.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!order.weak_at(i, j) && !order.weak_at(j, i))
        return TotalityResult{false, std::make_pair(order.event(i), order.event(j))};
  return TotalityResult{};
}

/// Possibility collapse: 0 for events weakly below the empty event, 1 for
/// the rest. Indexed parallel to order.scope().
inline std::vector<int> to_possibility(const PlausibilityOrder& order) {
  std::size_t empty_idx = order.index_of(Event{});
  std::vector<int> po(order.size(), 1);
  for (std::size_t i = 0; i < order.size(); ++i)
    if (order.weak_at(i, empty_idx)) po[i] = 0;
  return po;
}

namespace detail {

inline PlausibilityOrder order_from_values(const TestSpace& ts, std::vector<Event> scope,
                                           ScopePolicy policy,
                                           const std::vector<std::vector<Rational>>& values) {
  const std::size_t n = scope.size();
  BitMatrix weak(n), strict(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      bool all_le = true, some_lt = false;
      for (const auto& vals : values) {
        if (vals[i] > vals[j]) all_le = false;
        if (vals[i] < vals[j]) some_lt = true;
      }
      if (all_le) {
        weak.set(i, j);
        if (some_lt) strict.set(i, j);
      }
    }
  return PlausibilityOrder(ts, std::move(scope), policy, std::move(weak), std::move(strict));
}

}  // namespace detail

/// Order induced by exact comparison of event measures: A below B iff
/// mu(A) <= mu(B). Always total and consistent.
inline PlausibilityOrder order_from_measure(const Measure& mu,
                                            ScopePolicy policy = ScopePolicy::Active,
                                            std::size_t event_cap = kDefaultEventCap) {
  validate_measure(mu);
  std::vector<Event> scope = detail::assemble_scope(mu.space, {}, policy, event_cap);
  std::vector<std::vector<Rational>> values(1);
  values[0].reserve(scope.size());
  for (const auto& e : scope) values[0].push_back(mu.of_event(e));
  return detail::order_from_values(mu.space, std::move(scope), policy, values);
}

/// Intersection order of a family of measures: A below B iff every measure
/// says so; strict when additionally some measure is strictly below.
inline PlausibilityOrder envelope_order(const TestSpace& ts, const std::vector<Measure>& measures,
                                        ScopePolicy policy = ScopePolicy::Active,
                                        std::size_t event_cap = kDefaultEventCap) {
  if (measures.empty()) throw EmptyMeasureList();
  for (const auto& m : measures) {
    if (!(m.space.outcomes() == ts.outcomes()) || !(m.space.tests() == ts.tests()))
      throw BadMeasure("envelope measure lives on a different test space");
    validate_measure(m);
  }
  std::vector<Event> scope = detail::assemble_scope(ts, {}, policy, event_cap);
  std::vector<std::vector<Rational>> values(measures.size());
  for (std::size_t m = 0; m < measures.size(); ++m) {
    values[m].reserve(scope.size());
    for (const auto& e : scope) values[m].push_back(measures[m].of_event(e));
  }
  return detail::order_from_values(ts, std::move(scope), policy, values);
}

/// Re-emits the order's relations as comparisons (one per unordered pair),
/// suitable for feeding back through build_order.
inline std::vector<Comparison> emitted_comparisons(const PlausibilityOrder& order) {
  std::vector<Comparison> out;
  const std::size_t n = order.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (order.equiv_at(i, j))
        out.push_back({order.event(i), order.event(j), ComparisonRel::Equiv});
      else if (order.strict_at(i, j))
        out.push_back({order.event(i), order.event(j), ComparisonRel::Strict});
      else if (order.strict_at(j, i))
        out.push_back({order.event(j), order.event(i), ComparisonRel::Strict});
      else if (order.weak_at(i, j))
        out.push_back({order.event(i), order.event(j), ComparisonRel::Weak});
      else if (order.weak_at(j, i))
        out.push_back({order.event(j), order.event(i), ComparisonRel::Weak});
    }
  return out;
}

}  // namespace plaus
