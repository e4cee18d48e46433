#pragma once

// Finite-field modal test spaces. Outcomes are the projective points of
// F_p^d, tests are the unordered bases (d mutually independent points), and
// possibility of an outcome in a test is membership of the state outside the
// span of the other basis elements. Restricted to prime fields.

#include <plaus/testspace.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace plaus {

class NotPrime : public ValidationError {
public:
  explicit NotPrime(long p) : ValidationError("modulus is not prime: " + std::to_string(p)) {}
};

class DimensionTooSmall : public ValidationError {
public:
  explicit DimensionTooSmall(long d)
      : ValidationError("dimension must be >= 2, got " + std::to_string(d)) {}
};

class SpaceTooLarge : public ValidationError {
public:
  explicit SpaceTooLarge(const std::string& what) : ValidationError(what) {}
};

class StateNotInSpace : public ValidationError {
public:
  explicit StateNotInSpace(const std::string& what) : ValidationError(what) {}
};

namespace detail {

inline bool is_prime(long p) {
  if (p < 2) return false;
  for (long f = 2; f * f <= p; ++f)
    if (p % f == 0) return false;
  return true;
}

inline long mod_pow(long base, long exp, long mod) {
  long out = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1) out = out * base % mod;
    base = base * base % mod;
    exp >>= 1;
  }
  return out;
}

inline long mod_inverse(long a, long p) { return mod_pow(a % p, p - 2, p); }

/// Rank of a set of vectors over F_p, by Gaussian elimination.
inline std::size_t rank_mod_p(std::vector<std::vector<long>> rows, long p) {
  std::size_t rank = 0;
  const std::size_t dim = rows.empty() ? 0 : rows[0].size();
  for (std::size_t col = 0; col < dim && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] % p == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    long inv = mod_inverse(rows[rank][col], p);
    for (auto& v : rows[rank]) v = v * inv % p;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] % p == 0) continue;
      long factor = rows[r][col];
      for (std::size_t c = 0; c < dim; ++c)
        rows[r][c] = ((rows[r][c] - factor * rows[rank][c]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

/// Solves basis * coeffs = target over F_p. The basis must be independent.
inline std::vector<long> expand_in_basis(const std::vector<std::vector<long>>& basis,
                                         const std::vector<long>& target, long p) {
  const std::size_t d = basis.size();
  // Columns of the system are the basis vectors.
  std::vector<std::vector<long>> aug(d, std::vector<long>(d + 1));
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) aug[r][c] = basis[c][r] % p;
    aug[r][d] = target[r] % p;
  }
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    while (aug[pivot][col] == 0) ++pivot;
    std::swap(aug[col], aug[pivot]);
    long inv = mod_inverse(aug[col][col], p);
    for (auto& v : aug[col]) v = v * inv % p;
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col || aug[r][col] == 0) continue;
      long factor = aug[r][col];
      for (std::size_t c = 0; c <= d; ++c)
        aug[r][c] = ((aug[r][c] - factor * aug[col][c]) % p + p) % p;
    }
  }
  std::vector<long> coeffs(d);
  for (std::size_t r = 0; r < d; ++r) coeffs[r] = aug[r][d];
  return coeffs;
}

}  // namespace detail

struct ModalState {
  long p = 2;
  long d = 2;
  std::vector<long> coords;  // projective representative, first non-zero = 1

  /// Canonical label, e.g. "01" for (0,1) over F_2; dot-separated for p > 9.
  std::string label() const {
    std::string out;
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (p > 9 && i) out += ".";
      out += std::to_string(coords[i]);
    }
    return out;
  }
};

/// Normalizes a non-zero coordinate vector to the canonical projective
/// representative (first non-zero coordinate scaled to 1).
inline ModalState make_modal_state(long p, long d, std::vector<long> coords) {
  if (!detail::is_prime(p)) throw NotPrime(p);
  if (d < 2) throw DimensionTooSmall(d);
  if (static_cast<long>(coords.size()) != d)
    throw StateNotInSpace("state has wrong dimension");
  for (auto& c : coords) c = (c % p + p) % p;
  std::size_t lead = 0;
  while (lead < coords.size() && coords[lead] == 0) ++lead;
  if (lead == coords.size()) throw StateNotInSpace("state vector is zero");
  long inv = detail::mod_inverse(coords[lead], p);
  for (auto& c : coords) c = c * inv % p;
  return ModalState{p, d, std::move(coords)};
}

namespace detail {

inline std::vector<ModalState> projective_points(long p, long d) {
  // Canonical representatives directly: leading zeros, then a 1, then free
  // coordinates. Count is (p^d - 1) / (p - 1).
  std::vector<ModalState> points;
  for (long lead = 0; lead < d; ++lead) {
    long free = d - lead - 1;
    std::vector<long> tail(free, 0);
    while (true) {
      std::vector<long> coords(d, 0);
      coords[lead] = 1;
      for (long i = 0; i < free; ++i) coords[lead + 1 + i] = tail[i];
      points.push_back(ModalState{p, d, coords});
      long i = free - 1;
      while (i >= 0 && tail[i] == p - 1) tail[i--] = 0;
      if (i < 0) break;
      ++tail[i];
    }
  }
  return points;
}

}  // namespace detail

struct ModalCaps {
  std::size_t max_points = 512;
  std::size_t max_tests = 65536;
};

/// Test space of modal quantum theory over F_p in dimension d: projective
/// points as outcomes, unordered bases as tests.
inline TestSpace modal_test_space(long p, long d, const ModalCaps& caps = {}) {
  if (!detail::is_prime(p)) throw NotPrime(p);
  if (d < 2) throw DimensionTooSmall(d);

  Integer pd;
  mpz_ui_pow_ui(pd.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(d));
  Integer count = (pd - 1) / (p - 1);
  if (count > static_cast<unsigned long>(caps.max_points))
    throw SpaceTooLarge("projective point count " + count.get_str() + " exceeds cap " +
                        std::to_string(caps.max_points));

  std::vector<ModalState> points = detail::projective_points(p, d);
  std::vector<std::string> labels;
  labels.reserve(points.size());
  for (const auto& pt : points) labels.push_back(pt.label());

  // All d-subsets of points with independent representatives.
  std::vector<Event> tests;
  std::vector<std::size_t> pick(d);
  for (long i = 0; i < d; ++i) pick[i] = i;
  const std::size_t n = points.size();
  while (true) {
    std::vector<std::vector<long>> rows;
    rows.reserve(d);
    for (long i = 0; i < d; ++i) rows.push_back(points[pick[i]].coords);
    if (detail::rank_mod_p(rows, p) == static_cast<std::size_t>(d)) {
      Event t;
      for (long i = 0; i < d; ++i) t.push_back(labels[pick[i]]);
      tests.push_back(make_event(std::move(t)));
      if (tests.size() > caps.max_tests)
        throw SpaceTooLarge("test count exceeds cap " + std::to_string(caps.max_tests));
    }
    long i = d - 1;
    while (i >= 0 && pick[i] == n - d + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (long j = i + 1; j < d; ++j) pick[j] = pick[j - 1] + 1;
  }
  return validate_test_space(std::move(labels), std::move(tests));
}

/// Per-test possibility verdicts for one state: outcome x in test T is
/// possible iff the state has a non-zero coefficient on x when expanded in
/// the basis T.
struct PossibilityTable {
  TestSpace space;
  std::string state_label;
  // Parallel to space.tests(): outcome id -> possible.
  std::vector<std::map<std::string, bool>> verdicts;
};

inline PossibilityTable modal_possibility_table(long p, long d, const ModalState& state,
                                                const ModalCaps& caps = {}) {
  if (state.p != p || state.d != d) throw StateNotInSpace("state modulus/dimension mismatch");
  ModalState canon = make_modal_state(p, d, state.coords);
  TestSpace space = modal_test_space(p, d, caps);
  if (!space.has_outcome(canon.label()))
    throw StateNotInSpace("state " + canon.label() + " is not an outcome of the space");

  std::vector<ModalState> points = detail::projective_points(p, d);
  std::map<std::string, std::vector<long>> coords_by_label;
  for (const auto& pt : points) coords_by_label[pt.label()] = pt.coords;

  PossibilityTable table;
  table.state_label = canon.label();
  table.verdicts.reserve(space.tests().size());
  for (const auto& test : space.tests()) {
    std::vector<std::vector<long>> basis;
    basis.reserve(test.size());
    for (const auto& id : test) basis.push_back(coords_by_label.at(id));
    std::vector<long> coeffs = detail::expand_in_basis(basis, canon.coords, p);
    std::map<std::string, bool> row;
    for (std::size_t i = 0; i < test.size(); ++i) row[test[i]] = coeffs[i] != 0;
    table.verdicts.push_back(std::move(row));
  }
  table.space = std::move(space);
  return table;
}

struct ContextualConflict {
  std::string outcome;
  Event test_possible;    // a test where the outcome is possible
  Event test_impossible;  // a test where it is not
};

/// Result of collapsing a possibility table to a per-outcome assignment.
/// Contextuality is a legitimate outcome, not an error.
struct NoncontextualityResult {
  bool noncontextual = false;
  std::map<std::string, bool> assignment;       // set iff noncontextual
  std::vector<ContextualConflict> conflicts;    // set iff contextual
};

inline NoncontextualityResult noncontextual_possibility(const PossibilityTable& table) {
  NoncontextualityResult out;
  std::map<std::string, std::pair<bool, std::size_t>> first_seen;  // verdict, test index
  for (std::size_t t = 0; t < table.verdicts.size(); ++t) {
    for (const auto& [outcome, possible] : table.verdicts[t]) {
      auto it = first_seen.find(outcome);
      if (it == first_seen.end()) {
        first_seen.emplace(outcome, std::make_pair(possible, t));
      } else if (it->second.first != possible) {
        const auto& tests = table.space.tests();
        ContextualConflict c;
        c.outcome = outcome;
        c.test_possible = possible ? tests[t] : tests[it->second.second];
        c.test_impossible = possible ? tests[it->second.second] : tests[t];
        // Report each conflicting outcome once.
        bool dup = false;
        for (const auto& seen : out.conflicts) dup = dup || seen.outcome == outcome;
        if (!dup) out.conflicts.push_back(std::move(c));
      }
    }
  }
  if (out.conflicts.empty()) {
    out.noncontextual = true;
    for (const auto& [outcome, seen] : first_seen) out.assignment[outcome] = seen.first;
  }
  return out;
}

}  // namespace plaus
