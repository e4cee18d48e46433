#pragma once

// Exact rational linear programming. A dense two-phase simplex over mpq with
// Bland's anti-cycling pivot rule, so every call terminates and every answer
// carries an exactly verifiable certificate:
//   OPTIMAL    -> primal + dual with equal objective values
//   INFEASIBLE -> Farkas multipliers
//   UNBOUNDED  -> feasible point + improving ray
// verify_lp_result re-checks any certificate using only rational arithmetic
// and never trusts solver internals.

#include <plaus/rational.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace plaus {

enum class Rel { LessEq, Equal, GreaterEq };
enum class VarSign { NonNegative, Free };
enum class LPStatus { Optimal, Infeasible, Unbounded };

class MalformedProblem : public std::runtime_error {
public:
  explicit MalformedProblem(const std::string& what) : std::runtime_error(what) {}
};

class CertificateError : public std::runtime_error {
public:
  explicit CertificateError(const std::string& what) : std::runtime_error(what) {}
};

struct LPConstraint {
  std::vector<std::pair<std::size_t, Rational>> coeffs;
  Rel rel = Rel::Equal;
  Rational rhs;
};

/// Maximization problem over named-by-index variables.
struct LinearProgram {
  std::vector<Rational> objective;
  std::vector<VarSign> signs;
  std::vector<LPConstraint> rows;

  std::size_t num_vars() const { return objective.size(); }

  std::size_t add_var(VarSign sign, Rational cost = Rational(0)) {
    objective.push_back(std::move(cost));
    signs.push_back(sign);
    return objective.size() - 1;
  }

  void add_row(std::vector<std::pair<std::size_t, Rational>> coeffs, Rel rel, Rational rhs) {
    rows.push_back(LPConstraint{std::move(coeffs), rel, std::move(rhs)});
  }
};

struct LPResult {
  LPStatus status = LPStatus::Infeasible;
  std::vector<Rational> primal;   // OPTIMAL: x*; UNBOUNDED: a feasible point
  Rational objective;             // OPTIMAL only
  std::vector<Rational> dual;     // OPTIMAL: duals; INFEASIBLE: Farkas multipliers
  std::vector<Rational> ray;      // UNBOUNDED: improving direction
};

namespace detail {

inline Rational row_dot(const LPConstraint& row, const std::vector<Rational>& x) {
  Rational sum(0);
  for (const auto& [j, a] : row.coeffs) sum += a * x[j];
  return sum;
}

/// Dense-ish accumulation of sum_i y_i * a_i over all rows.
inline std::vector<Rational> combine_rows(const LinearProgram& lp,
                                          const std::vector<Rational>& y) {
  std::vector<Rational> w(lp.num_vars(), Rational(0));
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    if (y[i] == 0) continue;
    for (const auto& [j, a] : lp.rows[i].coeffs) w[j] += y[i] * a;
  }
  return w;
}

inline void check_well_formed(const LinearProgram& lp) {
  if (lp.signs.size() != lp.objective.size())
    throw MalformedProblem("objective/sign size mismatch");
  for (const auto& row : lp.rows)
    for (const auto& [j, a] : row.coeffs) {
      (void)a;
      if (j >= lp.num_vars()) throw MalformedProblem("coefficient index out of range");
    }
}

}  // namespace detail

/// Exact certificate check; returns true iff the result proves its status
/// for this problem. Uses only rational comparisons and linear combinations.
inline bool verify_lp_result(const LinearProgram& lp, const LPResult& res) {
  detail::check_well_formed(lp);
  const std::size_t n = lp.num_vars();
  const std::size_t m = lp.rows.size();

  auto primal_feasible = [&](const std::vector<Rational>& x) {
    if (x.size() != n) return false;
    for (std::size_t j = 0; j < n; ++j)
      if (lp.signs[j] == VarSign::NonNegative && x[j] < 0) return false;
    for (const auto& row : lp.rows) {
      Rational lhs = detail::row_dot(row, x);
      if (row.rel == Rel::LessEq && lhs > row.rhs) return false;
      if (row.rel == Rel::Equal && lhs != row.rhs) return false;
      if (row.rel == Rel::GreaterEq && lhs < row.rhs) return false;
    }
    return true;
  };

  switch (res.status) {
    case LPStatus::Optimal: {
      if (res.dual.size() != m) return false;
      if (!primal_feasible(res.primal)) return false;
      // Dual feasibility for a maximization problem.
      for (std::size_t i = 0; i < m; ++i) {
        if (lp.rows[i].rel == Rel::LessEq && res.dual[i] < 0) return false;
        if (lp.rows[i].rel == Rel::GreaterEq && res.dual[i] > 0) return false;
      }
      std::vector<Rational> w = detail::combine_rows(lp, res.dual);
      for (std::size_t j = 0; j < n; ++j) {
        if (lp.signs[j] == VarSign::NonNegative && w[j] < lp.objective[j]) return false;
        if (lp.signs[j] == VarSign::Free && w[j] != lp.objective[j]) return false;
      }
      // Zero duality gap.
      Rational primal_obj(0);
      for (std::size_t j = 0; j < n; ++j) primal_obj += lp.objective[j] * res.primal[j];
      Rational dual_obj(0);
      for (std::size_t i = 0; i < m; ++i) dual_obj += res.dual[i] * lp.rows[i].rhs;
      return primal_obj == dual_obj && primal_obj == res.objective;
    }
    case LPStatus::Infeasible: {
      if (res.dual.size() != m) return false;
      for (std::size_t i = 0; i < m; ++i) {
        if (lp.rows[i].rel == Rel::LessEq && res.dual[i] > 0) return false;
        if (lp.rows[i].rel == Rel::GreaterEq && res.dual[i] < 0) return false;
      }
      std::vector<Rational> w = detail::combine_rows(lp, res.dual);
      for (std::size_t j = 0; j < n; ++j) {
        if (lp.signs[j] == VarSign::NonNegative && w[j] > 0) return false;
        if (lp.signs[j] == VarSign::Free && w[j] != 0) return false;
      }
      Rational rhs_combo(0);
      for (std::size_t i = 0; i < m; ++i) rhs_combo += res.dual[i] * lp.rows[i].rhs;
      return rhs_combo > 0;
    }
    case LPStatus::Unbounded: {
      if (!primal_feasible(res.primal)) return false;
      if (res.ray.size() != n) return false;
      for (std::size_t j = 0; j < n; ++j)
        if (lp.signs[j] == VarSign::NonNegative && res.ray[j] < 0) return false;
      for (const auto& row : lp.rows) {
        Rational drift = detail::row_dot(row, res.ray);
        if (row.rel == Rel::LessEq && drift > 0) return false;
        if (row.rel == Rel::Equal && drift != 0) return false;
        if (row.rel == Rel::GreaterEq && drift < 0) return false;
      }
      Rational gain(0);
      for (std::size_t j = 0; j < n; ++j) gain += lp.objective[j] * res.ray[j];
      return gain > 0;
    }
  }
  return false;
}

namespace detail {

/// Two-phase tableau simplex in equality standard form. Artificial columns
/// are kept through phase 2 (barred from entering): their tableau columns
/// are B^-1, which is what the dual/Farkas extraction reads off.
class SimplexTableau {
public:
  explicit SimplexTableau(const LinearProgram& lp) : lp_(lp) {
    check_well_formed(lp);
    build();
  }

  LPResult solve() {
    // Phase 1: maximize -sum(artificials).
    std::vector<Rational> phase1_cost(total_cols_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i) phase1_cost[art_start_ + i] = -1;
    cost_ = &phase1_cost;
    bar_artificials_ = false;
    Pivot outcome = optimize();
    if (outcome == Pivot::Unbounded)
      throw std::logic_error("phase 1 cannot be unbounded");
    if (objective_value() < 0) return extract_infeasible(phase1_cost);

    drive_out_artificials();

    // Phase 2: the real objective.
    std::vector<Rational> phase2_cost(total_cols_, Rational(0));
    for (std::size_t j = 0; j < lp_.num_vars(); ++j) {
      phase2_cost[pos_col_[j]] += lp_.objective[j];
      if (neg_col_[j] != kNone) phase2_cost[neg_col_[j]] -= lp_.objective[j];
    }
    cost_ = &phase2_cost;
    bar_artificials_ = true;
    outcome = optimize();
    if (outcome == Pivot::Unbounded) return extract_unbounded();
    return extract_optimal(phase2_cost);
  }

private:
  enum class Pivot { Optimal, Unbounded };
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  void build() {
    const std::size_t n = lp_.num_vars();
    pos_col_.assign(n, kNone);
    neg_col_.assign(n, kNone);
    std::size_t col = 0;
    for (std::size_t j = 0; j < n; ++j) {
      pos_col_[j] = col++;
      if (lp_.signs[j] == VarSign::Free) neg_col_[j] = col++;
    }
    slack_col_.assign(lp_.rows.size(), kNone);
    for (std::size_t i = 0; i < lp_.rows.size(); ++i)
      if (lp_.rows[i].rel != Rel::Equal) slack_col_[i] = col++;
    art_start_ = col;
    rows_ = lp_.rows.size();
    total_cols_ = col + rows_;

    tab_.assign(rows_, std::vector<Rational>(total_cols_ + 1, Rational(0)));
    row_flipped_.assign(rows_, false);
    basis_.assign(rows_, kNone);
    row_alive_.assign(rows_, true);

    for (std::size_t i = 0; i < rows_; ++i) {
      auto& row = tab_[i];
      for (const auto& [j, a] : lp_.rows[i].coeffs) {
        row[pos_col_[j]] += a;
        if (neg_col_[j] != kNone) row[neg_col_[j]] -= a;
      }
      if (slack_col_[i] != kNone)
        row[slack_col_[i]] = lp_.rows[i].rel == Rel::LessEq ? 1 : -1;
      row[total_cols_] = lp_.rows[i].rhs;
      if (row[total_cols_] < 0) {
        for (auto& v : row) v = -v;
        row_flipped_[i] = true;
      }
      row[art_start_ + i] = 1;
      basis_[i] = art_start_ + i;
    }
  }

  Rational reduced_cost(std::size_t col) const {
    Rational rc = (*cost_)[col];
    for (std::size_t i = 0; i < rows_; ++i) {
      if (!row_alive_[i]) continue;
      const Rational& cb = (*cost_)[basis_[i]];
      if (cb != 0 && tab_[i][col] != 0) rc -= cb * tab_[i][col];
    }
    return rc;
  }

  Rational objective_value() const {
    Rational z(0);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (!row_alive_[i]) continue;
      const Rational& cb = (*cost_)[basis_[i]];
      if (cb != 0) z += cb * tab_[i][total_cols_];
    }
    return z;
  }

  void pivot(std::size_t row, std::size_t col) {
    auto& prow = tab_[row];
    Rational inv = prow[col];
    for (auto& v : prow) v /= inv;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == row || !row_alive_[r]) continue;
      Rational factor = tab_[r][col];
      if (factor == 0) continue;
      auto& trow = tab_[r];
      for (std::size_t c = 0; c <= total_cols_; ++c)
        if (prow[c] != 0) trow[c] -= factor * prow[c];
    }
    basis_[row] = col;
  }

  /// Bland's rule: lowest-index entering column with positive reduced cost;
  /// lowest-index basic variable among min-ratio ties.
  Pivot optimize() {
    while (true) {
      std::size_t enter = kNone;
      for (std::size_t j = 0; j < total_cols_; ++j) {
        if (bar_artificials_ && j >= art_start_) break;
        if (is_basic(j)) continue;
        if (reduced_cost(j) > 0) {
          enter = j;
          break;
        }
      }
      if (enter == kNone) return Pivot::Optimal;

      std::size_t leave = kNone;
      Rational best_ratio;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (!row_alive_[r] || tab_[r][enter] <= 0) continue;
        Rational ratio = tab_[r][total_cols_] / tab_[r][enter];
        if (leave == kNone || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave == kNone) {
        unbounded_col_ = enter;
        return Pivot::Unbounded;
      }
      pivot(leave, enter);
    }
  }

  bool is_basic(std::size_t col) const {
    for (std::size_t i = 0; i < rows_; ++i)
      if (row_alive_[i] && basis_[i] == col) return true;
    return false;
  }

  /// After phase 1, no artificial may stay basic: pivot each one to a
  /// structural column, or retire its row as redundant.
  void drive_out_artificials() {
    for (std::size_t r = 0; r < rows_; ++r) {
      if (!row_alive_[r] || basis_[r] < art_start_) continue;
      std::size_t target = kNone;
      for (std::size_t j = 0; j < art_start_; ++j)
        if (tab_[r][j] != 0) {
          target = j;
          break;
        }
      if (target == kNone)
        row_alive_[r] = false;
      else
        pivot(r, target);
    }
  }

  /// Simplex multipliers c_B * B^-1, read from the artificial columns.
  std::vector<Rational> multipliers(const std::vector<Rational>& cost) const {
    std::vector<Rational> pi(rows_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < rows_; ++k) {
        if (!row_alive_[k]) continue;
        const Rational& cb = cost[basis_[k]];
        if (cb != 0 && tab_[k][art_start_ + i] != 0) pi[i] += cb * tab_[k][art_start_ + i];
      }
    }
    return pi;
  }

  std::vector<Rational> current_point() const {
    std::vector<Rational> std_x(total_cols_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i)
      if (row_alive_[i]) std_x[basis_[i]] = tab_[i][total_cols_];
    return to_user_vars(std_x);
  }

  std::vector<Rational> to_user_vars(const std::vector<Rational>& std_x) const {
    std::vector<Rational> x(lp_.num_vars(), Rational(0));
    for (std::size_t j = 0; j < lp_.num_vars(); ++j) {
      x[j] = std_x[pos_col_[j]];
      if (neg_col_[j] != kNone) x[j] -= std_x[neg_col_[j]];
    }
    return x;
  }

  std::vector<Rational> user_duals(const std::vector<Rational>& pi) const {
    std::vector<Rational> y(rows_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i) y[i] = row_flipped_[i] ? -pi[i] : pi[i];
    return y;
  }

  LPResult extract_infeasible(const std::vector<Rational>& cost) const {
    std::vector<Rational> pi = multipliers(cost);
    for (auto& v : pi) v = -v;
    LPResult res;
    res.status = LPStatus::Infeasible;
    res.dual = user_duals(pi);
    return res;
  }

  LPResult extract_optimal(const std::vector<Rational>& cost) const {
    LPResult res;
    res.status = LPStatus::Optimal;
    res.primal = current_point();
    res.objective = Rational(0);
    for (std::size_t j = 0; j < lp_.num_vars(); ++j)
      res.objective += lp_.objective[j] * res.primal[j];
    res.dual = user_duals(multipliers(cost));
    return res;
  }

  LPResult extract_unbounded() const {
    std::vector<Rational> std_d(total_cols_, Rational(0));
    std_d[unbounded_col_] = 1;
    for (std::size_t i = 0; i < rows_; ++i)
      if (row_alive_[i]) std_d[basis_[i]] = -tab_[i][unbounded_col_];
    LPResult res;
    res.status = LPStatus::Unbounded;
    res.primal = current_point();
    res.ray = to_user_vars(std_d);
    return res;
  }

  const LinearProgram& lp_;
  std::vector<std::vector<Rational>> tab_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> pos_col_, neg_col_, slack_col_;
  std::vector<bool> row_flipped_;
  std::vector<bool> row_alive_;
  const std::vector<Rational>* cost_ = nullptr;
  std::size_t rows_ = 0, art_start_ = 0, total_cols_ = 0;
  std::size_t unbounded_col_ = kNone;
  bool bar_artificials_ = false;
};

}  // namespace detail

/// Solves the maximization problem exactly. The returned certificate is
/// re-verified before this function returns; a verification failure is a
/// solver bug and throws CertificateError.
inline LPResult lp_solve(const LinearProgram& lp) {
  detail::SimplexTableau tableau(lp);
  LPResult res = tableau.solve();
  if (!verify_lp_result(lp, res))
    throw CertificateError("simplex produced a certificate that fails exact verification");
  return res;
}

/// Solves the problem through its dual, which is the cheaper orientation
/// when rows vastly outnumber variables (the tableau is rows x columns).
/// Primal answers are reconstructed from the dual's certificates and
/// re-verified against the original problem. Requires the primal to be
/// either optimal or infeasible-with-certificate; a problem whose dual is
/// infeasible (primal unbounded or primal and dual both empty) is rejected.
inline LPResult lp_solve_via_dual(const LinearProgram& lp) {
  detail::check_well_formed(lp);
  const std::size_t n = lp.num_vars();
  const std::size_t m = lp.rows.size();

  // Dual variable y'_i per primal row; >= rows carry sign -1 so that y'
  // stays non-negative in the solver's variable vocabulary.
  std::vector<Rational> sign(m, Rational(1));
  LinearProgram dual;
  for (std::size_t i = 0; i < m; ++i) {
    if (lp.rows[i].rel == Rel::GreaterEq) sign[i] = -1;
    VarSign vs = lp.rows[i].rel == Rel::Equal ? VarSign::Free : VarSign::NonNegative;
    dual.add_var(vs, -sign[i] * lp.rows[i].rhs);
  }
  std::vector<std::vector<std::pair<std::size_t, Rational>>> cols(n);
  for (std::size_t i = 0; i < m; ++i)
    for (const auto& [j, a] : lp.rows[i].coeffs)
      if (a != 0) cols[j].emplace_back(i, sign[i] * a);
  for (std::size_t j = 0; j < n; ++j) {
    Rel rel = lp.signs[j] == VarSign::NonNegative ? Rel::GreaterEq : Rel::Equal;
    dual.add_row(std::move(cols[j]), rel, lp.objective[j]);
  }

  LPResult dres = lp_solve(dual);
  LPResult res;
  switch (dres.status) {
    case LPStatus::Optimal: {
      res.status = LPStatus::Optimal;
      res.primal.resize(n);
      for (std::size_t j = 0; j < n; ++j) res.primal[j] = -dres.dual[j];
      res.dual.resize(m);
      for (std::size_t i = 0; i < m; ++i) res.dual[i] = sign[i] * dres.primal[i];
      res.objective = Rational(0);
      for (std::size_t j = 0; j < n; ++j) res.objective += lp.objective[j] * res.primal[j];
      break;
    }
    case LPStatus::Unbounded: {
      res.status = LPStatus::Infeasible;
      res.dual.resize(m);
      for (std::size_t i = 0; i < m; ++i) res.dual[i] = -sign[i] * dres.ray[i];
      break;
    }
    case LPStatus::Infeasible:
      throw MalformedProblem("dual infeasible: primal is unbounded or empty in both directions");
  }
  if (!verify_lp_result(lp, res))
    throw CertificateError("dual-reconstructed certificate failed exact verification");
  return res;
}

}  // namespace plaus
