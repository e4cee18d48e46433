#pragma once

// Membership of a vector in a finitely generated convex cone, decided as
// exact LP feasibility: find lambda >= 0 with sum(lambda_i * g_i) = v.
// Feasible instances return the coefficient vector minimizing
// sum(lambda_i) (a canonical, deterministic decomposition); infeasible
// instances return a separating functional rho with rho.g >= 0 for every
// generator and rho.v < 0, read off the Farkas certificate.

#include <plaus/lp.hpp>
#include <plaus/outcome_vector.hpp>
#include <plaus/rational.hpp>
#include <plaus/testspace.hpp>

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

namespace plaus {

class IndexMismatch : public ValidationError {
public:
  explicit IndexMismatch(const std::string& what) : ValidationError(what) {}
};

struct ConeResult {
  bool in_cone = false;
  std::vector<Rational> coefficients;  // in_cone: one per generator, >= 0
  OutcomeVector separator;             // otherwise
};

/// Sorted union of the supports of all given vectors.
inline std::vector<std::string> cone_universe(const std::vector<OutcomeVector>& generators,
                                              const OutcomeVector& v) {
  std::vector<std::string> universe;
  auto absorb = [&](const OutcomeVector& vec) {
    for (const auto& [x, c] : vec.entries()) {
      (void)c;
      universe.push_back(x);
    }
  };
  for (const auto& g : generators) absorb(g);
  absorb(v);
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
  return universe;
}

/// Exact check of either certificate branch; no LP machinery involved.
inline bool verify_cone_result(const std::vector<OutcomeVector>& generators,
                               const OutcomeVector& v, const ConeResult& res) {
  if (res.in_cone) {
    if (res.coefficients.size() != generators.size()) return false;
    OutcomeVector combo;
    for (std::size_t i = 0; i < generators.size(); ++i) {
      if (res.coefficients[i] < 0) return false;
      combo.add_scaled(generators[i], res.coefficients[i]);
    }
    return combo == v;
  }
  for (const auto& g : generators)
    if (dot(res.separator, g) < 0) return false;
  return dot(res.separator, v) < 0;
}

/// Decides v in cone(generators). An explicit universe, when given, must
/// cover every support (IndexMismatch otherwise); rows are emitted in
/// sorted-outcome order and columns in generator order, so certificates
/// are reproducible.
inline ConeResult cone_membership(const std::vector<OutcomeVector>& generators,
                                  const OutcomeVector& v,
                                  std::vector<std::string> universe = {}) {
  if (universe.empty()) {
    universe = cone_universe(generators, v);
  } else {
    std::sort(universe.begin(), universe.end());
    universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
    auto covered = [&](const OutcomeVector& vec) {
      for (const auto& [x, c] : vec.entries()) {
        (void)c;
        if (!std::binary_search(universe.begin(), universe.end(), x)) return false;
      }
      return true;
    };
    for (const auto& g : generators)
      if (!covered(g)) throw IndexMismatch("generator mentions an outcome outside the universe");
    if (!covered(v)) throw IndexMismatch("target vector mentions an outcome outside the universe");
  }

  LinearProgram lp;
  for (std::size_t i = 0; i < generators.size(); ++i)
    lp.add_var(VarSign::NonNegative, Rational(-1));  // maximize -sum(lambda)
  for (std::size_t r = 0; r < universe.size(); ++r) {
    const std::string& x = universe[r];
    std::vector<std::pair<std::size_t, Rational>> coeffs;
    for (std::size_t i = 0; i < generators.size(); ++i) {
      Rational c = generators[i].at(x);
      if (c != 0) coeffs.emplace_back(i, std::move(c));
    }
    lp.add_row(std::move(coeffs), Rel::Equal, v.at(x));
  }

  LPResult sol = lp_solve(lp);
  ConeResult res;
  if (sol.status == LPStatus::Optimal) {
    res.in_cone = true;
    res.coefficients = std::move(sol.primal);
  } else {
    res.in_cone = false;
    for (std::size_t r = 0; r < universe.size(); ++r)
      if (sol.dual[r] != 0) res.separator.set(universe[r], -sol.dual[r]);
  }
  if (!verify_cone_result(generators, v, res))
    throw CertificateError("cone membership certificate failed exact verification");
  return res;
}

}  // namespace plaus
