#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ordercone/linalg.hpp"

namespace ordercone {

/// <coeffs, x> >= rhs, or > rhs when `strict`.
struct LinearConstraint {
  RatVector coeffs;
  Rational rhs;
  bool strict = false;

  static LinearConstraint ge(RatVector c, Rational r = 0) { return {std::move(c), std::move(r), false}; }
  static LinearConstraint gt(RatVector c, Rational r = 0) { return {std::move(c), std::move(r), true}; }

  [[nodiscard]] std::size_t dimension() const { return coeffs.size(); }
  [[nodiscard]] bool satisfied_by(std::span<const Rational> x) const;
  /// The complement half-space: not(c.x >= r) is -c.x > -r and vice versa.
  [[nodiscard]] LinearConstraint negated() const;
  [[nodiscard]] LinearConstraint closed() const { return {coeffs, rhs, false}; }
  /// Positive rescaling to primitive integer coefficients (rhs scaled alike).
  [[nodiscard]] LinearConstraint normalized() const;
  [[nodiscard]] bool is_trivial() const { return is_zero(coeffs); }
  /// For an all-zero row: whether 0 >= rhs (or 0 > rhs) holds.
  [[nodiscard]] bool trivially_true() const;
  [[nodiscard]] std::string str() const;

  friend bool operator==(const LinearConstraint&, const LinearConstraint&) = default;
};

/// Two non-strict rows expressing c.x = r.
[[nodiscard]] std::vector<LinearConstraint> equality_rows(const RatVector& c, const Rational& r);

enum class Sense { Maximize, Minimize };

/// Linear program over free variables x in Q^n.
struct LpProblem {
  RatVector objective;
  std::vector<LinearConstraint> constraints;  ///< non-strict rows c.x >= r
  std::vector<LinearConstraint> equalities;   ///< rows read as c.x = r
  Sense sense = Sense::Maximize;
};

enum class LpStatus { Optimal, Unbounded, Infeasible };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;   ///< objective at `point` (Optimal only)
  RatVector point;  ///< optimal point (Optimal), some feasible point (Unbounded)
  RatVector ray;    ///< improving recession direction (Unbounded only)

  [[nodiscard]] bool optimal() const { return status == LpStatus::Optimal; }
};

/// Exact two-phase dictionary simplex with Bland's rule. Equalities are
/// eliminated by exact Gaussian elimination before pivoting.
[[nodiscard]] LpResult lp_solve(const LpProblem& problem);

struct Feasibility {
  bool feasible = false;
  std::optional<RatVector> point;
};

/// Decides whether the mixed strict/non-strict system has a solution in Q^dim.
/// Each strict row is relaxed to c.x >= r + t with t <= 1 and t maximized;
/// feasible iff the optimum has t > 0.
[[nodiscard]] Feasibility strict_feasible(std::span<const LinearConstraint> constraints,
                                          std::size_t dim);

}  // namespace ordercone
