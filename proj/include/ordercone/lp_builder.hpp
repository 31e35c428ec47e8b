#pragma once

#include <cstddef>
#include <vector>

#include "ordercone/cone.hpp"
#include "ordercone/lp.hpp"

namespace ordercone {

/// coeff * (variables offset .. offset + n).
struct Block {
  std::size_t offset;
  Rational coeff;
};

/// Assembles LPs over stacked vector variables.
class LpBuilder {
 public:
  explicit LpBuilder(std::size_t dim) : dim_(dim) {}

  [[nodiscard]] std::size_t dim() const { return dim_; }

  /// sum of blocks + constant lies in `cone`.
  void in_cone(const ClosedCone& cone, const std::vector<Block>& blocks, const RatVector& constant);
  /// sum of blocks + constant == 0, coordinatewise.
  void equal(const std::vector<Block>& blocks, const RatVector& constant);
  /// row . (sum of blocks) >= rhs.
  void row_ge(const RatVector& row, const std::vector<Block>& blocks, const Rational& rhs);
  void add_ge(RatVector coeffs, Rational rhs) { ge_.push_back(LinearConstraint::ge(std::move(coeffs), std::move(rhs))); }
  void add_eq(RatVector coeffs, Rational rhs) { eq_.push_back(LinearConstraint::ge(std::move(coeffs), std::move(rhs))); }

  /// Objective row . (sum of blocks).
  [[nodiscard]] RatVector objective(const RatVector& row, const std::vector<Block>& blocks) const;

  [[nodiscard]] LpProblem problem(RatVector objective, Sense sense = Sense::Maximize) const {
    return {std::move(objective), ge_, eq_, sense};
  }

  [[nodiscard]] const std::vector<LinearConstraint>& inequalities() const { return ge_; }
  [[nodiscard]] const std::vector<LinearConstraint>& equalities() const { return eq_; }

 private:
  [[nodiscard]] RatVector spread(const RatVector& row, const std::vector<Block>& blocks) const;

  std::size_t dim_;
  std::vector<LinearConstraint> ge_;
  std::vector<LinearConstraint> eq_;
};

[[nodiscard]] RatVector slice(const RatVector& x, std::size_t offset, std::size_t n);

}  // namespace ordercone
