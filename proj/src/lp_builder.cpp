#include "ordercone/lp_builder.hpp"

#include "ordercone/errors.hpp"

namespace ordercone {

RatVector LpBuilder::spread(const RatVector& row, const std::vector<Block>& blocks) const {
  RatVector w = zeros(dim_);
  for (const auto& b : blocks) {
    if (b.coeff.is_zero()) continue;
    if (b.offset + row.size() > dim_) throw DimensionMismatch("LP block exceeds the variable range");
    for (std::size_t i = 0; i < row.size(); ++i)
      if (!row[i].is_zero()) w[b.offset + i] += b.coeff * row[i];
  }
  return w;
}

void LpBuilder::in_cone(const ClosedCone& cone, const std::vector<Block>& blocks, const RatVector& constant) {
  for (const auto& f : cone.facets) ge_.push_back(LinearConstraint::ge(spread(f, blocks), -dot(f, constant)));
  for (const auto& e : cone.equations) eq_.push_back(LinearConstraint::ge(spread(e, blocks), -dot(e, constant)));
}

void LpBuilder::equal(const std::vector<Block>& blocks, const RatVector& constant) {
  for (std::size_t i = 0; i < constant.size(); ++i) {
    eq_.push_back(LinearConstraint::ge(spread(unit(constant.size(), i), blocks), -constant[i]));
  }
}

void LpBuilder::row_ge(const RatVector& row, const std::vector<Block>& blocks, const Rational& rhs) {
  ge_.push_back(LinearConstraint::ge(spread(row, blocks), rhs));
}

RatVector LpBuilder::objective(const RatVector& row, const std::vector<Block>& blocks) const {
  return spread(row, blocks);
}

RatVector slice(const RatVector& x, std::size_t offset, std::size_t n) {
  return RatVector(x.begin() + static_cast<std::ptrdiff_t>(offset),
                   x.begin() + static_cast<std::ptrdiff_t>(offset + n));
}

}  // namespace ordercone
