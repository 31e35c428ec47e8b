#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ordercone/lp.hpp"

namespace ordercone {

/// Default cap on the number of candidate bases examined by an enumeration.
inline constexpr std::size_t kDefaultEnumerationBudget = 10000;

/// Generators of a closed polyhedral cone: cone(rays) + span(lineality).
struct ConeGenerators {
  std::vector<RatVector> rays;       ///< extreme rays of the pointed part, primitive
  std::vector<RatVector> lineality;  ///< basis of the lineality space
};

/// Extreme rays and lineality of {x : r.x >= 0 for every row r} by basis
/// enumeration. Throws CapacityError past `budget` candidate bases.
[[nodiscard]] ConeGenerators cone_h_to_v(const std::vector<RatVector>& rows, std::size_t dim,
                                         std::size_t budget = kDefaultEnumerationBudget);

/// Generators of the dual cone {f : f.g >= 0 for rays g, f.l = 0 for lineality l}.
[[nodiscard]] ConeGenerators cone_dual(const ConeGenerators& gens, std::size_t dim,
                                       std::size_t budget = kDefaultEnumerationBudget);

/// A closed polyhedral cone held in both representations, each irredundant.
struct ClosedCone {
  std::size_t dim = 0;
  std::vector<RatVector> rays;
  std::vector<RatVector> lineality;
  std::vector<RatVector> facets;     ///< f.x >= 0
  std::vector<RatVector> equations;  ///< e.x == 0

  [[nodiscard]] static ClosedCone from_inequalities(const std::vector<RatVector>& rows, std::size_t dim);
  [[nodiscard]] static ClosedCone from_generators(const std::vector<RatVector>& rays,
                                                  const std::vector<RatVector>& lineality, std::size_t dim);

  [[nodiscard]] bool contains(std::span<const Rational> x) const;
  [[nodiscard]] bool pointed() const { return lineality.empty(); }
  [[nodiscard]] bool full_dimensional() const { return equations.empty(); }
  /// Facets plus both halves of each equation, as homogeneous constraints.
  [[nodiscard]] std::vector<LinearConstraint> constraints() const;
  /// The dual cone, with the two representations swapped.
  [[nodiscard]] ClosedCone dual() const;
};

/// Sorts vectors and removes duplicates (by exact equality).
void sort_unique(std::vector<RatVector>& vs);

}  // namespace ordercone
