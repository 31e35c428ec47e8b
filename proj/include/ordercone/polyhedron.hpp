#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ordercone/cone.hpp"
#include "ordercone/lp.hpp"

namespace ordercone {

/// Conjunction of strict and non-strict linear inequalities.
struct Cell {
  std::size_t dim = 0;
  std::vector<LinearConstraint> constraints;

  Cell() = default;
  Cell(std::size_t d, std::vector<LinearConstraint> cs);

  [[nodiscard]] bool contains(std::span<const Rational> x) const;
  [[nodiscard]] Cell closure() const;
  /// Every strict flag set; the "interior-ish" relaxation used for dimension tests.
  [[nodiscard]] Cell all_strict() const;
  [[nodiscard]] bool is_closed() const;
  [[nodiscard]] bool is_empty() const;
  /// Some member point, if any.
  [[nodiscard]] std::optional<RatVector> point() const;
  [[nodiscard]] Cell intersect(const Cell& other) const;
  /// {x : x - shift in this}.
  [[nodiscard]] Cell translate(std::span<const Rational> shift) const;
};

/// Finite union of cells of one dimension.
struct CellUnion {
  std::size_t dim = 0;
  std::vector<Cell> cells;
  bool convex_hint = false;  ///< caller asserts the union is convex

  CellUnion() = default;
  CellUnion(std::size_t d, std::vector<Cell> cs, bool convex);
  static CellUnion single(Cell c);
  static CellUnion whole(std::size_t dim);
  static CellUnion point(const RatVector& p);
};

[[nodiscard]] bool contains(const CellUnion& set, std::span<const Rational> x);
[[nodiscard]] CellUnion closure(const CellUnion& set);
[[nodiscard]] bool is_empty(const CellUnion& set);
/// Drops infeasible cells (convex_hint is kept).
[[nodiscard]] CellUnion prune_empty(const CellUnion& set);
/// Pairwise intersection of cells.
[[nodiscard]] CellUnion intersect(const CellUnion& a, const CellUnion& b);

/// Minkowski sum; each pair of cells is summed by projecting out the summand copy.
[[nodiscard]] CellUnion minkowski_sum(const CellUnion& a, const CellUnion& b);

struct SubsetResult {
  bool holds = true;
  std::optional<RatVector> witness;  ///< point of a outside b when !holds
};

/// Decides a ⊆ b, producing a witness in a \ b otherwise.
[[nodiscard]] SubsetResult subset_of(const CellUnion& a, const CellUnion& b);
[[nodiscard]] SubsetResult subset_of_closure(const CellUnion& a, const CellUnion& b);
/// One witness per cell of a that is not covered (empty when a ⊆ b).
[[nodiscard]] std::vector<RatVector> difference_witnesses(const CellUnion& a, const CellUnion& b);

/// Vertices, extreme rays and lineality of a closed convex polyhedron.
struct VertexList {
  std::vector<RatVector> vertices;
  std::vector<RatVector> rays;
  std::vector<RatVector> lineality;
};

/// Requires closed cells and convex_hint; the union is treated as its convex hull.
[[nodiscard]] VertexList vertices(const CellUnion& set, std::size_t budget = kDefaultEnumerationBudget);
/// Vertices and rays of every cell's closure, deduplicated but not pruned to the hull.
[[nodiscard]] VertexList generators(const CellUnion& set, std::size_t budget = kDefaultEnumerationBudget);
[[nodiscard]] VertexList cell_vertices(const Cell& cell, std::size_t budget = kDefaultEnumerationBudget);
/// Irredundant inequality description of conv(vertices) + cone(rays) + span(lineality).
[[nodiscard]] Cell cell_from_vertices(const VertexList& v, std::size_t dim);

/// Midpoint spot check of convexity over sample points of the cells;
/// throws PreconditionError on failure or when convex_hint is false.
void require_convex(const CellUnion& set, const char* what);

}  // namespace ordercone
