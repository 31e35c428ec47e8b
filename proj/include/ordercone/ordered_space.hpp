#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ordercone/cone.hpp"
#include "ordercone/polyhedron.hpp"

namespace ordercone {

/// Largest ambient dimension accepted when building a space (default 6).
[[nodiscard]] std::size_t dimension_cap();
void set_dimension_cap(std::size_t cap);

enum class ConeKind { ClosedH, ClosedV, SemiOpen, Lexicographic };

[[nodiscard]] const char* to_string(ConeKind k);

/// A finite-dimensional rational space ordered by a convex cone X+.
class OrderedSpace {
 public:
  /// X+ = {x : r.x >= 0 for each row}.
  [[nodiscard]] static OrderedSpace closed_h(std::size_t dim, const std::vector<RatVector>& rows);
  /// X+ = cone(generators).
  [[nodiscard]] static OrderedSpace closed_v(std::size_t dim, const std::vector<RatVector>& generators);
  /// X+ given as a union of homogeneous cells; must be a convex cone containing 0.
  [[nodiscard]] static OrderedSpace semi_open(CellUnion cone);
  /// Lexicographic order with the last coordinate most significant.
  [[nodiscard]] static OrderedSpace lexicographic(std::size_t dim);
  /// X+ = X. Not pointed: a preorder used only as the domain of extension problems.
  [[nodiscard]] static OrderedSpace whole_space(std::size_t dim);
  /// "standard:n", "lex:n", "example_s2" or "square_cone".
  [[nodiscard]] static OrderedSpace named(const std::string& id);

  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] ConeKind kind() const { return kind_; }
  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] bool is_closed() const { return kind_ == ConeKind::ClosedH || kind_ == ConeKind::ClosedV; }
  /// X+ as a union of cells (a single closed cell for closed kinds).
  [[nodiscard]] const CellUnion& positive_cells() const { return cells_; }
  /// closure(X+), both representations.
  [[nodiscard]] const ClosedCone& closure() const { return closure_; }
  /// The inputs the space was built from (rows for ClosedH, generators for ClosedV).
  [[nodiscard]] const std::vector<RatVector>& source_vectors() const { return source_; }

  [[nodiscard]] bool contains(std::span<const Rational> x) const;
  /// a <= b, i.e. b - a in X+.
  [[nodiscard]] bool leq(std::span<const Rational> a, std::span<const Rational> b) const;

 private:
  OrderedSpace() = default;
  void finish(bool check_pointed);

  std::size_t dim_ = 0;
  ConeKind kind_ = ConeKind::ClosedH;
  std::string name_;
  std::vector<RatVector> source_;
  CellUnion cells_;
  ClosedCone closure_;
};

/// [lo, hi] = {z : lo <= z <= hi}.
struct OrderInterval {
  RatVector lo;
  RatVector hi;
  CellUnion set;
};

[[nodiscard]] OrderInterval order_interval(const OrderedSpace& space, const RatVector& lo, const RatVector& hi);

/// Rational m x n matrix mapping X into Q^m with the coordinatewise order.
struct LinearOperator {
  RatMatrix matrix;

  LinearOperator() = default;
  explicit LinearOperator(RatMatrix m) : matrix(std::move(m)) {}
  [[nodiscard]] static LinearOperator functional(RatVector row);
  [[nodiscard]] static LinearOperator zero(std::size_t m, std::size_t n);

  [[nodiscard]] std::size_t domain_dim() const { return matrix.cols(); }
  [[nodiscard]] std::size_t codomain_dim() const { return matrix.rows(); }
  [[nodiscard]] const RatVector& row(std::size_t i) const { return matrix.row(i); }
  [[nodiscard]] RatVector apply(std::span<const Rational> x) const { return matrix.apply(x); }

  friend bool operator==(const LinearOperator&, const LinearOperator&) = default;
};

[[nodiscard]] LinearOperator operator-(const LinearOperator& a, const LinearOperator& b);
[[nodiscard]] LinearOperator operator+(const LinearOperator& a, const LinearOperator& b);

/// T >= 0 on X+ (equivalently on its closure).
[[nodiscard]] bool is_positive(const OrderedSpace& space, const LinearOperator& t);
/// Row functional nonnegative on closure(X+).
[[nodiscard]] bool is_positive_functional(const OrderedSpace& space, std::span<const Rational> f);

[[nodiscard]] bool is_generating(const OrderedSpace& space);
[[nodiscard]] bool is_order_unit(const OrderedSpace& space, std::span<const Rational> e);
/// X+ has an internal point.
[[nodiscard]] bool has_interior(const OrderedSpace& space);
/// Some internal point of X+, if any.
[[nodiscard]] std::optional<RatVector> interior_point(const OrderedSpace& space);

/// K* = {f : f >= 0 on X+}, computed from the closure. Throws PreconditionError
/// when K* is not pointed (X+ not full-dimensional).
[[nodiscard]] OrderedSpace dual_cone(const OrderedSpace& space);

struct PositiveFunctional {
  RatVector f;
  CellUnion base;  ///< {x in X+ : f(x) = 1}
};

[[nodiscard]] std::optional<PositiveFunctional> strictly_positive_functional(const OrderedSpace& space);

/// closure(X+) is pointed. Throws PreconditionError when X+ has no base.
[[nodiscard]] bool has_bounded_aperture(const OrderedSpace& space);

}  // namespace ordercone
