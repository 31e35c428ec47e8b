#pragma once

#include <optional>
#include <vector>

#include "ordercone/ordered_space.hpp"
#include "ordercone/polyhedron.hpp"

namespace ordercone {

/// Functional f with f(point) = value > bound = sup f(set) when strict.
struct SeparationResult {
  LinearOperator separator;
  Rational bound;
  Rational value;
  bool strict = false;
  [[nodiscard]] Rational margin() const { return value - bound; }
};

enum class FunctionalClass { All, Regular };

/// f = f0 - f1 with f0, f1 in K*.
struct RegularSplit {
  RatVector f0;
  RatVector f1;
};

struct RdpReport {
  bool holds = true;
  RatVector x;
  RatVector y;
  std::optional<RatVector> witness;  ///< z in [0, x+y] outside [0, x] + [0, y]
  std::vector<RatVector> witnesses;  ///< one per uncovered cell of [0, x+y], plus any vertex witness
  std::optional<bool> lrdp_holds;
  std::optional<RatVector> lrdp_witness;  ///< point strictly separated from the sum
  std::optional<SeparationResult> separator;
  std::optional<RegularSplit> regular_split;
};

/// [0, x] + [0, y] = [0, x + y]?
[[nodiscard]] RdpReport check_rdp(const OrderedSpace& space, const RatVector& x, const RatVector& y);
/// check_rdp plus: can a point of the difference be strictly separated from the sum
/// by a functional of the class?
[[nodiscard]] RdpReport check_lrdp(const OrderedSpace& space, const RatVector& x, const RatVector& y,
                                   FunctionalClass cls);

/// Strict separation of `point` from a convex set; nullopt when point is in closure(set).
/// The separator maximizes the margin over the box |f_i| <= 1, then has least l1 norm.
[[nodiscard]] std::optional<SeparationResult> strict_separation(const RatVector& point, const CellUnion& set);

/// Decomposes f as f0 - f1 with f0, f1 in K*, minimizing f1 on the sum of closure rays.
[[nodiscard]] std::optional<RegularSplit> regular_split(const OrderedSpace& space, const RatVector& f);

struct RegularSeparator {
  RatVector f;  ///< f <= 0 on K0, f >= 0 on K1
  RatVector f0;
  RatVector f1;
  Rational aperture;  ///< c = max |s| over the base
};

/// Regular functional separating two disjoint convex cones inside X+, built through the base of X+.
[[nodiscard]] RegularSeparator separate_by_regular(const OrderedSpace& space, const CellUnion& k0, const CellUnion& k1);

struct RegularHyperplane {
  RatVector f;
  Rational alpha;
  RegularSplit split;
};

/// A regular f and alpha with {f = alpha} equal to {normal . x = offset}.
[[nodiscard]] RegularHyperplane hyperplane_as_regular(const OrderedSpace& space, const RatVector& normal,
                                                      const Rational& offset);

struct DifferencePoint {
  RatVector point;  ///< in A with g(point) > alpha
  RatVector g;
  Rational alpha;
};

/// For line-open convex B ⊆ A: a point deep in A \ B with its cutting functional; nullopt when A = B.
[[nodiscard]] std::optional<DifferencePoint> internal_of_difference(const CellUnion& a, const CellUnion& b);

}  // namespace ordercone
