#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ordercone/ordered_space.hpp"
#include "ordercone/polyhedron.hpp"

namespace ordercone {

/// A finite collection T_1..T_n of operators X -> Q^m on one ordered space.
struct RkInstance {
  OrderedSpace space;
  std::vector<LinearOperator> ops;

  RkInstance(OrderedSpace s, std::vector<LinearOperator> o);
  [[nodiscard]] std::size_t codomain_dim() const { return ops.front().codomain_dim(); }
  [[nodiscard]] std::size_t dim() const { return space.dim(); }
  /// Same space, 0 adjoined to the collection.
  [[nodiscard]] RkInstance with_zero() const;
};

struct RkValue {
  RatVector value;
  bool attained = false;
  /// x_1..x_n reaching every coordinate of `value` at once, when one exists.
  std::optional<std::vector<RatVector>> decomposition;
};

/// sup { sum T_j x_j : x_j >= 0, sum x_j <= x }, coordinatewise.
[[nodiscard]] RkValue rk_eval(const RkInstance& inst, const RatVector& x);
/// Same supremum with sum x_j = x.
[[nodiscard]] RkValue rk_eval_equality_form(const RkInstance& inst, const RatVector& x);
/// The transform of {0, T_1, .., T_n}.
[[nodiscard]] RkValue rk_positive(const RkInstance& inst, const RatVector& x);

/// D_i = {h in span X+ : h in K*, h - (T_j)_i in K* for all j}, one closed cell per codomain coordinate.
struct DualPolyhedron {
  std::size_t dim = 0;
  std::vector<Cell> coordinates;
  [[nodiscard]] bool contains(std::size_t coordinate, const RatVector& h) const {
    return coordinates[coordinate].contains(h);
  }
};

[[nodiscard]] DualPolyhedron dual_polyhedron(const RkInstance& inst);
/// min { h.x : h in D_i } per coordinate (the LP dual of rk_eval).
[[nodiscard]] RatVector dual_value(const DualPolyhedron& d, const RatVector& x);

struct NonlinearWitness {
  std::size_t coordinate = 0;
  RatVector x;
  RatVector y;
  RatVector rk_x;
  RatVector rk_y;
  RatVector rk_sum;  ///< rk(x + y), strictly above rk(x) + rk(y) at `coordinate`
};

struct LinearityResult {
  bool linear = false;
  std::optional<LinearOperator> op;         ///< the representing operator when linear
  std::optional<NonlinearWitness> witness;  ///< x, y in X_r otherwise
  /// "verified" on closed cones; "unverified" for the boundary of semi-open cones.
  std::string boundary_status;
};

/// Decides linearity of x -> rk(x) on X_r through a K*-least vertex of D.
[[nodiscard]] LinearityResult rk_linearity(const RkInstance& inst,
                                           std::size_t budget = kDefaultEnumerationBudget);

struct SupResult {
  std::optional<LinearOperator> sup;
  std::optional<NonlinearWitness> witness;
  bool majorizes = false;      ///< sup >= T_j on X+ for every j
  bool least_on_samples = false;  ///< h - sup in K* for the sampled h in D
};

[[nodiscard]] SupResult sup_operator(const RkInstance& inst, std::uint64_t seed = 0, std::size_t samples = 20);

struct AssociativityReport {
  bool agree = true;
  std::string method;  ///< "dual" or "nested"
  Rational max_discrepancy;
  std::vector<RatVector> flat;
  std::vector<RatVector> nested;
};

/// Compares rk{Q, R, S} with rk{rk{Q, R}, S} at the sample points.
[[nodiscard]] AssociativityReport check_associativity(const OrderedSpace& space, const LinearOperator& q,
                                                      const LinearOperator& r, const LinearOperator& s,
                                                      const std::vector<RatVector>& samples);

/// The value of rk{rk{Q, R}, S} at w by one combined LP.
[[nodiscard]] RatVector nested_rk_value(const OrderedSpace& space, const LinearOperator& q, const LinearOperator& r,
                                        const LinearOperator& s, const RatVector& w);

}  // namespace ordercone
