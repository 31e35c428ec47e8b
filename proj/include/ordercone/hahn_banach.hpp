#pragma once

#include <optional>
#include <vector>

#include "ordercone/ordered_space.hpp"
#include "ordercone/rk.hpp"

namespace ordercone {

/// Superlinear p : X+ -> Q^m, either a componentwise minimum of linear maps or an RK transform.
class SuperlinearMap {
 public:
  enum class Kind { MinOfLinear, RkOfLinear };

  static SuperlinearMap min_of_linear(OrderedSpace space, std::vector<LinearOperator> pieces);
  static SuperlinearMap rk_of_linear(RkInstance inst);

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] const OrderedSpace& domain() const { return inst_.space; }
  [[nodiscard]] const std::vector<LinearOperator>& pieces() const { return inst_.ops; }
  [[nodiscard]] std::size_t codomain_dim() const { return inst_.codomain_dim(); }
  [[nodiscard]] const RkInstance& instance() const { return inst_; }
  [[nodiscard]] RatVector operator()(const RatVector& x) const;

 private:
  SuperlinearMap(Kind k, RkInstance inst) : kind_(k), inst_(std::move(inst)) {}
  Kind kind_;
  RkInstance inst_;  // for MinOfLinear the ops are the pieces
};

/// Extend t0 from span(basis) to X keeping t0 >= p on X+. Only the restriction of t0 to L is used.
struct ExtensionProblem {
  SuperlinearMap p;
  std::vector<RatVector> basis;
  LinearOperator t0;

  /// Throws PreconditionError unless the basis is independent, X+ + L = X and t0 >= p on L ∩ X+.
  void validate() const;
  [[nodiscard]] const OrderedSpace& space() const { return p.domain(); }
};

struct ExtensionStep {
  RatVector x0;
  RatVector y0;     ///< sup of p(v + x0) - T0 v
  RatVector upper;  ///< inf of T0 u - p(u - x0) over u in L with u - x0 in X+
};

/// The value y0 chosen for M(x0) when extending T0 from L to L + span{x0}.
[[nodiscard]] ExtensionStep extend_step(const ExtensionProblem& prob, const RatVector& x0);
/// Extension to all of X through the lexicographically first unit vectors outside L.
[[nodiscard]] LinearOperator extend_full(const ExtensionProblem& prob, std::vector<ExtensionStep>* steps = nullptr);
/// Extension along an explicit completion of the basis.
[[nodiscard]] LinearOperator extend_along(const ExtensionProblem& prob, const std::vector<RatVector>& completion,
                                          std::vector<ExtensionStep>* steps = nullptr);

/// M >= p on X+ and M x = y, for an order unit x.
[[nodiscard]] LinearOperator majorant_at_order_unit(const SuperlinearMap& p, const RatVector& x, const RatVector& y);

/// Scalar p: M >= p on X+ with M(x) = p(x) < y. Works for boundary x.
[[nodiscard]] LinearOperator dominating_below(const SuperlinearMap& p, const RatVector& x, const Rational& y);

/// M >= p on X+, decided exactly.
[[nodiscard]] bool dominates(const LinearOperator& m, const SuperlinearMap& p);

}  // namespace ordercone
