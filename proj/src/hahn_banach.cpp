#include "ordercone/hahn_banach.hpp"

#include "ordercone/errors.hpp"
#include "ordercone/lp_builder.hpp"

namespace ordercone {

SuperlinearMap SuperlinearMap::min_of_linear(OrderedSpace space, std::vector<LinearOperator> pieces) {
  if (pieces.empty()) throw InputError("min_of_linear: no pieces");
  return SuperlinearMap(Kind::MinOfLinear, RkInstance(std::move(space), std::move(pieces)));
}

SuperlinearMap SuperlinearMap::rk_of_linear(RkInstance inst) { return SuperlinearMap(Kind::RkOfLinear, std::move(inst)); }

RatVector SuperlinearMap::operator()(const RatVector& x) const {
  require_same_size(x.size(), domain().dim(), "superlinear map argument");
  if (kind_ == Kind::RkOfLinear) return rk_eval(inst_, x).value;
  RatVector out = pieces().front().apply(x);
  for (const auto& t : pieces()) {
    const auto v = t.apply(x);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = min(out[i], v[i]);
  }
  return out;
}

namespace {

// Partial operator: values[j] is the image of basis[j].
struct Partial {
  std::vector<RatVector> basis;
  std::vector<RatVector> values;
};

// sup over lambda with z = c + sum lambda_j b_j in closure(X+) of p_i(z) - sum lambda_j values_j[i].
// `box` bounds |lambda_j| <= 1.
LpResult sup_gap(const SuperlinearMap& p, std::size_t i, const Partial& t, const RatVector& c, bool box) {
  const auto& space = p.domain();
  const auto& k = space.closure();
  const std::size_t n = space.dim();
  const std::size_t nb = t.basis.size();
  const bool rk = p.kind() == SuperlinearMap::Kind::RkOfLinear;
  const std::size_t np = rk ? p.pieces().size() * n : 1;
  LpBuilder lp(nb + np);
  // facet . (c + B lambda - sum x_j) >= 0
  auto cone_row = [&](const RatVector& a) {
    RatVector row = zeros(nb + np);
    for (std::size_t j = 0; j < nb; ++j) row[j] = dot(a, t.basis[j]);
    if (rk)
      for (std::size_t j = 0; j < p.pieces().size(); ++j)
        for (std::size_t q = 0; q < n; ++q) row[nb + j * n + q] = -a[q];
    return row;
  };
  for (const auto& a : k.facets) lp.add_ge(cone_row(a), -dot(a, c));
  for (const auto& e : k.equations) lp.add_eq(cone_row(e), -dot(e, c));
  RatVector obj = zeros(nb + np);
  for (std::size_t j = 0; j < nb; ++j) obj[j] = -t.values[j][i];
  if (rk) {
    for (std::size_t j = 0; j < p.pieces().size(); ++j) {
      lp.in_cone(k, {{nb + j * n, 1}}, zeros(n));
      for (std::size_t q = 0; q < n; ++q) obj[nb + j * n + q] = p.pieces()[j].row(i)[q];
    }
  } else {
    // s <= T_k(z)
    for (const auto& piece : p.pieces()) {
      RatVector row = zeros(nb + np);
      for (std::size_t j = 0; j < nb; ++j) row[j] = dot(piece.row(i), t.basis[j]);
      row[nb] = -1;
      lp.add_ge(std::move(row), -dot(piece.row(i), c));
    }
    obj[nb] = 1;
  }
  if (box) {
    for (std::size_t j = 0; j < nb; ++j) {
      lp.add_ge(unit(nb + np, j), -1);
      lp.add_ge(negate(unit(nb + np, j)), -1);
    }
  }
  return lp_solve(lp.problem(std::move(obj)));
}

Partial initial(const ExtensionProblem& prob) {
  Partial t;
  t.basis = prob.basis;
  for (const auto& b : prob.basis) t.values.push_back(prob.t0.apply(b));
  return t;
}

ExtensionStep step(const SuperlinearMap& p, const Partial& t, const RatVector& x0) {
  const std::size_t n = p.domain().dim();
  require_same_size(x0.size(), n, "x0");
  auto with = t.basis;
  with.push_back(x0);
  if (rank(with, n) <= t.basis.size()) throw PreconditionError("extend_step: x0 lies in L");
  ExtensionStep s{x0, {}, {}};
  for (std::size_t i = 0; i < p.codomain_dim(); ++i) {
    const auto lower = sup_gap(p, i, t, x0, false);
    const auto upper = sup_gap(p, i, t, negate(x0), false);
    if (lower.status == LpStatus::Infeasible || upper.status == LpStatus::Infeasible) {
      throw PreconditionError("extend_step: no v in L with v + x0 or v - x0 in X+");
    }
    if (!lower.optimal() || !upper.optimal()) {
      throw PreconditionError("extension problem is inconsistent: unbounded extension step");
    }
    if (lower.value > -upper.value) throw PreconditionError("extension problem is inconsistent: T0 < p on L");
    s.y0.push_back(lower.value);
    s.upper.push_back(-upper.value);
  }
  return s;
}

LinearOperator assemble(const Partial& t, std::size_t n, std::size_t m) {
  const auto inv = inverse(RatMatrix(t.basis, n));
  if (!inv) throw InternalError("completed basis is singular");
  // M b_j = v_j, so M^T = B^{-1} V with the b_j, v_j as rows.
  return LinearOperator((*inv * RatMatrix(t.values, m)).transpose());
}

}  // namespace

void ExtensionProblem::validate() const {
  const auto& s = space();
  const std::size_t n = s.dim();
  require_same_size(t0.domain_dim(), n, "T0 domain");
  require_same_size(t0.codomain_dim(), p.codomain_dim(), "T0 codomain");
  for (const auto& b : basis) require_same_size(b.size(), n, "L basis vector");
  if (rank(basis, n) != basis.size()) throw PreconditionError("L basis is not linearly independent");
  // X+ + L = X iff no nonzero functional is >= 0 on X+ and vanishes on L.
  std::vector<RatVector> rows;
  for (const auto& r : s.closure().rays) rows.push_back(r);
  for (const auto* group : {&s.closure().lineality, &basis})
    for (const auto& l : *group) {
      rows.push_back(l);
      rows.push_back(negate(l));
    }
  const auto annihilator = ClosedCone::from_inequalities(rows, n);
  if (!annihilator.rays.empty() || !annihilator.lineality.empty()) throw PreconditionError("X+ + L != X");
  const auto t = initial(*this);
  for (std::size_t i = 0; i < p.codomain_dim(); ++i) {
    const auto gap = sup_gap(p, i, t, zeros(n), true);
    if (!gap.optimal()) throw InternalError("domination LP on L failed");
    if (gap.value > 0) throw PreconditionError("T0 < p somewhere on L ∩ X+");
  }
}

ExtensionStep extend_step(const ExtensionProblem& prob, const RatVector& x0) {
  prob.validate();
  return step(prob.p, initial(prob), x0);
}

LinearOperator extend_along(const ExtensionProblem& prob, const std::vector<RatVector>& completion,
                            std::vector<ExtensionStep>* steps) {
  prob.validate();
  const std::size_t n = prob.space().dim();
  auto t = initial(prob);
  for (const auto& x0 : completion) {
    auto s = step(prob.p, t, x0);
    t.basis.push_back(x0);
    t.values.push_back(s.y0);
    if (steps) steps->push_back(std::move(s));
  }
  if (t.basis.size() != n) throw PreconditionError("basis completion does not span X");
  auto m = assemble(t, n, prob.p.codomain_dim());
  for (std::size_t j = 0; j < prob.basis.size(); ++j)
    if (m.apply(prob.basis[j]) != prob.t0.apply(prob.basis[j])) throw InternalError("extension changed T0 on L");
  if (!dominates(m, prob.p)) throw InternalError("extension does not dominate p");
  return m;
}

LinearOperator extend_full(const ExtensionProblem& prob, std::vector<ExtensionStep>* steps) {
  const std::size_t n = prob.space().dim();
  std::vector<RatVector> span = prob.basis;
  std::vector<RatVector> completion;
  for (std::size_t i = 0; i < n && span.size() < n; ++i) {
    span.push_back(unit(n, i));
    if (rank(span, n) == span.size()) {
      completion.push_back(unit(n, i));
    } else {
      span.pop_back();
    }
  }
  return extend_along(prob, completion, steps);
}

bool dominates(const LinearOperator& m, const SuperlinearMap& p) {
  const auto& space = p.domain();
  require_same_size(m.domain_dim(), space.dim(), "M domain");
  require_same_size(m.codomain_dim(), p.codomain_dim(), "M codomain");
  for (std::size_t i = 0; i < p.codomain_dim(); ++i) {
    const auto& mi = m.row(i);
    if (p.kind() == SuperlinearMap::Kind::RkOfLinear) {
      if (!is_positive_functional(space, mi)) return false;
      for (const auto& t : p.pieces())
        if (!is_positive_functional(space, sub(mi, t.row(i)))) return false;
      continue;
    }
    // x in closure(X+) with M x < T_k x for every k.
    auto rows = space.closure().constraints();
    for (const auto& t : p.pieces()) rows.push_back(LinearConstraint::gt(sub(t.row(i), mi), 0));
    if (strict_feasible(rows, space.dim()).feasible) return false;
  }
  return true;
}

LinearOperator majorant_at_order_unit(const SuperlinearMap& p, const RatVector& x, const RatVector& y) {
  const auto& space = p.domain();
  require_same_size(x.size(), space.dim(), "x");
  require_same_size(y.size(), p.codomain_dim(), "y");
  if (!is_order_unit(space, x)) throw PreconditionError("majorant_at_order_unit: x is not an order unit");
  const auto px = p(x);
  for (std::size_t i = 0; i < y.size(); ++i)
    if (y[i] < px[i]) throw PreconditionError("majorant_at_order_unit: y < p(x)");
  RatMatrix t0(p.codomain_dim(), space.dim());
  const Rational xx = dot(x, x);
  for (std::size_t i = 0; i < y.size(); ++i) t0.row(i) = scale(x, y[i] / xx);
  const ExtensionProblem prob{p, {x}, LinearOperator(std::move(t0))};
  auto m = extend_full(prob);
  if (m.apply(x) != y) throw InternalError("majorant misses y at x");
  return m;
}

LinearOperator dominating_below(const SuperlinearMap& p, const RatVector& x, const Rational& y) {
  const auto& space = p.domain();
  const std::size_t n = space.dim();
  if (p.codomain_dim() != 1) throw PreconditionError("dominating_below: scalar maps only");
  require_same_size(x.size(), n, "x");
  if (!space.contains(x)) throw PreconditionError("dominating_below: x is not in X+");
  if (!is_generating(space)) throw PreconditionError("dominating_below: X+ is not generating");
  const Rational px = p(x)[0];
  if (!(y > px)) throw PreconditionError("dominating_below: need y > p(x)");
  const auto& k = space.closure();
  const bool rk = p.kind() == SuperlinearMap::Kind::RkOfLinear;
  const std::size_t np = rk ? 0 : p.pieces().size();
  LpBuilder lp(n + np);
  // M - shift in K*: shift is T_j (rk) or the convex combination sum mu_k f_k (min).
  auto in_dual = [&](const RatVector& shift, bool with_mu) {
    auto row_for = [&](const RatVector& g) {
      RatVector row = zeros(n + np);
      for (std::size_t q = 0; q < n; ++q) row[q] = g[q];
      if (with_mu)
        for (std::size_t j = 0; j < np; ++j) row[n + j] = -dot(p.pieces()[j].row(0), g);
      return row;
    };
    for (const auto& r : k.rays) lp.add_ge(row_for(r), dot(shift, r));
    for (const auto& l : k.lineality) lp.add_eq(row_for(l), dot(shift, l));
  };
  if (rk) {
    in_dual(zeros(n), false);
    for (const auto& t : p.pieces()) in_dual(t.row(0), false);
  } else {
    in_dual(zeros(n), true);
    RatVector total = zeros(n + np);
    for (std::size_t j = 0; j < np; ++j) {
      lp.add_ge(unit(n + np, n + j), 0);
      total[n + j] = 1;
    }
    lp.add_eq(std::move(total), 1);
  }
  RatVector obj = zeros(n + np);
  for (std::size_t q = 0; q < n; ++q) obj[q] = x[q];
  const auto res = lp_solve(lp.problem(std::move(obj), Sense::Minimize));
  if (!res.optimal()) throw InternalError("dominating_below LP failed");
  auto m = LinearOperator::functional(slice(res.point, 0, n));
  if (!(dot(m.row(0), x) < y) || !dominates(m, p)) throw InternalError("dominating_below result failed verification");
  return m;
}

}  // namespace ordercone
