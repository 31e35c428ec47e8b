#include "ordercone/rk.hpp"

#include <random>

#include "ordercone/errors.hpp"
#include "ordercone/lp_builder.hpp"

namespace ordercone {

RkInstance::RkInstance(OrderedSpace s, std::vector<LinearOperator> o) : space(std::move(s)), ops(std::move(o)) {
  if (ops.empty()) throw PreconditionError("an RK instance needs at least one operator");
  for (const auto& t : ops) {
    require_same_size(t.domain_dim(), space.dim(), "operator domain");
    require_same_size(t.codomain_dim(), ops.front().codomain_dim(), "operator codomain");
  }
  if (codomain_dim() == 0) throw PreconditionError("operators need codomain dimension >= 1");
}

RkInstance RkInstance::with_zero() const {
  auto o = ops;
  o.insert(o.begin(), LinearOperator::zero(codomain_dim(), dim()));
  return RkInstance(space, std::move(o));
}

namespace {

LinearConstraint place(const LinearConstraint& c, const std::vector<Block>& blocks, const RatVector& constant,
                       std::size_t total) {
  RatVector w = zeros(total);
  for (const auto& b : blocks)
    for (std::size_t i = 0; i < c.coeffs.size(); ++i) w[b.offset + i] += b.coeff * c.coeffs[i];
  return {std::move(w), c.rhs - dot(c.coeffs, constant), c.strict};
}

std::vector<Block> all_blocks(std::size_t count, std::size_t n, const Rational& coeff) {
  std::vector<Block> b;
  for (std::size_t j = 0; j < count; ++j) b.push_back({j * n, coeff});
  return b;
}

LpBuilder decomposition_region(const RkInstance& inst, const RatVector& x, bool equality) {
  const std::size_t n = inst.dim();
  const std::size_t N = inst.ops.size();
  LpBuilder lp(N * n);
  const auto& k = inst.space.closure();
  for (std::size_t j = 0; j < N; ++j) lp.in_cone(k, {{j * n, 1}}, zeros(n));
  if (equality) {
    lp.equal(all_blocks(N, n, 1), negate(x));
  } else {
    lp.in_cone(k, all_blocks(N, n, -1), x);
  }
  return lp;
}

RatVector coordinate_objective(const RkInstance& inst, const LpBuilder& lp, std::size_t i) {
  const std::size_t n = inst.dim();
  RatVector obj = zeros(lp.dim());
  for (std::size_t j = 0; j < inst.ops.size(); ++j) obj = add(obj, lp.objective(inst.ops[j].row(i), {{j * n, 1}}));
  return obj;
}

[[noreturn]] void unbounded(const OrderedSpace& space) {
  if (space.closure().pointed()) throw InternalError("RK linear program unbounded over a pointed cone");
  throw PreconditionError("operators are not order bounded on this cone");
}

std::vector<RatVector> split(const RatVector& v, std::size_t N, std::size_t n) {
  std::vector<RatVector> out;
  for (std::size_t j = 0; j < N; ++j) out.push_back(slice(v, j * n, n));
  return out;
}

// Looks for a decomposition with every piece in the (semi-open) cone itself.
std::optional<std::vector<RatVector>> attained_decomposition(const RkInstance& inst, const RatVector& x,
                                                             const RatVector& value, bool equality) {
  const std::size_t n = inst.dim();
  const std::size_t N = inst.ops.size();
  const std::size_t slots = N + (equality ? 0 : 1);
  const auto& cells = inst.space.positive_cells().cells;
  std::size_t combos = 1;
  for (std::size_t s = 0; s < slots; ++s) {
    combos *= cells.size();
    if (combos > 4096) throw CapacityError("attainment search exceeds its cell-combination budget");
  }
  LpBuilder base = decomposition_region(inst, x, equality);
  for (std::size_t i = 0; i < value.size(); ++i) {
    base.add_ge(coordinate_objective(inst, base, i), value[i]);
  }
  std::vector<LinearConstraint> common = base.inequalities();
  for (const auto& e : base.equalities()) {
    common.push_back(e);
    common.push_back(LinearConstraint::ge(negate(e.coeffs), -e.rhs));
  }
  std::vector<std::size_t> pick(slots, 0);
  for (std::size_t c = 0; c < combos; ++c) {
    std::size_t rest = c;
    for (auto& p : pick) {
      p = rest % cells.size();
      rest /= cells.size();
    }
    auto sys = common;
    for (std::size_t j = 0; j < N; ++j)
      for (const auto& r : cells[pick[j]].constraints) sys.push_back(place(r, {{j * n, 1}}, zeros(n), N * n));
    if (!equality)
      for (const auto& r : cells[pick[N]].constraints) sys.push_back(place(r, all_blocks(N, n, -1), x, N * n));
    if (auto f = strict_feasible(sys, N * n); f.feasible) return split(*f.point, N, n);
  }
  return std::nullopt;
}

RkValue evaluate(const RkInstance& inst, const RatVector& x, bool equality) {
  require_same_size(x.size(), inst.dim(), "RK point");
  if (!inst.space.contains(x)) throw PreconditionError("RK point " + to_string(x) + " is not in X+");
  const std::size_t n = inst.dim();
  const std::size_t N = inst.ops.size();
  const std::size_t m = inst.codomain_dim();
  const LpBuilder lp = decomposition_region(inst, x, equality);
  RkValue out;
  RatVector first_point;
  for (std::size_t i = 0; i < m; ++i) {
    const auto r = lp_solve(lp.problem(coordinate_objective(inst, lp, i)));
    if (r.status == LpStatus::Unbounded) unbounded(inst.space);
    if (r.status == LpStatus::Infeasible) throw InternalError("RK decomposition region is empty");
    out.value.push_back(r.value);
    if (i == 0) first_point = r.point;
  }
  std::optional<std::vector<RatVector>> decomp;
  if (m == 1) {
    decomp = split(first_point, N, n);
  } else {
    LpBuilder joint = lp;
    for (std::size_t i = 0; i < m; ++i) joint.add_ge(coordinate_objective(inst, joint, i), out.value[i]);
    const auto r = lp_solve(joint.problem(zeros(joint.dim())));
    if (r.optimal()) decomp = split(r.point, N, n);
  }
  if (!inst.space.is_closed() && decomp) {
    bool inside = true;
    RatVector total = zeros(n);
    for (const auto& p : *decomp) {
      inside = inside && inst.space.contains(p);
      total = add(total, p);
    }
    if (!equality) inside = inside && inst.space.contains(sub(x, total));
    if (!inside) decomp = attained_decomposition(inst, x, out.value, equality);
  }
  out.attained = decomp.has_value();
  out.decomposition = std::move(decomp);
  return out;
}

}  // namespace

RkValue rk_eval(const RkInstance& inst, const RatVector& x) { return evaluate(inst, x, false); }

RkValue rk_eval_equality_form(const RkInstance& inst, const RatVector& x) { return evaluate(inst, x, true); }

RkValue rk_positive(const RkInstance& inst, const RatVector& x) { return evaluate(inst.with_zero(), x, false); }

DualPolyhedron dual_polyhedron(const RkInstance& inst) {
  const std::size_t n = inst.dim();
  const auto& k = inst.space.closure();
  DualPolyhedron d;
  d.dim = n;
  for (std::size_t i = 0; i < inst.codomain_dim(); ++i) {
    std::vector<LinearConstraint> cs;
    bool bounded = true;
    for (const auto& g : k.rays) {
      Rational lower = 0;
      for (const auto& t : inst.ops) lower = max(lower, dot(t.row(i), g));
      cs.push_back(LinearConstraint::ge(g, lower));
    }
    for (const auto& l : k.lineality) {
      auto eq = equality_rows(l, 0);
      cs.insert(cs.end(), eq.begin(), eq.end());
      for (const auto& t : inst.ops) bounded = bounded && dot(t.row(i), l).is_zero();
    }
    for (const auto& e : k.equations) {
      auto eq = equality_rows(e, 0);
      cs.insert(cs.end(), eq.begin(), eq.end());
    }
    if (!bounded) cs.push_back(LinearConstraint::ge(zeros(n), 1));
    d.coordinates.emplace_back(n, std::move(cs));
  }
  return d;
}

RatVector dual_value(const DualPolyhedron& d, const RatVector& x) {
  require_same_size(x.size(), d.dim, "dual evaluation point");
  RatVector out;
  for (const auto& cell : d.coordinates) {
    const auto r = lp_solve({x, cell.constraints, {}, Sense::Minimize});
    if (r.status == LpStatus::Infeasible) throw PreconditionError("dual polyhedron is empty: operators not order bounded");
    if (r.status == LpStatus::Unbounded) throw PreconditionError("dual minimum unbounded: point outside the cone");
    out.push_back(r.value);
  }
  return out;
}

namespace {

std::optional<RatVector> least_vertex(const OrderedSpace& space, const std::vector<RatVector>& verts) {
  for (const auto& v : verts) {
    bool least = true;
    for (const auto& w : verts) {
      if (&w == &v) continue;
      if (!is_positive_functional(space, sub(w, v))) {
        least = false;
        break;
      }
    }
    if (least) return v;
  }
  return std::nullopt;
}

// A point of relint closure(X+) where v is the unique minimizer over D.
std::optional<RatVector> relevance_point(const OrderedSpace& space, const std::vector<RatVector>& verts,
                                         const RatVector& v) {
  std::vector<RatVector> gens = space.closure().rays;
  for (const auto& l : space.closure().lineality) {
    gens.push_back(l);
    gens.push_back(negate(l));
  }
  const std::size_t g = gens.size();
  std::vector<LinearConstraint> cs;
  for (std::size_t k = 0; k < g; ++k) cs.push_back(LinearConstraint::gt(unit(g, k), 0));
  for (const auto& w : verts) {
    if (w == v) continue;
    const RatVector diff = sub(w, v);
    RatVector row(g);
    for (std::size_t k = 0; k < g; ++k) row[k] = dot(diff, gens[k]);
    cs.push_back(LinearConstraint::gt(std::move(row), 0));
  }
  const auto f = strict_feasible(cs, g);
  if (!f.feasible) return std::nullopt;
  RatVector x = zeros(space.dim());
  for (std::size_t k = 0; k < g; ++k) x = add(x, scale(gens[k], (*f.point)[k]));
  return primitive(x);
}

}  // namespace

LinearityResult rk_linearity(const RkInstance& inst, std::size_t budget) {
  const auto& space = inst.space;
  LinearityResult out;
  out.boundary_status = space.is_closed() ? "verified" : "unverified";
  if (!space.is_closed() && !has_interior(space)) {
    throw PreconditionError("linearity on {0} u int X+ needs a cone with interior");
  }
  const auto d = dual_polyhedron(inst);
  std::vector<RatVector> rows;
  for (std::size_t i = 0; i < inst.codomain_dim(); ++i) {
    const auto verts = cell_vertices(d.coordinates[i], budget).vertices;
    if (verts.empty()) throw PreconditionError("dual polyhedron is empty: operators not order bounded");
    if (auto h = least_vertex(space, verts)) {
      rows.push_back(std::move(*h));
      continue;
    }
    std::vector<RatVector> pts;
    for (const auto& v : verts) {
      if (auto p = relevance_point(space, verts, v)) pts.push_back(std::move(*p));
      if (pts.size() == 2) break;
    }
    if (pts.size() < 2) throw InternalError("no pair of separating regions for a non-least dual polyhedron");
    NonlinearWitness w;
    w.coordinate = i;
    w.x = pts[0];
    w.y = pts[1];
    w.rk_x = rk_eval(inst, w.x).value;
    w.rk_y = rk_eval(inst, w.y).value;
    w.rk_sum = rk_eval(inst, add(w.x, w.y)).value;
    if (!(w.rk_sum[i] > w.rk_x[i] + w.rk_y[i])) throw InternalError("nonlinearity witness failed re-evaluation");
    out.witness = std::move(w);
    return out;
  }
  out.linear = true;
  out.op = LinearOperator(RatMatrix(std::move(rows), inst.dim()));
  for (const auto& t : inst.ops)
    if (!is_positive(space, *out.op - t)) throw InternalError("least dual element does not majorize the collection");
  return out;
}

SupResult sup_operator(const RkInstance& inst, std::uint64_t seed, std::size_t samples) {
  SupResult out;
  const auto lin = rk_linearity(inst);
  if (!lin.linear) {
    out.witness = lin.witness;
    return out;
  }
  const LinearOperator& s = *lin.op;
  out.sup = s;
  out.majorizes = true;
  for (const auto& t : inst.ops) out.majorizes = out.majorizes && is_positive(inst.space, s - t);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> weight(1, 5);
  std::uniform_int_distribution<long> push(0, 2);
  const auto d = dual_polyhedron(inst);
  out.least_on_samples = true;
  for (std::size_t i = 0; i < inst.codomain_dim(); ++i) {
    const auto verts = cell_vertices(d.coordinates[i]).vertices;
    for (std::size_t k = 0; k < samples; ++k) {
      RatVector h = zeros(inst.dim());
      long total = 0;
      for (const auto& v : verts) {
        const long w = weight(rng);
        total += w;
        h = add(h, scale(v, w));
      }
      h = scale(h, Rational(1) / Rational(total));
      for (const auto& f : inst.space.closure().facets) h = add(h, scale(f, push(rng)));
      if (!d.contains(i, h)) throw InternalError("sampled dual element left the dual polyhedron");
      out.least_on_samples = out.least_on_samples && is_positive_functional(inst.space, sub(h, s.row(i)));
    }
  }
  return out;
}

RatVector nested_rk_value(const OrderedSpace& space, const LinearOperator& q, const LinearOperator& r,
                          const LinearOperator& s, const RatVector& w) {
  require_same_size(w.size(), space.dim(), "RK point");
  if (!space.contains(w)) throw PreconditionError("RK point " + to_string(w) + " is not in X+");
  const std::size_t n = space.dim();
  const auto& k = space.closure();
  // Variables a, z, x1, x2.
  LpBuilder lp(4 * n);
  const std::size_t a = 0;
  const std::size_t z = n;
  const std::size_t x1 = 2 * n;
  const std::size_t x2 = 3 * n;
  lp.in_cone(k, {{a, 1}}, zeros(n));
  lp.in_cone(k, {{z, 1}}, zeros(n));
  lp.in_cone(k, {{a, -1}, {z, -1}}, w);
  lp.in_cone(k, {{x1, 1}}, zeros(n));
  lp.in_cone(k, {{x2, 1}}, zeros(n));
  lp.in_cone(k, {{a, 1}, {x1, -1}, {x2, -1}}, zeros(n));
  RatVector out;
  for (std::size_t i = 0; i < q.codomain_dim(); ++i) {
    RatVector obj = add(add(lp.objective(q.row(i), {{x1, 1}}), lp.objective(r.row(i), {{x2, 1}})),
                        lp.objective(s.row(i), {{z, 1}}));
    const auto res = lp_solve(lp.problem(std::move(obj)));
    if (res.status == LpStatus::Unbounded) unbounded(space);
    if (!res.optimal()) throw InternalError("nested RK region is empty");
    out.push_back(res.value);
  }
  return out;
}

AssociativityReport check_associativity(const OrderedSpace& space, const LinearOperator& q, const LinearOperator& r,
                                        const LinearOperator& s, const std::vector<RatVector>& samples) {
  AssociativityReport rep;
  const RkInstance flat(space, {q, r, s});
  const RkInstance inner(space, {q, r});
  const auto lin = rk_linearity(inner);
  std::optional<RkInstance> reduced;
  if (lin.linear) {
    rep.method = "dual";
    reduced.emplace(space, std::vector<LinearOperator>{*lin.op, s});
    const auto d1 = dual_polyhedron(flat);
    const auto d2 = dual_polyhedron(*reduced);
    for (std::size_t i = 0; i < d1.coordinates.size(); ++i) {
      const auto a = CellUnion::single(d1.coordinates[i]);
      const auto b = CellUnion::single(d2.coordinates[i]);
      rep.agree = rep.agree && subset_of(a, b).holds && subset_of(b, a).holds;
    }
  } else {
    rep.method = "nested";
  }
  for (const auto& x : samples) {
    rep.flat.push_back(rk_eval(flat, x).value);
    rep.nested.push_back(reduced ? rk_eval(*reduced, x).value : nested_rk_value(space, q, r, s, x));
    for (std::size_t i = 0; i < rep.flat.back().size(); ++i) {
      const Rational gap = (rep.flat.back()[i] - rep.nested.back()[i]).abs();
      rep.max_discrepancy = max(rep.max_discrepancy, gap);
    }
  }
  rep.agree = rep.agree && rep.max_discrepancy.is_zero();
  return rep;
}

}  // namespace ordercone
