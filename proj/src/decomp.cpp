#include "ordercone/decomp.hpp"

#include "ordercone/errors.hpp"
#include "ordercone/lp_builder.hpp"

namespace ordercone {

namespace {

void require_in_cone(const OrderedSpace& space, const RatVector& v, const char* what) {
  require_same_size(v.size(), space.dim(), what);
  if (!space.contains(v)) throw PreconditionError(std::string(what) + " " + to_string(v) + " is not in X+");
}

struct Separator {
  RatVector f;
  Rational bound;
};

// Separates p from the Minkowski sum of the summands: max f.p - sum beta_k over
// {f.v <= beta_k on vertices of summand k, f.r <= 0 on rays, f.l = 0 on lineality, |f_i| <= 1},
// then least l1 norm among maximizers. Variables (f, beta_1..beta_s, u).
std::optional<Separator> separating_functional(const RatVector& p, const std::vector<VertexList>& summands) {
  const std::size_t n = p.size();
  const std::size_t ns = summands.size();
  const std::size_t u = n + ns;
  const std::size_t width = 2 * n + ns;
  LpBuilder lp(width);
  RatVector margin = lp.objective(p, {{0, 1}});
  for (std::size_t k = 0; k < ns; ++k) {
    const auto& v = summands[k];
    for (const auto& x : v.vertices) {
      RatVector row = lp.objective(negate(x), {{0, 1}});
      row[n + k] = 1;
      lp.add_ge(std::move(row), 0);
    }
    for (const auto& r : v.rays) lp.row_ge(negate(r), {{0, 1}}, 0);
    for (const auto& l : v.lineality) lp.add_eq(lp.objective(l, {{0, 1}}), 0);
    margin[n + k] = -1;
  }
  for (std::size_t i = 0; i < n; ++i) {
    lp.add_ge(lp.objective(unit(n, i), {{0, -1}}), -1);
    lp.add_ge(lp.objective(unit(n, i), {{0, 1}}), -1);
  }
  const auto first = lp_solve(lp.problem(margin));
  if (!first.optimal()) throw InternalError("separation LP did not reach an optimum");
  if (first.value <= 0) return std::nullopt;
  lp.add_ge(margin, first.value);
  RatVector norm = zeros(width);
  for (std::size_t i = 0; i < n; ++i) {
    RatVector a = zeros(width);
    a[u + i] = 1;
    a[i] = -1;
    lp.add_ge(a, 0);
    a[i] = 1;
    lp.add_ge(std::move(a), 0);
    norm[u + i] = 1;
  }
  const auto second = lp_solve(lp.problem(norm, Sense::Minimize));
  if (!second.optimal()) throw InternalError("separation norm LP did not reach an optimum");
  RatVector f = primitive(slice(second.point, 0, n));
  Rational bound = 0;
  for (const auto& v : summands) {
    Rational top = dot(f, v.vertices.front());
    for (const auto& x : v.vertices) top = max(top, dot(f, x));
    bound += top;
  }
  return Separator{std::move(f), std::move(bound)};
}

CellUnion lineality_span(const OrderedSpace& space) {
  const auto& lin = space.closure().lineality;
  std::vector<LinearConstraint> cs;
  if (lin.empty()) {
    for (std::size_t i = 0; i < space.dim(); ++i) {
      auto eq = equality_rows(unit(space.dim(), i), 0);
      cs.insert(cs.end(), eq.begin(), eq.end());
    }
  } else {
    for (const auto& e : nullspace(RatMatrix(lin, space.dim()))) {
      auto eq = equality_rows(e, 0);
      cs.insert(cs.end(), eq.begin(), eq.end());
    }
  }
  return CellUnion::single(Cell(space.dim(), std::move(cs)));
}

bool has_full_dimensional_cell(const CellUnion& set) {
  for (const auto& c : set.cells)
    if (!c.all_strict().is_empty()) return true;
  return false;
}

Rational centroid_weight(std::size_t count) { return Rational(1) / Rational(static_cast<long>(count)); }

RatVector centroid(const std::vector<RatVector>& pts) {
  RatVector c = zeros(pts.front().size());
  for (const auto& p : pts) c = add(c, p);
  return scale(c, centroid_weight(pts.size()));
}

CellUnion slice_at(const CellUnion& set, const RatVector& f, const Rational& level) {
  CellUnion out(set.dim, {}, set.convex_hint);
  for (const auto& c : set.cells) {
    Cell s = c;
    auto eq = equality_rows(f, level);
    s.constraints.insert(s.constraints.end(), eq.begin(), eq.end());
    if (!s.is_empty()) out.cells.push_back(std::move(s));
  }
  return out;
}


// Closed pointed cones: the intervals are polytopes, so [0,x+y] is inside the sum iff its
// vertices are.
struct ClosedCheck {
  std::vector<RatVector> witnesses;
  VertexList vx;
  VertexList vy;
};

// v in [0,x] + [0,y] iff some u has 0 <= u <= x and 0 <= v - u <= y.
bool in_interval_sum(const ClosedCone& k, const RatVector& v, const RatVector& x, const RatVector& y) {
  std::vector<LinearConstraint> cs;
  for (const auto& a : k.facets) {
    cs.push_back(LinearConstraint::ge(a, 0));
    cs.push_back(LinearConstraint::ge(negate(a), -dot(a, x)));
    cs.push_back(LinearConstraint::ge(negate(a), -dot(a, v)));
    cs.push_back(LinearConstraint::ge(a, dot(a, v) - dot(a, y)));
  }
  for (const auto& e : k.equations) {
    auto eq = equality_rows(e, 0);
    cs.insert(cs.end(), eq.begin(), eq.end());
  }
  return !Cell(v.size(), std::move(cs)).is_empty();
}

ClosedCheck closed_check(const OrderedSpace& space, const RatVector& x, const RatVector& y) {
  const auto zero = zeros(space.dim());
  ClosedCheck out;
  out.vx = vertices(order_interval(space, zero, x).set);
  out.vy = vertices(order_interval(space, zero, y).set);
  const auto whole = order_interval(space, zero, add(x, y)).set;
  for (const auto& a : out.vx.vertices)
    for (const auto& b : out.vy.vertices)
      if (!contains(whole, add(a, b))) throw InternalError("[0,x] + [0,y] is not inside [0,x+y]");
  for (const auto& v : vertices(whole).vertices)
    if (!in_interval_sum(space.closure(), v, x, y)) out.witnesses.push_back(v);
  return out;
}

bool closed_fast_path(const OrderedSpace& space) { return space.is_closed() && space.closure().pointed(); }

}  // namespace

RdpReport check_rdp(const OrderedSpace& space, const RatVector& x, const RatVector& y) {
  require_in_cone(space, x, "x");
  require_in_cone(space, y, "y");
  RdpReport rep;
  rep.x = x;
  rep.y = y;
  if (closed_fast_path(space)) {
    rep.witnesses = closed_check(space, x, y).witnesses;
    rep.holds = rep.witnesses.empty();
    if (!rep.holds) rep.witness = rep.witnesses.front();
    return rep;
  }
  const auto whole = order_interval(space, zeros(space.dim()), add(x, y)).set;
  const auto sum = minkowski_sum(order_interval(space, zeros(space.dim()), x).set,
                                 order_interval(space, zeros(space.dim()), y).set);
  if (!subset_of(sum, whole).holds) throw InternalError("[0,x] + [0,y] is not inside [0,x+y]");
  // Cheap first pass over the vertices of the closed interval.
  if (space.closure().pointed()) {
    for (const auto& v : vertices(closure(whole)).vertices) {
      if (contains(whole, v) && !contains(sum, v)) {
        rep.witnesses.push_back(v);
        break;
      }
    }
  }
  for (auto& w : difference_witnesses(whole, sum)) rep.witnesses.push_back(std::move(w));
  rep.holds = rep.witnesses.empty();
  if (!rep.holds) rep.witness = rep.witnesses.front();
  for (const auto& w : rep.witnesses)
    if (!contains(whole, w) || contains(sum, w)) throw InternalError("RDP witness failed re-verification");
  return rep;
}

RdpReport check_lrdp(const OrderedSpace& space, const RatVector& x, const RatVector& y, FunctionalClass cls) {
  if (closed_fast_path(space)) {
    // Compact intervals: the sum is closed, so L-RDP for All is RDP itself.
    require_in_cone(space, x, "x");
    require_in_cone(space, y, "y");
    RdpReport rep;
    rep.x = x;
    rep.y = y;
    auto check = closed_check(space, x, y);
    rep.witnesses = std::move(check.witnesses);
    rep.holds = rep.witnesses.empty();
    rep.lrdp_holds = rep.holds;
    if (rep.holds) return rep;
    rep.witness = rep.witnesses.front();
    rep.lrdp_witness = rep.witness;
    const auto sep = separating_functional(*rep.witness, {check.vx, check.vy});
    if (!sep) throw InternalError("vertex outside the sum admits no strict separator");
    rep.separator = SeparationResult{LinearOperator::functional(sep->f), sep->bound, dot(sep->f, *rep.witness), true};
    if (cls == FunctionalClass::Regular) {
      rep.regular_split = regular_split(space, sep->f);
      if (!rep.regular_split) throw InternalError("closed pointed cone left a separator without a regular split");
    }
    return rep;
  }
  RdpReport rep = check_rdp(space, x, y);
  const auto whole = order_interval(space, zeros(space.dim()), add(x, y)).set;
  const auto sum = minkowski_sum(order_interval(space, zeros(space.dim()), x).set,
                                 order_interval(space, zeros(space.dim()), y).set);
  const auto inside = subset_of_closure(whole, sum);
  rep.lrdp_holds = inside.holds;
  if (inside.holds) return rep;
  rep.lrdp_witness = inside.witness;
  rep.separator = strict_separation(*inside.witness, sum);
  if (!rep.separator) throw InternalError("point outside the closure admits no strict separator");
  if (cls == FunctionalClass::All) return rep;
  rep.regular_split = regular_split(space, rep.separator->separator.row(0));
  if (rep.regular_split) return rep;
  // Regular functionals are the ones vanishing on the lineality of the closure, so search
  // for a separator from sum + span(lineality).
  const auto widened = minkowski_sum(sum, lineality_span(space));
  const auto regular_inside = subset_of_closure(whole, widened);
  if (regular_inside.holds) {
    rep.lrdp_holds = true;
    rep.lrdp_witness.reset();
    rep.separator.reset();
    return rep;
  }
  rep.lrdp_witness = regular_inside.witness;
  rep.separator = strict_separation(*regular_inside.witness, widened);
  if (!rep.separator) throw InternalError("point outside the widened closure admits no strict separator");
  rep.regular_split = regular_split(space, rep.separator->separator.row(0));
  if (!rep.regular_split) throw InternalError("separator vanishing on the lineality is not regular");
  return rep;
}

std::optional<SeparationResult> strict_separation(const RatVector& point, const CellUnion& set) {
  require_same_size(point.size(), set.dim, "separation point");
  require_convex(set, "strict_separation");
  if (is_empty(set)) throw PreconditionError("strict_separation: empty set");
  const auto v = generators(set);
  const auto sep = separating_functional(point, {v});
  if (!sep) return std::nullopt;
  SeparationResult r{LinearOperator::functional(sep->f), sep->bound, dot(sep->f, point), true};
  if (!(r.value > r.bound)) throw InternalError("separator margin is not positive");
  return r;
}

std::optional<RegularSplit> regular_split(const OrderedSpace& space, const RatVector& f) {
  require_same_size(f.size(), space.dim(), "functional");
  const std::size_t n = space.dim();
  const auto& k = space.closure();
  LpBuilder lp(n);
  for (const auto& r : k.rays) {
    lp.row_ge(r, {{0, 1}}, 0);
    lp.row_ge(r, {{0, 1}}, -dot(f, r));
  }
  for (const auto& l : k.lineality) {
    if (!dot(f, l).is_zero()) return std::nullopt;
    lp.add_eq(l, 0);
  }
  RatVector e = zeros(n);
  for (const auto& r : k.rays) e = add(e, r);
  const auto res = lp_solve(lp.problem(e, Sense::Minimize));
  if (!res.optimal()) return std::nullopt;
  RegularSplit s{add(f, res.point), res.point};
  if (!is_positive_functional(space, s.f0) || !is_positive_functional(space, s.f1)) {
    throw InternalError("regular split left the dual cone");
  }
  return s;
}

RegularSeparator separate_by_regular(const OrderedSpace& space, const CellUnion& k0, const CellUnion& k1) {
  const std::size_t n = space.dim();
  require_same_size(k0.dim, n, "K0");
  require_same_size(k1.dim, n, "K1");
  if (!is_generating(space)) throw PreconditionError("separate_by_regular: X+ is not generating");
  if (!has_bounded_aperture(space)) throw PreconditionError("separate_by_regular: X+ lacks bounded aperture");
  if (is_empty(k0) || is_empty(k1)) throw PreconditionError("separate_by_regular: K0 and K1 must be nonempty");
  if (!subset_of(k0, space.positive_cells()).holds || !subset_of(k1, space.positive_cells()).holds) {
    throw PreconditionError("separate_by_regular: K0 and K1 must lie in X+");
  }
  if (!is_empty(intersect(k0, k1))) throw PreconditionError("separate_by_regular: K0 and K1 intersect");
  if (!has_full_dimensional_cell(k0)) throw PreconditionError("separate_by_regular: K0 has no internal point");
  require_convex(k0, "K0");
  require_convex(k1, "K1");

  const auto pf = strictly_positive_functional(space);
  const RatVector& fp = pf->f;
  const auto v0 = vertices(closure(slice_at(k0, fp, 1))).vertices;
  const auto v1 = vertices(closure(slice_at(k1, fp, 1))).vertices;
  const RatVector c0 = centroid(v0);
  const RatVector c1 = centroid(v1);

  // Hyperplane g = alpha in the affine hull of the base with A0 below and A1 above.
  LpBuilder lp(n + 1);
  for (const auto& v : v0) {
    RatVector row = lp.objective(negate(v), {{0, 1}});
    row[n] = 1;
    lp.add_ge(std::move(row), 0);
  }
  for (const auto& w : v1) {
    RatVector row = lp.objective(w, {{0, 1}});
    row[n] = -1;
    lp.add_ge(std::move(row), 0);
  }
  for (std::size_t i = 0; i < n; ++i) {
    lp.add_ge(lp.objective(unit(n, i), {{0, -1}}), -1);
    lp.add_ge(lp.objective(unit(n, i), {{0, 1}}), -1);
  }
  const auto sep = lp_solve(lp.problem(lp.objective(sub(c1, c0), {{0, 1}})));
  if (!sep.optimal() || sep.value <= 0) throw InternalError("no hyperplane separates the base slices");
  const RatVector g = slice(sep.point, 0, n);
  const Rational alpha = sep.point[n];

  const RatVector& x0 = c0;
  const Rational gx0 = dot(g, x0);
  if (!(gx0 < alpha)) throw InternalError("centroid of A0 lies on the separating hyperplane");
  // s is 1 at x0 and 0 on H, extended linearly via fp = 1 on the base.
  const RatVector s = scale(sub(g, scale(fp, alpha)), Rational(1) / (gx0 - alpha));
  Rational c = 0;
  for (const auto& b : vertices(closure(pf->base)).vertices) c = max(c, dot(s, b).abs());
  if (c.is_zero()) throw InternalError("aperture constant vanished");
  RegularSeparator out;
  out.aperture = c;
  const RatVector half = scale(s, Rational(1) / (Rational(2) * c));
  out.f0 = sub(fp, half);
  out.f1 = add(fp, half);
  out.f = sub(out.f0, out.f1);
  if (!is_positive_functional(space, out.f0) || !is_positive_functional(space, out.f1)) {
    throw InternalError("constructed f0, f1 are not positive");
  }
  for (const auto& v : v0)
    if (dot(out.f, v) > 0) throw InternalError("separator positive on K0");
  for (const auto& w : v1)
    if (dot(out.f, w) < 0) throw InternalError("separator negative on K1");
  return out;
}

RegularHyperplane hyperplane_as_regular(const OrderedSpace& space, const RatVector& normal, const Rational& offset) {
  require_same_size(normal.size(), space.dim(), "hyperplane normal");
  if (is_zero(normal)) throw PreconditionError("hyperplane normal is zero");
  if (!is_generating(space)) throw PreconditionError("hyperplane_as_regular: X+ is not generating");
  if (!has_bounded_aperture(space)) throw PreconditionError("hyperplane_as_regular: X+ lacks bounded aperture");
  if (!has_interior(space)) throw PreconditionError("hyperplane_as_regular: X+ has no internal point");
  RegularHyperplane out{normal, offset, {}};
  if (!is_positive_functional(space, normal) && !is_positive_functional(space, negate(normal))) {
    RatVector h = normal;
    auto side = [&](const RatVector& dir) {
      CellUnion k(space.dim(), {}, true);
      for (const auto& c : space.positive_cells().cells) {
        Cell cell = c;
        cell.constraints.push_back(LinearConstraint::gt(dir, 0));
        if (!cell.is_empty()) k.cells.push_back(std::move(cell));
      }
      return k;
    };
    CellUnion k0 = side(negate(h));
    CellUnion k1 = side(h);
    if (!has_full_dimensional_cell(k0)) std::swap(k0, k1);
    const auto sep = separate_by_regular(space, k0, k1);
    // The separator vanishes on H - x0, so it is a multiple of the normal.
    std::size_t i = 0;
    while (normal[i].is_zero()) ++i;
    const Rational lambda = sep.f[i] / normal[i];
    if (lambda.is_zero() || scale(normal, lambda) != sep.f) throw InternalError("separator is not proportional to the normal");
  }
  auto split = regular_split(space, normal);
  if (!split) throw InternalError("normal admits no regular split");
  out.split = std::move(*split);
  return out;
}

std::optional<DifferencePoint> internal_of_difference(const CellUnion& a, const CellUnion& b) {
  require_same_size(a.dim, b.dim, "internal_of_difference");
  if (is_empty(a) || is_empty(b)) throw PreconditionError("internal_of_difference: sets must be nonempty");
  for (const auto* set : {&a, &b})
    for (const auto& c : set->cells)
      for (const auto& r : c.constraints)
        if (!r.strict) throw PreconditionError("internal_of_difference: sets must be line-open");
  require_convex(a, "A");
  require_convex(b, "B");
  if (!subset_of(b, a).holds) throw PreconditionError("internal_of_difference: B is not inside A");
  const auto diff = subset_of(a, b);
  if (diff.holds) return std::nullopt;
  const RatVector& y0 = *diff.witness;
  RatVector x0;
  for (const auto& c : b.cells) {
    if (auto p = c.point()) {
      x0 = std::move(*p);
      break;
    }
  }
  // g <= g(y0) on closure(B), maximal gap at x0.
  const auto v = generators(b);
  const std::size_t n = a.dim;
  LpBuilder lp(n);
  for (const auto& x : v.vertices) lp.row_ge(sub(y0, x), {{0, 1}}, 0);
  for (const auto& r : v.rays) lp.row_ge(negate(r), {{0, 1}}, 0);
  for (const auto& l : v.lineality) lp.add_eq(l, 0);
  for (std::size_t i = 0; i < n; ++i) {
    lp.add_ge(lp.objective(unit(n, i), {{0, -1}}), -1);
    lp.add_ge(lp.objective(unit(n, i), {{0, 1}}), -1);
  }
  const auto res = lp_solve(lp.problem(sub(y0, x0)));
  if (!res.optimal() || res.value <= 0) throw InternalError("no functional separates y0 from B");
  DifferencePoint out;
  out.g = primitive(res.point);
  out.alpha = dot(out.g, y0);
  // Push past y0 along the ray from x0, staying inside the open cell of A holding y0.
  const RatVector d = sub(y0, x0);
  const Cell* home = nullptr;
  for (const auto& c : a.cells)
    if (c.contains(y0)) home = &c;
  std::optional<Rational> mu_max;
  for (const auto& r : home->constraints) {
    const Rational slope = dot(r.coeffs, d);
    if (slope >= 0) continue;
    const Rational room = (dot(r.coeffs, y0) - r.rhs) / -slope;
    if (!mu_max || room < *mu_max) mu_max = room;
  }
  const Rational mu = mu_max ? min(Rational(1), *mu_max / 2) : Rational(1);
  out.point = add(y0, scale(d, mu));
  if (!contains(a, out.point) || !(dot(out.g, out.point) > out.alpha)) {
    throw InternalError("pushed point left A or failed the cut");
  }
  return out;
}

}  // namespace ordercone
