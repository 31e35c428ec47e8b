#include "ordercone/ordered_space.hpp"

#include <atomic>
#include <charconv>

#include "ordercone/errors.hpp"

namespace ordercone {

namespace {
std::atomic<std::size_t> g_dimension_cap{6};

Cell homogeneous_cell(std::size_t dim, const ClosedCone& c) { return Cell(dim, c.constraints()); }

// Does the cell contain e + t d for all sufficiently small t > 0?
bool contains_germ(const Cell& cell, std::span<const Rational> e, std::span<const Rational> d) {
  for (const auto& c : cell.constraints) {
    const Rational at = dot(c.coeffs, e);
    if (at > c.rhs) continue;
    if (at < c.rhs) return false;
    const int s = dot(c.coeffs, d).sign();
    if (s > 0) continue;
    if (s < 0 || c.strict) return false;
  }
  return true;
}

std::size_t parse_size(const std::string& s, const std::string& id) {
  std::size_t v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || v == 0) throw InputError("bad dimension in space id '" + id + "'");
  return v;
}
}  // namespace

std::size_t dimension_cap() { return g_dimension_cap.load(); }
void set_dimension_cap(std::size_t cap) { g_dimension_cap.store(cap); }

const char* to_string(ConeKind k) {
  switch (k) {
    case ConeKind::ClosedH:
      return "closed_h";
    case ConeKind::ClosedV:
      return "closed_v";
    case ConeKind::SemiOpen:
      return "semi_open";
    case ConeKind::Lexicographic:
      return "lexicographic";
  }
  return "?";
}

void OrderedSpace::finish(bool check_pointed) {
  if (dim_ == 0) throw PreconditionError("ordered space needs dimension >= 1");
  if (dim_ > dimension_cap()) {
    throw CapacityError("dimension " + std::to_string(dim_) + " exceeds the cap " + std::to_string(dimension_cap()));
  }
  if (is_closed()) {
    cells_ = CellUnion::single(homogeneous_cell(dim_, closure_));
    if (check_pointed && !closure_.pointed()) throw PreconditionError("cone is not pointed");
    return;
  }
  for (const auto& c : cells_.cells)
    for (const auto& r : c.constraints)
      if (!r.rhs.is_zero()) throw PreconditionError("cone cells must be homogeneous");
  cells_ = prune_empty(cells_);
  cells_.convex_hint = true;
  if (!ordercone::contains(cells_, zeros(dim_))) throw PreconditionError("cone must contain the origin");
  require_convex(cells_, "cone");
  std::vector<RatVector> rays;
  std::vector<RatVector> lin;
  for (const auto& c : cells_.cells) {
    const auto v = cell_vertices(c.closure());
    rays.insert(rays.end(), v.rays.begin(), v.rays.end());
    lin.insert(lin.end(), v.lineality.begin(), v.lineality.end());
  }
  closure_ = ClosedCone::from_generators(rays, lin, dim_);
  if (!check_pointed) return;
  // x in Ci, -x in Cj, x != 0 must be infeasible for every pair.
  for (const auto& a : cells_.cells) {
    for (const auto& b : cells_.cells) {
      std::vector<LinearConstraint> base = a.constraints;
      for (const auto& r : b.constraints) base.push_back({negate(r.coeffs), r.rhs, r.strict});
      for (std::size_t k = 0; k < dim_; ++k) {
        for (int s : {1, -1}) {
          auto sys = base;
          sys.push_back(LinearConstraint::gt(scale(unit(dim_, k), s), 0));
          if (strict_feasible(sys, dim_).feasible) throw PreconditionError("cone is not pointed");
        }
      }
    }
  }
}

OrderedSpace OrderedSpace::closed_h(std::size_t dim, const std::vector<RatVector>& rows) {
  OrderedSpace s;
  s.dim_ = dim;
  s.kind_ = ConeKind::ClosedH;
  s.source_ = rows;
  if (dim > dimension_cap()) s.finish(true);
  s.closure_ = ClosedCone::from_inequalities(rows, dim);
  s.finish(true);
  return s;
}

OrderedSpace OrderedSpace::closed_v(std::size_t dim, const std::vector<RatVector>& generators) {
  OrderedSpace s;
  s.dim_ = dim;
  s.kind_ = ConeKind::ClosedV;
  s.source_ = generators;
  if (dim > dimension_cap()) s.finish(true);
  s.closure_ = ClosedCone::from_generators(generators, {}, dim);
  s.finish(true);
  return s;
}

OrderedSpace OrderedSpace::semi_open(CellUnion cone) {
  OrderedSpace s;
  s.dim_ = cone.dim;
  s.kind_ = ConeKind::SemiOpen;
  s.cells_ = std::move(cone);
  s.finish(true);
  return s;
}

OrderedSpace OrderedSpace::lexicographic(std::size_t dim) {
  OrderedSpace s;
  s.dim_ = dim;
  s.kind_ = ConeKind::Lexicographic;
  s.name_ = "lex:" + std::to_string(dim);
  std::vector<Cell> cells;
  for (std::size_t k = dim; k-- > 0;) {
    std::vector<LinearConstraint> cs;
    for (std::size_t j = k + 1; j < dim; ++j) {
      auto eq = equality_rows(unit(dim, j), 0);
      cs.insert(cs.end(), eq.begin(), eq.end());
    }
    cs.push_back({unit(dim, k), 0, k > 0});
    cells.emplace_back(dim, std::move(cs));
  }
  s.cells_ = CellUnion(dim, std::move(cells), true);
  s.finish(true);
  return s;
}

OrderedSpace OrderedSpace::whole_space(std::size_t dim) {
  OrderedSpace s;
  s.dim_ = dim;
  s.kind_ = ConeKind::ClosedH;
  s.name_ = "whole:" + std::to_string(dim);
  if (dim > dimension_cap()) s.finish(false);
  s.closure_ = ClosedCone::from_inequalities({}, dim);
  s.finish(false);
  return s;
}

OrderedSpace OrderedSpace::named(const std::string& id) {
  if (id.rfind("standard:", 0) == 0) {
    const std::size_t n = parse_size(id.substr(9), id);
    if (n > dimension_cap()) throw CapacityError("dimension exceeds the cap");
    std::vector<RatVector> rows;
    for (std::size_t i = 0; i < n; ++i) rows.push_back(unit(n, i));
    auto s = closed_h(n, rows);
    s.name_ = id;
    return s;
  }
  if (id.rfind("lex:", 0) == 0) return lexicographic(parse_size(id.substr(4), id));
  if (id == "example_s2") {
    Cell open(3, {LinearConstraint::gt(from_ints({1, 0, 0})), LinearConstraint::gt(from_ints({0, 1, 0})),
                  LinearConstraint::gt(from_ints({0, 0, 1}))});
    std::vector<LinearConstraint> diag = equality_rows(from_ints({0, 0, 1}), 0);
    auto xy = equality_rows(from_ints({1, -1, 0}), 0);
    diag.insert(diag.end(), xy.begin(), xy.end());
    diag.push_back(LinearConstraint::ge(from_ints({1, 0, 0})));
    auto s = semi_open(CellUnion(3, {open, Cell(3, diag)}, true));
    s.name_ = id;
    return s;
  }
  if (id == "square_cone") {
    auto s = closed_v(3, {from_ints({1, 1, 1}), from_ints({1, -1, 1}), from_ints({-1, 1, 1}), from_ints({-1, -1, 1})});
    s.name_ = id;
    return s;
  }
  throw InputError("unknown space id '" + id + "'");
}

bool OrderedSpace::contains(std::span<const Rational> x) const {
  require_same_size(x.size(), dim_, "cone membership");
  if (is_closed()) return closure_.contains(x);
  return ordercone::contains(cells_, x);
}

bool OrderedSpace::leq(std::span<const Rational> a, std::span<const Rational> b) const {
  require_same_size(a.size(), dim_, "order comparison");
  return contains(sub(b, a));
}

OrderInterval order_interval(const OrderedSpace& space, const RatVector& lo, const RatVector& hi) {
  require_same_size(lo.size(), space.dim(), "interval lower end");
  require_same_size(hi.size(), space.dim(), "interval upper end");
  OrderInterval out{lo, hi, CellUnion(space.dim(), {}, true)};
  for (const auto& a : space.positive_cells().cells) {
    for (const auto& b : space.positive_cells().cells) {
      std::vector<LinearConstraint> cs;
      for (const auto& r : a.constraints) cs.push_back({r.coeffs, r.rhs + dot(r.coeffs, lo), r.strict});
      for (const auto& r : b.constraints) cs.push_back({negate(r.coeffs), r.rhs - dot(r.coeffs, hi), r.strict});
      Cell c(space.dim(), std::move(cs));
      if (!c.is_empty()) out.set.cells.push_back(std::move(c));
    }
  }
  return out;
}

LinearOperator LinearOperator::functional(RatVector row) {
  const std::size_t n = row.size();
  return LinearOperator(RatMatrix({std::move(row)}, n));
}

LinearOperator LinearOperator::zero(std::size_t m, std::size_t n) { return LinearOperator(RatMatrix(m, n)); }

LinearOperator operator-(const LinearOperator& a, const LinearOperator& b) {
  require_same_size(a.codomain_dim(), b.codomain_dim(), "operator difference");
  std::vector<RatVector> rows;
  for (std::size_t i = 0; i < a.codomain_dim(); ++i) rows.push_back(sub(a.row(i), b.row(i)));
  return LinearOperator(RatMatrix(std::move(rows), a.domain_dim()));
}

LinearOperator operator+(const LinearOperator& a, const LinearOperator& b) {
  require_same_size(a.codomain_dim(), b.codomain_dim(), "operator sum");
  std::vector<RatVector> rows;
  for (std::size_t i = 0; i < a.codomain_dim(); ++i) rows.push_back(add(a.row(i), b.row(i)));
  return LinearOperator(RatMatrix(std::move(rows), a.domain_dim()));
}

bool is_positive_functional(const OrderedSpace& space, std::span<const Rational> f) {
  require_same_size(f.size(), space.dim(), "functional");
  for (const auto& r : space.closure().rays)
    if (dot(f, r) < 0) return false;
  for (const auto& l : space.closure().lineality)
    if (!dot(f, l).is_zero()) return false;
  return true;
}

bool is_positive(const OrderedSpace& space, const LinearOperator& t) {
  require_same_size(t.domain_dim(), space.dim(), "operator domain");
  for (std::size_t i = 0; i < t.codomain_dim(); ++i)
    if (!is_positive_functional(space, t.row(i))) return false;
  return true;
}

bool is_generating(const OrderedSpace& space) {
  std::vector<RatVector> gens = space.closure().rays;
  gens.insert(gens.end(), space.closure().lineality.begin(), space.closure().lineality.end());
  return rank(gens, space.dim()) == space.dim();
}

bool is_order_unit(const OrderedSpace& space, std::span<const Rational> e) {
  require_same_size(e.size(), space.dim(), "order unit candidate");
  if (space.is_closed()) {
    if (!space.closure().full_dimensional()) return false;
    for (const auto& f : space.closure().facets)
      if (dot(f, e) <= 0) return false;
    return true;
  }
  // e is internal iff e +- t u_k stays in X+ for small t > 0 along every axis.
  for (std::size_t k = 0; k < space.dim(); ++k) {
    for (int s : {1, -1}) {
      const RatVector d = scale(unit(space.dim(), k), s);
      bool ok = false;
      for (const auto& c : space.positive_cells().cells) {
        if (contains_germ(c, e, d)) {
          ok = true;
          break;
        }
      }
      if (!ok) return false;
    }
  }
  return true;
}

std::optional<RatVector> interior_point(const OrderedSpace& space) {
  if (space.is_closed()) {
    if (!space.closure().full_dimensional()) return std::nullopt;
    RatVector e = zeros(space.dim());
    for (const auto& r : space.closure().rays) e = add(e, r);
    return e;
  }
  for (const auto& c : space.positive_cells().cells) {
    if (auto p = c.all_strict().point(); p && is_order_unit(space, *p)) return p;
  }
  return std::nullopt;
}

bool has_interior(const OrderedSpace& space) { return interior_point(space).has_value(); }

OrderedSpace dual_cone(const OrderedSpace& space) {
  const ClosedCone d = space.closure().dual();
  if (!d.pointed()) throw PreconditionError("dual cone is not pointed: X+ is not full-dimensional");
  return OrderedSpace::closed_v(space.dim(), d.rays);
}

std::optional<PositiveFunctional> strictly_positive_functional(const OrderedSpace& space) {
  const std::size_t n = space.dim();
  RatVector f = zeros(n);
  for (const auto& g : space.closure().facets) f = add(f, g);
  for (const auto& cell : space.positive_cells().cells) {
    std::vector<LinearConstraint> base = cell.constraints;
    base.push_back(LinearConstraint::ge(negate(f), 0));
    for (std::size_t k = 0; k < n; ++k) {
      for (int s : {1, -1}) {
        auto sys = base;
        sys.push_back(LinearConstraint::gt(scale(unit(n, k), s), 0));
        if (strict_feasible(sys, n).feasible) return std::nullopt;
      }
    }
  }
  PositiveFunctional out{f, CellUnion(n, {}, true)};
  for (const auto& cell : space.positive_cells().cells) {
    Cell c = cell;
    auto eq = equality_rows(f, 1);
    c.constraints.insert(c.constraints.end(), eq.begin(), eq.end());
    if (!c.is_empty()) out.base.cells.push_back(std::move(c));
  }
  return out;
}

bool has_bounded_aperture(const OrderedSpace& space) {
  if (!strictly_positive_functional(space)) throw PreconditionError("cone has no base");
  return space.closure().pointed();
}

}  // namespace ordercone
