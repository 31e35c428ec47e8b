#include "ordercone/polyhedron.hpp"

#include <string>

#include "ordercone/errors.hpp"
#include "ordercone/fourier_motzkin.hpp"

namespace ordercone {

Cell::Cell(std::size_t d, std::vector<LinearConstraint> cs) : dim(d), constraints(std::move(cs)) {
  for (const auto& c : constraints) require_same_size(c.dimension(), dim, "cell constraint");
}

bool Cell::contains(std::span<const Rational> x) const {
  require_same_size(x.size(), dim, "cell membership");
  for (const auto& c : constraints)
    if (!c.satisfied_by(x)) return false;
  return true;
}

Cell Cell::closure() const {
  Cell c = *this;
  for (auto& r : c.constraints) r.strict = false;
  return c;
}

Cell Cell::all_strict() const {
  Cell c = *this;
  for (auto& r : c.constraints) r.strict = true;
  return c;
}

bool Cell::is_closed() const {
  for (const auto& r : constraints)
    if (r.strict) return false;
  return true;
}

bool Cell::is_empty() const { return !strict_feasible(constraints, dim).feasible; }

std::optional<RatVector> Cell::point() const { return strict_feasible(constraints, dim).point; }

Cell Cell::intersect(const Cell& other) const {
  require_same_size(other.dim, dim, "cell intersection");
  Cell c = *this;
  c.constraints.insert(c.constraints.end(), other.constraints.begin(), other.constraints.end());
  return c;
}

Cell Cell::translate(std::span<const Rational> shift) const {
  require_same_size(shift.size(), dim, "cell translation");
  Cell c = *this;
  for (auto& r : c.constraints) r.rhs += dot(r.coeffs, shift);
  return c;
}

CellUnion::CellUnion(std::size_t d, std::vector<Cell> cs, bool convex)
    : dim(d), cells(std::move(cs)), convex_hint(convex) {
  for (const auto& c : cells) require_same_size(c.dim, dim, "union cell");
}

CellUnion CellUnion::single(Cell c) {
  const std::size_t d = c.dim;
  return CellUnion(d, {std::move(c)}, true);
}

CellUnion CellUnion::whole(std::size_t dim) { return single(Cell(dim, {})); }

CellUnion CellUnion::point(const RatVector& p) {
  std::vector<LinearConstraint> cs;
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto rows = equality_rows(unit(p.size(), i), p[i]);
    cs.insert(cs.end(), rows.begin(), rows.end());
  }
  return single(Cell(p.size(), std::move(cs)));
}

bool contains(const CellUnion& set, std::span<const Rational> x) {
  require_same_size(x.size(), set.dim, "set membership");
  for (const auto& c : set.cells)
    if (c.contains(x)) return true;
  return false;
}

CellUnion closure(const CellUnion& set) {
  CellUnion out = set;
  for (auto& c : out.cells) c = c.closure();
  return out;
}

bool is_empty(const CellUnion& set) {
  for (const auto& c : set.cells)
    if (!c.is_empty()) return false;
  return true;
}

CellUnion prune_empty(const CellUnion& set) {
  CellUnion out(set.dim, {}, set.convex_hint);
  for (const auto& c : set.cells)
    if (!c.is_empty()) out.cells.push_back(c);
  return out;
}

CellUnion intersect(const CellUnion& a, const CellUnion& b) {
  require_same_size(a.dim, b.dim, "union intersection");
  CellUnion out(a.dim, {}, a.convex_hint && b.convex_hint);
  for (const auto& ca : a.cells)
    for (const auto& cb : b.cells) {
      Cell c = ca.intersect(cb);
      if (!c.is_empty()) out.cells.push_back(std::move(c));
    }
  return out;
}

namespace {

Cell sum_cells(const Cell& a, const Cell& b) {
  const std::size_t n = a.dim;
  // Variables (x, u): u in a, x - u in b.
  std::vector<LinearConstraint> rows;
  for (const auto& c : a.constraints) {
    RatVector w = zeros(2 * n);
    for (std::size_t i = 0; i < n; ++i) w[n + i] = c.coeffs[i];
    rows.push_back({std::move(w), c.rhs, c.strict});
  }
  for (const auto& c : b.constraints) {
    RatVector w = zeros(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = c.coeffs[i];
      w[n + i] = -c.coeffs[i];
    }
    rows.push_back({std::move(w), c.rhs, c.strict});
  }
  return Cell(n, fm_project(std::move(rows), 2 * n, n));
}

// Depth-first search for a point of `region` outside every cell of `cover`
// from index k on.
std::optional<RatVector> escape(std::vector<LinearConstraint>& region, const std::vector<Cell>& cover,
                                std::size_t k, std::size_t dim) {
  if (k == cover.size()) return strict_feasible(region, dim).point;
  const auto& cell = cover[k];
  {
    std::vector<LinearConstraint> meet = region;
    meet.insert(meet.end(), cell.constraints.begin(), cell.constraints.end());
    if (!strict_feasible(meet, dim).feasible) return escape(region, cover, k + 1, dim);
  }
  for (const auto& c : cell.constraints) {
    region.push_back(c.negated());
    std::optional<RatVector> w;
    if (strict_feasible(region, dim).feasible) w = escape(region, cover, k + 1, dim);
    region.pop_back();
    if (w) return w;
  }
  return std::nullopt;
}

}  // namespace

CellUnion minkowski_sum(const CellUnion& a, const CellUnion& b) {
  require_same_size(a.dim, b.dim, "Minkowski sum");
  CellUnion out(a.dim, {}, a.convex_hint && b.convex_hint);
  if (a.dim == 0) {
    if (!is_empty(a) && !is_empty(b)) out.cells.emplace_back(0, std::vector<LinearConstraint>{});
    return out;
  }
  for (const auto& ca : a.cells) {
    if (ca.is_empty()) continue;
    for (const auto& cb : b.cells) {
      if (cb.is_empty()) continue;
      Cell s = sum_cells(ca, cb);
      if (!is_contradiction_marker(s.constraints)) out.cells.push_back(std::move(s));
    }
  }
  return out;
}

std::vector<RatVector> difference_witnesses(const CellUnion& a, const CellUnion& b) {
  require_same_size(a.dim, b.dim, "subset test");
  std::vector<RatVector> out;
  for (const auto& cell : a.cells) {
    std::vector<LinearConstraint> region = cell.constraints;
    if (auto w = escape(region, b.cells, 0, a.dim)) out.push_back(std::move(*w));
  }
  return out;
}

SubsetResult subset_of(const CellUnion& a, const CellUnion& b) {
  require_same_size(a.dim, b.dim, "subset test");
  for (const auto& cell : a.cells) {
    std::vector<LinearConstraint> region = cell.constraints;
    if (auto w = escape(region, b.cells, 0, a.dim)) return {false, std::move(w)};
  }
  return {};
}

SubsetResult subset_of_closure(const CellUnion& a, const CellUnion& b) { return subset_of(a, closure(b)); }

namespace {

VertexList from_homogeneous(const ConeGenerators& g, std::size_t dim) {
  VertexList out;
  for (const auto& r : g.rays) {
    const Rational& t = r[dim];
    RatVector x(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(dim));
    if (t.is_zero()) {
      out.rays.push_back(std::move(x));
    } else {
      out.vertices.push_back(scale(x, Rational(1) / t));
    }
  }
  for (const auto& l : g.lineality) {
    if (!l[dim].is_zero()) throw InternalError("homogenized lineality leaves the t = 0 slice");
    out.lineality.emplace_back(l.begin(), l.begin() + static_cast<std::ptrdiff_t>(dim));
  }
  if (out.vertices.empty()) return {};
  sort_unique(out.vertices);
  return out;
}

std::vector<RatVector> homogenize(const std::vector<LinearConstraint>& cs, std::size_t dim) {
  std::vector<RatVector> rows;
  for (const auto& c : cs) {
    if (c.strict) throw PreconditionError("vertex enumeration needs a closed polyhedron");
    RatVector r = c.coeffs;
    r.push_back(-c.rhs);
    rows.push_back(std::move(r));
  }
  rows.push_back(unit(dim + 1, dim));
  return rows;
}

}  // namespace

VertexList cell_vertices(const Cell& cell, std::size_t budget) {
  if (cell.dim == 0) {
    for (const auto& c : cell.constraints)
      if (!c.trivially_true()) return {};
    return {{RatVector{}}, {}, {}};
  }
  return from_homogeneous(cone_h_to_v(homogenize(cell.constraints, cell.dim), cell.dim + 1, budget), cell.dim);
}

VertexList vertices(const CellUnion& set, std::size_t budget) {
  if (!set.convex_hint) throw PreconditionError("vertices: union not asserted convex");
  for (const auto& c : set.cells)
    if (!c.is_closed()) throw PreconditionError("vertices: semi-open input");
  if (set.cells.size() == 1) return cell_vertices(set.cells.front(), budget);
  VertexList all;
  for (const auto& c : set.cells) {
    auto v = cell_vertices(c, budget);
    all.vertices.insert(all.vertices.end(), v.vertices.begin(), v.vertices.end());
    all.rays.insert(all.rays.end(), v.rays.begin(), v.rays.end());
    all.lineality.insert(all.lineality.end(), v.lineality.begin(), v.lineality.end());
  }
  if (all.vertices.empty()) return {};
  if (set.dim == 0) return {{RatVector{}}, {}, {}};
  std::vector<RatVector> gens;
  for (const auto& v : all.vertices) {
    RatVector h = v;
    h.emplace_back(1);
    gens.push_back(std::move(h));
  }
  for (const auto& r : all.rays) {
    RatVector h = r;
    h.emplace_back(0);
    gens.push_back(std::move(h));
  }
  std::vector<RatVector> lin;
  for (const auto& l : all.lineality) {
    RatVector h = l;
    h.emplace_back(0);
    lin.push_back(std::move(h));
  }
  const auto cone = ClosedCone::from_generators(gens, lin, set.dim + 1);
  return from_homogeneous({cone.rays, cone.lineality}, set.dim);
}

VertexList generators(const CellUnion& set, std::size_t budget) {
  VertexList all;
  for (const auto& c : set.cells) {
    if (c.is_empty()) continue;
    auto v = cell_vertices(c.closure(), budget);
    all.vertices.insert(all.vertices.end(), v.vertices.begin(), v.vertices.end());
    all.rays.insert(all.rays.end(), v.rays.begin(), v.rays.end());
    all.lineality.insert(all.lineality.end(), v.lineality.begin(), v.lineality.end());
  }
  sort_unique(all.vertices);
  sort_unique(all.rays);
  sort_unique(all.lineality);
  return all;
}

Cell cell_from_vertices(const VertexList& v, std::size_t dim) {
  if (v.vertices.empty()) return Cell(dim, {contradiction(dim)});
  std::vector<RatVector> gens;
  for (const auto& p : v.vertices) {
    RatVector h = p;
    h.emplace_back(1);
    gens.push_back(std::move(h));
  }
  for (const auto& r : v.rays) {
    RatVector h = r;
    h.emplace_back(0);
    gens.push_back(std::move(h));
  }
  std::vector<RatVector> lin;
  for (const auto& l : v.lineality) {
    RatVector h = l;
    h.emplace_back(0);
    lin.push_back(std::move(h));
  }
  const auto cone = ClosedCone::from_generators(gens, lin, dim + 1);
  std::vector<LinearConstraint> cs;
  auto split = [&](const RatVector& f) {
    return LinearConstraint::ge(RatVector(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(dim)), -f[dim]);
  };
  for (const auto& f : cone.facets) {
    auto c = split(f);
    if (!c.is_trivial()) cs.push_back(std::move(c));
  }
  for (const auto& e : cone.equations) {
    auto c = split(e);
    cs.push_back(c);
    cs.push_back(LinearConstraint::ge(negate(c.coeffs), -c.rhs));
  }
  return Cell(dim, std::move(cs));
}

void require_convex(const CellUnion& set, const char* what) {
  if (!set.convex_hint) throw PreconditionError(std::string(what) + ": set not asserted convex");
  std::vector<RatVector> samples;
  for (const auto& c : set.cells)
    if (auto p = c.point()) samples.push_back(std::move(*p));
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      const RatVector mid = scale(add(samples[i], samples[j]), Rational(1, 2));
      if (!contains(set, mid)) throw PreconditionError(std::string(what) + ": convexity spot check failed");
    }
}

}  // namespace ordercone
