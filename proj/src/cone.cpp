#include "ordercone/cone.hpp"

#include <algorithm>

#include "ordercone/errors.hpp"

namespace ordercone {

void sort_unique(std::vector<RatVector>& vs) {
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
}

namespace {

// Ray of the partial cone with the indices of processed rows it makes tight.
struct DdRay {
  RatVector v;
  std::vector<bool> tight;
};

bool adjacent(const std::vector<DdRay>& rays, std::size_t p, std::size_t n) {
  const std::size_t m = rays[p].tight.size();
  std::vector<bool> common(m);
  for (std::size_t i = 0; i < m; ++i) common[i] = rays[p].tight[i] && rays[n].tight[i];
  for (std::size_t r = 0; r < rays.size(); ++r) {
    if (r == p || r == n) continue;
    bool covers = true;
    for (std::size_t i = 0; i < m && covers; ++i) covers = !common[i] || rays[r].tight[i];
    if (covers) return false;
  }
  return true;
}

}  // namespace

ConeGenerators cone_h_to_v(const std::vector<RatVector>& rows_in, std::size_t dim, std::size_t budget) {
  std::vector<RatVector> rows;
  for (const auto& r : rows_in) {
    require_same_size(r.size(), dim, "cone row");
    if (!is_zero(r)) rows.push_back(primitive(r));
  }
  sort_unique(rows);
  ConeGenerators out;
  if (dim == 0) return out;
  if (rows.empty()) {
    for (std::size_t i = 0; i < dim; ++i) out.lineality.push_back(unit(dim, i));
    return out;
  }
  out.lineality = nullspace(RatMatrix(rows, dim));
  for (auto& l : out.lineality) l = primitive(l);
  const std::size_t q = out.lineality.size();
  if (q == dim) return out;
  // Double description on the pointed part {x : rows x >= 0} ∩ lineality^perp.
  const auto& lin = out.lineality;
  std::vector<RatVector> free;
  if (lin.empty()) {
    for (std::size_t i = 0; i < dim; ++i) free.push_back(unit(dim, i));
  } else {
    free = nullspace(RatMatrix(lin, dim));
  }
  std::vector<DdRay> rays;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& a = rows[k];
    std::size_t pick = free.size();
    for (std::size_t i = 0; i < free.size(); ++i)
      if (!dot(a, free[i]).is_zero()) pick = i;
    if (pick < free.size()) {
      RatVector l = free[pick];
      free.erase(free.begin() + static_cast<std::ptrdiff_t>(pick));
      Rational al = dot(a, l);
      if (al < 0) {
        l = negate(l);
        al = -al;
      }
      for (auto& f : free) f = primitive(sub(f, scale(l, dot(a, f) / al)));
      for (auto& r : rays) {
        r.v = primitive(sub(r.v, scale(l, dot(a, r.v) / al)));
        r.tight.push_back(true);
      }
      std::vector<bool> tight(k, true);
      tight.push_back(false);
      rays.push_back({primitive(l), std::move(tight)});
      continue;
    }
    std::vector<int> sign(rays.size());
    for (std::size_t r = 0; r < rays.size(); ++r) sign[r] = dot(a, rays[r].v).sign();
    std::vector<DdRay> next;
    for (std::size_t p = 0; p < rays.size(); ++p) {
      if (sign[p] <= 0) continue;
      for (std::size_t n = 0; n < rays.size(); ++n) {
        if (sign[n] >= 0 || !adjacent(rays, p, n)) continue;
        DdRay c;
        c.v = primitive(sub(scale(rays[n].v, dot(a, rays[p].v)), scale(rays[p].v, dot(a, rays[n].v))));
        c.tight.resize(k + 1);
        for (std::size_t i = 0; i < k; ++i) c.tight[i] = rays[p].tight[i] && rays[n].tight[i];
        c.tight[k] = true;
        next.push_back(std::move(c));
      }
    }
    for (std::size_t r = 0; r < rays.size(); ++r) {
      if (sign[r] < 0) continue;
      rays[r].tight.push_back(sign[r] == 0);
      next.push_back(std::move(rays[r]));
    }
    if (next.size() > budget) throw CapacityError("ray enumeration exceeded its budget");
    rays = std::move(next);
  }
  if (!free.empty()) throw InternalError("double description left lineality outside the kernel");
  for (auto& r : rays) out.rays.push_back(std::move(r.v));
  sort_unique(out.rays);
  return out;
}

ConeGenerators cone_dual(const ConeGenerators& gens, std::size_t dim, std::size_t budget) {
  std::vector<RatVector> rows = gens.rays;
  for (const auto& l : gens.lineality) {
    rows.push_back(l);
    rows.push_back(negate(l));
  }
  return cone_h_to_v(rows, dim, budget);
}

ClosedCone ClosedCone::from_inequalities(const std::vector<RatVector>& rows, std::size_t dim) {
  ClosedCone c;
  c.dim = dim;
  const auto v = cone_h_to_v(rows, dim);
  c.rays = v.rays;
  c.lineality = v.lineality;
  const auto d = cone_dual(v, dim);
  c.facets = d.rays;
  c.equations = d.lineality;
  return c;
}

ClosedCone ClosedCone::from_generators(const std::vector<RatVector>& rays, const std::vector<RatVector>& lineality,
                                       std::size_t dim) {
  for (const auto& r : rays) require_same_size(r.size(), dim, "cone generator");
  for (const auto& r : lineality) require_same_size(r.size(), dim, "cone lineality vector");
  const auto d = cone_dual({rays, lineality}, dim);
  ClosedCone c;
  c.dim = dim;
  c.facets = d.rays;
  c.equations = d.lineality;
  const auto v = cone_dual(d, dim);
  c.rays = v.rays;
  c.lineality = v.lineality;
  return c;
}

bool ClosedCone::contains(std::span<const Rational> x) const {
  require_same_size(x.size(), dim, "cone membership");
  for (const auto& f : facets)
    if (dot(f, x) < 0) return false;
  for (const auto& e : equations)
    if (!dot(e, x).is_zero()) return false;
  return true;
}

std::vector<LinearConstraint> ClosedCone::constraints() const {
  std::vector<LinearConstraint> out;
  for (const auto& f : facets) out.push_back(LinearConstraint::ge(f, 0));
  for (const auto& e : equations) {
    out.push_back(LinearConstraint::ge(e, 0));
    out.push_back(LinearConstraint::ge(negate(e), 0));
  }
  return out;
}

ClosedCone ClosedCone::dual() const {
  ClosedCone d;
  d.dim = dim;
  d.rays = facets;
  d.lineality = equations;
  d.facets = rays;
  d.equations = lineality;
  return d;
}

}  // namespace ordercone
