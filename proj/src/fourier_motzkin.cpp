#include "ordercone/fourier_motzkin.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "ordercone/errors.hpp"

namespace ordercone {

LinearConstraint contradiction(std::size_t dim) { return LinearConstraint::ge(zeros(dim), 1); }

bool is_contradiction_marker(std::span<const LinearConstraint> constraints) {
  return constraints.size() == 1 && constraints[0].is_trivial() && !constraints[0].trivially_true();
}

namespace {

// Cheap cleanup: normalize, drop tautologies and exact duplicates. A strict
// row supersedes the identical non-strict row. Returns false on an explicit
// contradiction.
bool tidy(std::vector<LinearConstraint>& rows) {
  std::vector<LinearConstraint> out;
  std::set<std::string> seen;
  for (auto& r : rows) {
    if (r.is_trivial()) {
      if (!r.trivially_true()) return false;
      continue;
    }
    auto n = r.normalized();
    if (!seen.insert(n.str()).second) continue;
    out.push_back(std::move(n));
  }
  std::set<std::string> strict_keys;
  for (const auto& r : out)
    if (r.strict) strict_keys.insert(r.closed().str());
  std::erase_if(out, [&](const LinearConstraint& r) { return !r.strict && strict_keys.count(r.str()) > 0; });
  rows = std::move(out);
  return true;
}

RatVector drop_coordinate(const RatVector& v, std::size_t k) {
  RatVector out;
  out.reserve(v.size() - 1);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (i != k) out.push_back(v[i]);
  return out;
}

std::vector<LinearConstraint> eliminate_raw(std::vector<LinearConstraint> rows, std::size_t k) {
  const std::size_t dim = rows.empty() ? 0 : rows.front().dimension();
  // An equality on x_k lets us substitute instead of combining pairs.
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].strict || rows[i].coeffs[k].is_zero()) continue;
    const auto want = rows[i].negated().closed().normalized().str();
    std::size_t partner = rows.size();
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (j != i && !rows[j].strict && rows[j].normalized().str() == want) {
        partner = j;
        break;
      }
    }
    if (partner == rows.size()) continue;
    const LinearConstraint eq = rows[i];
    std::vector<LinearConstraint> out;
    out.reserve(rows.size());
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (j == i || j == partner) continue;
      LinearConstraint r = rows[j];
      if (!r.coeffs[k].is_zero()) {
        const Rational f = r.coeffs[k] / eq.coeffs[k];
        for (std::size_t t = 0; t < dim; ++t) r.coeffs[t] -= f * eq.coeffs[t];
        r.rhs -= f * eq.rhs;
      }
      out.push_back({drop_coordinate(r.coeffs, k), r.rhs, r.strict});
    }
    return out;
  }

  std::vector<const LinearConstraint*> pos;
  std::vector<const LinearConstraint*> neg;
  std::vector<LinearConstraint> out;
  for (const auto& r : rows) {
    const int s = r.coeffs[k].sign();
    if (s > 0) {
      pos.push_back(&r);
    } else if (s < 0) {
      neg.push_back(&r);
    } else {
      out.push_back({drop_coordinate(r.coeffs, k), r.rhs, r.strict});
    }
  }
  for (const auto* p : pos) {
    for (const auto* q : neg) {
      const Rational a = -q->coeffs[k];
      const Rational b = p->coeffs[k];
      RatVector c(dim - 1);
      std::size_t t = 0;
      for (std::size_t i = 0; i < dim; ++i) {
        if (i == k) continue;
        c[t++] = a * p->coeffs[i] + b * q->coeffs[i];
      }
      out.push_back({std::move(c), a * p->rhs + b * q->rhs, p->strict || q->strict});
    }
  }
  return out;
}

}  // namespace

std::vector<LinearConstraint> remove_redundant(std::span<const LinearConstraint> constraints, std::size_t dim) {
  std::vector<LinearConstraint> rows(constraints.begin(), constraints.end());
  if (!tidy(rows)) return {contradiction(dim)};
  if (!strict_feasible(rows, dim).feasible) return {contradiction(dim)};
  for (std::size_t i = rows.size(); i-- > 0;) {
    std::vector<LinearConstraint> test;
    test.reserve(rows.size());
    for (std::size_t j = 0; j < rows.size(); ++j)
      if (j != i) test.push_back(rows[j]);
    test.push_back(rows[i].negated());
    if (!strict_feasible(test, dim).feasible) rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(i));
  }
  return rows;
}

std::vector<LinearConstraint> fm_eliminate(std::span<const LinearConstraint> constraints, std::size_t var_index) {
  if (constraints.empty()) return {};
  const std::size_t dim = constraints.front().dimension();
  for (const auto& c : constraints) require_same_size(c.dimension(), dim, "fm_eliminate row");
  if (var_index >= dim) throw PreconditionError("fm_eliminate: variable index out of range");
  std::vector<LinearConstraint> rows(constraints.begin(), constraints.end());
  if (!tidy(rows)) return {contradiction(dim - 1)};
  auto out = eliminate_raw(std::move(rows), var_index);
  return remove_redundant(out, dim - 1);
}

std::vector<LinearConstraint> fm_project(std::vector<LinearConstraint> rows, std::size_t dim, std::size_t keep) {
  for (const auto& c : rows) require_same_size(c.dimension(), dim, "fm_project row");
  if (keep > dim) throw PreconditionError("fm_project: keep exceeds dimension");
  if (!tidy(rows)) return {contradiction(keep)};
  std::size_t cur = dim;
  while (cur > keep) {
    // Pick the trailing variable with the fewest generated pairs.
    std::size_t best = keep;
    std::size_t best_cost = static_cast<std::size_t>(-1);
    for (std::size_t k = keep; k < cur; ++k) {
      std::size_t p = 0;
      std::size_t n = 0;
      for (const auto& r : rows) {
        const int s = r.coeffs[k].sign();
        p += s > 0;
        n += s < 0;
      }
      if (p * n < best_cost) {
        best_cost = p * n;
        best = k;
      }
    }
    rows = eliminate_raw(std::move(rows), best);
    --cur;
    if (!tidy(rows)) return {contradiction(keep)};
    rows = remove_redundant(rows, cur);
    if (is_contradiction_marker(rows)) return {contradiction(keep)};
  }
  return rows;
}

}  // namespace ordercone
