#include "ordercone/lp.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "ordercone/errors.hpp"

namespace ordercone {

bool LinearConstraint::satisfied_by(std::span<const Rational> x) const {
  const Rational lhs = dot(coeffs, x);
  return strict ? lhs > rhs : lhs >= rhs;
}

LinearConstraint LinearConstraint::negated() const { return {negate(coeffs), -rhs, !strict}; }

LinearConstraint LinearConstraint::normalized() const {
  if (is_zero(coeffs)) return *this;
  const RatVector p = primitive(coeffs);
  std::size_t i = 0;
  while (coeffs[i].is_zero()) ++i;
  const Rational factor = p[i] / coeffs[i];
  return {p, rhs * factor, strict};
}

bool LinearConstraint::trivially_true() const { return strict ? rhs < 0 : rhs <= 0; }

std::string LinearConstraint::str() const {
  std::ostringstream os;
  os << to_string(coeffs) << (strict ? " . x > " : " . x >= ") << rhs;
  return os.str();
}

std::vector<LinearConstraint> equality_rows(const RatVector& c, const Rational& r) {
  return {LinearConstraint::ge(c, r), LinearConstraint::ge(negate(c), -r)};
}

namespace {

// Simplex over the dictionary
//   basic_i = constant_i + sum_j table_i_j * nonbasic_j,  all variables >= 0,
// where variables are the slacks of the inequality rows (plus one artificial
// in phase one). Variable ids double as Bland's rule priorities.
class Dictionary {
 public:
  Dictionary(std::vector<std::size_t> basic, std::vector<std::size_t> nonbasic,
             std::vector<RatVector> table, RatVector constants)
      : basic_(std::move(basic)),
        nonbasic_(std::move(nonbasic)),
        table_(std::move(table)),
        constants_(std::move(constants)) {}

  // Objective rows are kept in the same shape as ordinary rows and updated on
  // every pivot; they are never eligible to leave.
  std::size_t add_objective(RatVector coeffs, Rational constant) {
    objectives_.push_back(std::move(coeffs));
    objective_constants_.push_back(std::move(constant));
    return objectives_.size() - 1;
  }

  void add_artificial(std::size_t id) {
    nonbasic_.push_back(id);
    for (auto& row : table_) row.emplace_back(1);
    for (auto& obj : objectives_) obj.emplace_back(0);
  }

  void pivot(std::size_t p, std::size_t q) {
    const Rational piv = table_[p][q];
    const Rational inv = Rational(1) / piv;
    auto& prow = table_[p];
    // Solve row p for the entering variable.
    Rational new_const = -constants_[p] * inv;
    for (std::size_t j = 0; j < prow.size(); ++j) {
      if (j == q) {
        prow[j] = inv;
      } else if (!prow[j].is_zero()) {
        prow[j] = -prow[j] * inv;
      }
    }
    constants_[p] = new_const;
    auto substitute = [&](RatVector& row, Rational& constant) {
      const Rational a = row[q];
      if (a.is_zero()) return;
      constant += a * constants_[p];
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (j == q) {
          row[j] = a * prow[j];
        } else if (!prow[j].is_zero()) {
          row[j] += a * prow[j];
        }
      }
    };
    for (std::size_t i = 0; i < table_.size(); ++i) {
      if (i != p) substitute(table_[i], constants_[i]);
    }
    for (std::size_t k = 0; k < objectives_.size(); ++k) {
      substitute(objectives_[k], objective_constants_[k]);
    }
    std::swap(basic_[p], nonbasic_[q]);
  }

  enum class Outcome { Optimal, Unbounded };

  // Primal simplex with Bland's rule; requires all constants >= 0.
  // On Unbounded, `unbounded_column` holds the entering column.
  Outcome maximize(std::size_t obj, std::size_t& unbounded_column) {
    for (;;) {
      std::size_t q = npos;
      for (std::size_t j = 0; j < nonbasic_.size(); ++j) {
        if (objectives_[obj][j] > 0 && (q == npos || nonbasic_[j] < nonbasic_[q])) q = j;
      }
      if (q == npos) return Outcome::Optimal;
      std::size_t p = npos;
      Rational best;
      for (std::size_t i = 0; i < table_.size(); ++i) {
        if (table_[i][q] >= 0) continue;
        Rational ratio = constants_[i] / -table_[i][q];
        if (p == npos || ratio < best || (ratio == best && basic_[i] < basic_[p])) {
          p = i;
          best = std::move(ratio);
        }
      }
      if (p == npos) {
        unbounded_column = q;
        return Outcome::Unbounded;
      }
      pivot(p, q);
    }
  }

  [[nodiscard]] std::size_t column_of(std::size_t id) const {
    for (std::size_t j = 0; j < nonbasic_.size(); ++j)
      if (nonbasic_[j] == id) return j;
    return npos;
  }

  [[nodiscard]] std::size_t row_of(std::size_t id) const {
    for (std::size_t i = 0; i < basic_.size(); ++i)
      if (basic_[i] == id) return i;
    return npos;
  }

  void remove_column(std::size_t q) {
    nonbasic_.erase(nonbasic_.begin() + static_cast<std::ptrdiff_t>(q));
    for (auto& row : table_) row.erase(row.begin() + static_cast<std::ptrdiff_t>(q));
    for (auto& obj : objectives_) obj.erase(obj.begin() + static_cast<std::ptrdiff_t>(q));
  }

  void remove_row(std::size_t p) {
    basic_.erase(basic_.begin() + static_cast<std::ptrdiff_t>(p));
    table_.erase(table_.begin() + static_cast<std::ptrdiff_t>(p));
    constants_.erase(constants_.begin() + static_cast<std::ptrdiff_t>(p));
  }

  // Chvatal's single-artificial phase one. Returns false when infeasible.
  bool make_feasible(std::size_t artificial_id) {
    std::size_t worst = npos;
    for (std::size_t i = 0; i < constants_.size(); ++i) {
      if (constants_[i] < 0 &&
          (worst == npos || constants_[i] < constants_[worst] ||
           (constants_[i] == constants_[worst] && basic_[i] < basic_[worst]))) {
        worst = i;
      }
    }
    if (worst == npos) return true;
    add_artificial(artificial_id);
    RatVector phase_one(nonbasic_.size());
    phase_one.back() = -1;
    const std::size_t obj = add_objective(std::move(phase_one), Rational(0));
    pivot(worst, nonbasic_.size() - 1);
    std::size_t unused = 0;
    if (maximize(obj, unused) != Outcome::Optimal) {
      throw InternalError("phase one of the simplex reported unboundedness");
    }
    const bool feasible = objective_constants_[obj].is_zero();
    objectives_.pop_back();
    objective_constants_.pop_back();
    if (!feasible) return false;
    if (std::size_t p = row_of(artificial_id); p != npos) {
      std::size_t q = npos;
      for (std::size_t j = 0; j < nonbasic_.size(); ++j) {
        if (!table_[p][j].is_zero() && (q == npos || nonbasic_[j] < nonbasic_[q])) q = j;
      }
      if (q == npos) {
        remove_row(p);
      } else {
        pivot(p, q);
      }
    }
    if (std::size_t q = column_of(artificial_id); q != npos) remove_column(q);
    return true;
  }

  [[nodiscard]] const std::vector<std::size_t>& basic() const { return basic_; }
  [[nodiscard]] const std::vector<std::size_t>& nonbasic() const { return nonbasic_; }
  [[nodiscard]] const RatVector& constants() const { return constants_; }
  [[nodiscard]] const Rational& entry(std::size_t i, std::size_t j) const { return table_[i][j]; }
  [[nodiscard]] const Rational& objective_constant(std::size_t k) const {
    return objective_constants_[k];
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<std::size_t> basic_;
  std::vector<std::size_t> nonbasic_;
  std::vector<RatVector> table_;
  RatVector constants_;
  std::vector<RatVector> objectives_;
  RatVector objective_constants_;
};

// max c.y  s.t.  A y >= b  with A of full column rank and y free.
LpResult solve_full_rank(const std::vector<RatVector>& A, const RatVector& b, const RatVector& c) {
  const std::size_t m = A.size();
  const std::size_t r = c.size();
  LpResult res;
  const auto base_rows = independent_rows(A, r);
  if (base_rows.size() != r) throw InternalError("simplex: matrix lost full column rank");

  RatMatrix AB(r, r);
  RatVector bB(r);
  for (std::size_t k = 0; k < r; ++k) {
    AB.row(k) = A[base_rows[k]];
    bB[k] = b[base_rows[k]];
  }
  const auto ABinv_opt = inverse(AB);
  if (!ABinv_opt) throw InternalError("simplex: singular starting basis");
  const RatMatrix& ABinv = *ABinv_opt;
  // y = ABinv (s_B + b_B), so y0 = ABinv b_B and dy/ds_B = ABinv.
  const RatVector y0 = ABinv.apply(bB);

  std::vector<bool> in_base(m, false);
  for (auto i : base_rows) in_base[i] = true;

  std::vector<std::size_t> basic;
  std::vector<RatVector> table;
  RatVector constants;
  for (std::size_t i = 0; i < m; ++i) {
    if (in_base[i]) continue;
    basic.push_back(i);
    RatVector row(r);
    for (std::size_t k = 0; k < r; ++k) {
      // coefficient of s_{base_rows[k]} in a_i . y
      mpq_class acc = 0;
      for (std::size_t t = 0; t < r; ++t) {
        if (!A[i][t].is_zero() && !ABinv(t, k).is_zero()) acc += A[i][t].raw() * ABinv(t, k).raw();
      }
      row[k] = Rational(acc);
    }
    table.push_back(std::move(row));
    constants.push_back(dot(A[i], y0) - b[i]);
  }
  RatVector obj(r);
  for (std::size_t k = 0; k < r; ++k) {
    mpq_class acc = 0;
    for (std::size_t t = 0; t < r; ++t) {
      if (!c[t].is_zero() && !ABinv(t, k).is_zero()) acc += c[t].raw() * ABinv(t, k).raw();
    }
    obj[k] = Rational(acc);
  }

  Dictionary dict(std::move(basic), base_rows, std::move(table), std::move(constants));
  const std::size_t main_obj = dict.add_objective(std::move(obj), dot(c, y0));
  if (!dict.make_feasible(m)) {
    res.status = LpStatus::Infeasible;
    return res;
  }

  auto slack_values = [&]() {
    RatVector s(m);
    for (std::size_t i = 0; i < dict.basic().size(); ++i) s[dict.basic()[i]] = dict.constants()[i];
    return s;
  };
  auto to_y = [&](const RatVector& s, bool homogeneous) {
    RatVector sB(r);
    for (std::size_t k = 0; k < r; ++k) sB[k] = s[base_rows[k]];
    return homogeneous ? ABinv.apply(sB) : add(ABinv.apply(sB), y0);
  };

  std::size_t q = 0;
  const auto outcome = dict.maximize(main_obj, q);
  res.point = to_y(slack_values(), false);
  if (outcome == Dictionary::Outcome::Optimal) {
    res.status = LpStatus::Optimal;
    res.value = dict.objective_constant(main_obj);
    return res;
  }
  RatVector ds(m);
  ds[dict.nonbasic()[q]] = 1;
  for (std::size_t i = 0; i < dict.basic().size(); ++i) ds[dict.basic()[i]] = dict.entry(i, q);
  res.status = LpStatus::Unbounded;
  res.ray = to_y(ds, true);
  return res;
}

}  // namespace

LpResult lp_solve(const LpProblem& problem) {
  const std::size_t n = problem.objective.size();
  if (n == 0) throw PreconditionError("lp_solve requires dimension >= 1");
  for (const auto& c : problem.constraints) {
    require_same_size(c.coeffs.size(), n, "LP constraint");
    if (c.strict) throw PreconditionError("lp_solve accepts only non-strict constraints");
  }
  for (const auto& e : problem.equalities) require_same_size(e.coeffs.size(), n, "LP equality");

  const bool minimize = problem.sense == Sense::Minimize;
  const RatVector c = minimize ? negate(problem.objective) : problem.objective;

  // Parametrize the affine hull of the equalities: x = p + N y.
  RatVector p = zeros(n);
  std::vector<RatVector> N;
  if (problem.equalities.empty()) {
    for (std::size_t i = 0; i < n; ++i) N.push_back(unit(n, i));
  } else {
    std::vector<RatVector> rows;
    RatVector rhs;
    for (const auto& e : problem.equalities) {
      rows.push_back(e.coeffs);
      rhs.push_back(e.rhs);
    }
    auto sol = solve_linear_system(RatMatrix(std::move(rows), n), rhs);
    if (!sol.particular) return LpResult{};
    p = std::move(*sol.particular);
    N = std::move(sol.kernel);
  }
  const std::size_t k = N.size();
  auto lift = [&](const RatVector& y, bool homogeneous) {
    RatVector x = homogeneous ? zeros(n) : p;
    for (std::size_t j = 0; j < k; ++j) {
      if (y[j].is_zero()) continue;
      for (std::size_t i = 0; i < n; ++i) x[i] += y[j] * N[j][i];
    }
    return x;
  };

  std::vector<RatVector> A;
  RatVector b;
  for (const auto& con : problem.constraints) {
    RatVector row(k);
    for (std::size_t j = 0; j < k; ++j) row[j] = dot(con.coeffs, N[j]);
    Rational rhs = con.rhs - dot(con.coeffs, p);
    if (is_zero(row)) {
      if (rhs > 0) return LpResult{};
      continue;
    }
    A.push_back(std::move(row));
    b.push_back(std::move(rhs));
  }
  RatVector cy(k);
  for (std::size_t j = 0; j < k; ++j) cy[j] = dot(c, N[j]);

  LpResult out;
  auto finish = [&](LpResult r) {
    if (r.status == LpStatus::Optimal && minimize) r.value = -r.value;
    for (const auto& con : problem.constraints) {
      if (r.status != LpStatus::Infeasible && !con.satisfied_by(r.point)) {
        throw InternalError("simplex returned a point violating " + con.str());
      }
    }
    return r;
  };

  if (k == 0 || A.empty()) {
    // No inequality restricts y.
    if (k > 0 && !is_zero(cy)) {
      out.status = LpStatus::Unbounded;
      out.point = p;
      out.ray = lift(cy, true);
      return finish(out);
    }
    out.status = LpStatus::Optimal;
    out.point = p;
    out.value = dot(c, p);
    return finish(out);
  }

  // Columns of A: keep an independent set J; kernel directions of A are free moves.
  const RatMatrix AM(A, k);
  const auto kernel = nullspace(AM);
  for (const auto& v : kernel) {
    const Rational slope = dot(cy, v);
    if (slope.is_zero()) continue;
    // Objective moves along a direction the constraints do not see.
    LpProblem feas{zeros(k), {}, {}, Sense::Maximize};
    for (std::size_t i = 0; i < A.size(); ++i) feas.constraints.push_back(LinearConstraint::ge(A[i], b[i]));
    const LpResult f = lp_solve(feas);
    if (f.status == LpStatus::Infeasible) return LpResult{};
    out.status = LpStatus::Unbounded;
    out.point = lift(f.point, false);
    out.ray = lift(slope > 0 ? v : negate(v), true);
    return finish(out);
  }
  const auto J = independent_rows(AM.transpose().row_list(), A.size());
  std::vector<RatVector> AJ;
  for (const auto& row : A) {
    RatVector rj;
    for (auto j : J) rj.push_back(row[j]);
    AJ.push_back(std::move(rj));
  }
  RatVector cJ;
  for (auto j : J) cJ.push_back(cy[j]);

  LpResult inner = solve_full_rank(AJ, b, cJ);
  if (inner.status == LpStatus::Infeasible) return LpResult{};
  auto expand = [&](const RatVector& yj) {
    RatVector y(k);
    for (std::size_t t = 0; t < J.size(); ++t) y[J[t]] = yj[t];
    return y;
  };
  out.status = inner.status;
  out.point = lift(expand(inner.point), false);
  if (inner.status == LpStatus::Optimal) {
    out.value = inner.value + dot(c, p);
  } else {
    out.ray = lift(expand(inner.ray), true);
  }
  return finish(out);
}

Feasibility strict_feasible(std::span<const LinearConstraint> constraints, std::size_t dim) {
  for (const auto& c : constraints) require_same_size(c.coeffs.size(), dim, "strict_feasible row");
  if (dim == 0) {
    for (const auto& c : constraints) {
      if (!c.trivially_true()) return {};
    }
    return {true, RatVector{}};
  }

  // Pair up opposite non-strict rows into equalities.
  std::vector<LinearConstraint> normalized;
  normalized.reserve(constraints.size());
  for (const auto& c : constraints) {
    if (c.is_trivial()) {
      if (!c.trivially_true()) return {};
      continue;
    }
    normalized.push_back(c.normalized());
  }
  std::map<std::string, std::size_t> nonstrict_index;
  for (std::size_t i = 0; i < normalized.size(); ++i) {
    if (!normalized[i].strict) nonstrict_index.emplace(normalized[i].str(), i);
  }
  std::vector<bool> used_as_equality(normalized.size(), false);
  std::vector<LinearConstraint> equalities;
  for (std::size_t i = 0; i < normalized.size(); ++i) {
    if (normalized[i].strict || used_as_equality[i]) continue;
    const auto it = nonstrict_index.find(normalized[i].negated().closed().str());
    if (it == nonstrict_index.end() || it->second == i || used_as_equality[it->second]) continue;
    used_as_equality[i] = used_as_equality[it->second] = true;
    equalities.push_back(normalized[i]);
  }

  const bool any_strict = std::any_of(normalized.begin(), normalized.end(),
                                      [](const LinearConstraint& c) { return c.strict; });
  const std::size_t n = dim + (any_strict ? 1 : 0);
  auto widen = [&](const RatVector& coeffs, const Rational& t_coeff) {
    RatVector w = coeffs;
    if (any_strict) w.push_back(t_coeff);
    return w;
  };
  LpProblem lp;
  lp.objective = any_strict ? unit(n, dim) : zeros(n);
  for (std::size_t i = 0; i < normalized.size(); ++i) {
    if (used_as_equality[i]) continue;
    const auto& c = normalized[i];
    lp.constraints.push_back(LinearConstraint::ge(widen(c.coeffs, c.strict ? Rational(-1) : Rational(0)), c.rhs));
  }
  for (const auto& e : equalities) lp.equalities.push_back(LinearConstraint::ge(widen(e.coeffs, 0), e.rhs));
  if (any_strict) lp.constraints.push_back(LinearConstraint::ge(negate(unit(n, dim)), Rational(-1)));

  const LpResult r = lp_solve(lp);
  if (r.status != LpStatus::Optimal) {
    if (r.status == LpStatus::Unbounded) throw InternalError("strict_feasible LP unbounded");
    return {};
  }
  if (any_strict && r.value <= 0) return {};
  RatVector x(r.point.begin(), r.point.begin() + static_cast<std::ptrdiff_t>(dim));
  for (const auto& c : constraints) {
    if (!c.satisfied_by(x)) throw InternalError("strict_feasible point violates " + c.str());
  }
  return {true, std::move(x)};
}

}  // namespace ordercone
