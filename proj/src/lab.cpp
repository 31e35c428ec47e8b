#include "ordercone/lab.hpp"

#include <algorithm>
#include <map>
#include <thread>

#include "ordercone/errors.hpp"
#include "ordercone/lp_builder.hpp"

namespace ordercone {

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += threads) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

namespace {

RatVector random_ints(std::mt19937_64& rng, std::size_t n, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  RatVector v;
  for (std::size_t i = 0; i < n; ++i) v.emplace_back(d(rng));
  return v;
}

long draw(std::mt19937_64& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

// Strictly positive combination of the closure rays.
RatVector interior_sample(std::mt19937_64& rng, const OrderedSpace& s) {
  RatVector x = zeros(s.dim());
  for (const auto& r : s.closure().rays) x = add(x, scale(r, Rational(draw(rng, 1, 3))));
  return x;
}

std::vector<std::pair<std::size_t, std::size_t>> all_pairs(std::size_t k) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) out.emplace_back(a, b);
  return out;
}

OrderedSpace interior_regime(const OrderedSpace& space) {
  const auto& k = space.closure();
  std::vector<LinearConstraint> open;
  for (const auto& f : k.facets) open.push_back(LinearConstraint::gt(f, 0));
  std::vector<LinearConstraint> origin;
  for (std::size_t i = 0; i < space.dim(); ++i) {
    auto eq = equality_rows(unit(space.dim(), i), 0);
    origin.insert(origin.end(), eq.begin(), eq.end());
  }
  auto xr = OrderedSpace::semi_open(CellUnion(space.dim(), {Cell(space.dim(), open), Cell(space.dim(), origin)}, true));
  return xr;
}

// Smallest integer c >= 0 with s + c q in K*.
Rational shift_factor(const ClosedCone& k, const RatVector& s, const RatVector& q) {
  Rational c = 0;
  for (const auto& r : k.rays) {
    const Rational need = -dot(s, r) / dot(q, r);
    if (need > c) c = need;
  }
  mpz_class up;
  mpz_cdiv_q(up.get_mpz_t(), c.raw().get_num().get_mpz_t(), c.raw().get_den().get_mpz_t());
  return Rational(up);
}

RatVector argmin_on(const Cell& d, const RatVector& x) {
  LpProblem lp{x, d.constraints, {}, Sense::Minimize};
  const auto res = lp_solve(lp);
  if (!res.optimal()) throw InternalError("dual polyhedron LP failed");
  return res.point;
}

// Some R with s_i <= R <= t_j in K* order, via the cell emptiness oracle.
bool has_interpolant(const ClosedCone& k, const InterpolationFailure& q) {
  std::vector<LinearConstraint> cs;
  for (const auto& g : k.rays) {
    for (const auto* s : {&q.s1, &q.s2}) cs.push_back(LinearConstraint::ge(g, dot(*s, g)));
    for (const auto* t : {&q.t1, &q.t2}) cs.push_back(LinearConstraint::ge(negate(g), -dot(*t, g)));
  }
  for (const auto& l : k.lineality) {
    // R - s1 and t1 - R vanish on the lineality.
    auto eq = equality_rows(l, dot(q.s1, l));
    cs.insert(cs.end(), eq.begin(), eq.end());
  }
  return !Cell(k.dim, std::move(cs)).is_empty();
}

bool below(const ClosedCone& k, const RatVector& a, const RatVector& b) {
  for (const auto& g : k.rays)
    if (dot(sub(b, a), g) < 0) return false;
  for (const auto& l : k.lineality)
    if (!dot(sub(b, a), l).is_zero()) return false;
  return true;
}

struct OperatorSample {
  RatVector s, t;
};

void run_operator_sample(const OrderedSpace& xr, const OperatorSample& sample, std::mt19937_64& rng, GrkfTrial& out,
                         std::vector<std::pair<RatVector, RatVector>>& pairs) {
  const auto& k = xr.closure();
  const std::size_t n = xr.dim();
  RatVector q = zeros(n);
  for (const auto& g : k.facets) q = add(q, g);
  const Rational c = max(shift_factor(k, sample.s, q), shift_factor(k, sample.t, q));
  const RatVector sp = add(sample.s, scale(q, c));
  const RatVector tp = add(sample.t, scale(q, c));
  ++out.operator_samples;

  // (1) sup of the shifted pair, shifted back
  const RkInstance pair(xr, {LinearOperator::functional(sp), LinearOperator::functional(tp)});
  const auto sup = sup_operator(pair, rng(), 5);
  if (!sup.sup) out.lattice = false;

  // (3) collection {0, S', T'} with positive members
  const auto all = rk_linearity(pair.with_zero());
  if (!all.linear) {
    out.linear_all = false;
    if (!out.nonlinear) out.nonlinear = all.witness;
  }

  // (4) positive part of T - S
  const RkInstance single(xr, {LinearOperator::functional(sub(sample.t, sample.s))});
  if (!rk_linearity(single.with_zero()).linear) out.linear_single = false;

  // (2) interpolation between {S, T} and two minimal upper bounds
  const auto d = dual_polyhedron(pair).coordinates.front();
  RatVector x1, x2;
  if (all.witness) {
    x1 = all.witness->x;
    x2 = all.witness->y;
    pairs.emplace_back(x1, x2);
  } else {
    x1 = interior_sample(rng, xr);
    x2 = interior_sample(rng, xr);
  }
  const InterpolationFailure inst{sample.s, sample.t, sub(argmin_on(d, x1), scale(q, c)), sub(argmin_on(d, x2), scale(q, c))};
  if (!has_interpolant(k, inst)) {
    out.rdp = false;
    if (!out.interpolation) out.interpolation = inst;
  }
}

}  // namespace

OrderedSpace random_cone(const TrialConfig& cfg, std::uint64_t index) {
  if (cfg.dimension == 0 || cfg.dimension > dimension_cap()) throw InputError("random_cone: dimension out of range");
  auto rng = trial_rng(cfg.seed, index);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<RatVector> gens;
    for (std::size_t i = 0; i < cfg.generator_count; ++i) gens.push_back(random_ints(rng, cfg.dimension, cfg.coefficient_bound));
    bool degenerate = true;
    for (const auto& g : gens) degenerate = degenerate && is_zero(g);
    if (degenerate) continue;
    try {
      auto s = OrderedSpace::closed_v(cfg.dimension, gens);
      if (s.closure().pointed() && is_generating(s)) return s;
    } catch (const PreconditionError&) {
    } catch (const InputError&) {
    }
  }
  throw CapacityError("random_cone: no pointed generating cone in 1000 draws");
}

GrkfReport verify_grkf(const OrderedSpace& space, const TrialConfig& cfg) {
  if (!space.closure().pointed()) throw PreconditionError("verify_grkf: closure of X+ is not pointed");
  if (!is_generating(space)) throw PreconditionError("verify_grkf: X+ is not generating");
  if (cfg.trials == 0) throw InputError("verify_grkf: no trials");
  GrkfReport report;
  report.space = space.name();
  report.regime = space.is_closed() ? "closed" : "interior";
  if (!space.is_closed() && !has_interior(space)) throw PreconditionError("verify_grkf: X+ has no internal point");
  const OrderedSpace xr = space.is_closed() ? space : interior_regime(space);
  const auto& k = xr.closure();
  const auto dual_pairs = all_pairs(k.facets.size());
  const auto ray_pairs = all_pairs(k.rays.size());
  const std::size_t n = xr.dim();
  report.trials.resize(cfg.trials);
  parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) {
    auto rng = trial_rng(cfg.seed, t);
    GrkfTrial& out = report.trials[t];
    out.index = t;
    std::vector<OperatorSample> ops;
    for (std::size_t i = t; i < dual_pairs.size(); i += cfg.trials) {
      const auto [a, b] = dual_pairs[i];
      ops.push_back({scale(k.facets[a], Rational(draw(rng, 1, 2))), scale(k.facets[b], Rational(draw(rng, 1, 2)))});
    }
    ops.push_back({random_ints(rng, n, cfg.coefficient_bound), random_ints(rng, n, cfg.coefficient_bound)});
    std::vector<std::pair<RatVector, RatVector>> pairs;
    for (const auto& op : ops) run_operator_sample(xr, op, rng, out, pairs);
    if (xr.is_closed()) {
      for (std::size_t i = t; i < ray_pairs.size(); i += cfg.trials) {
        const auto [a, b] = ray_pairs[i];
        pairs.emplace_back(scale(k.rays[a], Rational(draw(rng, 1, 2))), scale(k.rays[b], Rational(draw(rng, 1, 2))));
      }
    }
    pairs.emplace_back(interior_sample(rng, xr), interior_sample(rng, xr));
    // The conjunction is settled by the first failing pair.
    for (const auto& [x, y] : pairs) {
      if (!out.lrdp) break;
      ++out.pair_samples;
      auto rep = check_lrdp(xr, x, y, FunctionalClass::All);
      if (!*rep.lrdp_holds) {
        out.lrdp = false;
        if (!out.lrdp_failure) out.lrdp_failure = std::move(rep);
      }
    }
  });
  for (const auto& t : report.trials) {
    report.lattice = report.lattice && t.lattice;
    report.rdp = report.rdp && t.rdp;
    report.linear_all = report.linear_all && t.linear_all;
    report.linear_single = report.linear_single && t.linear_single;
    report.lrdp = report.lrdp && t.lrdp;
  }
  return report;
}

bool certificates_verify(const OrderedSpace& space, const GrkfReport& report) {
  const OrderedSpace xr = space.is_closed() ? space : interior_regime(space);
  const auto& k = xr.closure();
  const auto zero = zeros(xr.dim());
  for (const auto& t : report.trials) {
    if (t.interpolation) {
      const auto& q = *t.interpolation;
      for (const auto* s : {&q.s1, &q.s2})
        for (const auto* u : {&q.t1, &q.t2})
          if (!below(k, *s, *u)) return false;
      if (has_interpolant(k, q)) return false;
    }
    if (t.nonlinear && !(t.nonlinear->rk_sum[0] > t.nonlinear->rk_x[0] + t.nonlinear->rk_y[0])) return false;
    if (t.lrdp_failure) {
      const auto& r = *t.lrdp_failure;
      if (!r.lrdp_witness || !r.separator) return false;
      if (!contains(order_interval(xr, zero, add(r.x, r.y)).set, *r.lrdp_witness)) return false;
      const auto& f = r.separator->separator.row(0);
      Rational sup_x = 0, sup_y = 0;
      for (const auto& v : vertices(closure(order_interval(xr, zero, r.x).set)).vertices) sup_x = max(sup_x, dot(f, v));
      for (const auto& v : vertices(closure(order_interval(xr, zero, r.y).set)).vertices) sup_y = max(sup_y, dot(f, v));
      if (!(dot(f, *r.lrdp_witness) > sup_x + sup_y)) return false;
    }
  }
  return true;
}

IsameorderReport verify_isameorder(const OrderedSpace& space, const TrialConfig& cfg) {
  if (!has_interior(space)) throw PreconditionError("verify_isameorder: X+ has no internal point");
  const auto& k = space.closure();
  const std::size_t n = space.dim();
  IsameorderReport report;
  report.trials.resize(cfg.trials);
  parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) {
    auto rng = trial_rng(cfg.seed, t);
    std::vector<RatVector> rows;
    for (int i = 0; i < 2; ++i) {
      RatVector row = zeros(n);
      for (const auto& g : k.facets) row = add(row, scale(g, Rational(draw(rng, 0, 2))));
      // half the rows get a perturbation that may leave K*
      if (draw(rng, 0, 1) == 1) row = add(row, random_ints(rng, n, 1));
      rows.push_back(std::move(row));
    }
    IsameorderTrial tr;
    tr.op = LinearOperator(RatMatrix(rows, n));
    tr.positive_on_cone = is_positive(space, tr.op);
    tr.positive_on_interior = true;
    for (const auto& row : rows) {
      std::vector<LinearConstraint> cs;
      for (const auto& f : k.facets) cs.push_back(LinearConstraint::gt(f, 0));
      for (const auto& e : k.equations) {
        auto eq = equality_rows(e, 0);
        cs.insert(cs.end(), eq.begin(), eq.end());
      }
      cs.push_back(LinearConstraint::gt(negate(row), 0));
      if (strict_feasible(cs, n).feasible) tr.positive_on_interior = false;
    }
    report.trials[t] = std::move(tr);
  });
  for (const auto& t : report.trials) {
    if (t.positive_on_cone != t.positive_on_interior) ++report.violations;
    if (t.positive_on_cone) ++report.positive;
  }
  return report;
}

BruteForceRk brute_force_rk(const RkInstance& inst, const RatVector& x, unsigned depth, std::size_t budget) {
  const auto& space = inst.space;
  const auto& k = space.closure();
  const std::size_t n = space.dim();
  require_same_size(x.size(), n, "brute_force_rk point");
  if (!k.contains(x)) throw PreconditionError("brute_force_rk: x is not in X+");
  if (depth > 16) throw CapacityError("brute_force_rk: depth too large");
  const Rational step(mpz_class(1), mpz_class(1) << depth);
  const auto box = vertices(closure(order_interval(space, zeros(n), x).set));
  if (!box.rays.empty() || !box.lineality.empty()) throw PreconditionError("brute_force_rk: [0, x] is unbounded");
  RatVector lo = box.vertices.front(), hi = box.vertices.front();
  for (const auto& v : box.vertices)
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = min(lo[i], v[i]);
      hi[i] = max(hi[i], v[i]);
    }
  // Grid points of [0, x], each with its facet values.
  struct GridPoint {
    RatVector z;
    RatVector facet;
  };
  std::vector<GridPoint> grid;
  std::vector<mpz_class> first(n), last(n);
  mpz_class total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const Rational a = lo[i] / step, b = hi[i] / step;
    mpz_cdiv_q(first[i].get_mpz_t(), a.raw().get_num().get_mpz_t(), a.raw().get_den().get_mpz_t());
    mpz_fdiv_q(last[i].get_mpz_t(), b.raw().get_num().get_mpz_t(), b.raw().get_den().get_mpz_t());
    total *= last[i] - first[i] + 1;
  }
  if (total > budget) throw CapacityError("brute_force_rk: grid exceeds budget");
  auto facet_values = [&](const RatVector& z) {
    RatVector out;
    for (const auto& f : k.facets) out.push_back(dot(f, z));
    return out;
  };
  const RatVector fx = facet_values(x);
  std::vector<mpz_class> idx = first;
  for (;;) {
    RatVector z;
    for (std::size_t i = 0; i < n; ++i) z.push_back(Rational(idx[i]) * step);
    if (k.contains(z) && k.contains(sub(x, z))) grid.push_back({z, facet_values(z)});
    std::size_t i = 0;
    while (i < n && idx[i] == last[i]) {
      idx[i] = first[i];
      ++i;
    }
    if (i == n) break;
    ++idx[i];
  }
  BruteForceRk out;
  out.grid_points = grid.size();
  const std::size_t m = inst.codomain_dim();
  const std::size_t nops = inst.ops.size();
  std::size_t work = 0;
  for (std::size_t c = 0; c < m; ++c) {
    // grid indices by decreasing value of the last operator; the first point that fits is its best choice
    std::vector<std::size_t> order(grid.size());
    std::vector<Rational> last_value(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) {
      order[g] = g;
      last_value[g] = dot(inst.ops.back().row(c), grid[g].z);
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return last_value[a] > last_value[b]; });
    // best[j][remaining facet values] over operators j..end
    std::vector<std::map<RatVector, std::pair<Rational, std::vector<RatVector>>>> memo(nops);
    std::function<std::pair<Rational, std::vector<RatVector>>(std::size_t, const RatVector&, const RatVector&)> best;
    best = [&](std::size_t j, const RatVector& rem, const RatVector& rem_facets) -> std::pair<Rational, std::vector<RatVector>> {
      if (j == nops) return {Rational(0), {}};
      if (auto it = memo[j].find(rem); it != memo[j].end()) return it->second;
      if (j + 1 == nops) {
        for (const std::size_t g : order) {
          if (++work > budget * 4) throw CapacityError("brute_force_rk: search exceeds budget");
          bool fits = true;
          for (std::size_t f = 0; f < grid[g].facet.size() && fits; ++f) fits = grid[g].facet[f] <= rem_facets[f];
          if (fits) return memo[j].emplace(rem, std::make_pair(last_value[g], std::vector<RatVector>{grid[g].z})).first->second;
        }
        throw InternalError("brute_force_rk: 0 is not a grid point");
      }
      std::pair<Rational, std::vector<RatVector>> top{Rational(0), {}};
      bool have = false;
      for (const auto& g : grid) {
        if (++work > budget * 4) throw CapacityError("brute_force_rk: search exceeds budget");
        bool fits = true;
        for (std::size_t f = 0; f < g.facet.size() && fits; ++f) fits = g.facet[f] <= rem_facets[f];
        if (!fits) continue;
        auto rest = best(j + 1, sub(rem, g.z), sub(rem_facets, g.facet));
        const Rational v = dot(inst.ops[j].row(c), g.z) + rest.first;
        if (!have || v > top.first) {
          have = true;
          rest.second.insert(rest.second.begin(), g.z);
          top = {v, std::move(rest.second)};
        }
      }
      memo[j].emplace(rem, top);
      return top;
    };
    auto r = best(0, x, fx);
    out.value.push_back(r.first);
    out.decomposition.push_back(std::move(r.second));
  }
  return out;
}

}  // namespace ordercone
