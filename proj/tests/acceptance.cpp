// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "ordercone/errors.hpp"
#include "ordercone/json_io.hpp"
#include "ordercone/lab.hpp"
#include "ordercone/report.hpp"
#include "test_support.hpp"

using namespace ordercone;
using namespace ordercone::testing;

namespace {

LinearOperator fn(std::initializer_list<long> row) { return LinearOperator::functional(from_ints(row)); }

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

// Constraints x in closure(X+) on the variable block starting at `offset` of a `width`-vector.
void cone_rows(const ClosedCone& k, std::size_t offset, std::size_t width, std::vector<LinearConstraint>& cs) {
  const std::size_t n = k.dim;
  auto place = [&](const RatVector& a) {
    RatVector row = zeros(width);
    for (std::size_t i = 0; i < n; ++i) row[offset + i] = a[i];
    return row;
  };
  for (const auto& f : k.facets) cs.push_back(LinearConstraint::ge(place(f)));
  for (const auto& e : k.equations) {
    cs.push_back(LinearConstraint::ge(place(e)));
    cs.push_back(LinearConstraint::ge(place(negate(e))));
  }
}

// Is {x in X+ : M(x) < p(x)} strict-infeasible? Decided by one LP in (x, x_1..x_k) without calling dominates().
bool no_violation(const LinearOperator& m, const SuperlinearMap& p) {
  const auto& k = p.domain().closure();
  const std::size_t n = p.domain().dim();
  const auto& pieces = p.pieces();
  if (p.kind() == SuperlinearMap::Kind::MinOfLinear) {
    std::vector<LinearConstraint> cs;
    cone_rows(k, 0, n, cs);
    for (const auto& t : pieces) cs.push_back(LinearConstraint::gt(sub(t.row(0), m.row(0))));
    return !strict_feasible(cs, n).feasible;
  }
  // sum_j T_j x_j > M x, x_j in K, x - sum x_j in K
  const std::size_t width = n * (pieces.size() + 1);
  std::vector<LinearConstraint> cs;
  for (std::size_t j = 0; j <= pieces.size(); ++j) cone_rows(k, j * n, width, cs);
  // block 0 holds the slack s = x - sum x_j, so x = s + sum x_j
  RatVector obj = zeros(width);
  for (std::size_t i = 0; i < n; ++i) obj[i] = -m.row(0)[i];
  for (std::size_t j = 0; j < pieces.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) obj[(j + 1) * n + i] = pieces[j].row(0)[i] - m.row(0)[i];
  cs.push_back(LinearConstraint::gt(obj));
  return !strict_feasible(cs, width).feasible;
}

bool on_grid(const RatVector& v, long den) {
  for (const auto& c : v)
    if (!(c * Rational(den)).is_integer()) return false;
  return true;
}

Outcome criterion1() {
  Outcome o;
  const RkInstance inst(OrderedSpace::named("standard:3"), {fn({-1, 1, -1}), fn({1, -1, -1})});
  const std::vector<RatVector> pts{from_ints({1, 1, 1}),
                                   from_ints({0, 0, 0}),
                                   from_ints({2, 0, 1}),
                                   from_ints({0, 3, 0}),
                                   {Rational(1, 2), Rational(1, 3), 1},
                                   from_ints({5, 2, 7}),
                                   {Rational(7, 4), 2, Rational(1, 5)},
                                   from_ints({0, 0, 4}),
                                   {3, Rational(9, 2), Rational(1, 2)},
                                   from_ints({1, 10, 100})};
  for (const auto& p : pts) {
    const auto v = rk_eval(inst, p);
    o.require(v.value == RatVector{p[0] + p[1]}, "value at " + io::to_csv(p));
    o.require(v.attained && v.decomposition && (*v.decomposition)[0] == RatVector{0, p[1], 0} &&
                  (*v.decomposition)[1] == RatVector{p[0], 0, 0},
              "decomposition at " + io::to_csv(p));
  }
  o.require(rk_eval(inst, from_ints({1, 1, 1})).value == from_ints({2}), "(1,1,1) -> 2");
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto s = OrderedSpace::named("example_s2");
  const auto x = from_ints({2, 1, 1});
  const auto y = from_ints({1, 2, 1});
  const auto rep = check_lrdp(s, x, y, FunctionalClass::All);
  o.require(!rep.holds, "RDP should fail");
  const auto zero = zeros(3);
  const auto sum = minkowski_sum(order_interval(s, zero, x).set, order_interval(s, zero, y).set);
  const auto whole = order_interval(s, zero, add(x, y)).set;
  bool bottom = false;
  for (const auto& w : rep.witnesses) {
    const bool verified = contains(whole, w) && !contains(sum, w);
    o.require(verified, "witness " + io::to_csv(w) + " not verified");
    bottom = bottom || (w[2].is_zero() && w[0] == w[1] && w[0] >= 2 && w[0] < 3);
  }
  o.require(bottom, "no witness on the segment (2,2,0)-(3,3,0)");
  const RatVector mid{Rational(5, 2), Rational(5, 2), 0};
  o.require(contains(whole, mid) && !contains(sum, mid), "(5/2,5/2,0)");
  o.require(rep.lrdp_holds && *rep.lrdp_holds, "L-RDP should hold");
  o.require(subset_of_closure(whole, sum).holds, "closure of the sum contains [0,(3,3,2)]");
  return o;
}

Outcome criterion3() {
  Outcome o;
  std::mt19937_64 rng(301);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + t % 3;
    const auto space = random_closed_cone(rng, n, n + static_cast<std::size_t>(t % 2), 3);
    RatVector pos = zeros(n);
    for (const auto& f : space.closure().facets) pos = add(pos, scale(f, Rational(static_cast<long>(rng() % 2))));
    std::vector<LinearOperator> ops{LinearOperator::functional(random_int_vector(rng, n, 3)),
                                    LinearOperator::functional(random_int_vector(rng, n, 3)),
                                    LinearOperator::functional(pos)};
    const RkInstance inst(space, ops);
    const auto x = random_cone_point(rng, space);
    o.require(rk_eval_equality_form(inst, x).value == rk_eval(inst, x).value, "instance " + std::to_string(t));
  }
  const RkInstance fg(OrderedSpace::named("standard:3"), {fn({-1, 1, -1}), fn({1, -1, -1})});
  const auto one = from_ints({1, 1, 1});
  const auto eq = rk_eval_equality_form(fg, one).value;
  const auto in = rk_eval(fg, one).value;
  o.require(in == from_ints({2}) && eq != in, "forms should differ at (1,1,1): " + io::to_csv(eq) + " vs " + io::to_csv(in));
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::mt19937_64 rng(401);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + t % 3;
    const auto space = random_closed_cone(rng, n, n + static_cast<std::size_t>(t % 3), 3);
    const RkInstance inst(space, {LinearOperator::functional(random_int_vector(rng, n, 3)),
                                  LinearOperator::functional(random_int_vector(rng, n, 3))});
    const auto x = random_cone_point(rng, space);
    const auto d = dual_polyhedron(inst);
    const auto v = cell_vertices(d.coordinates[0]);
    bool first = true;
    Rational best;
    for (const auto& h : v.vertices) {
      const auto val = dot(h, x);
      if (first || val < best) best = val;
      first = false;
    }
    o.require(!first && best == rk_eval(inst, x).value[0], "triple " + std::to_string(t));
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  TrialConfig named;
  named.trials = 20;
  for (const char* id : {"standard:3", "square_cone", "example_s2"}) {
    const auto s = OrderedSpace::named(id);
    const auto r = verify_grkf(s, named);
    o.require(r.consistent(), std::string(id) + " inconsistent");
    const bool all = r.lattice && r.rdp && r.linear_all && r.linear_single && r.lrdp;
    const bool none = !r.lattice && !r.rdp && !r.linear_all && !r.linear_single && !r.lrdp;
    if (std::string(id) == "standard:3") o.require(all, "standard:3 should be all-true");
    if (std::string(id) == "square_cone") {
      o.require(none, "square_cone should be all-false");
      o.require(certificates_verify(s, r), "square_cone certificates");
    }
  }
  std::size_t bad = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    TrialConfig c;
    c.seed = 100;
    c.dimension = 2 + i % 3;
    c.generator_count = c.dimension + (i / 3) % 3;
    c.trials = 5;
    const auto s = random_cone(c, i);
    const auto r = verify_grkf(s, c);
    if (!r.consistent() || !certificates_verify(s, r)) ++bad;
  }
  o.require(bad == 0, std::to_string(bad) + " inconsistent cones");
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::mt19937_64 rng(601);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 3);
    const auto s = random_closed_cone(rng, n, n + static_cast<std::size_t>(t % 2), 2);
    RatVector u = zeros(n);
    for (const auto& r : s.closure().rays) u = add(u, r);
    const bool rk = t % 2 == 1;
    std::vector<LinearOperator> pieces;
    for (int k = 0; k < 2; ++k) pieces.push_back(LinearOperator::functional(random_int_vector(rng, n, 2)));
    const auto p = rk ? SuperlinearMap::rk_of_linear(RkInstance(s, pieces)) : SuperlinearMap::min_of_linear(s, pieces);
    RatVector bump = zeros(n);
    for (const auto& r : s.closure().dual().rays) bump = add(bump, scale(r, Rational(static_cast<long>(rng() % 3))));
    const auto t0 = rk ? dominating_below(p, u, p(u)[0] + 1) : pieces[0] + LinearOperator::functional(bump);
    std::vector<RatVector> basis{u};
    if (n > 2) basis.push_back(random_int_vector(rng, n, 2));
    if (rank(basis, n) != basis.size()) basis.pop_back();
    const ExtensionProblem prob{p, basis, t0};
    const auto m = extend_full(prob);
    for (const auto& b : basis) o.require(m.apply(b) == t0.apply(b), "M|L != T0 in problem " + std::to_string(t));
    o.require(no_violation(m, p), "M < p somewhere in problem " + std::to_string(t));
  }
  const auto q2 = OrderedSpace::named("standard:2");
  const auto pmin = SuperlinearMap::min_of_linear(q2, {fn({1, 0}), fn({0, 1})});
  const ExtensionProblem prob{pmin, {from_ints({1, 1})}, LinearOperator::functional({Rational(1, 2), Rational(1, 2)})};
  const auto m = extend_full(prob);
  o.require(m.apply(from_ints({1, 1})) == from_ints({1}), "worked instance M(1,1) = 1");
  o.require(no_violation(m, pmin), "worked instance M >= min(x1, x2)");
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::mt19937_64 rng(701);
  std::size_t grid_cases = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 2);
    const auto s = random_closed_cone(rng, n, n + static_cast<std::size_t>(t % 2), 1);
    const RkInstance inst(s, {LinearOperator::functional(random_int_vector(rng, n, 3)),
                              LinearOperator::functional(random_int_vector(rng, n, 3))});
    RatVector x = zeros(n);
    // every third point uses thirds, so its optimum is usually off the grid
    const long den = t % 3 == 0 ? 3 : 2;
    for (const auto& r : s.closure().rays) x = add(x, scale(r, Rational(static_cast<long>(rng() % 2 + 1), den)));
    const auto exact = rk_eval(inst, x);
    const auto b = brute_force_rk(inst, x, 3);
    o.require(b.value[0] <= exact.value[0], "bound above rk in instance " + std::to_string(t));
    bool representable = exact.decomposition.has_value();
    if (representable)
      for (const auto& xj : *exact.decomposition) representable = representable && on_grid(xj, 8);
    if (representable) {
      ++grid_cases;
      o.require(b.value[0] == exact.value[0], "grid-representable optimum missed in instance " + std::to_string(t));
    }
  }
  o.require(grid_cases > 0, "no grid-representable instance sampled");
  if (o.pass) o.detail = std::to_string(grid_cases) + " of 100 with grid optimum";
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::size_t violations = 0, positive = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    TrialConfig c;
    c.seed = 800;
    c.dimension = 2 + i % 3;
    c.generator_count = c.dimension + i % 2;
    c.trials = 1;
    const auto s = random_cone(c, i);
    TrialConfig one = c;
    one.seed = 800 + i;
    const auto r = verify_isameorder(s, one);
    violations += r.violations;
    positive += r.positive;
  }
  o.require(violations == 0, std::to_string(violations) + " violations");
  if (o.pass) o.detail = std::to_string(positive) + " of 100 positive";
  return o;
}

Outcome criterion9() {
  Outcome o;
  std::mt19937_64 rng(901);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 2);
    const auto s = random_closed_cone(rng, n, n + static_cast<std::size_t>(t % 2), 2);
    std::vector<LinearOperator> ops;
    for (int k = 0; k < 3; ++k) ops.push_back(LinearOperator::functional(random_int_vector(rng, n, 3)));
    std::vector<RatVector> pts;
    for (int k = 0; k < 5; ++k) pts.push_back(random_cone_point(rng, s));
    const auto r = check_associativity(s, ops[0], ops[1], ops[2], pts);
    o.require(r.agree && r.max_discrepancy.is_zero(), "triple " + std::to_string(t));
  }
  return o;
}

Outcome criterion10() {
  Outcome o;
  auto grkf_dump = [](const OrderedSpace& s, std::size_t threads) {
    TrialConfig c;
    c.seed = 1000;
    c.trials = 8;
    c.threads = threads;
    return io::to_json(verify_grkf(s, c)).dump();
  };
  auto iso_dump = [](const OrderedSpace& s, std::size_t threads) {
    TrialConfig c;
    c.seed = 1001;
    c.trials = 30;
    c.threads = threads;
    std::ostringstream os;
    const auto r = verify_isameorder(s, c);
    for (const auto& t : r.trials) os << io::to_json(t.op).dump() << t.positive_on_cone << t.positive_on_interior;
    return os.str();
  };
  TrialConfig rc;
  rc.seed = 1002;
  rc.dimension = 3;
  rc.generator_count = 5;
  std::vector<OrderedSpace> spaces{OrderedSpace::named("square_cone"), OrderedSpace::named("example_s2"), random_cone(rc, 0)};
  for (const auto& s : spaces) {
    const auto serial = grkf_dump(s, 1);
    o.require(serial == grkf_dump(s, 1), "grkf repeat on " + s.name());
    o.require(serial == grkf_dump(s, 4), "grkf parallel on " + s.name());
    const auto iso = iso_dump(s, 1);
    o.require(iso == iso_dump(s, 3), "isameorder parallel on " + s.name());
  }
  o.require(build_report().json().dump() == build_report().json().dump(), "report repeat");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"rk counterexample equals x1 + x2 at 10 points", criterion1},
      {"semi-open example: RDP witness, L-RDP, closure containment", criterion2},
      {"equality and inequality forms agree with a positive member", criterion3},
      {"dual vertex minimum equals rk_eval", criterion4},
      {"linearity chain consistent on 200 cones and the named spaces", criterion5},
      {"Hahn-Banach extensions restrict to T0 and dominate p", criterion6},
      {"brute force bound below rk_eval, equal on grid optima", criterion7},
      {"positivity on X+ and on {0} u int X+ agree", criterion8},
      {"nested and flat rk agree", criterion9},
      {"serial and parallel reports are byte-identical", criterion10},
  };
  const std::vector<double> limits{1, 5, 0, 0, 60, 0, 0, 0, 0, 0};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limits[i] > 0 && secs >= limits[i]) {
      if (o.pass) o.detail = "over the time limit";
      o.pass = false;
    }
    failed += o.pass ? 0 : 1;
    std::ostringstream t;
    t.precision(2);
    t << std::fixed << secs;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " [" << t.str() << " s"
              << (o.detail.empty() ? "" : "; " + o.detail) << "]" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
