#include <random>

#include "doctest.h"
#include "ordercone/errors.hpp"
#include "ordercone/rk.hpp"
#include "test_support.hpp"

using namespace ordercone;
using namespace ordercone::testing;

namespace {

LinearOperator fn(std::initializer_list<long> row) { return LinearOperator::functional(from_ints(row)); }

const LinearOperator f_op = fn({-1, 1, -1});
const LinearOperator g_op = fn({1, -1, -1});

RatVector q(long a, long b, long c, long d = 1) {
  return {Rational(a, d), Rational(b, d), Rational(c, d)};
}

// Independent oracle: best single-operator value over grid points of [0, x] in Q^2_+.
Rational grid_best_q2(const RatVector& f, const RatVector& x, long steps) {
  Rational best = 0;
  for (long i = 0; i <= steps; ++i)
    for (long j = 0; j <= steps; ++j) {
      const RatVector p{x[0] * Rational(i, steps), x[1] * Rational(j, steps)};
      best = max(best, dot(f, p));
    }
  return best;
}

}  // namespace

TEST_CASE("rk_eval: the two-functional example over the standard cone") {
  const RkInstance inst(OrderedSpace::named("standard:3"), {f_op, g_op});
  const auto v = rk_eval(inst, from_ints({1, 1, 1}));
  CHECK(v.value == from_ints({2}));
  REQUIRE(v.decomposition);
  CHECK((*v.decomposition)[0] == from_ints({0, 1, 0}));
  CHECK((*v.decomposition)[1] == from_ints({1, 0, 0}));
  CHECK(v.attained);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    const auto x = random_cone_point(rng, inst.space, 5);
    const auto r = rk_eval(inst, x);
    CHECK(r.value[0] == x[0] + x[1]);
    REQUIRE(r.decomposition);
    CHECK((*r.decomposition)[0] == RatVector{0, x[1], 0});
    CHECK((*r.decomposition)[1] == RatVector{x[0], 0, 0});
  }
}

TEST_CASE("rk_eval: simple cases") {
  const auto q3 = OrderedSpace::named("standard:3");
  const auto t = fn({1, 2, 3});
  CHECK(rk_eval(RkInstance(q3, {t}), from_ints({1, 1, 1})).value == from_ints({6}));
  const auto q2 = OrderedSpace::named("standard:2");
  const RatVector f{-1, 2};
  const auto v = rk_eval(RkInstance(q2, {LinearOperator::functional(f)}), from_ints({1, 1}));
  CHECK(v.value[0] == 2);
  CHECK(v.value[0] == grid_best_q2(f, from_ints({1, 1}), 8));
  REQUIRE(v.decomposition);
  CHECK((*v.decomposition)[0] == from_ints({0, 1}));
  CHECK_THROWS_AS((void)rk_eval(RkInstance(q3, {t}), from_ints({1, -1, 1})), PreconditionError);
  CHECK_THROWS_AS((void)rk_eval(RkInstance(q3, {t}), from_ints({1, 1})), DimensionMismatch);
}

TEST_CASE("rk_eval: grid oracle over the positive quadrant") {
  std::mt19937_64 rng(2);
  const auto q2 = OrderedSpace::named("standard:2");
  for (int t = 0; t < 20; ++t) {
    const auto f = random_int_vector(rng, 2, 3);
    const auto x = random_cone_point(rng, q2, 1);
    const auto v = rk_eval(RkInstance(q2, {LinearOperator::functional(f)}), x);
    // On Q^2_+ the optimum sits at a vertex of the box [0, x].
    CHECK(v.value[0] == grid_best_q2(f, x, 8));
  }
}

TEST_CASE("rk_eval: vector-valued operators") {
  const auto q3 = OrderedSpace::named("standard:3");
  const LinearOperator a(RatMatrix({from_ints({-1, 1, -1}), from_ints({1, 0, 0})}, 3));
  const LinearOperator b(RatMatrix({from_ints({1, -1, -1}), from_ints({0, 0, 1})}, 3));
  const auto v = rk_eval(RkInstance(q3, {a, b}), from_ints({1, 1, 1}));
  CHECK(v.value == from_ints({2, 2}));
  // The two coordinates need different decompositions.
  CHECK_FALSE(v.attained);
  const LinearOperator a2(RatMatrix({from_ints({-1, 1, -1}), from_ints({0, 1, 0})}, 3));
  const auto w = rk_eval(RkInstance(q3, {a2, LinearOperator(RatMatrix({from_ints({0, 0, 0}), from_ints({0, 0, 1})}, 3))}),
                         from_ints({1, 1, 1}));
  CHECK(w.value == from_ints({1, 2}));
  CHECK(w.attained);
}

TEST_CASE("equality form") {
  const auto q3 = OrderedSpace::named("standard:3");
  const RkInstance fg(q3, {f_op, g_op});
  CHECK(rk_eval_equality_form(fg, from_ints({1, 1, 1})).value == from_ints({1}));
  const RkInstance zfg(q3, {LinearOperator::zero(1, 3), f_op, g_op});
  CHECK(rk_eval_equality_form(zfg, from_ints({1, 1, 1})).value == from_ints({2}));
  CHECK(rk_eval(zfg, from_ints({1, 1, 1})).value == from_ints({2}));
  const RkInstance pos(q3, {fn({1, 0, 2})});
  CHECK(rk_eval_equality_form(pos, from_ints({1, 1, 1})).value == from_ints({3}));
}

TEST_CASE("positive transform") {
  const auto q3 = OrderedSpace::named("standard:3");
  CHECK(rk_positive(RkInstance(q3, {f_op}), from_ints({1, 1, 1})).value == from_ints({1}));
  const auto t = fn({1, 2, 0});
  CHECK(rk_positive(RkInstance(q3, {t}), from_ints({2, 1, 1})).value == from_ints({4}));
  CHECK(rk_positive(RkInstance(q3, {fn({-1, -2, 0})}), from_ints({2, 1, 1})).value == from_ints({0}));
}

TEST_CASE("dual polyhedron") {
  const auto q3 = OrderedSpace::named("standard:3");
  const RkInstance fg(q3, {f_op, g_op});
  const auto d = dual_polyhedron(fg);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 10; ++t) {
    const auto x = random_cone_point(rng, q3, 4);
    CHECK(dual_value(d, x)[0] == x[0] + x[1]);
  }
  const auto vf = cell_vertices(dual_polyhedron(RkInstance(q3, {f_op})).coordinates[0]).vertices;
  CHECK(vf == std::vector<RatVector>{from_ints({0, 1, 0})});
  const auto t = fn({1, 2, 3});
  CHECK(cell_vertices(dual_polyhedron(RkInstance(q3, {t})).coordinates[0]).vertices ==
        std::vector<RatVector>{from_ints({1, 2, 3})});
}

TEST_CASE("linearity decision") {
  const auto q3 = OrderedSpace::named("standard:3");
  const auto lin = rk_linearity(RkInstance(q3, {f_op, g_op}));
  REQUIRE(lin.linear);
  CHECK(lin.op->row(0) == from_ints({1, 1, 0}));
  CHECK(lin.boundary_status == "verified");

  const auto sq = OrderedSpace::named("square_cone");
  // x1 and -x1 together give back the height coordinate.
  const auto pm = rk_linearity(RkInstance(sq, {fn({1, 0, 0}), fn({-1, 0, 0})}));
  REQUIRE(pm.linear);
  CHECK(pm.op->row(0) == from_ints({0, 0, 1}));
  const RkInstance diag(sq, {fn({1, -1, 0})});
  const auto non = rk_linearity(diag);
  REQUIRE_FALSE(non.linear);
  REQUIRE(non.witness);
  const auto& w = *non.witness;
  CHECK(sq.contains(w.x));
  CHECK(sq.contains(w.y));
  CHECK(rk_eval(diag, add(w.x, w.y)).value[0] > rk_eval(diag, w.x).value[0] + rk_eval(diag, w.y).value[0]);
  CHECK(w.rk_sum[0] > w.rk_x[0] + w.rk_y[0]);

  const auto t = fn({1, 1, 2});
  const auto pos = rk_linearity(RkInstance(sq, {t}));
  REQUIRE(pos.linear);
  CHECK(*pos.op == t);
  const auto s2 = rk_linearity(RkInstance(OrderedSpace::named("example_s2"), {f_op, g_op}));
  CHECK(s2.boundary_status == "unverified");
}

TEST_CASE("sup operator") {
  const auto q3 = OrderedSpace::named("standard:3");
  const auto s = sup_operator(RkInstance(q3, {f_op, g_op}));
  REQUIRE(s.sup);
  CHECK(s.sup->row(0) == from_ints({1, 1, 0}));
  CHECK(s.majorizes);
  CHECK(s.least_on_samples);
  const auto t = fn({1, 1, 2});
  const auto tt = sup_operator(RkInstance(OrderedSpace::named("square_cone"), {t, t}));
  REQUIRE(tt.sup);
  CHECK(*tt.sup == t);
  const auto none = sup_operator(RkInstance(OrderedSpace::named("square_cone"), {fn({1, -1, 0}), fn({0, 0, 0})}));
  CHECK_FALSE(none.sup);
  CHECK(none.witness);
}

TEST_CASE("associativity") {
  const auto q2 = OrderedSpace::named("standard:2");
  const auto rep = check_associativity(q2, LinearOperator::functional(from_ints({1, 0})),
                                       LinearOperator::functional(from_ints({0, 1})),
                                       LinearOperator::functional(from_ints({1, 1})), {from_ints({1, 1})});
  CHECK(rep.agree);
  CHECK(rep.flat[0] == from_ints({2}));
  CHECK(rep.nested[0] == from_ints({2}));
  // The combined-LP oracle agrees as well.
  CHECK(nested_rk_value(q2, LinearOperator::functional(from_ints({1, 0})),
                        LinearOperator::functional(from_ints({0, 1})),
                        LinearOperator::functional(from_ints({1, 1})), from_ints({1, 1})) == from_ints({2}));
  const auto z = LinearOperator::zero(1, 2);
  const auto zr = check_associativity(q2, z, z, z, {from_ints({1, 3}), from_ints({0, 0})});
  CHECK(zr.agree);
  CHECK(zr.flat[0] == from_ints({0}));
  const auto q3 = OrderedSpace::named("standard:3");
  const auto fz = check_associativity(q3, f_op, g_op, LinearOperator::zero(1, 3), {from_ints({1, 1, 1}), q(1, 2, 3, 2)});
  CHECK(fz.agree);
  CHECK(fz.flat[1] == RatVector{Rational(3, 2)});
  const auto sq = OrderedSpace::named("square_cone");
  const auto nn = check_associativity(sq, fn({1, -1, 0}), fn({0, 0, 0}), fn({0, 1, 0}),
                                      {from_ints({0, 0, 1}), from_ints({1, 1, 3})});
  CHECK(nn.method == "nested");
  CHECK(nn.agree);
}

TEST_CASE("property: superadditive, homogeneous, majorizing") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + t % 3;
    const auto space = random_closed_cone(rng, n, n + 1);
    const RkInstance inst(space, {LinearOperator::functional(random_int_vector(rng, n, 3)),
                                  LinearOperator::functional(random_int_vector(rng, n, 3))});
    const auto x = random_cone_point(rng, space);
    const auto y = random_cone_point(rng, space);
    const auto rx = rk_eval(inst, x).value[0];
    const auto ry = rk_eval(inst, y).value[0];
    CHECK(rk_eval(inst, add(x, y)).value[0] >= rx + ry);
    for (const auto& op : inst.ops) CHECK(rx >= dot(op.row(0), x));
    if (t % 10 == 0) {
      for (const Rational lam : {Rational(0), Rational(1, 3), Rational(2), Rational(7)})
        CHECK(rk_eval(inst, scale(x, lam)).value[0] == lam * rx);
    }
    CHECK(rk_positive(inst, x).value[0] == rx);
  }
}

TEST_CASE("property: dual elements dominate and the dual minimum is exact") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + t % 3;
    const auto space = random_closed_cone(rng, n, n + 2);
    const RkInstance inst(space, {LinearOperator::functional(random_int_vector(rng, n, 3)),
                                  LinearOperator::functional(random_int_vector(rng, n, 3))});
    const auto d = dual_polyhedron(inst);
    const auto verts = cell_vertices(d.coordinates[0]).vertices;
    const auto x = random_cone_point(rng, space);
    const auto rx = rk_eval(inst, x).value[0];
    Rational best = dot(verts.front(), x);
    for (const auto& v : verts) {
      CHECK(dot(v, x) >= rx);
      best = min(best, dot(v, x));
    }
    CHECK(best == rx);
    CHECK(dual_value(d, x)[0] == rx);
  }
}

TEST_CASE("property: equality form with a positive member") {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + t % 3;
    const auto space = random_closed_cone(rng, n, n + 1);
    auto pos = space.closure().facets.front();
    const RkInstance inst(space, {LinearOperator::functional(random_int_vector(rng, n, 3)),
                                  LinearOperator::functional(pos)});
    const auto x = random_cone_point(rng, space);
    const auto eq = rk_eval_equality_form(inst, x);
    CHECK(eq.value == rk_eval(inst, x).value);
    REQUIRE(eq.decomposition);
    CHECK(add((*eq.decomposition)[0], (*eq.decomposition)[1]) == x);
  }
}

TEST_CASE("property: single-operator linearity propagates to collections with a positive member") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + t % 2;
    std::vector<RatVector> gens;
    for (std::size_t i = 0; i < n; ++i) gens.push_back(unit(n, i));
    gens[0] = add(gens[0], scale(gens[1], std::uniform_int_distribution<long>(0, 2)(rng)));
    const auto space = OrderedSpace::closed_v(n, gens);
    std::vector<LinearOperator> fam;
    for (int k = 0; k < 3; ++k) fam.push_back(LinearOperator::functional(random_int_vector(rng, n, 3)));
    bool singles = true;
    for (const auto& op : fam) singles = singles && rk_linearity(RkInstance(space, {op}).with_zero()).linear;
    if (!singles) continue;
    const auto zero = LinearOperator::zero(1, n);
    CHECK(rk_linearity(RkInstance(space, {zero, fam[0], fam[1]})).linear);
    CHECK(rk_linearity(RkInstance(space, {zero, fam[0], fam[1], fam[2]})).linear);
  }
}

TEST_CASE("property: semi-open cone agrees with its closure at internal points") {
  const auto s2 = OrderedSpace::named("example_s2");
  const auto q3 = OrderedSpace::named("standard:3");
  std::mt19937_64 rng(8);
  for (int t = 0; t < 15; ++t) {
    const auto ops = std::vector<LinearOperator>{LinearOperator::functional(random_int_vector(rng, 3, 3)),
                                                 LinearOperator::functional(random_int_vector(rng, 3, 3))};
    RatVector x = random_cone_point(rng, q3);
    x = add(x, from_ints({1, 1, 1}));
    CHECK(rk_eval(RkInstance(s2, ops), x).value == rk_eval(RkInstance(q3, ops), x).value);
  }
}
