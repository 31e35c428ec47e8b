#include <random>

#include "doctest.h"
#include "ordercone/errors.hpp"
#include "ordercone/ordered_space.hpp"
#include "ordercone/polyhedron.hpp"
#include "test_support.hpp"

using namespace ordercone;
using namespace ordercone::testing;

namespace {

CellUnion box(const RatVector& hi) {
  std::vector<LinearConstraint> cs;
  for (std::size_t i = 0; i < hi.size(); ++i) {
    cs.push_back(LinearConstraint::ge(unit(hi.size(), i), 0));
    cs.push_back(LinearConstraint::ge(negate(unit(hi.size(), i)), -hi[i]));
  }
  return CellUnion::single(Cell(hi.size(), cs));
}

CellUnion interval(const OrderedSpace& s, std::initializer_list<long> hi) {
  return order_interval(s, zeros(s.dim()), from_ints(hi)).set;
}

}  // namespace

TEST_CASE("contains on the semi-open example cone") {
  const auto s2 = OrderedSpace::named("example_s2");
  CHECK(contains(s2.positive_cells(), from_ints({1, 1, 0})));
  CHECK_FALSE(contains(s2.positive_cells(), from_ints({1, 0, 0})));
  const auto std3 = OrderedSpace::named("standard:3");
  CHECK(contains(std3.positive_cells(), from_ints({0, 0, 0})));
  CHECK_THROWS_AS((void)contains(std3.positive_cells(), from_ints({0, 0})), DimensionMismatch);
}

TEST_CASE("closure") {
  const auto s2 = OrderedSpace::named("example_s2");
  const auto std3 = OrderedSpace::named("standard:3");
  const auto c = closure(s2.positive_cells());
  CHECK(subset_of(c, std3.positive_cells()).holds);
  CHECK(subset_of(std3.positive_cells(), c).holds);
  const auto closed = std3.positive_cells();
  CHECK(closure(closed).cells.front().constraints == closed.cells.front().constraints);
  const auto open = CellUnion::single(Cell(1, {LinearConstraint::gt(from_ints({1}))}));
  CHECK(contains(closure(open), from_ints({0})));
  CHECK_FALSE(contains(open, from_ints({0})));
}

TEST_CASE("minkowski sum of semi-open intervals") {
  const auto s2 = OrderedSpace::named("example_s2");
  const auto sum = minkowski_sum(interval(s2, {2, 1, 1}), interval(s2, {1, 2, 1}));
  CHECK_FALSE(contains(sum, RatVector{Rational(5, 2), Rational(5, 2), 0}));
  CHECK(contains(sum, RatVector{Rational(19, 10), Rational(19, 10), 0}));
  const auto a = interval(s2, {2, 1, 1});
  const auto plus_zero = minkowski_sum(a, CellUnion::point(zeros(3)));
  CHECK(subset_of(a, plus_zero).holds);
  CHECK(subset_of(plus_zero, a).holds);
}

TEST_CASE("minkowski sum against a grid oracle") {
  const auto q2 = OrderedSpace::named("standard:2");
  const auto sum = minkowski_sum(interval(q2, {1, 0}), interval(q2, {0, 1}));
  for (long i = -1; i <= 5; ++i)
    for (long j = -1; j <= 5; ++j) {
      const RatVector p{Rational(i, 4), Rational(j, 4)};
      const bool expected = i >= 0 && j >= 0 && i <= 4 && j <= 4;
      CHECK(contains(sum, p) == expected);
    }
}

TEST_CASE("subset_of_closure") {
  const auto s2 = OrderedSpace::named("example_s2");
  const auto sum = minkowski_sum(interval(s2, {2, 1, 1}), interval(s2, {1, 2, 1}));
  CHECK(subset_of_closure(interval(s2, {3, 3, 2}), sum).holds);
  const auto a = interval(s2, {2, 1, 1});
  CHECK(subset_of_closure(a, a).holds);
  const auto gt1 = CellUnion::single(Cell(1, {LinearConstraint::gt(from_ints({1}), 1)}));
  const auto le0 = CellUnion::single(Cell(1, {LinearConstraint::ge(from_ints({-1}), 0)}));
  const auto r = subset_of_closure(gt1, le0);
  REQUIRE_FALSE(r.holds);
  REQUIRE(r.witness);
  CHECK((*r.witness)[0] > 1);
}

TEST_CASE("is_empty") {
  const auto empty = Cell(1, {LinearConstraint::gt(from_ints({1})), LinearConstraint::gt(from_ints({-1}))});
  CHECK(is_empty(CellUnion::single(empty)));
  CHECK_FALSE(is_empty(OrderedSpace::named("example_s2").positive_cells()));
  CHECK_FALSE(is_empty(CellUnion(1, {empty, Cell(1, {})}, false)));
}

TEST_CASE("vertex enumeration") {
  const auto cube = vertices(box(from_ints({1, 1, 1})));
  CHECK(cube.vertices.size() == 8);
  CHECK(cube.rays.empty());
  const auto q2 = vertices(OrderedSpace::named("standard:2").positive_cells());
  CHECK(q2.vertices == std::vector<RatVector>{from_ints({0, 0})});
  CHECK(q2.rays == std::vector<RatVector>{from_ints({0, 1}), from_ints({1, 0})});
  const auto s2 = OrderedSpace::named("example_s2");
  const auto b = vertices(closure(interval(s2, {2, 1, 1})));
  CHECK(b.vertices == vertices(box(from_ints({2, 1, 1}))).vertices);
  CHECK_THROWS_AS((void)vertices(interval(s2, {2, 1, 1})), PreconditionError);
  CHECK_THROWS_AS((void)vertices(CellUnion(1, {Cell(1, {})}, false)), PreconditionError);
}

TEST_CASE("property: vertex round trip") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 2 + trial % 2;
    std::vector<LinearConstraint> cs;
    for (std::size_t i = 0; i < n; ++i) {
      cs.push_back(LinearConstraint::ge(unit(n, i), -2));
      cs.push_back(LinearConstraint::ge(negate(unit(n, i)), -2));
    }
    for (int k = 0; k < 3; ++k) cs.push_back(LinearConstraint::ge(random_int_vector(rng, n, 3), -1));
    const Cell cell(n, cs);
    const auto v = cell_vertices(cell);
    if (v.vertices.empty()) continue;
    const Cell back = cell_from_vertices(v, n);
    const auto again = cell_vertices(back);
    CHECK(again.vertices == v.vertices);
    for (const auto& p : v.vertices) CHECK(cell.contains(p));
  }
}

TEST_CASE("property: sums contain sums of members, closure contains members") {
  std::mt19937_64 rng(5);
  const auto s2 = OrderedSpace::named("example_s2");
  const auto a = interval(s2, {2, 1, 1});
  const auto b = interval(s2, {1, 2, 1});
  const auto sum = minkowski_sum(a, b);
  const auto clo = closure(sum);
  int members = 0;
  std::uniform_int_distribution<long> q8(0, 8);
  auto in_box = [&](long hx, long hy) {
    return RatVector{Rational(q8(rng) * hx, 8), Rational(q8(rng) * hy, 8), Rational(q8(rng), 8)};
  };
  for (int i = 0; i < 2000 && members < 200; ++i) {
    const auto p = in_box(2, 1);
    const auto q = in_box(1, 2);
    if (!contains(a, p) || !contains(b, q)) continue;
    ++members;
    const auto s = add(p, q);
    CHECK(contains(sum, s));
    CHECK(contains(clo, s));
  }
  CHECK(members == 200);
  // Non-members admit no decomposition u + (s - u).
  int outsiders = 0;
  for (int i = 0; i < 400 && outsiders < 200; ++i) {
    const auto s = random_vector(rng, 3, 3, 4);
    if (contains(sum, s)) continue;
    ++outsiders;
    bool decomposable = false;
    for (const auto& ca : a.cells)
      for (const auto& cb : b.cells) {
        std::vector<LinearConstraint> lifted = ca.constraints;
        for (const auto& r : cb.constraints) lifted.push_back({negate(r.coeffs), r.rhs - dot(r.coeffs, s), r.strict});
        decomposable = decomposable || strict_feasible(lifted, 3).feasible;
      }
    CHECK_FALSE(decomposable);
  }
}
