#include <random>

#include "doctest.h"
#include "ordercone/decomp.hpp"
#include "ordercone/errors.hpp"
#include "ordercone/rk.hpp"
#include "test_support.hpp"

using namespace ordercone;
using namespace ordercone::testing;

namespace {

RatVector q(long a, long b, long c, long d = 1) { return {Rational(a, d), Rational(b, d), Rational(c, d)}; }

CellUnion interval_sum(const OrderedSpace& s, const RatVector& x, const RatVector& y) {
  return minkowski_sum(order_interval(s, zeros(s.dim()), x).set, order_interval(s, zeros(s.dim()), y).set);
}

CellUnion open_cone(std::size_t n, std::vector<LinearConstraint> strict) {
  return CellUnion(n, {Cell(n, std::move(strict))}, true);
}

bool on_open_segment_22_33(const RatVector& z) {
  return z[2] == 0 && z[0] == z[1] && z[0] >= 2 && z[0] < 3;
}

// The second uncovered piece: (u, u, 2) with 0 < u <= 1.
bool on_top_segment(const RatVector& z) { return z[2] == 2 && z[0] == z[1] && z[0] > 0 && z[0] <= 1; }

std::vector<LinearConstraint> equality_rows_for_point(const RatVector& p) {
  std::vector<LinearConstraint> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto eq = equality_rows(unit(p.size(), i), p[i]);
    out.insert(out.end(), eq.begin(), eq.end());
  }
  return out;
}

}  // namespace

TEST_CASE("check_rdp: the semi-open example fails on the bottom segment") {
  const auto s = OrderedSpace::named("example_s2");
  const auto rep = check_rdp(s, from_ints({2, 1, 1}), from_ints({1, 2, 1}));
  CHECK_FALSE(rep.holds);
  REQUIRE(rep.witness);
  bool bottom = false;
  for (const auto& w : rep.witnesses) {
    bottom = bottom || on_open_segment_22_33(w);
    CHECK((on_open_segment_22_33(w) || on_top_segment(w)));
  }
  CHECK(bottom);
  // Independent check of the quoted point.
  const auto whole = order_interval(s, zeros(3), from_ints({3, 3, 2})).set;
  const auto sum = interval_sum(s, from_ints({2, 1, 1}), from_ints({1, 2, 1}));
  CHECK(contains(whole, q(5, 5, 0, 2)));
  CHECK_FALSE(contains(sum, q(5, 5, 0, 2)));
  CHECK(contains(whole, from_ints({2, 2, 0})));
  CHECK_FALSE(contains(sum, from_ints({2, 2, 0})));
  CHECK_FALSE(contains(whole, from_ints({3, 3, 0})));
  CHECK(contains(sum, from_ints({3, 3, 2})));
  for (const auto& w : rep.witnesses) {
    CHECK(contains(whole, w));
    CHECK_FALSE(contains(sum, w));
  }
}

TEST_CASE("check_lrdp: the semi-open example satisfies L-RDP") {
  const auto s = OrderedSpace::named("example_s2");
  const auto x = from_ints({2, 1, 1});
  const auto y = from_ints({1, 2, 1});
  for (auto cls : {FunctionalClass::All, FunctionalClass::Regular}) {
    const auto rep = check_lrdp(s, x, y, cls);
    CHECK_FALSE(rep.holds);
    REQUIRE(rep.lrdp_holds);
    CHECK(*rep.lrdp_holds);
    CHECK_FALSE(rep.separator);
  }
  const auto whole = order_interval(s, zeros(3), from_ints({3, 3, 2})).set;
  CHECK(subset_of_closure(closure(whole), interval_sum(s, x, y)).holds);
}

TEST_CASE("check_rdp and check_lrdp: the standard cone") {
  const auto s = OrderedSpace::named("standard:3");
  std::mt19937_64 rng(3);
  for (int t = 0; t < 10; ++t) {
    const auto x = random_cone_point(rng, s);
    const auto y = random_cone_point(rng, s);
    const auto rep = check_lrdp(s, x, y, FunctionalClass::All);
    CHECK(rep.holds);
    CHECK(*rep.lrdp_holds);
  }
}

TEST_CASE("check_rdp: square cone vertex witness and separator") {
  const auto s = OrderedSpace::named("square_cone");
  const auto x = from_ints({1, 1, 1});
  const auto y = from_ints({-1, -1, 1});
  const auto rep = check_lrdp(s, x, y, FunctionalClass::All);
  CHECK_FALSE(rep.holds);
  REQUIRE(rep.witness);
  const bool side_vertex = *rep.witness == from_ints({1, -1, 1}) || *rep.witness == from_ints({-1, 1, 1});
  CHECK(side_vertex);
  REQUIRE(rep.lrdp_holds);
  CHECK_FALSE(*rep.lrdp_holds);
  REQUIRE(rep.separator);
  const auto& sep = *rep.separator;
  CHECK(sep.strict);
  CHECK(sep.margin() > 0);
  // Oracle: the sum is the parallelogram with these four corners.
  Rational sup = 0;
  for (const auto& v : {from_ints({0, 0, 0}), x, y, from_ints({0, 0, 2})}) sup = max(sup, dot(sep.separator.row(0), v));
  CHECK(sep.bound == sup);
  CHECK(sep.value == dot(sep.separator.row(0), *rep.lrdp_witness));
}

TEST_CASE("check_rdp: rejects points outside the cone") {
  const auto s = OrderedSpace::named("standard:3");
  CHECK_THROWS_AS((void)check_rdp(s, from_ints({1, -1, 0}), from_ints({1, 1, 1})), PreconditionError);
  CHECK_THROWS_AS((void)check_rdp(s, from_ints({1, 1}), from_ints({1, 1, 1})), DimensionMismatch);
}

TEST_CASE("strict_separation: examples") {
  const auto s = OrderedSpace::named("example_s2");
  const auto box = order_interval(s, zeros(3), from_ints({3, 3, 2})).set;
  const auto r = strict_separation(from_ints({0, 0, 5}), closure(box));
  REQUIRE(r);
  CHECK(r->separator.row(0) == from_ints({0, 0, 1}));
  CHECK(r->bound == 2);
  CHECK(r->value == 5);
  const auto sum = interval_sum(s, from_ints({2, 1, 1}), from_ints({1, 2, 1}));
  CHECK_FALSE(strict_separation(q(5, 5, 0, 2), sum));
  CHECK_FALSE(strict_separation(from_ints({1, 1, 1}), sum));
  const CellUnion two(1, {Cell(1, {LinearConstraint::gt(from_ints({1}), 1)}), Cell(1, {LinearConstraint::gt(from_ints({-1}), 1)})},
                      false);
  CHECK_THROWS_AS((void)strict_separation(from_ints({0}), two), PreconditionError);
}

TEST_CASE("separate_by_regular: two sectors of the quadrant") {
  const auto s = OrderedSpace::named("standard:2");
  // cone over {(1, t): 0 < t < 1/2} and over {(1, t): 1/2 < t < 1}
  const auto k0 = open_cone(2, {LinearConstraint::gt(from_ints({0, 1})), LinearConstraint::gt(from_ints({1, -2}))});
  const auto k1 = open_cone(2, {LinearConstraint::gt(from_ints({-1, 2})), LinearConstraint::gt(from_ints({1, -1}))});
  const auto r = separate_by_regular(s, k0, k1);
  CHECK(r.f == sub(r.f0, r.f1));
  for (const auto& c : r.f0) CHECK(c >= 0);
  for (const auto& c : r.f1) CHECK(c >= 0);
  CHECK(r.aperture > 0);
  for (long t = 1; t < 8; ++t) {
    CHECK(dot(r.f, RatVector{1, Rational(t, 16)}) <= 0);
    CHECK(dot(r.f, RatVector{1, Rational(8 + t, 16)}) >= 0);
  }
}

TEST_CASE("separate_by_regular: axis neighborhoods in the octant") {
  const auto s = OrderedSpace::named("standard:3");
  // near e1: x1 > 2 x2 + 2 x3 ; near e2: x2 > 2 x1 + 2 x3
  auto near = [](long i) {
    RatVector a = from_ints({-2, -2, -2});
    a[static_cast<std::size_t>(i)] = 1;
    return open_cone(3, {LinearConstraint::gt(a), LinearConstraint::gt(from_ints({1, 0, 0})), LinearConstraint::gt(from_ints({0, 1, 0})),
                         LinearConstraint::gt(from_ints({0, 0, 1}))});
  };
  const auto r = separate_by_regular(s, near(0), near(1));
  CHECK(is_positive_functional(s, r.f0));
  CHECK(is_positive_functional(s, r.f1));
  CHECK(dot(r.f, from_ints({5, 1, 1})) <= 0);
  CHECK(dot(r.f, from_ints({1, 5, 1})) >= 0);
}

TEST_CASE("separate_by_regular: preconditions") {
  const auto s = OrderedSpace::named("standard:2");
  const auto k0 = open_cone(2, {LinearConstraint::gt(from_ints({0, 1})), LinearConstraint::gt(from_ints({1, -2}))});
  const auto k1 = open_cone(2, {LinearConstraint::gt(from_ints({-1, 2})), LinearConstraint::gt(from_ints({1, -1}))});
  const auto lex = OrderedSpace::named("lex:2");
  CHECK_THROWS_AS((void)separate_by_regular(lex, k0, k1), PreconditionError);
  CHECK_THROWS_AS((void)separate_by_regular(s, k0, k0), PreconditionError);
  const auto outside = open_cone(2, {LinearConstraint::gt(from_ints({-1, 0})), LinearConstraint::gt(from_ints({0, 1}))});
  CHECK_THROWS_AS((void)separate_by_regular(s, k0, outside), PreconditionError);
}

TEST_CASE("hyperplane_as_regular") {
  const auto q2 = OrderedSpace::named("standard:2");
  const auto h = hyperplane_as_regular(q2, from_ints({1, -1}), 0);
  CHECK(h.f == from_ints({1, -1}));
  CHECK(h.alpha == 0);
  CHECK(h.split.f0 == from_ints({1, 0}));
  CHECK(h.split.f1 == from_ints({0, 1}));
  const auto q3 = OrderedSpace::named("standard:3");
  const auto g = hyperplane_as_regular(q3, from_ints({1, 1, -2}), 1);
  CHECK(g.f == from_ints({1, 1, -2}));
  CHECK(g.alpha == 1);
  CHECK(sub(g.split.f0, g.split.f1) == g.f);
  CHECK(is_positive_functional(q3, g.split.f0));
  CHECK(is_positive_functional(q3, g.split.f1));
  CHECK_THROWS_AS((void)hyperplane_as_regular(q3, zeros(3), 1), PreconditionError);
  const auto sq = OrderedSpace::named("square_cone");
  const auto k = hyperplane_as_regular(sq, from_ints({1, 0, 0}), 0);
  CHECK(sub(k.split.f0, k.split.f1) == from_ints({1, 0, 0}));
}

TEST_CASE("internal_of_difference") {
  const auto unit_square = open_cone(2, {LinearConstraint::gt(from_ints({1, 0})), LinearConstraint::gt(from_ints({0, 1})),
                                         LinearConstraint::gt(from_ints({-1, 0}), -1), LinearConstraint::gt(from_ints({0, -1}), -1)});
  const auto left = open_cone(2, {LinearConstraint::gt(from_ints({1, 0})), LinearConstraint::gt(from_ints({0, 1})),
                                  LinearConstraint::gt(from_ints({-2, 0}), -1), LinearConstraint::gt(from_ints({0, -1}), -1)});
  const auto r = internal_of_difference(unit_square, left);
  REQUIRE(r);
  CHECK(r->g == from_ints({1, 0}));
  CHECK(r->alpha >= Rational(1, 2));
  CHECK(contains(unit_square, r->point));
  CHECK(dot(r->g, r->point) > r->alpha);
  CHECK_FALSE(contains(left, r->point));
  CHECK_FALSE(internal_of_difference(unit_square, unit_square));
  const CellUnion empty(2, {Cell(2, {LinearConstraint::gt(from_ints({1, 0}), 1), LinearConstraint::gt(from_ints({-1, 0}), 0)})}, true);
  CHECK_THROWS_AS((void)internal_of_difference(unit_square, empty), PreconditionError);
  CHECK_THROWS_AS((void)internal_of_difference(left, unit_square), PreconditionError);
}

TEST_CASE("property: witnesses re-verify and RDP implies L-RDP") {
  std::mt19937_64 rng(11);
  for (const char* id : {"standard:3", "square_cone", "example_s2"}) {
    const auto s = OrderedSpace::named(id);
    for (int t = 0; t < 6; ++t) {
      const auto x = random_cone_point(rng, s, 2);
      const auto y = random_cone_point(rng, s, 2);
      if (!s.contains(x) || !s.contains(y)) continue;
      const auto rep = check_lrdp(s, x, y, FunctionalClass::All);
      const auto whole = order_interval(s, zeros(3), add(x, y)).set;
      const auto sum = interval_sum(s, x, y);
      for (const auto& w : rep.witnesses) {
        CHECK(contains(whole, w));
        CHECK_FALSE(contains(sum, w));
      }
      if (rep.holds) CHECK(*rep.lrdp_holds);
    }
  }
}

TEST_CASE("property: RDP equals L-RDP on closed cones") {
  std::mt19937_64 rng(12);
  int failures = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 2);
    const auto s = random_closed_cone(rng, n, n + static_cast<std::size_t>(t % 3), 2);
    const auto x = random_cone_point(rng, s, 2);
    const auto y = random_cone_point(rng, s, 2);
    const auto rep = check_lrdp(s, x, y, FunctionalClass::All);
    CHECK(rep.holds == *rep.lrdp_holds);
    // Oracle: cell-level containment through the Minkowski-sum projection.
    const auto whole = order_interval(s, zeros(n), add(x, y)).set;
    const auto sum = interval_sum(s, x, y);
    CHECK(rep.holds == subset_of(whole, sum).holds);
    CHECK(*rep.lrdp_holds == subset_of_closure(whole, sum).holds);
    if (!rep.holds) ++failures;
  }
  CHECK(failures > 0);
}

TEST_CASE("property: strict_separation is None exactly on the closure") {
  std::mt19937_64 rng(13);
  const auto s = OrderedSpace::named("example_s2");
  const auto sum = interval_sum(s, from_ints({2, 1, 1}), from_ints({1, 2, 1}));
  for (int t = 0; t < 60; ++t) {
    RatVector p = random_vector(rng, 3, 4, 2);
    const CellUnion single(3, {Cell(3, equality_rows_for_point(p))}, true);
    const bool in_closure = subset_of_closure(single, sum).holds;
    const auto r = strict_separation(p, sum);
    CHECK(in_closure == !r.has_value());
    if (r) CHECK(r->value > r->bound);
  }
}

TEST_CASE("property: open cones have RDP iff Regular L-RDP") {
  std::mt19937_64 rng(14);
  // X+ = {0} ∪ interior of a closed cone
  for (int t = 0; t < 8; ++t) {
    const auto base = random_closed_cone(rng, 3, 3 + static_cast<std::size_t>(t % 2), 2);
    std::vector<LinearConstraint> strict;
    for (const auto& f : base.closure().facets) strict.push_back(LinearConstraint::gt(f));
    auto origin = std::vector<LinearConstraint>{};
    for (std::size_t i = 0; i < 3; ++i) {
      auto eq = equality_rows(unit(3, i), 0);
      origin.insert(origin.end(), eq.begin(), eq.end());
    }
    const auto s = OrderedSpace::semi_open(CellUnion(3, {Cell(3, strict), Cell(3, origin)}, true));
    for (int k = 0; k < 3; ++k) {
      RatVector x = random_cone_point(rng, base, 2);
      RatVector y = random_cone_point(rng, base, 2);
      if (!s.contains(x) || !s.contains(y)) continue;
      const auto rep = check_lrdp(s, x, y, FunctionalClass::Regular);
      CHECK(rep.holds == *rep.lrdp_holds);
    }
  }
}

TEST_CASE("property: L-RDP agrees with linearity of single-operator transforms") {
  std::mt19937_64 rng(15);
  std::vector<OrderedSpace> spaces{OrderedSpace::named("standard:3"), OrderedSpace::named("square_cone")};
  for (int t = 0; t < 4; ++t) spaces.push_back(random_closed_cone(rng, 3, 3 + static_cast<std::size_t>(t % 2), 2));
  for (const auto& s : spaces) {
    bool lrdp = true;
    const auto& rays = s.closure().rays;
    for (std::size_t i = 0; i < rays.size() && lrdp; ++i)
      for (std::size_t j = i + 1; j < rays.size() && lrdp; ++j) lrdp = *check_lrdp(s, rays[i], rays[j], FunctionalClass::All).lrdp_holds;
    bool linear = true;
    for (int k = 0; k < 20; ++k) {
      const auto t = LinearOperator::functional(random_int_vector(rng, 3, 3));
      linear = linear && rk_linearity(RkInstance(s, {t})).linear;
    }
    CHECK(lrdp == linear);
  }
}
