#include <random>

#include "doctest.h"
#include "ordercone/errors.hpp"
#include "ordercone/fourier_motzkin.hpp"
#include "ordercone/lp.hpp"

using namespace ordercone;

namespace {

LinearConstraint ge(std::initializer_list<long> c, long r) { return LinearConstraint::ge(from_ints(c), r); }
LinearConstraint gt(std::initializer_list<long> c, long r) { return LinearConstraint::gt(from_ints(c), r); }

}  // namespace

TEST_CASE("rational parsing and normal form") {
  CHECK(Rational::parse("6/4").str() == "3/2");
  CHECK(Rational::parse("-0/5").str() == "0");
  CHECK(Rational::parse("+7").str() == "7");
  CHECK_THROWS_AS((void)Rational::parse("1/0"), InputError);
  CHECK_THROWS_AS((void)Rational::parse("x"), InputError);
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
}

TEST_CASE("lp: box maximum") {
  LpProblem p{from_ints({1, 1}), {ge({1, 0}, 0), ge({-1, 0}, -1), ge({0, 1}, 0), ge({0, -1}, -1)}};
  const auto r = lp_solve(p);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == 2);
  CHECK(r.point == from_ints({1, 1}));
}

TEST_CASE("lp: unbounded and infeasible") {
  const auto u = lp_solve({from_ints({1}), {ge({1}, 0)}});
  REQUIRE(u.status == LpStatus::Unbounded);
  CHECK(u.ray[0] > 0);
  const auto i = lp_solve({from_ints({0}), {ge({1}, 1), ge({-1}, 0)}});
  CHECK(i.status == LpStatus::Infeasible);
  CHECK_THROWS_AS((void)lp_solve({from_ints({1, 0}), {ge({1}, 0)}}), DimensionMismatch);
}

TEST_CASE("lp: equalities and minimization") {
  LpProblem p{from_ints({1, 2, 3}), {ge({1, 0, 0}, 0), ge({0, 1, 0}, 0), ge({0, 0, 1}, 0)},
              {ge({1, 1, 1}, 1)}, Sense::Minimize};
  const auto r = lp_solve(p);
  REQUIRE(r.optimal());
  CHECK(r.value == 1);
  CHECK(r.point == from_ints({1, 0, 0}));
}

TEST_CASE("strict_feasible examples") {
  std::vector<LinearConstraint> a{gt({1}, 0), gt({-1}, -1)};
  auto f = strict_feasible(a, 1);
  REQUIRE(f.feasible);
  CHECK((*f.point)[0] == Rational(1, 2));
  std::vector<LinearConstraint> b{gt({1}, 0), ge({-1}, 0)};
  CHECK_FALSE(strict_feasible(b, 1).feasible);
  auto e = strict_feasible({}, 2);
  REQUIRE(e.feasible);
  CHECK(*e.point == from_ints({0, 0}));
}

TEST_CASE("fm_eliminate examples") {
  std::vector<LinearConstraint> a{ge({1, 1}, 0), ge({1, -1}, 0)};
  auto r = fm_eliminate(a, 1);
  REQUIRE(r.size() == 1);
  CHECK(r[0] == ge({1}, 0));
  std::vector<LinearConstraint> b{gt({0, 1}, 0), ge({1, -1}, 0)};
  r = fm_eliminate(b, 1);
  REQUIRE(r.size() == 1);
  CHECK(r[0] == gt({1}, 0));
  std::vector<LinearConstraint> c{ge({0, 1}, 0)};
  CHECK(fm_eliminate(c, 1).empty());
  CHECK_THROWS_AS((void)fm_eliminate(c, 2), PreconditionError);
}

TEST_CASE("solve_linear_system examples") {
  auto s = solve_linear_system(RatMatrix::identity(2), from_ints({1, 2}));
  REQUIRE(s.particular);
  CHECK(*s.particular == from_ints({1, 2}));
  CHECK(s.kernel.empty());
  s = solve_linear_system(RatMatrix({from_ints({1, 1})}, 2), from_ints({0}));
  REQUIRE(s.particular);
  CHECK(*s.particular == from_ints({0, 0}));
  REQUIRE(s.kernel.size() == 1);
  const auto k = primitive(s.kernel[0]);
  CHECK((k == from_ints({1, -1}) || k == from_ints({-1, 1})));
  s = solve_linear_system(RatMatrix({from_ints({1}), from_ints({1})}, 1), from_ints({0, 1}));
  CHECK_FALSE(s.particular);
}
