#include <doctest.h>

#include "epilip/lp.hpp"
#include "errc.hpp"
#include "support.hpp"

using namespace epilip;
using namespace epilip::test;

TEST_CASE("optimal LP with dual certificate") {
  Problem p = example6_1();
  auto out = solve(p.rows, p.nominal, p.objectives[0]);
  REQUIRE(out.status == LpStatus::optimal);
  CHECK(out.value == 3);
  CHECK(out.primal_point == V("1,1"));
  // Dual feasibility and strong duality, exactly.
  const auto& lam = out.dual_point;
  for (const auto& l : lam) CHECK(l >= 0);
  Vector lhs = zeros(2);
  for (std::size_t t = 0; t < 4; ++t) lhs = axpy(lhs, lam[t], p.rows[t]);
  CHECK(lhs == negate(p.objectives[0]));
  CHECK(-dot(lam, p.nominal) == out.value);
}

TEST_CASE("infeasible LP yields a Farkas certificate") {
  std::vector<Vector> rows{V("1"), V("-1")};
  Vector b = V("-1,0");  // x <= -1 and x >= 0
  auto out = solve(rows, b, V("1"));
  REQUIRE(out.status == LpStatus::infeasible);
  // y >= 0, y^T A = 0, y^T b < 0
  Rational combo = 0, rhs = 0;
  for (std::size_t t = 0; t < 2; ++t) {
    CHECK(out.farkas[t] >= 0);
    combo += out.farkas[t] * rows[t][0];
    rhs += out.farkas[t] * b[t];
  }
  CHECK(combo == 0);
  CHECK(rhs < 0);
}

TEST_CASE("unbounded LP yields a recession ray") {
  std::vector<Vector> rows{V("1")};
  auto out = solve(rows, V("0"), V("1"));
  REQUIRE(out.status == LpStatus::unbounded);
  CHECK(out.ray[0] < 0);
}

TEST_CASE("general LP with equalities and bounds") {
  // max x + y s.t. x + 2y <= 4, 3x + y <= 6, x - y = 0, x,y >= 0
  LinearProgram lp(2);
  lp.maximize = true;
  lp.nonnegative.assign(2, true);
  lp.objective = V("1,1");
  lp.add(V("1,2"), Sense::le, 4);
  lp.add(V("3,1"), Sense::le, 6);
  lp.add(V("1,-1"), Sense::eq, 0);
  auto sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::optimal);
  CHECK(sol.x == V("4/3,4/3"));
  CHECK(sol.value == Rational(8, 3));
}

TEST_CASE("degenerate LP terminates under Bland's rule") {
  // A classic cycling example for the largest-coefficient rule.
  LinearProgram lp(4);
  lp.maximize = true;
  lp.nonnegative.assign(4, true);
  lp.objective = V("3/4,-150,1/50,-6");
  lp.add(V("1/4,-60,-1/25,9"), Sense::le, 0);
  lp.add(V("1/2,-90,-1/50,3"), Sense::le, 0);
  lp.add(V("0,0,1,0"), Sense::le, 1);
  auto sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::optimal);
  CHECK(sol.value == Rational(1, 20));
}

TEST_CASE("dual-optimal face of the single-objective example") {
  Problem p = example6_1();
  DualFace face = dual_face(p.rows, p.nominal, p.objectives[0]);
  auto verts = face.vertices();
  REQUIRE(verts.size() == 2);
  CHECK(verts[0] == V("1,0,1/2,0"));
  CHECK(verts[1] == V("5/3,1/3,0,0"));
  CHECK(face.bounded());
  auto mx = face.max_l1();
  REQUIRE(mx.value);
  CHECK(*mx.value == 2);
  CHECK(face.contains(V("4/3,1/6,1/4,0")));
  CHECK_FALSE(face.contains(V("2,0,0,0")));
}

TEST_CASE("dual consistency") {
  Problem p = example6_1();
  CHECK(dual_consistent(p.rows, p.objectives[0]));
  std::vector<Vector> halfplane{V("-1,0")};
  CHECK_FALSE(dual_consistent(halfplane, V("1,1")));
}
