#include <doctest.h>

#include <cmath>

#include "epilip/lp.hpp"
#include "epilip/sensitivity.hpp"
#include "errc.hpp"
#include "support.hpp"

using namespace epilip;
using namespace epilip::test;

TEST_CASE("weight grids") {
  Problem p = example5_1();
  auto g = WeightGrid::simplex(p, GridMode::image, 4);
  CHECK(g.points.size() == 5);
  for (const auto& w : g.points) CHECK(sum(w.alpha) == 1);
  CHECK(g.points[2].alpha == V("1/2,1/2"));
  CHECK(g.points[2].scale.square() == Rational(1, 2));
  auto c = WeightGrid::simplex(p, GridMode::composite, 4);
  // c_alpha = (2 a1, a2) at (1/2,1/2) is (1,1/2).
  CHECK(c.points[2].scale.square() == Rational(5, 4));
  CHECK(WeightGrid::default_resolution(1) == 1);
  CHECK(WeightGrid::simplex(example6_1(), GridMode::image, 7).points.size() == 1);
}

TEST_CASE("value function of the single-objective example") {
  Problem p = example6_1();
  auto vf = lp_value_function(p);
  REQUIRE(vf.pieces.size() == 4);
  CHECK(vf.pieces[0].to_string() == "-5/3*b1-1/3*b2");
  CHECK(vf.pieces[1].to_string() == "-b1-1/2*b3");
  CHECK(vf.pieces[2].to_string() == "-5/3*b1-7/6*b3-2/3*b4");
  CHECK(vf.pieces[3].to_string() == "-7/4*b1-5/4*b3-3/4*b4");
  CHECK(vf.domain_conditions.size() == 2);
  CHECK(vf.evaluate(p.nominal) == 3);
  CHECK(vf.active(p.nominal) == std::vector<std::size_t>{0, 1});
  // Agreement with the LP away from b-bar.
  for (const char* b : {"-1,2,-3,8", "0,0,0,0", "-3,1,-1,9", "1,1,1,1"}) {
    auto out = solve(p.rows, V(b), p.objectives[0]);
    REQUIRE(out.status == LpStatus::optimal);
    CHECK(vf.evaluate(V(b)) == out.value);
  }
  CHECK_FALSE(vf.in_domain(V("-2,1,-2,0")));
  CHECK_ERRC(lp_value_function(example5_1()), Errc::dimension_mismatch);
}

TEST_CASE("single-objective subdifferentials and moduli") {
  Problem p = example6_1();
  auto dp = subdiff_P_lp(p, p.nominal);
  REQUIRE(dp.pieces.size() == 1);
  CHECK(dp.exactness == Exactness::exact);
  CHECK(dp.pieces[0].vertices == std::vector<Vector>{V("-5/3,-1/3,0,0"), V("-1,0,-1/2,0")});

  auto rel = lp_relations(p, p.nominal, V("1,1"));
  CHECK(rel.lip_P == Magnitude::from_rational(2));
  CHECK(rel.lip_EP == Magnitude::from_rational(2));
  CHECK(rel.lip_EF.square() == Rational(4, 5));
  CHECK(rel.dual_norm_c.square() == 5);
  CHECK(rel.proportionality_ok);
  CHECK_ERRC(lp_relations(p, p.nominal, V("2,0")), Errc::anchor_not_optimal);

  auto ep = lip_modulus(p, Target::lip_EP, p.nominal, V("3"));
  CHECK(ep.value == Magnitude::from_rational(2));
  CHECK(ep.exactness == Exactness::exact);
  auto ef = lip_modulus(p, Target::lip_EF, p.nominal, V("1,1"));
  CHECK(ef.value.square() == Rational(4, 5));
  CHECK_ERRC(lip_modulus(p, Target::lip_EP, p.nominal, V("4")), Errc::anchor_not_on_front);
  CHECK_ERRC(lip_modulus(p, Target::lip_EF, p.nominal, V("0,0")), Errc::anchor_not_in_graph);
}

TEST_CASE("bi-objective moduli on a grid") {
  Problem p = example5_1();
  auto ef = lip_modulus(p, Target::lip_EF, p.nominal, V("0,0"), 200);
  auto ep = lip_modulus(p, Target::lip_EP, p.nominal, V("0,0"), 200);
  CHECK(ef.exactness == Exactness::grid_approximation);
  CHECK(ef.value.approx() <= std::sqrt(2.0) + 1e-12);
  CHECK(ef.value.approx() > std::sqrt(2.0) - 1e-3);
  CHECK(ep.value.approx() <= std::sqrt(5.0) + 1e-12);
  CHECK(ep.value.approx() > std::sqrt(5.0) - 1e-3);
  CHECK_ERRC(lip_modulus(p, Target::lip_P, p.nominal, V("0,0")), Errc::lip_p_unsupported);

  Problem q = example5_2();
  CHECK(lip_modulus(q, Target::lip_EF, q.nominal, V("0,0"), 200).value == Magnitude::from_rational(1));
  CHECK(lip_modulus(q, Target::lip_EP, q.nominal, V("0,0"), 200).value == Magnitude::from_rational(1));
}

TEST_CASE("subdifferential pieces of the quarter circle") {
  Problem p = example5_1();
  auto set = subdiff_F(p, p.nominal, V("0,0"), WeightGrid::simplex(p, GridMode::composite, 10));
  CHECK(set.active_count() == 11);
  for (const auto& piece : set.pieces) {
    REQUIRE(piece.vertices.size() == 1);
    // y / scale lies on the unit circle: |y|^2 = scale^2.
    const auto& y = piece.vertices[0];
    CHECK(dot(y, y) == piece.scale.square());
  }
  CHECK(parse_target("ef") == Target::lip_EF);
  CHECK(target_name(Target::lip_P) == "lip_P");
}
