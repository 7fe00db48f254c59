#include <doctest.h>

#include "epilip/pareto.hpp"
#include "errc.hpp"
#include "support.hpp"

using namespace epilip;
using namespace epilip::test;

TEST_CASE("domain of the solution mapping") {
  Problem p = example5_2();
  CHECK(in_dom_s(p, V("0,0")));
  auto w = bounded_weights(p);
  REQUIRE(w);
  CHECK(*w == V("1,1"));

  Problem ray;  // minimize (x, -2x) on x >= 0: bounded only for w1 >= 2 w2
  ray.n = 1;
  ray.objectives = {V("1"), V("-2")};
  ray.rows = {V("-1")};
  ray.nominal = V("0");
  auto rw = bounded_weights(ray);
  REQUIRE(rw);
  CHECK((*rw)[0] >= 2 * (*rw)[1]);

  Problem unbounded = ray;
  unbounded.objectives = {V("-1"), V("-1")};
  CHECK_FALSE(bounded_weights(unbounded));
  CHECK_FALSE(in_dom_s(unbounded, V("0")));

  Problem infeasible = p;
  infeasible.rows = {V("1,0"), V("-1,0")};
  CHECK_FALSE(in_dom_s(infeasible, V("-1,0")));
}

TEST_CASE("dominance test and staged improvement") {
  Problem p = example5_2();
  auto r = dominance_check(p, V("0,0"), V("1,0"));
  CHECK_FALSE(r.nondominated);
  REQUIRE(r.dominator);
  CHECK(p.feasible(*r.dominator, V("0,0")));
  CHECK(is_nondominated(p, V("0,0"), V("0,0")));
  CHECK(is_nondominated(p, V("0,0"), V("1,-1")));
  CHECK_FALSE(is_nondominated(p, V("0,0"), V("1,-1/2")));
  CHECK_ERRC(dominance_check(p, V("0,0"), V("-1,0")), Errc::infeasible_point);

  auto d = dominate_to_nondominated(p, V("0,0"), V("3,2"));
  CHECK(is_nondominated(p, V("0,0"), d.x));
  auto before = p.image(V("3,2"));
  auto after = p.image(d.x);
  for (std::size_t i = 0; i < 2; ++i) CHECK(after[i] <= before[i]);
  CHECK(dominate_to_nondominated(p, V("0,0"), V("0,0")).stages == 0);
}

TEST_CASE("scalarization and the epigraph of the front") {
  Problem p = example5_1();
  auto pt = pareto_point(p, V("0,0"), V("1,1"));
  CHECK(pt.p == V("0,0"));
  CHECK_ERRC(pareto_point(p, V("0,0"), V("1,0")), Errc::invalid_weights);
  CHECK_ERRC(pareto_point(example5_2(), V("0,0"), V("1,2")), Errc::unbounded_scalarization);
  CHECK(in_epi_pareto(p, V("0,0"), V("0,0")));
  CHECK(in_epi_pareto(p, V("0,0"), V("1,5")));
  CHECK_FALSE(in_epi_pareto(p, V("-1/10,0"), V("0,0")));
}
