#include <doctest.h>

#include <random>

#include "epilip/lp.hpp"
#include "epilip/polyhedra.hpp"
#include "errc.hpp"
#include "support.hpp"

using namespace epilip;
using namespace epilip::test;

namespace {

std::vector<std::string> rows_text(const SymbolicSystem& sys) {
  std::vector<std::string> out;
  for (const auto& r : sys.rows) out.push_back(r.to_string());
  return out;
}

// x in F(b) + cone{u} (or span{u}) iff some s (>= 0 for cones) keeps x - s u in F(b).
bool member_oracle(const Problem& p, VectorView b, VectorView x, VectorView u, bool span) {
  LinearProgram lp(1);
  lp.nonnegative = {!span};
  for (std::size_t t = 0; t < p.m(); ++t) lp.add(Vector{-dot(p.rows[t], u)}, Sense::le, b[t] - dot(p.rows[t], x));
  return solve_lp(lp).status == LpStatus::optimal;
}

}  // namespace

TEST_CASE("polar cones") {
  auto a = polar_generators({V("2,1")}, 2);
  CHECK(a.rays == std::vector<Vector>{V("2,1")});
  CHECK(a.lineality == std::vector<Vector>{V("-1,2")});

  auto quadrant = polar_generators({V("2,0"), V("0,1")}, 2);
  CHECK(quadrant.rays.size() == 2);
  CHECK(quadrant.lineality.empty());
  CHECK(quadrant.contains(V("1,3")));
  CHECK_FALSE(quadrant.contains(V("-1,3")));

  // Polar of a pointed cone spanning R^2 in a line: a halfplane.
  auto opposite = polar_generators({V("1,0"), V("-1,0")}, 2);
  CHECK(opposite.rays.empty());
  CHECK(opposite.lineality.size() == 1);

  // A full-dimensional cone in R^3 with a redundant generator.
  auto cone3 = polar_generators({V("1,0,0"), V("0,1,0"), V("0,0,1"), V("1,1,1")}, 3);
  CHECK(cone3.rays.size() == 3);
  CHECK(cone3.contains(V("0,0,1")));

  auto whole = polar_generators({}, 2);
  CHECK(whole.lineality.size() == 2);
  auto zero = polar_generators({V("1,0"), V("-1,0"), V("0,1"), V("0,-1")}, 2);
  CHECK(zero.trivial());
}

TEST_CASE("cone elimination reproduces the single-objective example") {
  Problem p = example6_1();
  auto sys = SymbolicSystem::from_problem(p);
  auto part = Partition12::of(sys.rows, V("2,1"));
  CHECK(part.t2 == std::vector<std::size_t>{3});
  auto cone = eliminate_cone_direction(sys, V("2,1"));
  CHECK(rows_text(cone) == std::vector<std::string>{"-x1-x2 <= b1", "-x1+2x2 <= b2", "-2x1 <= b3",
                                                    "2x1-4x2 <= 7b1+3b4", "-x1+2x2 <= b2",
                                                    "-2x1+4x2 <= 7b3+4b4"});
  CHECK(cone.consistency.empty());

  auto pruned = remove_redundancy(cone, p.nominal);
  CHECK(pruned.dropped == std::vector<std::size_t>{4});
  CHECK(pruned.locally_dropped == std::vector<std::size_t>{2, 5});

  auto span = eliminate_span_direction(remove_redundancy(cone).system, V("-1,2"));
  CHECK(rows_text(span) == std::vector<std::string>{"-6x1-3x2 <= 5b1+b2", "-4x1-2x2 <= 2b1+b3",
                                                    "-12x1-6x2 <= 10b1+7b3+4b4",
                                                    "-8x1-4x2 <= 7b1+5b3+3b4"});
  REQUIRE(span.consistency.size() == 2);
  CHECK(span.consistency[0].to_string() == "7b1+2b2+3b4");
  CHECK(span.consistency[1].to_string() == "b1+b3+b4");

  auto joint = remove_redundancy(span, std::nullopt, RedundancyScope::joint);
  CHECK(joint.system.rows.size() == 2);

  CHECK(rows_text(epigraph_system(p)) == rows_text(span));
}

TEST_CASE("empty T2 leaves the system unchanged") {
  auto sys = SymbolicSystem::from_problem(example5_1());
  auto out = eliminate_cone_direction(sys, V("1,1"));
  CHECK(rows_text(out) == rows_text(sys));
  CHECK_ERRC(eliminate_cone_direction(sys, V("0,0")), Errc::zero_direction);
}

TEST_CASE("elimination agrees with the LP membership oracle") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int inst = 0; inst < 25; ++inst) {
    Problem p;
    p.n = 2;
    p.objectives = {V("1,0")};
    for (int t = 0; t < 4; ++t) p.rows.push_back({Rational(coef(rng)), Rational(coef(rng))});
    p.nominal = zeros(4);
    Vector u{Rational(coef(rng)), Rational(coef(rng))};
    if (is_zero(u)) u = V("1,1");
    auto sys = SymbolicSystem::from_problem(p);
    auto cone = eliminate_cone_direction(sys, u);
    auto span = eliminate_span_direction(sys, u);
    for (int k = 0; k < 30; ++k) {
      Vector b, x;
      for (int t = 0; t < 4; ++t) b.push_back(Rational(coef(rng), 2));
      for (int j = 0; j < 2; ++j) x.push_back(Rational(coef(rng), 3));
      auto in = [&](const SymbolicSystem& s) { return s.consistent_at(b) && s.instantiate(b).contains(x); };
      CHECK(in(cone) == member_oracle(p, b, x, u, false));
      CHECK(in(span) == member_oracle(p, b, x, u, true));
      CHECK(in(remove_redundancy(cone).system) == in(cone));
      CHECK(in(remove_redundancy(span, std::nullopt, RedundancyScope::joint).system) == in(span));
    }
  }
}

TEST_CASE("image epigraph system") {
  // {p | p1 >= -b1, p1 + p2 >= -b2}
  auto sys = image_epigraph_system(example5_2());
  auto in = [&](const char* b, const char* p) {
    return sys.consistent_at(V(b)) && sys.instantiate(V(b)).contains(V(p));
  };
  CHECK(in("0,0", "0,0"));
  CHECK(in("0,0", "1,-1"));
  CHECK_FALSE(in("0,0", "1,-2"));
  CHECK_FALSE(in("0,0", "-1/10,1"));
  CHECK(in("1,0", "-1,1"));
}
