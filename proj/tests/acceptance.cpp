// Acceptance driver: prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "epilip/linalg.hpp"
#include "epilip/lp.hpp"
#include "epilip/pareto.hpp"
#include "epilip/polyhedra.hpp"
#include "epilip/sensitivity.hpp"
#include "epilip/verify.hpp"
#include "support.hpp"

using namespace epilip;
using namespace epilip::test;

namespace {

// Collects failed checks of one criterion; the first few are printed.
struct Checker {
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

using Clock = std::chrono::steady_clock;

int failed_criteria = 0;

void criterion(int id, const char* title, double budget_seconds, const std::function<void(Checker&)>& body) {
  Checker check;
  auto start = Clock::now();
  try {
    body(check);
  } catch (const std::exception& e) {
    check.failures.push_back(std::string("exception: ") + e.what());
  }
  double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (seconds > budget_seconds) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "time %.2fs exceeds the %.0fs budget", seconds, budget_seconds);
    check.failures.push_back(buf);
  }
  bool ok = check.failures.empty();
  if (!ok) ++failed_criteria;
  std::printf("%s criterion %d: %s (%.2fs)\n", ok ? "PASS" : "FAIL", id, title, seconds);
  for (std::size_t i = 0; i < check.failures.size() && i < 5; ++i)
    std::printf("    %s\n", check.failures[i].c_str());
  if (check.failures.size() > 5) std::printf("    ... %zu more\n", check.failures.size() - 5);
  std::fflush(stdout);
}

std::vector<std::string> rows_text(const SymbolicSystem& sys) {
  std::vector<std::string> out;
  for (const auto& r : sys.rows) out.push_back(r.to_string());
  return out;
}

bool in_system(const SymbolicSystem& sys, VectorView b, VectorView x) {
  return sys.consistent_at(b) && sys.instantiate(b).contains(x);
}

// ---------------------------------------------------------------------------

void example_6_1(Checker& check) {
  Problem p = example6_1();
  auto sys = SymbolicSystem::from_problem(p);
  auto cone = eliminate_cone_direction(sys, V("2,1"));
  check.require(rows_text(cone) == std::vector<std::string>{"-x1-x2 <= b1", "-x1+2x2 <= b2", "-2x1 <= b3",
                                                           "2x1-4x2 <= 7b1+3b4", "-x1+2x2 <= b2",
                                                           "-2x1+4x2 <= 7b3+4b4"},
                "cone elimination rows");
  auto span = eliminate_span_direction(remove_redundancy(cone).system, V("-1,2"));
  check.require(span.rows.size() == 4, "span elimination row count");
  std::set<std::string> conditions;
  for (const auto& f : span.consistency) conditions.insert(f.to_string());
  check.require(conditions == std::set<std::string>{"7b1+2b2+3b4", "b1+b3+b4"}, "consistency rows");

  auto vf = lp_value_function(p);
  std::set<std::string> pieces;
  for (const auto& f : vf.pieces) pieces.insert(f.to_string());
  check.require(pieces == std::set<std::string>{"-5/3*b1-1/3*b2", "-b1-1/2*b3", "-5/3*b1-7/6*b3-2/3*b4",
                                                "-7/4*b1-5/4*b3-3/4*b4"},
                "value function pieces");
  check.require(vf.domain_conditions.size() == 2, "value function domain conditions");

  auto dp = subdiff_P_lp(p, p.nominal);
  std::set<std::string> verts;
  for (const auto& v : dp.pieces.at(0).vertices) verts.insert(to_string(VectorView(v)));
  check.require(verts == std::set<std::string>{"(-5/3,-1/3,0,0)", "(-1,0,-1/2,0)"}, "dP vertices");

  auto rel = lp_relations(p, p.nominal, V("1,1"));
  check.require(rel.lip_EP == Magnitude::from_rational(2), "lip E_P = 2");
  check.require(rel.lip_EF == Magnitude::from_square(Rational(4, 5)), "lip E_F^2 = 4/5");
  check.require(rel.lip_P == Magnitude::from_rational(2), "lip P = 2");
  check.require(rel.proportionality_ok, "dP = |c|* dF");
  auto ep = lip_modulus(p, Target::lip_EP, p.nominal, V("3"));
  check.require(ep.value == Magnitude::from_rational(2) && ep.exactness == Exactness::exact,
                "modulus report lip E_P");
}

void example_5_1(Checker& check) {
  Problem p = example5_1();
  const double r2 = std::sqrt(2.0), r5 = std::sqrt(5.0);
  auto ef = lip_modulus(p, Target::lip_EF, p.nominal, V("0,0"), 2000);
  auto ep = lip_modulus(p, Target::lip_EP, p.nominal, V("0,0"), 2000);
  // Exact upper ends, float lower ends.
  check.require(ef.value <= Magnitude::from_square(2) && ef.value.approx() >= r2 - 1e-4, "lip E_F range");
  check.require(ep.value <= Magnitude::from_square(5) && ep.value.approx() >= r5 - 1e-4, "lip E_P range");

  // The encoding flips the sign of b, which mirrors the subgradients into
  // the nonpositive quadrant.
  auto dF = subdiff_F(p, p.nominal, V("0,0"), WeightGrid::simplex(p, GridMode::composite, 2000));
  auto dP = subdiff_P(p, p.nominal, V("0,0"), WeightGrid::simplex(p, GridMode::image, 2000));
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> pick(0, dF.pieces.size() - 1);
  std::size_t sampled = 0;
  for (int s = 0; s < 500; ++s) {
    std::size_t k = pick(rng);
    const auto& f = dF.pieces[k];
    const auto& g = dP.pieces[k];
    if (f.vertices.size() != 1 || g.vertices.size() != 1) {
      check.require(false, "piece is not a single point");
      continue;
    }
    const auto& y = f.vertices[0];
    const auto& z = g.vertices[0];
    Rational circle = dot(y, y) / f.scale.square();
    Rational ellipse = (z[0] * z[0] / 4 + z[1] * z[1]) / g.scale.square();
    check.require(std::abs(to_double(circle) - 1) <= 1e-9 && y[0] <= 0 && y[1] <= 0, "dF sample off the quarter circle");
    check.require(std::abs(to_double(ellipse) - 1) <= 1e-9, "dP sample off the ellipse");
    ++sampled;
  }
  check.require(sampled == 500, "sample count");
}

void example_5_2(Checker& check) {
  Problem p = example5_2();
  auto ef = lip_modulus(p, Target::lip_EF, p.nominal, V("0,0"), 200);
  auto ep = lip_modulus(p, Target::lip_EP, p.nominal, V("0,0"), 200);
  check.require(std::abs(ef.value.approx() - 1) <= 1e-6, "lip E_F = 1");
  check.require(std::abs(ep.value.approx() - 1) <= 1e-6, "lip E_P = 1");
  SampleConfig cfg;
  cfg.samples = 10000;
  cfg.seed = 7;
  auto est = empirical_lip(p, MappingKind::P, p.nominal, V("0,0"), cfg);
  check.require(est.estimate() > 2.0, "empirical lip P = " + std::to_string(est.estimate()) + " exceeds 2");
  check.require(est.value <= Magnitude::from_square(5), "empirical lip P stays below sqrt(5)");
}

void interval_fixture(Checker& check) {
  SampleConfig cfg;
  cfg.samples = 10000;
  cfg.radius = Rational(1, 10);
  cfg.seed = 7;
  auto m = empirical_lip(IntervalFixture(false), V("0"), V("0"), cfg);
  auto em = empirical_lip(IntervalFixture(true), V("0"), V("0"), cfg);
  check.require(em.estimate() >= 0.99 && em.estimate() <= 1.0, "E_M estimate " + std::to_string(em.estimate()));
  check.require(m.estimate() >= 1.9 && m.estimate() <= 2.0, "M estimate " + std::to_string(m.estimate()));
}

// ---------------------------------------------------------------------------
// Random instances and brute-force oracles

struct Instance {
  Problem problem;
  Vector x_hat;
};

Instance random_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(-3, 3), small(0, 2), dim(1, 3), objs(1, 2);
  Instance inst;
  Problem& p = inst.problem;
  p.n = static_cast<std::size_t>(dim(rng));
  std::uniform_int_distribution<int> rows(static_cast<int>(p.n), 5);
  const std::size_t m = static_cast<std::size_t>(rows(rng));
  while (p.rows.size() < m) {
    Vector a(p.n);
    for (auto& v : a) v = coef(rng);
    if (!is_zero(a)) p.rows.push_back(a);
  }
  for (std::size_t j = 0; j < p.n; ++j) inst.x_hat.push_back(Rational(coef(rng), 2));
  for (const auto& a : p.rows) p.nominal.push_back(dot(a, inst.x_hat) + small(rng));
  const int q = objs(rng);
  while (p.objectives.size() < static_cast<std::size_t>(q)) {
    Vector c = zeros(p.n);
    for (const auto& a : p.rows) c = axpy(c, -Rational(small(rng)), a);
    if (!is_zero(c)) p.objectives.push_back(c);
  }
  return inst;
}

Vector random_vector(std::mt19937_64& rng, VectorView center, int spread, int denominator) {
  std::uniform_int_distribution<int> d(-spread, spread);
  Vector v(center.begin(), center.end());
  for (auto& x : v) x += Rational(d(rng), denominator);
  return v;
}

bool lp_feasible(LinearProgram lp) {
  lp.want_duals = false;
  return solve_lp(lp).status != LpStatus::infeasible;
}

// x in F(b) + {c_i}° iff some y in F(b) has C(y) <= C(x).
bool epigraph_oracle(const Problem& p, VectorView b, VectorView x) {
  LinearProgram lp(p.n);
  for (std::size_t t = 0; t < p.m(); ++t) lp.add(p.rows[t], Sense::le, b[t]);
  for (const auto& c : p.objectives) lp.add(c, Sense::le, dot(c, x));
  return lp_feasible(lp);
}

// p in C(F(b)) + R^q_+.
bool image_oracle(const Problem& p, VectorView b, VectorView z) {
  LinearProgram lp(p.n);
  for (std::size_t t = 0; t < p.m(); ++t) lp.add(p.rows[t], Sense::le, b[t]);
  for (std::size_t i = 0; i < p.q(); ++i) lp.add(p.objectives[i], Sense::le, z[i]);
  return lp_feasible(lp);
}

// Decides domination by scanning the vertices and extreme rays of
// D = {y in F(b) | C(y) <= C(x0)}, made pointed by restricting to the
// orthogonal complement of its lineality space.
bool brute_force_nondominated(const Problem& p, VectorView b, VectorView x0) {
  const std::size_t n = p.n;
  Matrix ineq;
  Vector rhs;
  for (std::size_t t = 0; t < p.m(); ++t) {
    ineq.push_back(p.rows[t]);
    rhs.push_back(b[t]);
  }
  const Vector cx = p.image(x0);
  for (std::size_t i = 0; i < p.q(); ++i) {
    ineq.push_back(p.objectives[i]);
    rhs.push_back(cx[i]);
  }
  const Matrix lineality = nullspace(ineq, n);
  auto in_D = [&](VectorView y) {
    for (std::size_t k = 0; k < ineq.size(); ++k)
      if (dot(ineq[k], y) > rhs[k]) return false;
    return true;
  };
  auto in_R = [&](VectorView d) {
    for (const auto& g : ineq)
      if (dot(g, d) > 0) return false;
    return true;
  };
  const std::size_t k = ineq.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    Matrix eq = lineality;
    Vector eq_rhs(lineality.size(), Rational(0));
    Vector zero_rhs(lineality.size(), Rational(0));
    for (std::size_t j = 0; j < k; ++j) {
      if (!(mask >> j & 1)) continue;
      eq.push_back(ineq[j]);
      eq_rhs.push_back(rhs[j]);
      zero_rhs.push_back(0);
    }
    const std::size_t r = eq.empty() ? 0 : rank(eq, n);
    if (r == n) {
      auto v = solve_linear(eq, eq_rhs, n);
      if (v && in_D(*v) && p.image(*v) != cx) return false;
    } else if (r + 1 == n) {
      auto dirs = eq.empty() ? std::vector<Vector>{unit(n, 0)} : nullspace(eq, n);
      for (const auto& d : dirs) {
        for (const auto& s : {d, negate(d)})
          if (in_R(s) && !is_zero(p.image(s))) return false;
      }
    }
  }
  return true;
}

void oracle_suite(Checker& check) {
  std::mt19937_64 rng(20241018);
  double spent[5] = {};
  auto lap = [last = Clock::now()](double& slot) mutable {
    auto now = Clock::now();
    slot += std::chrono::duration<double>(now - last).count();
    last = now;
  };
  for (int index = 0; index < 100; ++index) {
    Instance inst = random_instance(rng);
    const Problem& p = inst.problem;
    std::string tag = "instance " + std::to_string(index) + ": ";

    // (a) elimination outputs against LP membership.
    auto epi = epigraph_system(p);
    auto img = image_epigraph_system(p);
    for (int sb = 0; sb < 20; ++sb) {
      Vector b = random_vector(rng, p.nominal, 4, 2);
      for (int sx = 0; sx < 20; ++sx) {
        Vector x = random_vector(rng, inst.x_hat, 6, 2);
        check.require(in_system(epi, b, x) == epigraph_oracle(p, b, x), tag + "E_F system disagrees");
        Vector z = p.image(x);
        z = random_vector(rng, z, 2, 2);
        check.require(in_system(img, b, z) == image_oracle(p, b, z), tag + "E_P system disagrees");
      }
    }

    lap(spent[0]);

    // (b) emitted subgradients satisfy the graph inequality.
    const Vector x_bar = *pareto_point(p, p.nominal, *bounded_weights(p)).witness;
    const Vector p_bar = p.image(x_bar);
    const std::size_t K = p.q() == 1 ? 1 : 3;
    SampleConfig sg;
    sg.samples = 200;
    sg.seed = static_cast<std::uint64_t>(index) + 1;
    auto check_set = [&](const SubdiffSet& set, SubgradientKind kind, VectorView anchor) {
      for (const auto& piece : set.pieces) {
        if (!piece.active) continue;
        std::vector<Vector> ys = piece.vertices;
        if (!piece.vertices.empty())
          for (const auto& ray : piece.rays) ys.push_back(add(piece.vertices[0], ray));
        for (const auto& y : ys) {
          auto res = subgradient_check(p, kind, piece.weight, y, p.nominal, anchor, sg);
          check.require(res.ok, tag + "subgradient " + to_string(VectorView(y)) + " fails");
        }
      }
    };
    check_set(subdiff_F(p, p.nominal, x_bar, WeightGrid::simplex(p, GridMode::composite, K)), SubgradientKind::F,
              x_bar);
    check_set(subdiff_P(p, p.nominal, p_bar, WeightGrid::simplex(p, GridMode::image, K)), SubgradientKind::P,
              p_bar);

    lap(spent[1]);

    // (c), (d) nondominance against the brute-force scan, staged improvement.
    std::vector<Vector> candidates{inst.x_hat, x_bar};
    for (int s = 0; s < 6; ++s) {
      Vector x = random_vector(rng, inst.x_hat, 4, 2);
      if (p.feasible(x, p.nominal)) candidates.push_back(x);
    }
    for (const auto& x : candidates) {
      check.require(is_nondominated(p, p.nominal, x) == brute_force_nondominated(p, p.nominal, x),
                    tag + "nondominance disagrees at " + to_string(VectorView(x)));
      auto d = dominate_to_nondominated(p, p.nominal, x);
      check.require(brute_force_nondominated(p, p.nominal, d.x), tag + "dominate output is dominated");
      auto before = p.image(x), after = p.image(d.x);
      for (std::size_t i = 0; i < p.q(); ++i) check.require(after[i] <= before[i], tag + "dominate increased C");
    }

    lap(spent[2]);

    // (e) value function against the LP.
    if (p.q() == 1) {
      auto vf = lp_value_function(p);
      int agreed = 0;
      for (int attempt = 0; attempt < 500 && agreed < 50; ++attempt) {
        Vector b = random_vector(rng, p.nominal, 6, 3);
        auto out = solve(p.rows, b, p.objectives[0]);
        if (!vf.in_domain(b)) {
          check.require(out.status == LpStatus::infeasible, tag + "value function domain too small");
          continue;
        }
        check.require(out.status == LpStatus::optimal && out.value == vf.evaluate(b), tag + "value mismatch");
        ++agreed;
      }
      check.require(agreed == 50, tag + "too few in-domain samples");
    }

    lap(spent[3]);

    // (f) midpoint convexity of the graph of E_P.
    SampleConfig cv;
    cv.samples = 500;
    cv.seed = static_cast<std::uint64_t>(index) + 101;
    check.require(convexity_check(p, cv).ok, tag + "convexity fails");
    lap(spent[4]);
  }
  std::printf("    parts (a) %.1fs, (b) %.1fs, (c,d) %.1fs, (e) %.1fs, (f) %.1fs\n", spent[0], spent[1], spent[2],
              spent[3], spent[4]);
}

void monotone_refinement(Checker& check) {
  Problem p = example5_1();
  std::optional<Magnitude> previous;
  for (std::size_t K : {10, 50, 200, 1000}) {
    auto ep = lip_modulus(p, Target::lip_EP, p.nominal, V("0,0"), K);
    check.require(ep.value <= Magnitude::from_square(5) && ep.value.approx() <= std::sqrt(5.0) + 1e-12,
                  "K=" + std::to_string(K) + " exceeds sqrt(5)");
    if (previous) check.require(*previous <= ep.value, "K=" + std::to_string(K) + " decreased");
    previous = ep.value;
  }
}

}  // namespace

int main() {
  criterion(1, "single-objective example end to end, exact", 1, example_6_1);
  criterion(2, "quarter-circle example on a 2000-point grid", 10, example_5_1);
  criterion(3, "strict inequality example, grid and sampling", 5, example_5_2);
  criterion(4, "interval fixture estimates", 60, interval_fixture);
  criterion(5, "oracle equivalence on 100 random instances", 60, oracle_suite);
  criterion(6, "monotone grid refinement", 60, monotone_refinement);
  std::printf("%s: %d of 6 criteria failed\n", failed_criteria ? "FAIL" : "PASS", failed_criteria);
  return failed_criteria ? 1 : 0;
}
