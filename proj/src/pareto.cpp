#include "epilip/pareto.hpp"

#include <algorithm>

#include "epilip/lp.hpp"

namespace epilip {

namespace {

void check_parameter(const Problem& problem, VectorView b) {
  if (b.size() != problem.m()) throw Error(Errc::dimension_mismatch, "parameter has the wrong dimension");
}

void check_point(const Problem& problem, VectorView b, VectorView x) {
  check_parameter(problem, b);
  if (x.size() != problem.n) throw Error(Errc::dimension_mismatch, "point has the wrong dimension");
  if (!problem.feasible(x, b)) throw Error(Errc::infeasible_point, "point is not feasible at this parameter");
}

LinearProgram feasible_set_lp(const Problem& problem, VectorView b) {
  LinearProgram lp(problem.n);
  lp.want_duals = false;
  for (std::size_t t = 0; t < problem.m(); ++t) lp.add(problem.rows[t], Sense::le, b[t]);
  return lp;
}

void require_dom_s(const Problem& problem, VectorView b) {
  if (!in_dom_s(problem, b))
    throw Error(Errc::not_in_dom_s, "no nondominated point exists at this parameter");
}

}  // namespace

std::optional<Vector> bounded_weights(const Problem& problem) {
  Vector uniform(problem.q(), Rational(1));
  if (dual_consistent(problem.rows, problem.composite(uniform))) return uniform;
  // sum_t mu_t a_t + sum_i w_i c_i = 0 with mu >= 0, w >= 1.
  const std::size_t m = problem.m();
  const std::size_t q = problem.q();
  LinearProgram lp(m + q);
  lp.nonnegative.assign(m + q, true);
  for (std::size_t j = 0; j < problem.n; ++j) {
    Vector row(m + q);
    for (std::size_t t = 0; t < m; ++t) row[t] = problem.rows[t][j];
    for (std::size_t i = 0; i < q; ++i) row[m + i] = problem.objectives[i][j];
    lp.add(std::move(row), Sense::eq, 0);
  }
  for (std::size_t i = 0; i < q; ++i) lp.add(unit(m + q, m + i), Sense::ge, 1);
  auto sol = solve_lp(lp);
  if (sol.status != LpStatus::optimal) return std::nullopt;
  return Vector(sol.x.begin() + static_cast<std::ptrdiff_t>(m), sol.x.end());
}

bool in_dom_s(const Problem& problem, VectorView b) {
  check_parameter(problem, b);
  if (solve_lp(feasible_set_lp(problem, b)).status == LpStatus::infeasible) return false;
  return bounded_weights(problem).has_value();
}

DominanceResult dominance_check(const Problem& problem, VectorView b, VectorView x0) {
  check_point(problem, b, x0);
  const std::size_t n = problem.n;
  const std::size_t q = problem.q();
  LinearProgram lp(n + q);
  lp.maximize = true;
  lp.want_duals = false;
  lp.nonnegative.assign(n + q, false);
  for (std::size_t i = 0; i < q; ++i) {
    lp.nonnegative[n + i] = true;
    lp.objective[n + i] = 1;
  }
  for (std::size_t t = 0; t < problem.m(); ++t) {
    Vector row = problem.rows[t];
    row.resize(n + q, Rational(0));
    lp.add(std::move(row), Sense::le, b[t]);
  }
  for (std::size_t i = 0; i < q; ++i) {
    Vector row = problem.objectives[i];
    row.resize(n + q, Rational(0));
    row[n + i] = 1;
    lp.add(std::move(row), Sense::le, dot(problem.objectives[i], x0));
  }
  Vector cap = zeros(n + q);
  for (std::size_t i = 0; i < q; ++i) cap[n + i] = 1;
  lp.add(std::move(cap), Sense::le, 1);

  auto sol = solve_lp(lp);
  DominanceResult out;
  if (sol.status == LpStatus::optimal && sol.value > 0) {
    out.nondominated = false;
    out.dominator = Vector(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(n));
  }
  return out;
}

bool is_nondominated(const Problem& problem, VectorView b, VectorView x0) {
  return dominance_check(problem, b, x0).nondominated;
}

DominateResult dominate_to_nondominated(const Problem& problem, VectorView b, VectorView x0) {
  check_point(problem, b, x0);
  require_dom_s(problem, b);
  DominateResult out{Vector(x0.begin(), x0.end()), 0};
  if (is_nondominated(problem, b, out.x)) return out;
  for (std::size_t j = 0; j < problem.q(); ++j) {
    LinearProgram lp = feasible_set_lp(problem, b);
    lp.objective = problem.objectives[j];
    for (const auto& c : problem.objectives) lp.add(c, Sense::le, dot(c, out.x));
    auto sol = solve_lp(lp);
    ++out.stages;
    if (sol.status != LpStatus::optimal)
      throw Error(Errc::not_in_dom_s, "stage program is unbounded at this parameter");
    out.x = std::move(sol.x);
    if (is_nondominated(problem, b, out.x)) return out;
  }
  throw Error(Errc::not_in_dom_s, "staged minimization did not reach a nondominated point");
}

ImagePoint pareto_point(const Problem& problem, VectorView b, VectorView weights) {
  check_parameter(problem, b);
  if (weights.size() != problem.q()) throw Error(Errc::dimension_mismatch, "weights have the wrong dimension");
  if (std::any_of(weights.begin(), weights.end(), [](const Rational& w) { return w <= 0; }))
    throw Error(Errc::invalid_weights, "weights must be strictly positive");
  auto outcome = solve(problem.rows, b, problem.composite(weights));
  if (outcome.status == LpStatus::infeasible)
    throw Error(Errc::infeasible, "feasible set is empty at this parameter");
  if (outcome.status == LpStatus::unbounded)
    throw Error(Errc::unbounded_scalarization, "weighted objective is unbounded below");
  return {problem.image(outcome.primal_point), outcome.primal_point};
}

bool in_epi_pareto(const Problem& problem, VectorView b, VectorView p) {
  check_parameter(problem, b);
  if (p.size() != problem.q()) throw Error(Errc::dimension_mismatch, "image point has the wrong dimension");
  require_dom_s(problem, b);
  LinearProgram lp = feasible_set_lp(problem, b);
  for (std::size_t i = 0; i < problem.q(); ++i) lp.add(problem.objectives[i], Sense::le, p[i]);
  return solve_lp(lp).status == LpStatus::optimal;
}

}  // namespace epilip
