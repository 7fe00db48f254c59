#include "epilip/polyhedra.hpp"

#include <algorithm>

#include "epilip/linalg.hpp"
#include "epilip/lp.hpp"

namespace epilip {

namespace {

// Is y in cone(rays) + span(lineality)?
bool in_generated_cone(const std::vector<Vector>& rays, const std::vector<Vector>& lineality,
                       VectorView y) {
  const std::size_t n = y.size();
  const std::size_t k = rays.size() + lineality.size();
  if (k == 0) return is_zero(y);
  LinearProgram lp(k);
  lp.nonnegative.assign(k, false);
  for (std::size_t j = 0; j < rays.size(); ++j) lp.nonnegative[j] = true;
  for (std::size_t i = 0; i < n; ++i) {
    Vector row(k);
    for (std::size_t j = 0; j < rays.size(); ++j) row[j] = rays[j][i];
    for (std::size_t j = 0; j < lineality.size(); ++j) row[rays.size() + j] = lineality[j][i];
    lp.add(std::move(row), Sense::eq, y[i]);
  }
  return solve_lp(lp).status == LpStatus::optimal;
}

// Orthogonal projection onto the complement of span(basis).
Vector project_out(VectorView v, const std::vector<Vector>& basis) {
  if (basis.empty()) return Vector(v.begin(), v.end());
  const std::size_t k = basis.size();
  Matrix gram(k, zeros(k));
  Vector rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    rhs[i] = dot(basis[i], v);
    for (std::size_t j = 0; j < k; ++j) gram[i][j] = dot(basis[i], basis[j]);
  }
  auto w = solve_linear(gram, rhs, k);
  Vector out(v.begin(), v.end());
  for (std::size_t i = 0; i < k; ++i) out = axpy(out, -(*w)[i], basis[i]);
  return out;
}

}  // namespace

bool ConeGenerators::contains(VectorView y) const { return in_generated_cone(rays, lineality, y); }

ConeGenerators polar_generators(const std::vector<Vector>& vectors, std::size_t dimension) {
  std::vector<Vector> lineality;
  for (std::size_t i = 0; i < dimension; ++i) lineality.push_back(unit(dimension, i));
  std::vector<Vector> rays;

  for (const auto& c : vectors) {
    auto pivot = std::find_if(lineality.begin(), lineality.end(),
                              [&](const Vector& l) { return dot(c, l) != 0; });
    if (pivot != lineality.end()) {
      Vector l = std::move(*pivot);
      lineality.erase(pivot);
      Rational cl = dot(c, l);
      if (cl < 0) {
        l = negate(l);
        cl = -cl;
      }
      for (auto& other : lineality) other = axpy(other, -dot(c, other) / cl, l);
      for (auto& r : rays) r = axpy(r, -dot(c, r) / cl, l);
      rays.push_back(std::move(l));
      continue;
    }
    std::vector<Vector> next, positive, negative;
    for (auto& r : rays) {
      Rational s = dot(c, r);
      if (s > 0) positive.push_back(r);
      else if (s < 0) negative.push_back(r);
      if (s >= 0) next.push_back(r);
    }
    // Every combination is kept; irredundancy is restored below.
    for (const auto& p : positive) {
      for (const auto& n : negative) {
        Vector combo = axpy(scale(dot(c, p), n), -dot(c, n), p);
        next.push_back(std::move(combo));
      }
    }
    rays = std::move(next);
  }

  ConeGenerators out;
  out.dimension = dimension;
  for (auto& l : lineality) out.lineality.push_back(primitive(l));
  std::vector<Vector> candidates;
  for (auto& r : rays) {
    Vector p = project_out(r, out.lineality);
    if (is_zero(p)) continue;
    p = primitive(p);
    if (std::find(candidates.begin(), candidates.end(), p) == candidates.end())
      candidates.push_back(std::move(p));
  }
  for (std::size_t i = 0; i < candidates.size();) {
    std::vector<Vector> others;
    for (std::size_t j = 0; j < candidates.size(); ++j)
      if (j != i) others.push_back(candidates[j]);
    if (in_generated_cone(others, out.lineality, candidates[i])) {
      candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  out.rays = std::move(candidates);
  return out;
}

Partition12 Partition12::of(const std::vector<SymbolicRow>& rows, VectorView u) {
  Partition12 p;
  for (std::size_t t = 0; t < rows.size(); ++t) {
    Rational s = dot(rows[t].lhs, u);
    if (s > 0) {
      p.t2.push_back(t);
    } else {
      p.t1.push_back(t);
      if (s == 0) p.t0.push_back(t);
    }
  }
  return p;
}

namespace {

SymbolicRow combine(const SymbolicRow& t, const SymbolicRow& s, VectorView u) {
  Rational su = dot(s.lhs, u);
  Rational tu = dot(t.lhs, u);
  SymbolicRow out;
  out.lhs = axpy(scale(su, t.lhs), -tu, s.lhs);
  out.rhs = su * t.rhs - tu * s.rhs;
  return out;
}

SymbolicSystem empty_like(const SymbolicSystem& sys) {
  SymbolicSystem out;
  out.dimension = sys.dimension;
  out.parameters = sys.parameters;
  out.consistency = sys.consistency;
  return out;
}

void require_direction(const SymbolicSystem& sys, VectorView u) {
  if (u.size() != sys.dimension)
    throw Error(Errc::dimension_mismatch, "direction has the wrong dimension");
  if (is_zero(u)) throw Error(Errc::zero_direction, "direction must be nonzero");
}

}  // namespace

SymbolicSystem eliminate_cone_direction(const SymbolicSystem& sys, VectorView u) {
  require_direction(sys, u);
  auto part = Partition12::of(sys.rows, u);
  if (part.t2.empty()) return sys;
  SymbolicSystem out = empty_like(sys);
  for (auto t : part.t1) out.add(sys.rows[t]);
  for (auto t : part.t1)
    for (auto s : part.t2) out.add(combine(sys.rows[t], sys.rows[s], u));
  return out;
}

SymbolicSystem eliminate_span_direction(const SymbolicSystem& sys, VectorView u) {
  require_direction(sys, u);
  auto part = Partition12::of(sys.rows, u);
  SymbolicSystem out = empty_like(sys);
  for (auto t : part.t0) out.add(sys.rows[t]);
  for (auto t : part.t1) {
    if (dot(sys.rows[t].lhs, u) == 0) continue;
    for (auto s : part.t2) out.add(combine(sys.rows[t], sys.rows[s], u));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Redundancy
// ---------------------------------------------------------------------------

namespace {

// Scale so the first nonzero entry of `key` has absolute value one.
Rational unit_factor(VectorView key) {
  for (const auto& v : key)
    if (v != 0) return 1 / abs(v);
  return 1;
}

struct Normalized {
  Vector lhs;
  AffineForm rhs;
};

Normalized normalize(const SymbolicRow& row) {
  Rational f = unit_factor(row.lhs);
  return {scale(f, row.lhs), f * row.rhs};
}

// Returns the rows (by index) that survive pairwise dominance.
std::vector<bool> pairwise_drops(const std::vector<SymbolicRow>& rows) {
  std::vector<Normalized> norm;
  for (const auto& r : rows) norm.push_back(normalize(r));
  std::vector<bool> drop(rows.size(), false);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t s = 0; s < rows.size() && !drop[r]; ++s) {
      if (s == r || drop[s]) continue;
      if (norm[s].lhs != norm[r].lhs || norm[s].rhs.coefficients != norm[r].rhs.coefficients) continue;
      const auto& cs = norm[s].rhs.constant;
      const auto& cr = norm[r].rhs.constant;
      if (cs < cr || (cs == cr && s < r)) drop[r] = true;
    }
  }
  return drop;
}

std::vector<AffineForm> prune_conditions(const std::vector<AffineForm>& forms) {
  std::vector<AffineForm> norm;
  for (const auto& f : forms) norm.push_back(unit_factor(f.coefficients) * f);
  std::vector<bool> drop(forms.size(), false);
  for (std::size_t r = 0; r < forms.size(); ++r) {
    for (std::size_t s = 0; s < forms.size() && !drop[r]; ++s) {
      if (s == r || drop[s] || norm[s].coefficients != norm[r].coefficients) continue;
      // 0 <= g + k_s implies 0 <= g + k_r whenever k_s <= k_r.
      if (norm[s].constant < norm[r].constant || (norm[s].constant == norm[r].constant && s < r))
        drop[r] = true;
    }
  }
  std::vector<AffineForm> out;
  for (std::size_t i = 0; i < forms.size(); ++i)
    if (!drop[i]) out.push_back(forms[i]);
  return out;
}

// Is row r implied, for all (x,b), by the kept rows and the conditions?
bool jointly_implied(const SymbolicSystem& sys, const std::vector<bool>& keep, std::size_t r) {
  const std::size_t n = sys.dimension;
  const std::size_t m = sys.parameters;
  LinearProgram lp(n + m);
  lp.maximize = true;
  auto joint_row = [&](const SymbolicRow& row) {
    Vector v = row.lhs;
    for (const auto& g : row.rhs.coefficients) v.push_back(-g);
    return v;
  };
  lp.objective = joint_row(sys.rows[r]);
  for (std::size_t s = 0; s < sys.rows.size(); ++s) {
    if (s == r || !keep[s]) continue;
    lp.add(joint_row(sys.rows[s]), Sense::le, sys.rows[s].rhs.constant);
  }
  for (const auto& f : sys.consistency) {
    Vector v = zeros(n);
    for (const auto& g : f.coefficients) v.push_back(-g);
    lp.add(std::move(v), Sense::le, f.constant);
  }
  auto sol = solve_lp(lp);
  if (sol.status == LpStatus::infeasible) return true;
  return sol.status == LpStatus::optimal && sol.value <= sys.rows[r].rhs.constant;
}

bool locally_implied(const SymbolicSystem& sys, const std::vector<bool>& keep, std::size_t r,
                     VectorView b) {
  LinearProgram lp(sys.dimension);
  lp.maximize = true;
  lp.objective = sys.rows[r].lhs;
  for (std::size_t s = 0; s < sys.rows.size(); ++s) {
    if (s == r || !keep[s]) continue;
    lp.add(sys.rows[s].lhs, Sense::le, sys.rows[s].rhs.evaluate(b));
  }
  auto sol = solve_lp(lp);
  return sol.status == LpStatus::optimal && sol.value <= sys.rows[r].rhs.evaluate(b);
}

}  // namespace

RedundancyReport remove_redundancy(const SymbolicSystem& sys, const std::optional<Vector>& at,
                                   RedundancyScope scope) {
  const std::size_t k = sys.rows.size();
  auto pairwise = pairwise_drops(sys.rows);
  std::vector<bool> keep(k);
  for (std::size_t r = 0; r < k; ++r) keep[r] = !pairwise[r];
  if (scope == RedundancyScope::joint) {
    for (std::size_t r = 0; r < k; ++r)
      if (keep[r] && jointly_implied(sys, keep, r)) keep[r] = false;
  }

  RedundancyReport out;
  for (std::size_t r = 0; r < k; ++r)
    if (!keep[r]) out.dropped.push_back(r);

  if (at) {
    if (at->size() != sys.parameters)
      throw Error(Errc::dimension_mismatch, "parameter has the wrong dimension");
    // An empty instance makes every row vacuously implied; nothing local is
    // learned from it.
    LinearSystem inst = sys.instantiate(*at);
    LinearProgram probe(sys.dimension);
    for (std::size_t i = 0; i < inst.lhs.size(); ++i) probe.add(inst.lhs[i], Sense::le, inst.rhs[i]);
    if (solve_lp(probe).status != LpStatus::infeasible) {
      for (std::size_t r = 0; r < k; ++r) {
        if (keep[r] && locally_implied(sys, keep, r, *at)) {
          keep[r] = false;
          out.locally_dropped.push_back(r);
        }
      }
    }
  }

  out.system.dimension = sys.dimension;
  out.system.parameters = sys.parameters;
  for (std::size_t r = 0; r < k; ++r)
    if (keep[r]) out.system.rows.push_back(sys.rows[r]);
  out.system.consistency = prune_conditions(sys.consistency);
  return out;
}

// ---------------------------------------------------------------------------

std::vector<EliminationStep> epigraph_steps(const Problem& problem) {
  auto theta = polar_generators(problem.objectives, problem.n);
  std::vector<EliminationStep> steps;
  for (const auto& r : theta.rays) steps.push_back({false, r});
  for (const auto& l : theta.lineality) steps.push_back({true, l});
  return steps;
}

SymbolicSystem fold(const SymbolicSystem& sys, const std::vector<EliminationStep>& steps,
                    bool prune) {
  SymbolicSystem cur = sys;
  for (const auto& step : steps) {
    cur = step.span ? eliminate_span_direction(cur, step.direction)
                    : eliminate_cone_direction(cur, step.direction);
    if (prune) cur = remove_redundancy(cur).system;
  }
  return cur;
}

SymbolicSystem epigraph_system(const Problem& problem) {
  problem.validate();
  return fold(SymbolicSystem::from_problem(problem), epigraph_steps(problem));
}

SymbolicSystem image_epigraph_system(const Problem& problem) {
  problem.validate();
  const std::size_t n = problem.n;
  const std::size_t q = problem.q();
  SymbolicSystem joint;
  joint.dimension = n + q;
  joint.parameters = problem.m();
  for (std::size_t t = 0; t < problem.m(); ++t) {
    Vector lhs = problem.rows[t];
    lhs.resize(n + q, Rational(0));
    joint.add({std::move(lhs), AffineForm::parameter(problem.m(), t)});
  }
  for (std::size_t i = 0; i < q; ++i) {
    Vector lhs = problem.objectives[i];
    lhs.resize(n + q, Rational(0));
    lhs[n + i] = -1;
    joint.add({std::move(lhs), AffineForm::zero(problem.m())});
  }
  std::vector<EliminationStep> steps;
  for (std::size_t j = 0; j < n; ++j) steps.push_back({true, unit(n + q, j)});
  auto folded = fold(joint, steps);

  SymbolicSystem out;
  out.dimension = q;
  out.parameters = problem.m();
  out.consistency = folded.consistency;
  for (const auto& row : folded.rows)
    out.add({Vector(row.lhs.begin() + static_cast<std::ptrdiff_t>(n), row.lhs.end()), row.rhs});
  return remove_redundancy(out).system;
}

}  // namespace epilip
