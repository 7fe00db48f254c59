#include "epilip/sensitivity.hpp"

#include <algorithm>
#include <stdexcept>

#include "epilip/lp.hpp"
#include "epilip/pareto.hpp"
#include "epilip/polyhedra.hpp"

namespace epilip {

namespace {

Magnitude normalizer(const Problem& problem, GridMode mode, VectorView alpha) {
  if (mode == GridMode::image) return dual_norm_value(problem.image_norm, alpha);
  return dual_norm_value(problem.decision_norm, problem.composite(alpha));
}

void compositions(std::size_t parts, std::size_t total, Vector& prefix, Rational denom,
                  std::vector<Vector>& out) {
  if (parts == 1) {
    prefix.push_back(Rational(total) / denom);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (std::size_t k = 0; k <= total; ++k) {
    prefix.push_back(Rational(k) / denom);
    compositions(parts - 1, total - k, prefix, denom, out);
    prefix.pop_back();
  }
}

void sort_unique(std::vector<Vector>& vs) {
  std::sort(vs.begin(), vs.end(), [](const Vector& a, const Vector& b) { return lex_less(a, b); });
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
}

bool in_convex_hull(const std::vector<Vector>& points, VectorView g) {
  if (points.empty()) return false;
  const std::size_t k = points.size();
  LinearProgram lp(k);
  lp.nonnegative.assign(k, true);
  for (std::size_t i = 0; i < g.size(); ++i) {
    Vector row(k);
    for (std::size_t j = 0; j < k; ++j) row[j] = points[j][i];
    lp.add(std::move(row), Sense::eq, g[i]);
  }
  lp.add(Vector(k, Rational(1)), Sense::eq, 1);
  return solve_lp(lp).status == LpStatus::optimal;
}

std::vector<Vector> extreme_points(std::vector<Vector> points) {
  sort_unique(points);
  for (std::size_t i = 0; i < points.size();) {
    std::vector<Vector> others;
    for (std::size_t j = 0; j < points.size(); ++j)
      if (j != i) others.push_back(points[j]);
    if (in_convex_hull(others, points[i])) points.erase(points.begin() + static_cast<std::ptrdiff_t>(i));
    else ++i;
  }
  return points;
}

Rational l1(VectorView v) {
  Rational acc = 0;
  for (const auto& x : v) acc += abs(x);
  return acc;
}

// Anchor-independent part: activity is decided by comparing the scalarized
// value at the anchor with the optimal value.
SubdiffPiece make_piece(const Problem& problem, VectorView nominal, const WeightPoint& wp,
                        const Rational& anchor_value) {
  SubdiffPiece piece;
  piece.weight = wp.alpha;
  piece.scale = wp.scale;
  Vector c = problem.composite(wp.alpha);
  auto outcome = solve(problem.rows, nominal, c);
  if (outcome.status != LpStatus::optimal || outcome.value != anchor_value) return piece;
  piece.active = true;
  DualFace face(problem.rows, Vector(nominal.begin(), nominal.end()), c, outcome.value);
  for (auto& v : face.vertices()) piece.vertices.push_back(negate(v));
  for (auto& r : face.rays()) piece.rays.push_back(negate(r));
  sort_unique(piece.vertices);
  sort_unique(piece.rays);
  auto best = face.max_l1();
  piece.max_l1 = best.value;
  if (best.value) piece.argmax = negate(best.point);
  return piece;
}

void check_nominal(const Problem& problem, VectorView nominal) {
  if (nominal.size() != problem.m())
    throw Error(Errc::dimension_mismatch, "parameter has the wrong dimension");
}

Exactness exactness_for(const Problem& problem) {
  return problem.q() == 1 ? Exactness::exact : Exactness::grid_approximation;
}

}  // namespace

WeightGrid WeightGrid::simplex(const Problem& problem, GridMode mode, std::size_t resolution) {
  if (resolution == 0) throw Error(Errc::invalid_weights, "grid resolution must be positive");
  std::vector<Vector> alphas;
  Vector prefix;
  compositions(problem.q(), resolution, prefix, Rational(resolution), alphas);
  WeightGrid grid = from_weights(problem, mode, alphas);
  grid.resolution = resolution;
  return grid;
}

WeightGrid WeightGrid::from_weights(const Problem& problem, GridMode mode,
                                    const std::vector<Vector>& weights) {
  WeightGrid grid;
  grid.mode = mode;
  grid.resolution = weights.size();
  for (const auto& w : weights) {
    if (w.size() != problem.q()) throw Error(Errc::dimension_mismatch, "weight has the wrong dimension");
    if (std::any_of(w.begin(), w.end(), [](const Rational& x) { return x < 0; }))
      throw Error(Errc::invalid_weights, "weights must be nonnegative");
    Rational total = sum(w);
    if (total == 0) throw Error(Errc::invalid_weights, "weights must not all vanish");
    Vector alpha = scale(1 / total, w);
    Magnitude s = normalizer(problem, mode, alpha);
    if (s.square() == 0) continue;
    grid.points.push_back({std::move(alpha), s});
  }
  return grid;
}

std::size_t WeightGrid::default_resolution(std::size_t q) {
  switch (q) {
    case 1: return 1;
    case 2: return 200;
    case 3: return 40;
    default: return 20;
  }
}

Magnitude SubdiffPiece::l1_bound() const {
  if (!active) return Magnitude::from_rational(0);
  if (!max_l1) return Magnitude::infinity();
  return Magnitude::from_rational(*max_l1) / scale;
}

std::string_view exactness_name(Exactness e) {
  return e == Exactness::exact ? "exact" : "grid-approximation";
}

std::size_t SubdiffSet::active_count() const {
  return static_cast<std::size_t>(
      std::count_if(pieces.begin(), pieces.end(), [](const SubdiffPiece& p) { return p.active; }));
}

SubdiffSet subdiff_F(const Problem& problem, VectorView nominal, VectorView anchor_x,
                     const WeightGrid& grid) {
  check_nominal(problem, nominal);
  if (anchor_x.size() != problem.n) throw Error(Errc::dimension_mismatch, "anchor has the wrong dimension");
  if (!in_dom_s(problem, nominal))
    throw Error(Errc::not_in_dom_s, "no nondominated point exists at the nominal parameter");
  if (!in_epi_pareto(problem, nominal, problem.image(anchor_x)))
    throw Error(Errc::anchor_not_in_graph, "anchor is not in the epigraphical feasible set");
  SubdiffSet set;
  set.exactness = exactness_for(problem);
  for (const auto& wp : grid.points)
    set.pieces.push_back(make_piece(problem, nominal, wp, dot(problem.composite(wp.alpha), anchor_x)));
  return set;
}

SubdiffSet subdiff_P(const Problem& problem, VectorView nominal, VectorView anchor_p,
                     const WeightGrid& grid) {
  check_nominal(problem, nominal);
  if (anchor_p.size() != problem.q()) throw Error(Errc::dimension_mismatch, "anchor has the wrong dimension");
  LinearProgram lp(problem.n);
  for (std::size_t t = 0; t < problem.m(); ++t) lp.add(problem.rows[t], Sense::le, nominal[t]);
  for (std::size_t i = 0; i < problem.q(); ++i) lp.add(problem.objectives[i], Sense::eq, anchor_p[i]);
  auto sol = solve_lp(lp);
  if (sol.status != LpStatus::optimal || !is_nondominated(problem, nominal, sol.x))
    throw Error(Errc::anchor_not_on_front, "anchor is not on the Pareto front at the nominal parameter");
  SubdiffSet set;
  set.exactness = exactness_for(problem);
  for (const auto& wp : grid.points)
    set.pieces.push_back(make_piece(problem, nominal, wp, dot(wp.alpha, anchor_p)));
  return set;
}

// ---------------------------------------------------------------------------

std::string_view target_name(Target t) {
  switch (t) {
    case Target::lip_EF: return "lip_EF";
    case Target::lip_EP: return "lip_EP";
    case Target::lip_P: return "lip_P";
  }
  return "?";
}

Target parse_target(std::string_view text) {
  if (text == "ef") return Target::lip_EF;
  if (text == "ep") return Target::lip_EP;
  if (text == "p") return Target::lip_P;
  throw Error(Errc::malformed_syntax, "unknown target '" + std::string(text) + "'");
}

ModulusReport modulus_of(Target target, const SubdiffSet& set) {
  ModulusReport report;
  report.target = target;
  report.exactness = set.exactness;
  report.value = Magnitude::from_rational(0);
  for (const auto& piece : set.pieces) {
    if (!piece.active) continue;
    ++report.active_pieces;
    Magnitude bound = piece.l1_bound();
    report.profile.emplace_back(piece.weight, bound);
    if (!report.attaining_weight || bound > report.value) {
      report.value = bound;
      report.attaining_weight = piece.weight;
      report.attaining_subgradient = piece.argmax;
      report.attaining_scale = piece.scale;
    }
  }
  return report;
}

ModulusReport lip_modulus(const Problem& problem, Target target, VectorView nominal,
                          VectorView anchor, std::optional<std::size_t> resolution) {
  problem.validate();
  const std::size_t k = resolution.value_or(WeightGrid::default_resolution(problem.q()));
  switch (target) {
    case Target::lip_EF:
      return modulus_of(target, subdiff_F(problem, nominal, anchor,
                                          WeightGrid::simplex(problem, GridMode::composite, k)));
    case Target::lip_EP:
      return modulus_of(target, subdiff_P(problem, nominal, anchor,
                                          WeightGrid::simplex(problem, GridMode::image, k)));
    case Target::lip_P:
      if (problem.q() != 1)
        throw Error(Errc::lip_p_unsupported, "lip P is only computable for a single objective");
      return modulus_of(target, subdiff_P(problem, nominal, anchor,
                                          WeightGrid::simplex(problem, GridMode::image, 1)));
  }
  return {};
}

// ---------------------------------------------------------------------------

bool ValueFunction::in_domain(VectorView b) const {
  return std::all_of(domain_conditions.begin(), domain_conditions.end(),
                     [&](const AffineForm& f) { return f.evaluate(b) >= 0; });
}

Rational ValueFunction::evaluate(VectorView b) const {
  if (!in_domain(b) || pieces.empty())
    throw Error(Errc::not_in_dom_s, "parameter lies outside the value-function domain");
  Rational best = pieces.front().evaluate(b);
  for (const auto& p : pieces) best = std::max(best, p.evaluate(b));
  return best;
}

std::vector<std::size_t> ValueFunction::active(VectorView b) const {
  Rational best = evaluate(b);
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < pieces.size(); ++k)
    if (pieces[k].evaluate(b) == best) out.push_back(k);
  return out;
}

namespace {

void require_single_objective(const Problem& problem) {
  problem.validate();
  if (problem.q() != 1) throw Error(Errc::dimension_mismatch, "operation requires a single objective");
}

}  // namespace

ValueFunction lp_value_function(const Problem& problem) {
  require_single_objective(problem);
  const Vector& c = problem.objectives.front();
  if (!dual_consistent(problem.rows, c))
    throw Error(Errc::not_dual_consistent, "-c is not in the cone of the constraint rows");
  auto sys = epigraph_system(problem);
  ValueFunction vf;
  vf.objective = c;
  vf.domain_conditions = sys.consistency;
  std::size_t lead = 0;
  while (c[lead] == 0) ++lead;
  for (const auto& row : sys.rows) {
    // -k <c,x> <= phi(b)  <=>  <c,x> >= -phi(b)/k
    Rational k = -row.lhs[lead] / c[lead];
    if (k <= 0 || row.lhs != scale(-k, c))
      throw Error(Errc::row_not_multiple_of_c, "epigraph row " + row.to_string() + " is not along -c");
    vf.pieces.push_back(Rational(-1 / k) * row.rhs);
  }
  return vf;
}

SubdiffSet subdiff_P_lp(const Problem& problem, VectorView nominal) {
  require_single_objective(problem);
  check_nominal(problem, nominal);
  auto vf = lp_value_function(problem);
  for (const auto& f : vf.domain_conditions) {
    Rational v = f.evaluate(nominal);
    if (v < 0) throw Error(Errc::not_in_dom_s, "parameter lies outside the value-function domain");
    if (v == 0)
      throw Error(Errc::on_domain_boundary, "domain condition " + f.to_string() + " is tight at the parameter");
  }
  std::vector<Vector> gradients;
  for (auto k : vf.active(nominal)) gradients.push_back(vf.pieces[k].coefficients);

  SubdiffPiece piece;
  piece.weight = Vector{1};
  piece.scale = Magnitude::from_rational(1);
  piece.active = true;
  piece.vertices = extreme_points(std::move(gradients));
  for (const auto& v : piece.vertices) {
    Rational n = l1(v);
    if (!piece.max_l1 || n > *piece.max_l1) {
      piece.max_l1 = n;
      piece.argmax = v;
    }
  }

  auto face = dual_face(problem.rows, nominal, vf.objective);
  std::vector<Vector> expected;
  for (auto& v : face.vertices()) expected.push_back(negate(v));
  sort_unique(expected);
  if (expected != piece.vertices || !face.bounded())
    throw std::logic_error("max-formula subdifferential disagrees with the dual face");

  SubdiffSet set;
  set.exactness = Exactness::exact;
  set.pieces.push_back(std::move(piece));
  return set;
}

LpRelations lp_relations(const Problem& problem, VectorView nominal, VectorView anchor_x) {
  require_single_objective(problem);
  check_nominal(problem, nominal);
  if (anchor_x.size() != problem.n) throw Error(Errc::dimension_mismatch, "anchor has the wrong dimension");
  const Vector& c = problem.objectives.front();
  auto outcome = solve(problem.rows, nominal, c);
  if (!problem.feasible(anchor_x, nominal) || outcome.status != LpStatus::optimal ||
      dot(c, anchor_x) != outcome.value)
    throw Error(Errc::anchor_not_optimal, "anchor does not solve the program at the nominal parameter");

  LpRelations rel;
  rel.dP = subdiff_P_lp(problem, nominal);
  rel.dF = subdiff_F(problem, nominal, anchor_x,
                     WeightGrid::from_weights(problem, GridMode::composite, {Vector{1}}));
  rel.lip_EP = modulus_of(Target::lip_EP, rel.dP).value;
  rel.lip_P = rel.lip_EP;
  rel.lip_EF = modulus_of(Target::lip_EF, rel.dF).value;
  rel.dual_norm_c = dual_norm_value(problem.decision_norm, c);

  const auto& f = rel.dF.pieces.front();
  const auto& p = rel.dP.pieces.front();
  rel.proportionality_ok = f.active && f.vertices == p.vertices &&
                           rel.dual_norm_c / f.scale == Magnitude::from_rational(1) &&
                           rel.lip_EF * rel.dual_norm_c == rel.lip_EP;
  return rel;
}

}  // namespace epilip
