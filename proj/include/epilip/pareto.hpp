#pragma once

#include <optional>

#include "epilip/core.hpp"

namespace epilip {

/// A point of the objective space with an optional decision-space witness.
struct ImagePoint {
  Vector p;
  std::optional<Vector> witness;
};

/// Strictly positive weights whose scalarization is bounded below on every
/// nonempty F(b): the uniform weights when they qualify, otherwise a solution
/// of a feasibility LP. nullopt when no such weights exist.
std::optional<Vector> bounded_weights(const Problem& problem);

/// F(b) nonempty and some strictly positive weighting has a bounded
/// scalarization (the uniform one is tried first).
bool in_dom_s(const Problem& problem, VectorView b);

struct DominanceResult {
  bool nondominated = true;
  /// A feasible point dominating x0 when one exists.
  std::optional<Vector> dominator;
};

/// Domination LP: max sum s subject to y in F(b), <c_i,y> + s_i <= <c_i,x0>,
/// 0 <= s, sum s <= 1. Throws infeasible_point unless x0 is in F(b).
DominanceResult dominance_check(const Problem& problem, VectorView b, VectorView x0);
bool is_nondominated(const Problem& problem, VectorView b, VectorView x0);

struct DominateResult {
  Vector x;
  /// Stage LPs solved (0 when x0 was already nondominated).
  std::size_t stages = 0;
};

/// Staged scalar minimizations moving x0 to a nondominated point whose image
/// is componentwise no larger. Throws infeasible_point, not_in_dom_s.
DominateResult dominate_to_nondominated(const Problem& problem, VectorView b, VectorView x0);

/// Minimizer of sum w_i <c_i,x> over F(b); weights must be strictly positive.
/// Throws invalid_weights, infeasible, unbounded_scalarization.
ImagePoint pareto_point(const Problem& problem, VectorView b, VectorView weights);

/// p in P(b) + R^q_+, decided as: some x in F(b) with C(x) <= p.
/// Throws not_in_dom_s.
bool in_epi_pareto(const Problem& problem, VectorView b, VectorView p);

}  // namespace epilip
