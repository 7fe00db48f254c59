#pragma once

#include <optional>
#include <vector>

#include "epilip/core.hpp"

namespace epilip {

/// cone(rays) + span(lineality)
struct ConeGenerators {
  std::size_t dimension = 0;
  std::vector<Vector> rays;
  std::vector<Vector> lineality;

  bool contains(VectorView y) const;
  /// True when the cone is {0}.
  bool trivial() const { return rays.empty() && lineality.empty(); }
};

/// Generators of the positive polar {y | <y,v> >= 0 for every v}, by double
/// description. Rays are primitive integer vectors orthogonal to the
/// lineality space and irredundant.
ConeGenerators polar_generators(const std::vector<Vector>& vectors, std::size_t dimension);

/// Sign pattern of the rows against a direction u.
struct Partition12 {
  std::vector<std::size_t> t1;  // <a_t,u> <= 0
  std::vector<std::size_t> t2;  // <a_t,u> >  0
  std::vector<std::size_t> t0;  // <a_t,u> =  0 (subset of t1)

  static Partition12 of(const std::vector<SymbolicRow>& rows, VectorView u);
};

/// F(b) + cone{u}. Rows are ordered: t in T1 first, then the pairs (t,s) in
/// T1 x T2, t-major. Consistency conditions pass through unchanged.
SymbolicSystem eliminate_cone_direction(const SymbolicSystem& sys, VectorView u);

/// F(b) + span{u}: rows orthogonal to u, then the pairs with <a_t,u> < 0
/// and <a_s,u> > 0, t-major.
SymbolicSystem eliminate_span_direction(const SymbolicSystem& sys, VectorView u);

enum class RedundancyScope {
  /// Drops rows dominated by a single other row for every b: duplicates,
  /// positive multiples and rows whose rhs exceeds another's by a constant.
  pairwise,
  /// Drops rows implied by all the others jointly in (x,b)-space.
  joint,
};

struct RedundancyReport {
  SymbolicSystem system;
  /// Input row indices removed for every b.
  std::vector<std::size_t> dropped;
  /// Input row indices removed only because they are implied at `at`.
  std::vector<std::size_t> locally_dropped;
};

RedundancyReport remove_redundancy(const SymbolicSystem& sys,
                                   const std::optional<Vector>& at = std::nullopt,
                                   RedundancyScope scope = RedundancyScope::pairwise);

/// One fold of the epigraph construction.
struct EliminationStep {
  bool span = false;
  Vector direction;
};

/// Steps derived from the polar of the objectives: rays as cone folds, then
/// lineality vectors as span folds.
std::vector<EliminationStep> epigraph_steps(const Problem& problem);

/// Applies the folds in order, pruning pairwise redundancy after each.
SymbolicSystem fold(const SymbolicSystem& sys, const std::vector<EliminationStep>& steps,
                    bool prune = true);

/// Symbolic description of E_F(b) = F(b) + {c_1,...,c_q}°.
SymbolicSystem epigraph_system(const Problem& problem);

/// Symbolic description, in image space, of {p | some x in F(b) has
/// C(x) <= p}: the decision variables are projected out of the joint
/// (x,p) system. On dom S this is P(b) + R^q_+.
SymbolicSystem image_epigraph_system(const Problem& problem);

}  // namespace epilip
