#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "epilip/core.hpp"

namespace epilip {

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

struct SampleConfig {
  Rational radius{1, 10};
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  /// Sampled coordinates are multiples of radius / denominator_bound.
  std::uint64_t denominator_bound = 1000;
};

/// Draws for sample `index` come from a generator seeded by (seed, index),
/// so any subset of indices can be replayed on its own.
class SampleStream {
 public:
  SampleStream(const SampleConfig& config, std::uint64_t index);

  /// Uniform on the grid of [-1, 1] with spacing 1/denominator_bound.
  Rational unit_interval();
  /// Uniform on the grid of [0, 1].
  Rational fraction();
  /// center + radius * (point of the sup-norm unit ball).
  Vector ball(VectorView center);
  /// Strictly positive weights with entries in {1..denominator_bound}/denominator_bound.
  Vector positive_weights(std::size_t q);

 private:
  const SampleConfig* config_;
  std::mt19937_64 rng_;
};

// ---------------------------------------------------------------------------
// Distances
// ---------------------------------------------------------------------------

struct Projection {
  Magnitude distance;
  Vector point;
};

/// Nearest point of the (nonempty) system to z and its distance. Exact LP for
/// l1/linf; euclidean by active-set enumeration, limited to dimension 6.
/// Throws empty_set, dimension_too_large.
Projection distance_to_set(VectorView z, const LinearSystem& sys, NormKind norm);

// ---------------------------------------------------------------------------
// Set-valued mappings as finite unions of polyhedra
// ---------------------------------------------------------------------------

class SetValuedMapping {
 public:
  virtual ~SetValuedMapping() = default;

  virtual std::size_t parameter_dimension() const = 0;
  virtual std::size_t value_dimension() const = 0;
  virtual NormKind norm() const = 0;
  /// M(y) as a union of polyhedra; an empty list means M(y) is empty.
  virtual std::vector<LinearSystem> pieces(VectorView y) const = 0;

  bool contains(VectorView y, VectorView z) const;
  /// Nearest point of M(y) to `target`; nullopt when M(y) is empty.
  std::optional<Projection> project(VectorView y, VectorView target) const;
  /// d(z, M(y)); infinite when M(y) is empty.
  Magnitude distance(VectorView z, VectorView y) const;
};

enum class MappingKind { EF, EP, P };

/// E_F, E_P or P of a problem. Parameters outside dom S give the empty set
/// for EP and P.
std::unique_ptr<SetValuedMapping> make_mapping(const Problem& problem, MappingKind kind);

/// The scalar mapping M(y) = [y, 2y] for y >= 0 and {0} otherwise, or its
/// epigraphical mapping E_M(y) = [max(y,0), inf).
class IntervalFixture : public SetValuedMapping {
 public:
  explicit IntervalFixture(bool epigraphical) : epigraphical_(epigraphical) {}
  std::size_t parameter_dimension() const override { return 1; }
  std::size_t value_dimension() const override { return 1; }
  // Every norm agrees on the line; euclidean avoids an LP per distance.
  NormKind norm() const override { return NormKind::euclidean; }
  std::vector<LinearSystem> pieces(VectorView y) const override;

 private:
  bool epigraphical_;
};

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

struct LipEstimate {
  /// Largest observed d(z, M(b')) / ||b - b'||_inf; a lower bound.
  Magnitude value;
  double estimate() const { return value.approx(); }
  std::size_t pairs_used = 0;
  std::size_t pairs_skipped = 0;
  Vector b, b_prime, z;
};

/// Pairs b, b' are drawn from the radius ball around `nominal`; z is the
/// point of M(b) nearest to anchor + (ball offset). Pairs with b = b' or an
/// empty image are skipped. Throws anchor_not_in_graph.
LipEstimate empirical_lip(const SetValuedMapping& mapping, VectorView nominal, VectorView anchor,
                          const SampleConfig& config);
LipEstimate empirical_lip(const Problem& problem, MappingKind kind, VectorView nominal,
                          VectorView anchor, const SampleConfig& config);

enum class SubgradientKind { F, P };

struct GraphWitness {
  Vector b;
  Vector x;
  Vector p;
  Rational lhs;  // <y, b - b-bar>
  Rational rhs;  // <c_alpha, x - x-bar> or <alpha, p - p-bar>
};

struct SubgradientCheck {
  bool ok = true;
  std::size_t samples_checked = 0;
  std::optional<GraphWitness> witness;
};

/// Checks <y, b - b-bar> <= <c_alpha, x - x-bar> (kind F, anchor x-bar) or
/// <y, b - b-bar> <= <alpha, p - p-bar> (kind P, anchor p-bar) on sampled
/// graph points. The inequality is invariant under a common positive scaling
/// of (alpha, y), so unnormalized pairs can be passed. Each sampled b is
/// tested both at a Pareto point for random positive weights and against
/// the exact infimum of the right-hand side over the graph, which is the
/// scalarized optimal value at b.
SubgradientCheck subgradient_check(const Problem& problem, SubgradientKind kind, VectorView alpha,
                                   VectorView y, VectorView nominal, VectorView anchor,
                                   const SampleConfig& config);

using EpiMembership = std::function<bool(VectorView b, VectorView p)>;

struct ConvexityWitness {
  Vector b1, p1, b2, p2;
  Rational lambda;
};

struct ConvexityCheck {
  bool ok = true;
  std::size_t samples_checked = 0;
  std::optional<ConvexityWitness> witness;
};

/// Samples pairs of graph points of E_P near the nominal parameter and checks
/// that convex combinations stay in the graph. `membership` defaults to the
/// LP test behind in_epi_pareto.
ConvexityCheck convexity_check(const Problem& problem, const SampleConfig& config,
                               const EpiMembership& membership = {});

}  // namespace epilip
