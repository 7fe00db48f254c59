#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "epilip/core.hpp"

namespace epilip {

// ---------------------------------------------------------------------------
// Weight grids
// ---------------------------------------------------------------------------

enum class GridMode {
  /// alpha / ||alpha||_* on the image dual norm.
  image,
  /// alpha / ||sum alpha_i c_i||_* on the decision dual norm.
  composite,
};

struct WeightPoint {
  Vector alpha;     // on the unit simplex
  Magnitude scale;  // the normalizing dual norm, never zero
};

struct WeightGrid {
  GridMode mode = GridMode::image;
  std::size_t resolution = 1;
  std::vector<WeightPoint> points;

  /// All alpha >= 0 with sum 1 and entries in (1/K)Z, in lexicographic order
  /// of the numerators (last coordinate fastest). Points whose normalizer
  /// vanishes are left out.
  static WeightGrid simplex(const Problem& problem, GridMode mode, std::size_t resolution);
  /// Explicit weights, rescaled onto the simplex.
  static WeightGrid from_weights(const Problem& problem, GridMode mode,
                                 const std::vector<Vector>& weights);
  /// 1 for q = 1, 200 for q = 2, 40 for q = 3, 20 beyond.
  static std::size_t default_resolution(std::size_t q);
};

// ---------------------------------------------------------------------------
// Subdifferentials
// ---------------------------------------------------------------------------

/// Subgradients for one weight: (-dual face of c_alpha at b-bar) / scale.
/// Vertices, rays and the l1 maximizer are stored before division by scale
/// so that they stay rational for euclidean norms.
struct SubdiffPiece {
  Vector weight;
  Magnitude scale;
  bool active = false;
  std::vector<Vector> vertices;
  std::vector<Vector> rays;
  std::optional<Rational> max_l1;  // nullopt when the face is unbounded
  Vector argmax;

  /// sup ||y||_1 over the piece.
  Magnitude l1_bound() const;
};

enum class Exactness { exact, grid_approximation };
std::string_view exactness_name(Exactness e);

struct SubdiffSet {
  std::vector<SubdiffPiece> pieces;
  Exactness exactness = Exactness::exact;

  std::size_t active_count() const;
};

/// Subdifferential of the feasible set mapping at (b-bar, x-bar). The grid
/// should be composite-normalized. Throws not_in_dom_s, anchor_not_in_graph.
SubdiffSet subdiff_F(const Problem& problem, VectorView nominal, VectorView anchor_x,
                     const WeightGrid& grid);

/// Subdifferential of the Pareto front mapping at (b-bar, p-bar). The grid
/// should be image-normalized. Throws anchor_not_on_front.
SubdiffSet subdiff_P(const Problem& problem, VectorView nominal, VectorView anchor_p,
                     const WeightGrid& grid);

// ---------------------------------------------------------------------------
// Moduli
// ---------------------------------------------------------------------------

enum class Target { lip_EF, lip_EP, lip_P };
std::string_view target_name(Target t);
Target parse_target(std::string_view text);

struct ModulusReport {
  Target target = Target::lip_EP;
  Magnitude value;
  std::optional<Vector> attaining_weight;
  /// Attaining subgradient before division by attaining_scale.
  Vector attaining_subgradient;
  Magnitude attaining_scale = Magnitude::from_rational(1);
  Exactness exactness = Exactness::exact;
  std::size_t active_pieces = 0;
  /// (weight, sup ||y||_1) per active piece.
  std::vector<std::pair<Vector, Magnitude>> profile;
};

ModulusReport modulus_of(Target target, const SubdiffSet& set);

/// `anchor` is x-bar for lip_EF and p-bar otherwise. lip_P needs q = 1.
ModulusReport lip_modulus(const Problem& problem, Target target, VectorView nominal,
                          VectorView anchor, std::optional<std::size_t> resolution = std::nullopt);

// ---------------------------------------------------------------------------
// Single-objective case
// ---------------------------------------------------------------------------

/// theta(b) = max_k pieces_k(b) on {b | conditions(b) >= 0}.
struct ValueFunction {
  Vector objective;
  std::vector<AffineForm> pieces;
  std::vector<AffineForm> domain_conditions;

  bool in_domain(VectorView b) const;
  /// Throws not_in_dom_s outside the domain.
  Rational evaluate(VectorView b) const;
  std::vector<std::size_t> active(VectorView b) const;
};

/// Throws not_dual_consistent, row_not_multiple_of_c.
ValueFunction lp_value_function(const Problem& problem);

/// Convex hull of the gradients of the pieces active at b-bar, as a single
/// exact piece. Throws on_domain_boundary.
SubdiffSet subdiff_P_lp(const Problem& problem, VectorView nominal);

struct LpRelations {
  Magnitude lip_P;
  Magnitude lip_EP;
  Magnitude lip_EF;
  Magnitude dual_norm_c;
  bool proportionality_ok = false;
  SubdiffSet dP;
  SubdiffSet dF;
};

/// Throws anchor_not_optimal unless x-bar solves the program at b-bar.
LpRelations lp_relations(const Problem& problem, VectorView nominal, VectorView anchor_x);

}  // namespace epilip
