#pragma once

#include <optional>
#include <span>
#include <vector>

#include "epilip/rational.hpp"

namespace epilip {

// ---------------------------------------------------------------------------
// General exact LP engine: two-phase primal simplex, Bland's rule.
// ---------------------------------------------------------------------------

enum class Sense { le, eq, ge };

struct Constraint {
  Vector coefficients;
  Sense sense = Sense::le;
  Rational rhs = 0;
};

struct LinearProgram {
  std::size_t variables = 0;
  Vector objective;
  std::vector<Constraint> constraints;
  /// Per-variable sign restriction; empty means every variable is free.
  std::vector<bool> nonnegative;
  bool maximize = false;
  /// Skips the dual solve when only the primal outcome is needed.
  bool want_duals = true;

  explicit LinearProgram(std::size_t vars = 0)
      : variables(vars), objective(zeros(vars)) {}

  void add(Vector coefficients, Sense sense, Rational rhs) {
    constraints.push_back({std::move(coefficients), sense, std::move(rhs)});
  }
};

enum class LpStatus { optimal, infeasible, unbounded };

std::string_view status_name(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  Vector x;
  Rational value = 0;
  /// Constraint multipliers y with objective = sum_i y_i a_i + r, where r is
  /// zero on free variables and has the optimality sign on restricted ones.
  /// For minimization y_i <= 0 on <= rows and y_i >= 0 on >= rows; the signs
  /// flip for maximization. value = sum_i y_i rhs_i.
  Vector duals;
  /// When unbounded: a feasible direction improving the objective.
  Vector ray;
};

LpSolution solve_lp(const LinearProgram& lp);

// ---------------------------------------------------------------------------
// RHS-parameterized programs  min <c,x>  s.t.  <a_t,x> <= b_t
// ---------------------------------------------------------------------------

struct LpOutcome {
  LpStatus status = LpStatus::infeasible;
  Vector primal_point;
  Rational value = 0;
  /// lambda >= 0 with sum_t lambda_t a_t = -c and <c,x> = -<b,lambda>.
  Vector dual_point;
  /// Unbounded: r with A r <= 0 and <c,r> < 0.
  Vector ray;
  /// Infeasible: y >= 0 with A^T y = 0 and <b,y> < 0.
  Vector farkas;
};

LpOutcome solve(std::span<const Vector> rows, VectorView b, VectorView c);

/// All optimal dual multipliers
///   {lambda in R^m | lambda >= 0, sum_t lambda_t a_t = -c, <b,lambda> = -value}.
class DualFace {
 public:
  DualFace(std::vector<Vector> rows, Vector nominal, Vector objective, Rational value);

  const std::vector<Vector>& rows() const { return rows_; }
  const Vector& nominal() const { return nominal_; }
  const Vector& objective() const { return objective_; }
  const Rational& value() const { return value_; }
  std::size_t dimension() const { return nominal_.size(); }

  bool contains(VectorView lambda) const;
  /// Sorted lexicographically.
  std::vector<Vector> vertices() const;
  /// Extreme rays of the recession cone, normalized to sum 1.
  std::vector<Vector> rays() const;
  bool bounded() const { return rays().empty(); }

  struct L1Max {
    std::optional<Rational> value;  // nullopt: unbounded
    Vector point;
  };
  /// max sum_t lambda_t over the face.
  L1Max max_l1() const;

 private:
  std::vector<Vector> rows_;
  Vector nominal_;
  Vector objective_;
  Rational value_;
};

/// Throws Error{not_solvable} unless min <c,x> over {A x <= b} is attained.
DualFace dual_face(std::span<const Vector> rows, VectorView b, VectorView c);

/// True iff -c lies in cone{a_t}.
bool dual_consistent(std::span<const Vector> rows, VectorView c);

/// Vertices of {z >= 0 | E z = f} by basis enumeration, sorted.
std::vector<Vector> standard_form_vertices(const std::vector<Vector>& equations, const Vector& rhs,
                                           std::size_t variables);

}  // namespace epilip
