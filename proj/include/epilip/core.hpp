#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "epilip/error.hpp"
#include "epilip/rational.hpp"

namespace epilip {

// ---------------------------------------------------------------------------
// Norms
// ---------------------------------------------------------------------------

enum class NormKind { euclidean, l1, linf };

/// Dual norm: euclidean is self-dual, l1 and linf are dual to each other.
constexpr NormKind dual(NormKind kind) {
  switch (kind) {
    case NormKind::l1: return NormKind::linf;
    case NormKind::linf: return NormKind::l1;
    default: return NormKind::euclidean;
  }
}

std::string_view norm_name(NormKind kind);
NormKind parse_norm(std::string_view text);

/// Exact for l1/linf; euclidean values are carried through their square.
Magnitude norm_value(NormKind kind, VectorView v);
inline Magnitude dual_norm_value(NormKind kind, VectorView v) { return norm_value(dual(kind), v); }

/// The parameter space always carries the supremum norm, its dual the l1 norm.
inline constexpr NormKind kParameterNorm = NormKind::linf;

// ---------------------------------------------------------------------------
// Problem model
// ---------------------------------------------------------------------------

/// Right-hand-side parameterized multiobjective linear program
///   minimize (<c_1,x>, ..., <c_q,x>)  subject to  <a_t,x> <= b_t, t = 1..m.
struct Problem {
  std::size_t n = 0;
  std::vector<Vector> objectives;  // q vectors of length n
  std::vector<Vector> rows;        // m vectors of length n
  Vector nominal;                  // b-bar, length m
  NormKind decision_norm = NormKind::euclidean;
  NormKind image_norm = NormKind::euclidean;

  std::size_t q() const { return objectives.size(); }
  std::size_t m() const { return rows.size(); }

  /// (<c_1,x>, ..., <c_q,x>)
  Vector image(VectorView x) const;
  /// sum_i alpha_i c_i
  Vector composite(VectorView alpha) const;
  bool feasible(VectorView x, VectorView b) const;

  /// Throws dimension_mismatch / zero_objectives / zero_objective_vector.
  void validate() const;
};

/// Parses the line-oriented problem format:
///   n <int>
///   q <int>
///   objective <rat>,...        (q lines)
///   row <rat>,... <= b<t>      (m lines, t = 1..m each exactly once)
///   nominal <rat>,...
///   decision_norm euclidean|l1|linf
///   image_norm euclidean|l1|linf
/// Blank lines and text after '#' are ignored.
Problem parse_problem(std::string_view text);

/// Inverse of parse_problem, rows listed in index order.
std::string format_problem(const Problem& problem);

// ---------------------------------------------------------------------------
// Parameter-affine systems
// ---------------------------------------------------------------------------

/// b -> <coefficients, b> + constant
struct AffineForm {
  Vector coefficients;
  Rational constant = 0;

  static AffineForm zero(std::size_t m) { return {zeros(m), 0}; }
  /// The form b -> b_t.
  static AffineForm parameter(std::size_t m, std::size_t t);

  Rational evaluate(VectorView b) const;
  bool is_constant() const { return is_zero(coefficients); }

  friend AffineForm operator+(const AffineForm& a, const AffineForm& b);
  friend AffineForm operator-(const AffineForm& a, const AffineForm& b);
  friend AffineForm operator*(const Rational& s, const AffineForm& f);
  friend bool operator==(const AffineForm&, const AffineForm&) = default;

  /// "7b1+3b4", "-b2+1/2", "0".
  std::string to_string() const;
};

/// <lhs, x> <= rhs(b)
struct SymbolicRow {
  Vector lhs;
  AffineForm rhs;

  friend bool operator==(const SymbolicRow&, const SymbolicRow&) = default;
  std::string to_string() const;
};

/// Scales a row by the positive factor that makes all of its entries (lhs,
/// rhs coefficients and constant) coprime integers.
SymbolicRow canonical(const SymbolicRow& row);
AffineForm canonical(const AffineForm& form);

/// Concrete inequality system {x | A x <= h, E x = f}.
struct LinearSystem {
  std::size_t dimension = 0;
  std::vector<Vector> lhs;
  Vector rhs;
  std::vector<Vector> eq_lhs;
  Vector eq_rhs;

  bool contains(VectorView x) const;
};

/// Inequalities whose right-hand sides are affine in the parameter b. Rows
/// with zero lhs never appear in `rows`; they are kept as conditions
/// 0 <= form(b) in `consistency`.
struct SymbolicSystem {
  std::size_t dimension = 0;
  std::size_t parameters = 0;
  std::vector<SymbolicRow> rows;
  std::vector<AffineForm> consistency;

  /// The system <a_t,x> <= b_t of a problem.
  static SymbolicSystem from_problem(const Problem& problem);

  /// Appends a row, routing zero-lhs rows to `consistency` (trivially true
  /// conditions are dropped) and canonicalizing.
  void add(const SymbolicRow& row);
  void add_condition(const AffineForm& form);

  bool consistent_at(VectorView b) const;
  /// The instantiated inequality rows; consistency conditions are appended
  /// as 0 <= value rows so that emptiness is preserved.
  LinearSystem instantiate(VectorView b) const;

  std::string to_string() const;
};

}  // namespace epilip
