#include "epilip/core.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace epilip {

std::string_view error_name(Errc code) noexcept {
  switch (code) {
    case Errc::malformed_syntax: return "malformed-syntax";
    case Errc::dimension_mismatch: return "dimension-mismatch";
    case Errc::zero_objectives: return "zero-objectives";
    case Errc::zero_objective_vector: return "zero-objective-vector";
    case Errc::not_solvable: return "not-solvable";
    case Errc::zero_direction: return "zero-direction";
    case Errc::infeasible_point: return "infeasible-point";
    case Errc::not_in_dom_s: return "not-in-domS";
    case Errc::infeasible: return "infeasible";
    case Errc::unbounded_scalarization: return "unbounded-scalarization";
    case Errc::invalid_weights: return "invalid-weights";
    case Errc::anchor_not_in_graph: return "anchor-not-in-graph";
    case Errc::anchor_not_on_front: return "anchor-not-on-front";
    case Errc::anchor_not_optimal: return "anchor-not-optimal";
    case Errc::lip_p_unsupported: return "q>=2-lipP-unsupported";
    case Errc::not_dual_consistent: return "not-dual-consistent";
    case Errc::row_not_multiple_of_c: return "row-not-multiple-of-c";
    case Errc::on_domain_boundary: return "on-domain-boundary";
    case Errc::empty_set: return "empty-set";
    case Errc::dimension_too_large: return "dimension-too-large";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------

std::string_view norm_name(NormKind kind) {
  switch (kind) {
    case NormKind::euclidean: return "euclidean";
    case NormKind::l1: return "l1";
    case NormKind::linf: return "linf";
  }
  return "?";
}

NormKind parse_norm(std::string_view text) {
  if (text == "euclidean" || text == "l2") return NormKind::euclidean;
  if (text == "l1") return NormKind::l1;
  if (text == "linf") return NormKind::linf;
  throw Error(Errc::malformed_syntax, "unknown norm '" + std::string(text) + "'");
}

Magnitude norm_value(NormKind kind, VectorView v) {
  switch (kind) {
    case NormKind::l1: {
      Rational acc = 0;
      for (const auto& x : v) acc += abs(x);
      return Magnitude::from_rational(acc);
    }
    case NormKind::linf: {
      Rational best = 0;
      for (const auto& x : v) best = std::max(best, Rational(abs(x)));
      return Magnitude::from_rational(best);
    }
    case NormKind::euclidean:
      return Magnitude::from_square(dot(v, v));
  }
  return {};
}

// ---------------------------------------------------------------------------

Vector Problem::image(VectorView x) const {
  Vector p;
  p.reserve(q());
  for (const auto& c : objectives) p.push_back(dot(c, x));
  return p;
}

Vector Problem::composite(VectorView alpha) const {
  Vector c = zeros(n);
  for (std::size_t i = 0; i < q(); ++i) c = axpy(c, alpha[i], objectives[i]);
  return c;
}

bool Problem::feasible(VectorView x, VectorView b) const {
  for (std::size_t t = 0; t < m(); ++t)
    if (dot(rows[t], x) > b[t]) return false;
  return true;
}

void Problem::validate() const {
  if (n == 0) throw Error(Errc::dimension_mismatch, "decision dimension must be positive");
  if (objectives.empty()) throw Error(Errc::zero_objectives, "at least one objective is required");
  if (rows.empty()) throw Error(Errc::dimension_mismatch, "at least one constraint row is required");
  for (const auto& c : objectives) {
    if (c.size() != n) throw Error(Errc::dimension_mismatch, "objective has wrong length");
    if (is_zero(c)) throw Error(Errc::zero_objective_vector, "objective vector is zero");
  }
  for (const auto& a : rows)
    if (a.size() != n) throw Error(Errc::dimension_mismatch, "constraint row has wrong length");
  if (nominal.size() != rows.size())
    throw Error(Errc::dimension_mismatch, "nominal parameter must have one entry per row");
}

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

std::size_t parse_count(const std::string& text, std::size_t line_no) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return std::isdigit(c); }))
    throw Error(Errc::malformed_syntax,
                "line " + std::to_string(line_no) + ": expected a nonnegative integer");
  return std::stoul(text);
}

}  // namespace

Problem parse_problem(std::string_view text) {
  Problem problem;
  std::optional<std::size_t> n, q;
  std::map<std::size_t, Vector> rows;
  bool have_nominal = false;
  std::istringstream in{std::string(text)};
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto tok = tokens_of(line);
    if (tok.empty()) continue;
    const std::string& key = tok[0];
    auto where = [&] { return "line " + std::to_string(line_no) + ": "; };
    auto expect = [&](std::size_t count) {
      if (tok.size() != count) throw Error(Errc::malformed_syntax, where() + "malformed '" + key + "'");
    };
    if (key == "n") {
      expect(2);
      n = parse_count(tok[1], line_no);
    } else if (key == "q") {
      expect(2);
      q = parse_count(tok[1], line_no);
    } else if (key == "objective") {
      expect(2);
      problem.objectives.push_back(parse_vector(tok[1]));
    } else if (key == "row") {
      expect(4);
      if (tok[2] != "<=") throw Error(Errc::malformed_syntax, where() + "expected '<='");
      const std::string& param = tok[3];
      if (param.size() < 2 || param[0] != 'b')
        throw Error(Errc::malformed_syntax, where() + "right-hand side must be b<index>");
      std::size_t t = parse_count(param.substr(1), line_no);
      if (t == 0) throw Error(Errc::malformed_syntax, where() + "parameter indices start at 1");
      if (!rows.emplace(t, parse_vector(tok[1])).second)
        throw Error(Errc::malformed_syntax, where() + "duplicate parameter b" + std::to_string(t));
    } else if (key == "nominal") {
      expect(2);
      problem.nominal = parse_vector(tok[1]);
      have_nominal = true;
    } else if (key == "decision_norm") {
      expect(2);
      problem.decision_norm = parse_norm(tok[1]);
    } else if (key == "image_norm") {
      expect(2);
      problem.image_norm = parse_norm(tok[1]);
    } else {
      throw Error(Errc::malformed_syntax, where() + "unknown keyword '" + key + "'");
    }
  }
  if (!n) throw Error(Errc::malformed_syntax, "missing 'n'");
  if (!q) throw Error(Errc::malformed_syntax, "missing 'q'");
  if (!have_nominal) throw Error(Errc::malformed_syntax, "missing 'nominal'");
  if (*q == 0) throw Error(Errc::zero_objectives, "q must be at least 1");
  if (problem.objectives.size() != *q)
    throw Error(Errc::dimension_mismatch, "q does not match the number of objective lines");
  std::size_t expected = 1;
  for (auto& [t, a] : rows) {
    if (t != expected) throw Error(Errc::dimension_mismatch, "row parameters must be b1..bm");
    problem.rows.push_back(std::move(a));
    ++expected;
  }
  problem.n = *n;
  problem.validate();
  return problem;
}

std::string format_problem(const Problem& problem) {
  std::ostringstream out;
  out << "n " << problem.n << "\n";
  out << "q " << problem.q() << "\n";
  for (const auto& c : problem.objectives) out << "objective " << join(c) << "\n";
  for (std::size_t t = 0; t < problem.m(); ++t)
    out << "row " << join(problem.rows[t]) << " <= b" << (t + 1) << "\n";
  out << "nominal " << join(problem.nominal) << "\n";
  out << "decision_norm " << norm_name(problem.decision_norm) << "\n";
  out << "image_norm " << norm_name(problem.image_norm) << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------

AffineForm AffineForm::parameter(std::size_t m, std::size_t t) { return {unit(m, t), 0}; }

Rational AffineForm::evaluate(VectorView b) const { return dot(coefficients, b) + constant; }

AffineForm operator+(const AffineForm& a, const AffineForm& b) {
  return {add(a.coefficients, b.coefficients), a.constant + b.constant};
}

AffineForm operator-(const AffineForm& a, const AffineForm& b) {
  return {subtract(a.coefficients, b.coefficients), a.constant - b.constant};
}

AffineForm operator*(const Rational& s, const AffineForm& f) {
  return {scale(s, f.coefficients), s * f.constant};
}

namespace {

// Appends "+c<name>" style terms; an empty name marks the constant term.
void append_term(std::string& out, const Rational& c, const std::string& name) {
  if (c == 0) return;
  bool negative = c < 0;
  Rational mag = abs(c);
  if (!out.empty()) out += negative ? "-" : "+";
  else if (negative) out += "-";
  if (name.empty()) {
    out += to_string(mag);
  } else {
    if (mag != 1) {
      out += to_string(mag);
      if (boost::multiprecision::denominator(mag) != 1) out += "*";
    }
    out += name;
  }
}

std::string linear_text(VectorView coeffs, char var, const Rational* constant) {
  std::string out;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    append_term(out, coeffs[i], std::string(1, var) + std::to_string(i + 1));
  if (constant) append_term(out, *constant, "");
  return out.empty() ? "0" : out;
}

}  // namespace

std::string AffineForm::to_string() const { return linear_text(coefficients, 'b', &constant); }

std::string SymbolicRow::to_string() const {
  return linear_text(lhs, 'x', nullptr) + " <= " + rhs.to_string();
}

SymbolicRow canonical(const SymbolicRow& row) {
  Vector all(row.lhs.begin(), row.lhs.end());
  all.insert(all.end(), row.rhs.coefficients.begin(), row.rhs.coefficients.end());
  all.push_back(row.rhs.constant);
  Rational f;
  primitive(all, &f);
  return {scale(f, row.lhs), f * row.rhs};
}

AffineForm canonical(const AffineForm& form) {
  Vector all(form.coefficients.begin(), form.coefficients.end());
  all.push_back(form.constant);
  Rational f;
  primitive(all, &f);
  return f * form;
}

bool LinearSystem::contains(VectorView x) const {
  for (std::size_t i = 0; i < lhs.size(); ++i)
    if (dot(lhs[i], x) > rhs[i]) return false;
  for (std::size_t i = 0; i < eq_lhs.size(); ++i)
    if (dot(eq_lhs[i], x) != eq_rhs[i]) return false;
  return true;
}

SymbolicSystem SymbolicSystem::from_problem(const Problem& problem) {
  SymbolicSystem sys;
  sys.dimension = problem.n;
  sys.parameters = problem.m();
  for (std::size_t t = 0; t < problem.m(); ++t)
    sys.add({problem.rows[t], AffineForm::parameter(problem.m(), t)});
  return sys;
}

void SymbolicSystem::add(const SymbolicRow& row) {
  if (is_zero(row.lhs)) {
    add_condition(row.rhs);
    return;
  }
  rows.push_back(canonical(row));
}

void SymbolicSystem::add_condition(const AffineForm& form) {
  if (form.is_constant() && form.constant >= 0) return;
  consistency.push_back(canonical(form));
}

bool SymbolicSystem::consistent_at(VectorView b) const {
  return std::all_of(consistency.begin(), consistency.end(),
                     [&](const AffineForm& f) { return f.evaluate(b) >= 0; });
}

LinearSystem SymbolicSystem::instantiate(VectorView b) const {
  LinearSystem out;
  out.dimension = dimension;
  for (const auto& row : rows) {
    out.lhs.push_back(row.lhs);
    out.rhs.push_back(row.rhs.evaluate(b));
  }
  for (const auto& f : consistency) {
    out.lhs.push_back(zeros(dimension));
    out.rhs.push_back(f.evaluate(b));
  }
  return out;
}

std::string SymbolicSystem::to_string() const {
  std::string out;
  for (const auto& row : rows) out += row.to_string() + "\n";
  for (const auto& f : consistency) out += "0 <= " + f.to_string() + "\n";
  return out;
}

}  // namespace epilip
