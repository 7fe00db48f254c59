#include "epilip/lp.hpp"

#include <algorithm>
#include <set>

#include "epilip/error.hpp"
#include "epilip/linalg.hpp"

namespace epilip {

std::string_view status_name(LpStatus status) {
  switch (status) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
  }
  return "?";
}

namespace {

// Dense simplex tableau over a standard-form program
//   min cost^T z  s.t.  M z = r,  z >= 0,  r >= 0.
class Tableau {
 public:
  Tableau(Matrix rows, Vector rhs, std::size_t columns)
      : columns_(columns), rows_(std::move(rows)) {
    for (std::size_t i = 0; i < rows_.size(); ++i) rows_[i].push_back(std::move(rhs[i]));
    basis_.assign(rows_.size(), kNone);
    allowed_.assign(columns_, true);
  }

  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  std::size_t row_count() const { return rows_.size(); }
  std::size_t basic(std::size_t r) const { return basis_[r]; }
  void set_basic(std::size_t r, std::size_t col) { basis_[r] = col; }
  const Rational& at(std::size_t r, std::size_t c) const { return rows_[r][c]; }
  const Rational& rhs(std::size_t r) const { return rows_[r][columns_]; }
  void forbid(std::size_t col) { allowed_[col] = false; }

  void drop_row(std::size_t r) {
    rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    row_ids_.erase(row_ids_.begin() + static_cast<std::ptrdiff_t>(r));
  }

  void init_row_ids() {
    row_ids_.resize(rows_.size());
    for (std::size_t i = 0; i < row_ids_.size(); ++i) row_ids_[i] = i;
  }
  const std::vector<std::size_t>& row_ids() const { return row_ids_; }

  // Sets the objective row to reduced costs of `cost` for the current basis.
  void price(const Vector& cost) {
    reduced_ = cost;
    reduced_.push_back(0);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational& cb = cost[basis_[r]];
      if (cb == 0) continue;
      for (std::size_t c = 0; c <= columns_; ++c) {
        if (rows_[r][c] != 0) reduced_[c] -= cb * rows_[r][c];
      }
    }
  }

  void pivot(std::size_t pr, std::size_t pc) {
    auto& prow = rows_[pr];
    Rational inv = 1 / prow[pc];
    std::vector<std::size_t> nz;
    for (std::size_t c = 0; c <= columns_; ++c) {
      if (prow[c] != 0) {
        prow[c] *= inv;
        nz.push_back(c);
      }
    }
    // Raw GMP calls with one scratch value avoid a temporary per entry.
    Rational scratch;
    auto eliminate = [&](Vector& row) {
      if (row[pc] == 0) return;
      Rational f = row[pc];
      for (auto c : nz) {
        mpq_mul(scratch.backend().data(), f.backend().data(), prow[c].backend().data());
        mpq_sub(row[c].backend().data(), row[c].backend().data(), scratch.backend().data());
      }
    };
    for (std::size_t r = 0; r < rows_.size(); ++r)
      if (r != pr) eliminate(rows_[r]);
    eliminate(reduced_);
    basis_[pr] = pc;
  }

  enum class Outcome { optimal, unbounded };

  // Bland's rule: lowest-index improving column, ties in the ratio test go to
  // the lowest-index basic variable.
  Outcome run(std::size_t* unbounded_column) {
    while (true) {
      std::size_t enter = kNone;
      for (std::size_t c = 0; c < columns_; ++c) {
        if (allowed_[c] && reduced_[c] < 0) {
          enter = c;
          break;
        }
      }
      if (enter == kNone) return Outcome::optimal;
      std::size_t leave = kNone;
      Rational best;
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (rows_[r][enter] <= 0) continue;
        Rational ratio = rows_[r][columns_] / rows_[r][enter];
        if (leave == kNone || ratio < best || (ratio == best && basis_[r] < basis_[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave == kNone) {
        if (unbounded_column) *unbounded_column = enter;
        return Outcome::unbounded;
      }
      pivot(leave, enter);
    }
  }

  Rational objective_value() const { return -reduced_[columns_]; }

 private:
  std::size_t columns_;
  Matrix rows_;
  Vector reduced_;
  std::vector<std::size_t> basis_;
  std::vector<bool> allowed_;
  std::vector<std::size_t> row_ids_;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
  const std::size_t nvars = lp.variables;
  const std::size_t nrows = lp.constraints.size();
  auto is_nonneg = [&](std::size_t j) { return !lp.nonnegative.empty() && lp.nonnegative[j]; };

  // Column layout: structural (positive part, negative part for free
  // variables), then one slack per inequality, then artificials.
  std::vector<std::size_t> pos(nvars), neg(nvars, Tableau::kNone);
  std::size_t col = 0;
  for (std::size_t j = 0; j < nvars; ++j) {
    pos[j] = col++;
    if (!is_nonneg(j)) neg[j] = col++;
  }
  std::vector<std::size_t> slack(nrows, Tableau::kNone);
  for (std::size_t i = 0; i < nrows; ++i)
    if (lp.constraints[i].sense != Sense::eq) slack[i] = col++;
  const std::size_t real_columns = col;

  Matrix m(nrows);
  Vector r(nrows);
  std::vector<int> sign(nrows, 1);
  for (std::size_t i = 0; i < nrows; ++i) {
    const auto& con = lp.constraints[i];
    Vector row = zeros(real_columns);
    for (std::size_t j = 0; j < nvars; ++j) {
      const Rational& a = con.coefficients[j];
      if (a == 0) continue;
      row[pos[j]] = a;
      if (neg[j] != Tableau::kNone) row[neg[j]] = -a;
    }
    if (slack[i] != Tableau::kNone) row[slack[i]] = con.sense == Sense::le ? 1 : -1;
    Rational rhs = con.rhs;
    if (rhs < 0) {
      sign[i] = -1;
      for (auto& x : row) x = -x;
      rhs = -rhs;
    }
    m[i] = std::move(row);
    r[i] = std::move(rhs);
  }

  // Artificial columns only where no slack can start in the basis.
  std::vector<std::size_t> start(nrows, Tableau::kNone);
  std::size_t total = real_columns;
  for (std::size_t i = 0; i < nrows; ++i) {
    if (slack[i] != Tableau::kNone && m[i][slack[i]] == 1) start[i] = slack[i];
    else start[i] = total++;
  }
  Matrix original;
  if (lp.want_duals) original = m;

  Matrix tab(nrows);
  for (std::size_t i = 0; i < nrows; ++i) {
    tab[i] = std::move(m[i]);
    tab[i].resize(total, Rational(0));
    if (start[i] >= real_columns) tab[i][start[i]] = 1;
  }
  Tableau t(std::move(tab), r, total);
  t.init_row_ids();
  for (std::size_t i = 0; i < nrows; ++i) t.set_basic(i, start[i]);

  LpSolution out;
  // Phase 1.
  if (total > real_columns) {
    Vector cost = zeros(total);
    for (std::size_t c = real_columns; c < total; ++c) cost[c] = 1;
    t.price(cost);
    t.run(nullptr);
    if (t.objective_value() > 0) {
      out.status = LpStatus::infeasible;
      return out;
    }
    for (std::size_t row = 0; row < t.row_count();) {
      if (t.basic(row) < real_columns) {
        ++row;
        continue;
      }
      std::size_t enter = Tableau::kNone;
      for (std::size_t c = 0; c < real_columns; ++c) {
        if (t.at(row, c) != 0) {
          enter = c;
          break;
        }
      }
      if (enter == Tableau::kNone) {
        t.drop_row(row);
      } else {
        t.pivot(row, enter);
        ++row;
      }
    }
    for (std::size_t c = real_columns; c < total; ++c) t.forbid(c);
  }

  // Phase 2.
  Vector cost = zeros(total);
  for (std::size_t j = 0; j < nvars; ++j) {
    Rational cj = lp.maximize ? Rational(-lp.objective[j]) : lp.objective[j];
    cost[pos[j]] = cj;
    if (neg[j] != Tableau::kNone) cost[neg[j]] = -cj;
  }
  t.price(cost);
  std::size_t ray_column = Tableau::kNone;
  auto outcome = t.run(&ray_column);

  auto to_original = [&](const Vector& z) {
    Vector x = zeros(nvars);
    for (std::size_t j = 0; j < nvars; ++j) {
      x[j] = z[pos[j]];
      if (neg[j] != Tableau::kNone) x[j] -= z[neg[j]];
    }
    return x;
  };

  if (outcome == Tableau::Outcome::unbounded) {
    Vector z = zeros(total);
    z[ray_column] = 1;
    for (std::size_t row = 0; row < t.row_count(); ++row) z[t.basic(row)] = -t.at(row, ray_column);
    out.status = LpStatus::unbounded;
    out.ray = to_original(z);
    return out;
  }

  Vector z = zeros(total);
  for (std::size_t row = 0; row < t.row_count(); ++row) z[t.basic(row)] = t.rhs(row);
  out.status = LpStatus::optimal;
  out.x = to_original(z);
  out.value = dot(lp.objective, out.x);

  if (!lp.want_duals) return out;

  // Duals: B^T pi = c_B over the surviving rows.
  const auto& ids = t.row_ids();
  const std::size_t k = ids.size();
  Matrix bt(k, zeros(k));
  Vector cb(k);
  for (std::size_t j = 0; j < k; ++j) {
    std::size_t c = t.basic(j);
    cb[j] = cost[c];
    for (std::size_t i = 0; i < k; ++i) bt[j][i] = original[ids[i]][c];
  }
  auto pi = solve_linear(bt, cb, k);
  out.duals = zeros(nrows);
  if (pi) {
    for (std::size_t i = 0; i < k; ++i) {
      Rational y = sign[ids[i]] * (*pi)[i];
      out.duals[ids[i]] = lp.maximize ? Rational(-y) : y;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

LpOutcome solve(std::span<const Vector> rows, VectorView b, VectorView c) {
  const std::size_t n = c.size();
  const std::size_t m = rows.size();
  LinearProgram lp(n);
  lp.objective.assign(c.begin(), c.end());
  for (std::size_t t = 0; t < m; ++t) lp.add(rows[t], Sense::le, b[t]);
  auto sol = solve_lp(lp);

  LpOutcome out;
  out.status = sol.status;
  if (sol.status == LpStatus::optimal) {
    out.primal_point = std::move(sol.x);
    out.value = sol.value;
    out.dual_point = negate(sol.duals);
  } else if (sol.status == LpStatus::unbounded) {
    out.ray = std::move(sol.ray);
  } else {
    // Farkas: y >= 0, A^T y = 0, <b,y> = -1.
    LinearProgram cert(m);
    cert.nonnegative.assign(m, true);
    for (std::size_t j = 0; j < n; ++j) {
      Vector col(m);
      for (std::size_t t = 0; t < m; ++t) col[t] = rows[t][j];
      cert.add(std::move(col), Sense::eq, 0);
    }
    cert.add(Vector(b.begin(), b.end()), Sense::eq, -1);
    auto y = solve_lp(cert);
    if (y.status == LpStatus::optimal) out.farkas = std::move(y.x);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<Vector> standard_form_vertices(const std::vector<Vector>& equations, const Vector& rhs,
                                           std::size_t variables) {
  Matrix aug;
  for (std::size_t i = 0; i < equations.size(); ++i) {
    Vector row = equations[i];
    row.push_back(rhs[i]);
    aug.push_back(std::move(row));
  }
  auto pivots = row_reduce(aug, variables);
  for (std::size_t i = pivots.size(); i < aug.size(); ++i)
    if (aug[i][variables] != 0) return {};
  const std::size_t r = pivots.size();
  aug.resize(r);
  Matrix e(r);
  Vector f(r);
  for (std::size_t i = 0; i < r; ++i) {
    e[i] = Vector(aug[i].begin(), aug[i].begin() + static_cast<std::ptrdiff_t>(variables));
    f[i] = aug[i][variables];
  }

  std::set<Vector, decltype([](const Vector& a, const Vector& b) { return lex_less(a, b); })> found;
  if (r == 0) {
    found.insert(zeros(variables));
  } else if (r <= variables) {
    std::vector<bool> pick(variables, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(r), true);
    do {
      std::vector<std::size_t> cols;
      for (std::size_t j = 0; j < variables; ++j)
        if (pick[j]) cols.push_back(j);
      Matrix sub(r, zeros(r));
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < r; ++k) sub[i][k] = e[i][cols[k]];
      if (rank(sub, r) != r) continue;
      auto sol = solve_linear(sub, f, r);
      if (!sol) continue;
      if (std::any_of(sol->begin(), sol->end(), [](const Rational& v) { return v < 0; })) continue;
      Vector z = zeros(variables);
      for (std::size_t k = 0; k < r; ++k) z[cols[k]] = (*sol)[k];
      found.insert(std::move(z));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return {found.begin(), found.end()};
}

DualFace::DualFace(std::vector<Vector> rows, Vector nominal, Vector objective, Rational value)
    : rows_(std::move(rows)),
      nominal_(std::move(nominal)),
      objective_(std::move(objective)),
      value_(std::move(value)) {}

bool DualFace::contains(VectorView lambda) const {
  if (lambda.size() != dimension()) return false;
  if (std::any_of(lambda.begin(), lambda.end(), [](const Rational& v) { return v < 0; })) return false;
  const std::size_t n = objective_.size();
  for (std::size_t j = 0; j < n; ++j) {
    Rational acc = 0;
    for (std::size_t t = 0; t < rows_.size(); ++t) acc += lambda[t] * rows_[t][j];
    if (acc != -objective_[j]) return false;
  }
  return dot(nominal_, lambda) == -value_;
}

namespace {

std::vector<Vector> face_equations(const std::vector<Vector>& rows, const Vector& nominal,
                                   std::size_t n) {
  std::vector<Vector> eqs;
  for (std::size_t j = 0; j < n; ++j) {
    Vector col(rows.size());
    for (std::size_t t = 0; t < rows.size(); ++t) col[t] = rows[t][j];
    eqs.push_back(std::move(col));
  }
  eqs.push_back(nominal);
  return eqs;
}

}  // namespace

std::vector<Vector> DualFace::vertices() const {
  auto eqs = face_equations(rows_, nominal_, objective_.size());
  Vector rhs = negate(objective_);
  rhs.push_back(-value_);
  return standard_form_vertices(eqs, rhs, dimension());
}

std::vector<Vector> DualFace::rays() const {
  auto eqs = face_equations(rows_, nominal_, objective_.size());
  Vector rhs = zeros(eqs.size());
  eqs.push_back(Vector(dimension(), Rational(1)));
  rhs.push_back(1);
  return standard_form_vertices(eqs, rhs, dimension());
}

DualFace::L1Max DualFace::max_l1() const {
  const std::size_t m = dimension();
  LinearProgram lp(m);
  lp.maximize = true;
  lp.objective.assign(m, Rational(1));
  lp.nonnegative.assign(m, true);
  for (auto& eq : face_equations(rows_, nominal_, objective_.size())) lp.add(eq, Sense::eq, 0);
  for (std::size_t j = 0; j < objective_.size(); ++j)
    lp.constraints[j].rhs = -objective_[j];
  lp.constraints.back().rhs = -value_;
  auto sol = solve_lp(lp);
  L1Max out;
  if (sol.status == LpStatus::optimal) {
    out.value = sol.value;
    out.point = std::move(sol.x);
  }
  return out;
}

DualFace dual_face(std::span<const Vector> rows, VectorView b, VectorView c) {
  auto outcome = solve(rows, b, c);
  if (outcome.status != LpStatus::optimal)
    throw Error(Errc::not_solvable,
                "linear program is " + std::string(status_name(outcome.status)) + " at this parameter");
  return DualFace(std::vector<Vector>(rows.begin(), rows.end()), Vector(b.begin(), b.end()),
                  Vector(c.begin(), c.end()), outcome.value);
}

bool dual_consistent(std::span<const Vector> rows, VectorView c) {
  if (is_zero(c)) return true;
  const std::size_t m = rows.size();
  LinearProgram lp(m);
  lp.nonnegative.assign(m, true);
  for (std::size_t j = 0; j < c.size(); ++j) {
    Vector col(m);
    for (std::size_t t = 0; t < m; ++t) col[t] = rows[t][j];
    lp.add(std::move(col), Sense::eq, -c[j]);
  }
  return solve_lp(lp).status == LpStatus::optimal;
}

}  // namespace epilip
