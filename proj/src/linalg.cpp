#include "epilip/linalg.hpp"

#include <utility>

namespace epilip {

std::vector<std::size_t> row_reduce(Matrix& m, std::size_t columns) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < columns && row < m.size(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[row], m[pivot]);
    Rational inv = 1 / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (std::size_t c = 0; c < m[r].size(); ++c) {
        if (m[row][c] != 0) m[r][c] -= f * m[row][c];
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t rank(const Matrix& rows, std::size_t columns) {
  Matrix m = rows;
  return row_reduce(m, columns).size();
}

std::optional<Vector> solve_linear(const Matrix& rows, const Vector& rhs, std::size_t columns) {
  Matrix m;
  m.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Vector r(rows[i].begin(), rows[i].end());
    r.push_back(rhs[i]);
    m.push_back(std::move(r));
  }
  auto pivots = row_reduce(m, columns);
  for (std::size_t r = pivots.size(); r < m.size(); ++r) {
    if (m[r][columns] != 0) return std::nullopt;
  }
  Vector x = zeros(columns);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = m[r][columns];
  return x;
}

std::vector<Vector> nullspace(const Matrix& rows, std::size_t columns) {
  Matrix m = rows;
  auto pivots = row_reduce(m, columns);
  std::vector<bool> is_pivot(columns, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < columns; ++free) {
    if (is_pivot[free]) continue;
    Vector v = zeros(columns);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

Matrix transpose(const Matrix& m, std::size_t columns) {
  Matrix t(columns, zeros(m.size()));
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < columns; ++c) t[c][r] = m[r][c];
  return t;
}

}  // namespace epilip
