#pragma once

#include <optional>
#include <vector>

#include "epilip/rational.hpp"

namespace epilip {

/// Dense row-major matrix of exact rationals.
using Matrix = std::vector<Vector>;

/// Reduced row echelon form computed in place; returns pivot columns.
std::vector<std::size_t> row_reduce(Matrix& m, std::size_t columns);

std::size_t rank(const Matrix& rows, std::size_t columns);

/// One solution of rows * x = rhs (free variables set to zero), or nullopt
/// when the system is inconsistent.
std::optional<Vector> solve_linear(const Matrix& rows, const Vector& rhs, std::size_t columns);

/// Basis of {x | rows * x = 0}.
std::vector<Vector> nullspace(const Matrix& rows, std::size_t columns);

Matrix transpose(const Matrix& m, std::size_t columns);

}  // namespace epilip
