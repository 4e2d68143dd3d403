#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "abext/normal_form.hpp"

namespace abext {

/// One matrix congruence on an unknown X: left * X * right == rhs modulo the
/// column lattice of mod_lat, columnwise. Several of these over the same X
/// form the simultaneous systems behind path-data search, inverse search,
/// sections, and lifts.
struct MatCongruence {
  IntMatrix left;     // a x x_rows
  IntMatrix right;    // x_cols x b
  IntMatrix rhs;      // a x b
  IntMatrix mod_lat;  // a rows; empty (a x 0) means equality on the nose
};

/// Solves all congruences simultaneously for one integer matrix X of shape
/// x_rows x x_cols. Each congruence is vectorised column-stacked,
/// vec(L X R) = (R^T kron L) vec(X), with one lattice-multiplier block per
/// result column. Returns nullopt when no integer solution exists.
inline std::optional<IntMatrix> solve_mat_congruences(
    std::size_t x_rows, std::size_t x_cols,
    const std::vector<MatCongruence>& eqs) {
  const std::size_t nx = x_rows * x_cols;
  std::size_t total_rows = 0, total_cols = nx;
  for (const auto& e : eqs) {
    if (e.left.cols() != x_rows)
      throw InputError("solve_mat_congruences: left factor width differs "
                       "from unknown row count");
    if (e.right.rows() != x_cols)
      throw InputError("solve_mat_congruences: right factor height differs "
                       "from unknown column count");
    if (e.rhs.rows() != e.left.rows() || e.rhs.cols() != e.right.cols())
      throw InputError("solve_mat_congruences: rhs shape mismatch");
    if (e.mod_lat.rows() != e.left.rows())
      throw InputError("solve_mat_congruences: lattice row count mismatch");
    total_rows += e.rhs.rows() * e.rhs.cols();
    total_cols += e.mod_lat.cols() * e.rhs.cols();
  }

  IntMatrix sys(total_rows, total_cols);
  IntVec b(total_rows);
  std::size_t row0 = 0, col0 = nx;
  for (const auto& e : eqs) {
    IntMatrix coef = kron(e.right.transpose(), e.left);
    for (std::size_t i = 0; i < coef.rows(); ++i)
      for (std::size_t j = 0; j < coef.cols(); ++j)
        sys(row0 + i, j) = coef(i, j);
    // One relation-multiplier block per column of the result.
    const std::size_t lr = e.mod_lat.rows(), lc = e.mod_lat.cols();
    for (std::size_t c = 0; c < e.rhs.cols(); ++c)
      for (std::size_t i = 0; i < lr; ++i)
        for (std::size_t j = 0; j < lc; ++j)
          sys(row0 + c * lr + i, col0 + c * lc + j) = e.mod_lat(i, j);
    IntVec rv = vec(e.rhs);
    for (std::size_t i = 0; i < rv.size(); ++i) b[row0 + i] = rv[i];
    row0 += e.rhs.rows() * e.rhs.cols();
    col0 += lc * e.rhs.cols();
  }

  auto sol = solve_integer(sys, b);
  if (!sol) return std::nullopt;
  IntVec xs(sol->begin(), sol->begin() + nx);
  return unvec(xs, x_rows, x_cols);
}

}  // namespace abext
