#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "abext/int_matrix.hpp"

namespace abext {

/// Column-style Hermite normal form of M: h = M * u with u unimodular.
/// Canonical shape: nonzero columns first, pivot rows strictly increasing
/// left to right (pivot = bottom-most nonzero entry of its column), pivots
/// positive, and every entry to the right of a pivot in its row reduced to
/// [0, pivot). Two integer matrices span the same column lattice iff their
/// h parts agree.
struct HNFResult {
  IntMatrix h;
  IntMatrix u;
  std::vector<std::size_t> pivot_rows;  // pivot_rows[j] = row of column j's pivot

  std::size_t rank() const noexcept { return pivot_rows.size(); }
};

inline HNFResult hnf(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  HNFResult res;
  res.h = m;
  res.u = IntMatrix::identity(cols);
  IntMatrix& h = res.h;
  IntMatrix& u = res.u;

  // Bottom-up sweep. Columns [0, active) are unassigned; each row that meets
  // a nonzero entry donates one pivot column, parked at the right end of the
  // window so pivot rows end up increasing left to right.
  std::size_t active = cols;
  for (std::size_t ri = rows; ri-- > 0 && active > 0;) {
    for (;;) {
      // Minimal-absolute-value nonzero pivot, leftmost among ties.
      std::size_t pivot = active;
      for (std::size_t j = 0; j < active; ++j) {
        if (h(ri, j) == 0) continue;
        if (pivot == active || abs(h(ri, j)) < abs(h(ri, pivot))) pivot = j;
      }
      if (pivot == active) break;  // row is clear, nothing to assign

      bool reduced_all = true;
      for (std::size_t j = 0; j < active; ++j) {
        if (j == pivot || h(ri, j) == 0) continue;
        Integer q = h(ri, j) / h(ri, pivot);  // truncated: |remainder| < |pivot|
        h.addmul_col(j, pivot, -q);
        u.addmul_col(j, pivot, -q);
        if (h(ri, j) != 0) reduced_all = false;
      }
      if (!reduced_all) continue;  // smaller remainders exist, re-select pivot

      if (h(ri, pivot) < 0) {
        h.negate_col(pivot);
        u.negate_col(pivot);
      }
      --active;
      h.swap_cols(pivot, active);
      u.swap_cols(pivot, active);
      break;
    }
  }

  // Pivot columns currently sit at [active, cols) with increasing pivot rows;
  // rotate them to the front so zero columns come last.
  const std::size_t nz = cols - active;
  if (active > 0 && nz > 0) {
    std::vector<std::size_t> order;
    order.reserve(cols);
    for (std::size_t j = active; j < cols; ++j) order.push_back(j);
    for (std::size_t j = 0; j < active; ++j) order.push_back(j);
    h = h.select_cols(order);
    u = u.select_cols(order);
  }

  res.pivot_rows.resize(nz);
  for (std::size_t j = 0; j < nz; ++j) {
    std::size_t r = rows;
    while (r > 0 && h(r - 1, j) == 0) --r;
    res.pivot_rows[j] = r - 1;  // columns are nonzero by construction
  }

  // Reduce entries right of each pivot into [0, pivot). Walking pivots from
  // the bottom row up keeps earlier reductions intact.
  for (std::size_t j = nz; j-- > 0;) {
    const std::size_t r = res.pivot_rows[j];
    for (std::size_t j2 = j + 1; j2 < nz; ++j2) {
      Integer q = floor_div(h(r, j2), h(r, j));
      h.addmul_col(j2, j, -q);
      u.addmul_col(j2, j, -q);
    }
  }
  return res;
}

/// Smith normal form: d = u * M * v with u, v unimodular, d diagonal with
/// nonnegative entries, d(i,i) | d(i+1,i+1), zero entries trailing.
struct SNFResult {
  IntMatrix d;
  IntMatrix u;
  IntMatrix v;

  /// Diagonal of d as a vector of length min(rows, cols).
  IntVec diagonal() const {
    const std::size_t n = std::min(d.rows(), d.cols());
    IntVec out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = d(i, i);
    return out;
  }
};

inline SNFResult snf(const IntMatrix& m) {
  SNFResult res;
  res.d = m;
  res.u = IntMatrix::identity(m.rows());
  res.v = IntMatrix::identity(m.cols());
  IntMatrix& d = res.d;
  IntMatrix& u = res.u;
  IntMatrix& v = res.v;
  const std::size_t rows = m.rows(), cols = m.cols();

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      // Minimal-absolute-value nonzero pivot in the trailing submatrix,
      // first in row-major order among ties.
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (d(i, j) == 0) continue;
          if (pi == rows || abs(d(i, j)) < abs(d(pi, pj))) {
            pi = i;
            pj = j;
          }
        }
      if (pi == rows) break;  // submatrix is zero, trailing diagonal stays 0

      d.swap_rows(t, pi);
      u.swap_rows(t, pi);
      d.swap_cols(t, pj);
      v.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        Integer q = d(i, t) / d(t, t);
        d.addmul_row(i, t, -q);
        u.addmul_row(i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        Integer q = d(t, j) / d(t, t);
        d.addmul_col(j, t, -q);
        v.addmul_col(j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;  // smaller remainders appeared, re-select

      // Divisibility fix-up: pivot must divide the whole trailing submatrix.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols && divides; ++j)
          if (d(i, j) % d(t, t) != 0) {
            d.addmul_row(t, i, 1);
            u.addmul_row(t, i, 1);
            divides = false;
          }
      if (!divides) continue;

      if (d(t, t) < 0) {
        d.negate_row(t);
        u.negate_row(t);
      }
      break;
    }
  }
  return res;
}

/// Solves h * y = b for the cached Hermite form, then maps back through u.
/// Returns a particular integer solution x with (original matrix) * x = b,
/// or nullopt if none exists.
inline std::optional<IntVec> hnf_solve(const HNFResult& f, const IntVec& b) {
  if (b.size() != f.h.rows()) throw InputError("hnf_solve: length mismatch");
  const std::size_t k = f.rank();
  IntVec y(f.h.cols(), Integer(0));
  for (std::size_t j = k; j-- > 0;) {
    const std::size_t r = f.pivot_rows[j];
    Integer acc = b[r];
    for (std::size_t j2 = j + 1; j2 < k; ++j2) acc -= f.h(r, j2) * y[j2];
    if (acc % f.h(r, j) != 0) return std::nullopt;
    y[j] = acc / f.h(r, j);
  }
  // Back-substitution only visited pivot rows; confirm the rest.
  IntVec check = f.h * y;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (check[i] != b[i]) return std::nullopt;
  return f.u * y;
}

/// Particular integer solution of m * x = b, if one exists.
inline std::optional<IntVec> solve_integer(const IntMatrix& m,
                                           const IntVec& b) {
  if (b.size() != m.rows())
    throw InputError("solve_integer: vector length differs from row count");
  return hnf_solve(hnf(m), b);
}

/// Basis of the integer kernel of m, one column per basis vector. The basis
/// columns are the unimodular-transform columns that map to zero columns of
/// the Hermite form, so they generate every integer kernel element.
inline IntMatrix kernel_basis(const IntMatrix& m) {
  HNFResult f = hnf(m);
  const std::size_t k = f.rank();
  std::vector<std::size_t> zero_cols;
  for (std::size_t j = k; j < m.cols(); ++j) zero_cols.push_back(j);
  return f.u.select_cols(zero_cols);
}

/// True iff v lies in the lattice generated by the columns of m.
inline bool lattice_member(const IntMatrix& m, const IntVec& v) {
  if (v.size() != m.rows())
    throw InputError("lattice_member: vector length differs from row count");
  return solve_integer(m, v).has_value();
}

/// Membership against a cached Hermite form of the lattice generators.
inline bool lattice_member(const HNFResult& f, const IntVec& v) {
  return hnf_solve(f, v).has_value();
}

/// Columnwise exact expression of rhs in the lattice spanned by basis:
/// returns u with basis * u = rhs. Callers use this where membership is a
/// mathematical consequence of prior constructions, so failure throws.
inline IntMatrix express_in_lattice(const IntMatrix& basis,
                                    const IntMatrix& rhs, const char* what) {
  if (basis.rows() != rhs.rows())
    throw InputError("express_in_lattice: row counts differ");
  HNFResult f = hnf(basis);
  IntMatrix u(basis.cols(), rhs.cols());
  for (std::size_t j = 0; j < rhs.cols(); ++j) {
    auto sol = hnf_solve(f, rhs.col(j));
    if (!sol)
      throw Error(std::string(what) +
                  ": vector unexpectedly outside its lattice");
    u.set_col(j, *sol);
  }
  return u;
}

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw InputError("determinant: not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1, prev = 1;
  for (std::size_t t = 0; t + 1 < n; ++t) {
    if (a(t, t) == 0) {
      std::size_t swap = t + 1;
      while (swap < n && a(swap, t) == 0) ++swap;
      if (swap == n) return 0;
      a.swap_rows(t, swap);
      sign = -sign;
    }
    for (std::size_t i = t + 1; i < n; ++i)
      for (std::size_t j = t + 1; j < n; ++j)
        a(i, j) = (a(t, t) * a(i, j) - a(i, t) * a(t, j)) / prev;
    prev = a(t, t);
  }
  return sign * a(n - 1, n - 1);
}

inline bool is_unimodular(const IntMatrix& m) {
  if (m.rows() != m.cols()) return false;
  Integer d = determinant(m);
  return d == 1 || d == -1;
}

}  // namespace abext
