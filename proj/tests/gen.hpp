#pragma once

// Deterministic random generators for property tests. Every TEST_CASE seeds
// its own engine so failures reproduce without Catch2 shuffle settings.

#include <cstdint>
#include <random>

#include "abext/int_matrix.hpp"

namespace gen {

using abext::Integer;
using abext::IntMatrix;

using Rng = std::mt19937_64;

inline Integer rand_int(Rng& rng, long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  return Integer(d(rng));
}

inline IntMatrix rand_matrix(Rng& rng, std::size_t rows, std::size_t cols,
                             long bound) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m(i, j) = rand_int(rng, -bound, bound);
  return m;
}

/// Unimodular matrix built from `ops` random elementary column operations,
/// so the determinant is +1 or -1 by construction.
inline IntMatrix rand_unimodular(Rng& rng, std::size_t n, std::size_t ops = 12,
                                 long coef = 3) {
  IntMatrix u = IntMatrix::identity(n);
  if (n == 0) return u;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> kind(0, 2);
  for (std::size_t t = 0; t < ops; ++t) {
    std::size_t a = pick(rng), b = pick(rng);
    switch (kind(rng)) {
      case 0:
        if (a != b) u.addmul_col(a, b, rand_int(rng, -coef, coef));
        break;
      case 1:
        u.swap_cols(a, b);
        break;
      default:
        u.negate_col(a);
    }
  }
  return u;
}

/// Unimodular matrix together with its exact inverse, tracked op by op.
struct UnimodularPair {
  IntMatrix u, u_inv;
};

inline UnimodularPair rand_unimodular_pair(Rng& rng, std::size_t n,
                                           std::size_t ops = 12,
                                           long coef = 3) {
  UnimodularPair p{IntMatrix::identity(n), IntMatrix::identity(n)};
  if (n == 0) return p;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> kind(0, 2);
  for (std::size_t t = 0; t < ops; ++t) {
    std::size_t a = pick(rng), b = pick(rng);
    switch (kind(rng)) {
      case 0: {
        if (a == b) break;
        Integer q = rand_int(rng, -coef, coef);
        p.u.addmul_col(a, b, q);   // u := u * E,  E = I + q e_b e_a^T
        p.u_inv.addmul_row(b, a, -q);  // inv := E^{-1} * inv
        break;
      }
      case 1:
        p.u.swap_cols(a, b);
        p.u_inv.swap_rows(a, b);
        break;
      default:
        p.u.negate_col(a);
        p.u_inv.negate_row(a);
    }
  }
  return p;
}

}  // namespace gen
