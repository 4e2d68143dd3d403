#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "abext/errors.hpp"

namespace abext {

/// Exact arbitrary-precision integer used everywhere in the library.
using Integer = boost::multiprecision::cpp_int;
using IntVec = std::vector<Integer>;

/// Dense integer matrix, row-major. Zero rows and/or zero columns are
/// first-class: a 0xN or Nx0 matrix behaves like the corresponding empty
/// linear map and all operations below accept it.
class IntMatrix {
public:
  IntMatrix() : rows_(0), cols_(0) {}

  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  IntMatrix(std::initializer_list<std::initializer_list<Integer>> init)
      : rows_(init.size()), cols_(0) {
    for (const auto& row : init) cols_ = std::max(cols_, row.size());
    data_.assign(rows_ * cols_, Integer(0));
    std::size_t i = 0;
    for (const auto& row : init) {
      if (row.size() != cols_)
        throw InputError("IntMatrix: ragged initializer rows");
      std::size_t j = 0;
      for (const auto& v : row) data_[i * cols_ + j++] = v;
      ++i;
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix zero(std::size_t rows, std::size_t cols) {
    return IntMatrix(rows, cols);
  }

  /// Square matrix with the given diagonal entries.
  static IntMatrix diagonal(const IntVec& d) {
    IntMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  /// Single-column matrix from a vector.
  static IntMatrix column(const IntVec& v) {
    IntMatrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  const Integer& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  Integer& at(std::size_t i, std::size_t j) {
    check_index(i, j);
    return data_[i * cols_ + j];
  }
  const Integer& at(std::size_t i, std::size_t j) const {
    check_index(i, j);
    return data_[i * cols_ + j];
  }

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }

  bool is_zero() const {
    for (const auto& v : data_)
      if (v != 0) return false;
    return true;
  }

  bool is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
  }

  IntVec col(std::size_t j) const {
    IntVec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  IntVec row(std::size_t i) const {
    IntVec v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
    return v;
  }

  void set_col(std::size_t j, const IntVec& v) {
    if (v.size() != rows_) throw InputError("set_col: size mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  // In-place column operations, the primitives of the normal-form routines.
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i)
      std::swap((*this)(i, a), (*this)(i, b));
  }
  void negate_col(std::size_t j) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
  }
  /// col_dst += q * col_src
  void addmul_col(std::size_t dst, std::size_t src, const Integer& q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < rows_; ++i)
      (*this)(i, dst) += q * (*this)(i, src);
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j)
      std::swap((*this)(a, j), (*this)(b, j));
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }
  /// row_dst += q * row_src
  void addmul_row(std::size_t dst, std::size_t src, const Integer& q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < cols_; ++j)
      (*this)(dst, j) += q * (*this)(src, j);
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Contiguous block copy: rows [r0, r0+nr), columns [c0, c0+nc).
  IntMatrix block(std::size_t r0, std::size_t c0, std::size_t nr,
                  std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_)
      throw InputError("block: out of range");
    IntMatrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  /// Copy of the columns listed in `which`, in that order.
  IntMatrix select_cols(const std::vector<std::size_t>& which) const {
    IntMatrix s(rows_, which.size());
    for (std::size_t j = 0; j < which.size(); ++j) {
      if (which[j] >= cols_) throw InputError("select_cols: out of range");
      for (std::size_t i = 0; i < rows_; ++i) s(i, j) = (*this)(i, which[j]);
    }
    return s;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? "; " : "");
      for (std::size_t j = 0; j < cols_; ++j)
        os << (j ? " " : "") << (*this)(i, j);
    }
    os << "]";
    return os.str();
  }

private:
  void check_index(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_)
      throw InputError("IntMatrix: index out of range");
  }

  std::size_t rows_, cols_;
  IntVec data_;
};

inline IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows())
    throw InputError("matrix product: inner dimensions differ (" +
                     std::to_string(a.cols()) + " vs " +
                     std::to_string(b.rows()) + ")");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

inline IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InputError("matrix sum: shape mismatch");
  IntMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

inline IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InputError("matrix difference: shape mismatch");
  IntMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

inline IntMatrix operator-(const IntMatrix& a) {
  IntMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = -a(i, j);
  return c;
}

inline IntMatrix operator*(const Integer& s, const IntMatrix& a) {
  IntMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
  return c;
}

inline IntVec operator*(const IntMatrix& a, const IntVec& x) {
  if (a.cols() != x.size())
    throw InputError("matrix-vector product: dimension mismatch");
  IntVec y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

/// [a | b], requires equal row counts.
inline IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw InputError("hstack: row counts differ");
  IntMatrix c(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
  }
  return c;
}

/// [a; b], requires equal column counts.
inline IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) throw InputError("vstack: column counts differ");
  IntMatrix c(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, j) = b(i, j);
  return c;
}

/// Block diagonal [a 0; 0 b].
inline IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      c(a.rows() + i, a.cols() + j) = b(i, j);
  return c;
}

/// Kronecker product, row-blocked by a's entries: (a kron b)(ib+k, jb+l) =
/// a(i,j) * b(k,l).
inline IntMatrix kron(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Integer& aij = a(i, j);
      if (aij == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return c;
}

/// Column-stacked vectorisation: vec(m)[j*rows + i] = m(i, j).
inline IntVec vec(const IntMatrix& m) {
  IntVec v(m.rows() * m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) v[j * m.rows() + i] = m(i, j);
  return v;
}

/// Inverse of vec for a known row count.
inline IntMatrix unvec(const IntVec& v, std::size_t rows, std::size_t cols) {
  if (v.size() != rows * cols) throw InputError("unvec: size mismatch");
  IntMatrix m(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = v[j * rows + i];
  return m;
}

/// Floor division: largest q with q*b <= a (b > 0) or q*b >= a (b < 0).
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Nonnegative remainder of a mod b (b != 0): a - floor_div(a,b)*b when b > 0.
inline Integer pos_mod(const Integer& a, const Integer& b) {
  Integer m = a % b;
  if (m < 0) m += abs(b);
  return m;
}

}  // namespace abext
