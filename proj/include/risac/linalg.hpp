#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "risac/errors.hpp"

namespace risac {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

/// Dense complex matrix, row-major storage.
struct CMat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<cplx> a;

  CMat() = default;
  CMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

  cplx& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return a[i * cols + j];
  }

  cplx& at(std::size_t i, std::size_t j) {
    check_index(i, j);
    return a[i * cols + j];
  }
  const cplx& at(std::size_t i, std::size_t j) const {
    check_index(i, j);
    return a[i * cols + j];
  }

  static CMat zero(std::size_t r, std::size_t c) { return CMat(r, c); }

  static CMat identity(std::size_t n) {
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

 private:
  void check_index(std::size_t i, std::size_t j) const {
    if (i >= rows || j >= cols)
      throw IndexOutOfRange("matrix index (" + std::to_string(i) + "," +
                            std::to_string(j) + ") outside " +
                            std::to_string(rows) + "x" + std::to_string(cols));
  }
};

namespace detail {
inline void require_same_length(const CVec& x, const CVec& y,
                                const char* op) {
  if (x.size() != y.size())
    throw DimensionMismatch(std::string(op) + ": lengths " +
                            std::to_string(x.size()) + " vs " +
                            std::to_string(y.size()));
}
}  // namespace detail

/// <x, y> = sum_i conj(x_i) * y_i.  Conjugate-linear in the first slot.
inline cplx hermitian_inner(const CVec& x, const CVec& y) {
  detail::require_same_length(x, y, "hermitian_inner");
  cplx acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

/// Squared Euclidean norm, sum |x_i|^2.
inline double norm2(const CVec& x) {
  double acc = 0.0;
  for (const cplx& v : x) acc += std::norm(v);
  return acc;
}

inline double norm(const CVec& x) { return std::sqrt(norm2(x)); }

/// Max |x_i| over entries; 0 for the empty vector.
inline double norm_inf(const CVec& x) {
  double acc = 0.0;
  for (const cplx& v : x) acc = std::max(acc, std::abs(v));
  return acc;
}

inline CVec matvec(const CMat& A, const CVec& x) {
  if (A.cols != x.size())
    throw DimensionMismatch("matvec: " + std::to_string(A.rows) + "x" +
                            std::to_string(A.cols) + " times length " +
                            std::to_string(x.size()));
  CVec y(A.rows, 0.0);
  for (std::size_t i = 0; i < A.rows; ++i) {
    cplx acc = 0.0;
    const cplx* row = A.a.data() + i * A.cols;
    for (std::size_t j = 0; j < A.cols; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
  return y;
}

/// A^H x without forming the adjoint; length-cols result.
inline CVec adjoint_matvec(const CMat& A, const CVec& x) {
  if (A.rows != x.size())
    throw DimensionMismatch("adjoint_matvec: " + std::to_string(A.rows) + "x" +
                            std::to_string(A.cols) + " adjoint times length " +
                            std::to_string(x.size()));
  CVec y(A.cols, 0.0);
  for (std::size_t i = 0; i < A.rows; ++i) {
    const cplx xi = x[i];
    const cplx* row = A.a.data() + i * A.cols;
    for (std::size_t j = 0; j < A.cols; ++j) y[j] += std::conj(row[j]) * xi;
  }
  return y;
}

inline CMat matmul(const CMat& A, const CMat& B) {
  if (A.cols != B.rows)
    throw DimensionMismatch("matmul: " + std::to_string(A.rows) + "x" +
                            std::to_string(A.cols) + " times " +
                            std::to_string(B.rows) + "x" +
                            std::to_string(B.cols));
  CMat C(A.rows, B.cols);
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t k = 0; k < A.cols; ++k) {
      const cplx aik = A(i, k);
      if (aik == cplx(0.0)) continue;
      for (std::size_t j = 0; j < B.cols; ++j) C(i, j) += aik * B(k, j);
    }
  return C;
}

inline CMat conj_transpose(const CMat& A) {
  CMat T(A.cols, A.rows);
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t j = 0; j < A.cols; ++j) T(j, i) = std::conj(A(i, j));
  return T;
}

inline CVec scale(const CVec& x, cplx s) {
  CVec y(x);
  for (cplx& v : y) v *= s;
  return y;
}

inline CMat scale(const CMat& A, cplx s) {
  CMat B(A);
  for (cplx& v : B.a) v *= s;
  return B;
}

inline CVec add(const CVec& x, const CVec& y) {
  detail::require_same_length(x, y, "add");
  CVec z(x);
  for (std::size_t i = 0; i < z.size(); ++i) z[i] += y[i];
  return z;
}

inline CVec sub(const CVec& x, const CVec& y) {
  detail::require_same_length(x, y, "sub");
  CVec z(x);
  for (std::size_t i = 0; i < z.size(); ++i) z[i] -= y[i];
  return z;
}

inline CMat add(const CMat& A, const CMat& B) {
  if (A.rows != B.rows || A.cols != B.cols)
    throw DimensionMismatch("add: " + std::to_string(A.rows) + "x" +
                            std::to_string(A.cols) + " vs " +
                            std::to_string(B.rows) + "x" +
                            std::to_string(B.cols));
  CMat C(A);
  for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] += B.a[i];
  return C;
}

inline CVec conj(const CVec& x) {
  CVec y(x);
  for (cplx& v : y) v = std::conj(v);
  return y;
}

/// Outer product u v^T (no conjugation; conjugate the argument if the
/// Hermitian outer product is wanted).
inline CMat outer(const CVec& u, const CVec& v) {
  CMat M(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) M(i, j) = u[i] * v[j];
  return M;
}

/// Square matrix with d on the diagonal.
inline CMat diag(const CVec& d) {
  CMat M(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) M(i, i) = d[i];
  return M;
}

/// Column j of A as a vector.
inline CVec column(const CMat& A, std::size_t j) {
  if (j >= A.cols)
    throw IndexOutOfRange("column " + std::to_string(j) + " of " +
                          std::to_string(A.rows) + "x" +
                          std::to_string(A.cols));
  CVec c(A.rows);
  for (std::size_t i = 0; i < A.rows; ++i) c[i] = A(i, j);
  return c;
}

/// z/|z| for nonzero z, 1 for z = 0.
inline cplx phase(cplx z) {
  const double m = std::abs(z);
  if (m == 0.0) return cplx(1.0, 0.0);
  return z / m;
}

}  // namespace risac
