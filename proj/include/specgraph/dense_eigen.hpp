// dense_eigen.hpp — self-contained dense symmetric eigensolver (cyclic
// Jacobi) plus the generalized reduction through a Cholesky factor of the
// mass matrix. Serves as the independent oracle for the sparse iterative
// path; intended for n up to a few hundred.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "specgraph/graph.hpp"

namespace specgraph {

class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int n, int m, double value = 0.0)
      : rows_(n), cols_(m), data_(static_cast<size_t>(n) * static_cast<size_t>(m), value) {}
  double& operator()(int i, int j) {
    return data_[static_cast<size_t>(i) * static_cast<size_t>(cols_) + static_cast<size_t>(j)];
  }
  double operator()(int i, int j) const {
    return data_[static_cast<size_t>(i) * static_cast<size_t>(cols_) + static_cast<size_t>(j)];
  }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

// Eigenvalues of a symmetric matrix, ascending. Cyclic Jacobi sweeps until
// the off-diagonal mass is negligible.
inline std::vector<double> jacobi_eigenvalues(DenseMatrix a, int max_sweeps = 100) {
  int n = a.rows();
  if (n != a.cols()) throw numeric_error("jacobi: matrix must be square");
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (off < 1e-26 * (n > 0 ? n : 1)) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = a(p, q);
        if (apq == 0.0) continue;
        double app = a(p, p), aqq = a(q, q);
        double tau = (aqq - app) / (2.0 * apq);
        double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) ev[static_cast<size_t>(i)] = a(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

// Jacobi with accumulated rotations: fills eigenvalues (ascending) and the
// matching eigenvectors as columns of `vectors`.
inline void jacobi_eigen_system(DenseMatrix a, std::vector<double>& values,
                                DenseMatrix& vectors, int max_sweeps = 100) {
  int n = a.rows();
  if (n != a.cols()) throw numeric_error("jacobi: matrix must be square");
  vectors = DenseMatrix(n, n, 0.0);
  for (int i = 0; i < n; ++i) vectors(i, i) = 1.0;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (off < 1e-26 * (n > 0 ? n : 1)) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = a(p, q);
        if (apq == 0.0) continue;
        double app = a(p, p), aqq = a(q, q);
        double tau = (aqq - app) / (2.0 * apq);
        double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          double vkp = vectors(k, p), vkq = vectors(k, q);
          vectors(k, p) = c * vkp - s * vkq;
          vectors(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  // sort ascending, permuting vector columns alongside
  std::vector<int> order(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&a](int x, int y) { return a(x, x) < a(y, y); });
  values.assign(static_cast<size_t>(n), 0.0);
  DenseMatrix sorted(n, n);
  for (int j = 0; j < n; ++j) {
    values[static_cast<size_t>(j)] = a(order[static_cast<size_t>(j)], order[static_cast<size_t>(j)]);
    for (int i = 0; i < n; ++i) sorted(i, j) = vectors(i, order[static_cast<size_t>(j)]);
  }
  vectors = sorted;
}

// In-place lower Cholesky of a symmetric positive definite matrix.
inline DenseMatrix cholesky_lower(const DenseMatrix& b) {
  int n = b.rows();
  DenseMatrix l(n, n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = b(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      if (i == j) {
        if (s <= 0.0) throw numeric_error("cholesky: matrix is not positive definite");
        l(i, i) = std::sqrt(s);
      } else {
        l(i, j) = s / l(j, j);
      }
    }
  }
  return l;
}

// Generalized symmetric eigenvalues A x = lambda B x with B positive
// definite: reduce with B = L L^T and run Jacobi on L^{-1} A L^{-T}.
inline std::vector<double> generalized_eigenvalues_dense(const DenseMatrix& a,
                                                         const DenseMatrix& b) {
  int n = a.rows();
  if (b.rows() != n || a.cols() != n || b.cols() != n)
    throw numeric_error("generalized eigensolve: dimension mismatch");
  DenseMatrix l = cholesky_lower(b);
  // Y = L^{-1} A  (forward substitution column by column)
  DenseMatrix y(n, n);
  for (int col = 0; col < n; ++col) {
    for (int i = 0; i < n; ++i) {
      double s = a(i, col);
      for (int k = 0; k < i; ++k) s -= l(i, k) * y(k, col);
      y(i, col) = s / l(i, i);
    }
  }
  // C = Y L^{-T}: solve C L^T = Y, i.e. rows of C by forward substitution
  DenseMatrix c(n, n);
  for (int row = 0; row < n; ++row) {
    for (int j = 0; j < n; ++j) {
      double s = y(row, j);
      for (int k = 0; k < j; ++k) s -= c(row, k) * l(j, k);
      c(row, j) = s / l(j, j);
    }
  }
  return jacobi_eigenvalues(c);
}

}  // namespace specgraph
