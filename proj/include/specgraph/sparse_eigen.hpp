// sparse_eigen.hpp — smallest generalized eigenvalue of a sparse symmetric
// pencil (A, B) by shift-invert Lanczos: factor A - sigma*B once, run Lanczos
// on x -> (A - sigma*B)^{-1} B x in the B-inner product, restart with the
// Ritz vector until the relative residual meets the tolerance. The start
// vector is deterministic (all ones, B-normalized). The factorization is
// delegated to Eigen's SimplicialLDLT.
#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "specgraph/dense_eigen.hpp"
#include "specgraph/graph.hpp"

namespace specgraph {

using SpMat = Eigen::SparseMatrix<double>;
using DVec = Eigen::VectorXd;

struct SpectralResult {
  double lambda0 = 0.0;
  double residual = 0.0;   // ||A x - lambda B x|| / ||B x||
  int dimension = 0;       // matrix size
  int iterations = 0;      // operator applications
  double shift = 0.0;
  double h_target = 0.0;            // mesh size when FEM-derived
  int truncation_depth = 0;
  std::vector<int> history_depths;         // filled by lambda0_sequence
  std::vector<double> monotone_history;
};

namespace detail {

inline double b_dot(const SpMat& b, const DVec& x, const DVec& y) { return x.dot(b * y); }

}  // namespace detail

inline SpectralResult smallest_eigenvalue(const SpMat& a, const SpMat& b, double tol = 1e-8,
                                          int max_iter = 10000) {
  const int n = static_cast<int>(a.rows());
  if (n == 0 || a.cols() != n || b.rows() != n || b.cols() != n)
    throw numeric_error("smallest_eigenvalue: dimension mismatch");
  if (tol <= 0.0) throw numeric_error("smallest_eigenvalue: tolerance must be positive");

  // shift selection: 0 for a definite A, else just below zero
  double sigma = 0.0;
  Eigen::SimplicialLDLT<SpMat> factor;
  factor.compute(a);
  bool ok = (factor.info() == Eigen::Success);
  if (ok) {
    double dmin = factor.vectorD().minCoeff();
    double dmax = factor.vectorD().maxCoeff();
    if (!(dmin > 1e-12 * std::max(1.0, dmax))) ok = false;
  }
  if (!ok) {
    sigma = -tol;
    SpMat shifted = a - sigma * b;
    factor.compute(shifted);
    if (factor.info() != Eigen::Success)
      throw numeric_error("smallest_eigenvalue: sparse factorization failed");
  }

  DVec v = DVec::Ones(n);
  double vnorm = std::sqrt(detail::b_dot(b, v, v));
  if (!(vnorm > 0.0)) throw numeric_error("smallest_eigenvalue: B is not positive");
  v /= vnorm;

  const int block = std::min(n, 60);
  int used = 0;
  double lambda = 0.0, residual = std::numeric_limits<double>::infinity();
  DVec ritz = v;
  while (used < max_iter) {
    // one Lanczos sweep of at most `block` steps starting from ritz
    std::vector<DVec> basis;
    std::vector<DVec> b_basis;
    std::vector<double> alpha, beta;
    DVec w = ritz;
    double wn = std::sqrt(detail::b_dot(b, w, w));
    w /= wn;
    basis.push_back(w);
    b_basis.push_back(b * w);
    for (int j = 0; j < block && used < max_iter; ++j, ++used) {
      DVec z = factor.solve(b_basis[static_cast<size_t>(j)]);
      double aj = z.dot(b_basis[static_cast<size_t>(j)]);
      alpha.push_back(aj);
      z -= aj * basis[static_cast<size_t>(j)];
      if (j > 0) z -= beta[static_cast<size_t>(j) - 1] * basis[static_cast<size_t>(j) - 1];
      // full reorthogonalization against the block
      for (size_t i = 0; i < basis.size(); ++i)
        z -= z.dot(b_basis[i]) * basis[i];
      double bj = std::sqrt(std::max(0.0, detail::b_dot(b, z, z)));
      if (bj < 1e-14) break;  // invariant subspace
      beta.push_back(bj);
      z /= bj;
      basis.push_back(z);
      b_basis.push_back(b * z);
    }
    int m = static_cast<int>(alpha.size());
    if (m == 0) break;
    DenseMatrix t(m, m, 0.0);
    for (int i = 0; i < m; ++i) {
      t(i, i) = alpha[static_cast<size_t>(i)];
      if (i + 1 < m) {
        t(i, i + 1) = beta[static_cast<size_t>(i)];
        t(i + 1, i) = beta[static_cast<size_t>(i)];
      }
    }
    std::vector<double> theta;
    DenseMatrix s;
    jacobi_eigen_system(t, theta, s);
    int top = m - 1;  // largest theta -> eigenvalue closest to sigma
    DVec x = DVec::Zero(n);
    for (int i = 0; i < m; ++i) x += s(i, top) * basis[static_cast<size_t>(i)];
    lambda = sigma + 1.0 / theta[static_cast<size_t>(top)];
    DVec bx = b * x;
    residual = (a * x - lambda * bx).norm() / bx.norm();
    ritz = x;
    if (residual <= tol) break;
  }
  if (residual > tol)
    throw numeric_error("smallest_eigenvalue: no convergence after " + std::to_string(used) +
                        " iterations (residual " + std::to_string(residual) + ")");
  SpectralResult r;
  r.lambda0 = lambda;
  r.residual = residual;
  r.dimension = n;
  r.iterations = used;
  r.shift = sigma;
  return r;
}

// Dense full-spectrum fallback for small systems; the test oracle.
inline std::vector<double> dense_spectrum(const SpMat& a, const SpMat& b) {
  const int n = static_cast<int>(a.rows());
  if (n > 2000) throw resource_error("dense_spectrum: system too large for the dense path");
  DenseMatrix ad(n, n, 0.0), bd(n, n, 0.0);
  for (int k = 0; k < a.outerSize(); ++k)
    for (SpMat::InnerIterator it(a, k); it; ++it)
      ad(static_cast<int>(it.row()), static_cast<int>(it.col())) = it.value();
  for (int k = 0; k < b.outerSize(); ++k)
    for (SpMat::InnerIterator it(b, k); it; ++it)
      bd(static_cast<int>(it.row()), static_cast<int>(it.col())) = it.value();
  return generalized_eigenvalues_dense(ad, bd);
}

}  // namespace specgraph
