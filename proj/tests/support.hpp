#pragma once

// Reference computations for the tests. Everything here is independent of
// the library's own spectral calculus: Eigen's Pade/Schur matrix functions,
// SVD, and plain finite differences.

#include <algorithm>
#include <cmath>
#include <initializer_list>

#include <unsupported/Eigen/MatrixFunctions>

#include "mostow/linalg.hpp"
#include "mostow/triple_system.hpp"

namespace support {

using mostow::Complex;
using mostow::ComplexMatrix;
using mostow::Index;

inline ComplexMatrix mat(std::initializer_list<std::initializer_list<Complex>> rows) {
  const Index n = static_cast<Index>(rows.size());
  ComplexMatrix m(n, static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (const auto& r : rows) {
    Index j = 0;
    for (const auto& v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline ComplexMatrix diag(std::initializer_list<double> d) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Index>(d.size()), static_cast<Index>(d.size()));
  Index i = 0;
  for (double v : d) {
    m(i, i) = v;
    ++i;
  }
  return m;
}

inline ComplexMatrix expm(const ComplexMatrix& m) { return m.exp(); }
inline ComplexMatrix logm(const ComplexMatrix& m) { return m.log(); }
inline ComplexMatrix sqrtm(const ComplexMatrix& m) { return m.sqrt(); }

inline double rel_err(const ComplexMatrix& got, const ComplexMatrix& want) {
  return (got - want).norm() / std::max(1.0, want.norm());
}

/// Central difference (exp(X + hY) - exp(X - hY)) / 2h.
inline ComplexMatrix fd_dexp(const ComplexMatrix& x, const ComplexMatrix& y, double h = 1e-5) {
  return (expm(x + h * y) - expm(x - h * y)) / (2.0 * h);
}

/// Unitary polar factor U V* of x = U S V*.
inline ComplexMatrix polar_unitary(const ComplexMatrix& x) {
  Eigen::JacobiSVD<ComplexMatrix> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

/// sqrt(sum log^2 mu) over the eigenvalues of L^-1 q L^-*, p = L L*, using
/// Eigen's Cholesky and eigensolver.
inline double dist_oracle(const ComplexMatrix& p, const ComplexMatrix& q) {
  const ComplexMatrix li = ComplexMatrix(p.llt().matrixL()).inverse();
  const ComplexMatrix m = li * q * li.adjoint();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es((m + m.adjoint()) / 2.0);
  return std::sqrt(es.eigenvalues().array().log().square().sum());
}

}  // namespace support
