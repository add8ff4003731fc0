#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

#include "mostow/errors.hpp"

namespace mostow {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Validation thresholds shared by the value types and the eigensolver.
struct Tolerances {
  double hermiticity = 1e-10;  // relative, ||M - M*||_F <= tol * ||M||_F
  double pd = 1e-12;           // smallest admissible eigenvalue
  double unitarity = 1e-10;    // ||M*M - I||_F
  double eig = 1e-12;          // relative reconstruction residual
  int max_sweeps = 100;
};

/// Throws ValidationError on NaN/Inf entries or a non-square shape.
void require_finite_square(const ComplexMatrix& m, const char* what);

/// Self-adjoint matrix. Construction checks near-Hermiticity and then stores
/// the exact Hermitian part (M + M*)/2.
class Hermitian {
 public:
  explicit Hermitian(const ComplexMatrix& m, double tol = Tolerances{}.hermiticity);

  /// Hermitian part of an arbitrary finite square matrix, without a
  /// closeness check. For internal results that are Hermitian in exact
  /// arithmetic.
  static Hermitian part_of(const ComplexMatrix& m);
  static Hermitian zero(Index n);
  static Hermitian identity(Index n);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }
  double norm() const { return m_.norm(); }

  Hermitian operator-() const;
  friend Hermitian operator+(const Hermitian& a, const Hermitian& b);
  friend Hermitian operator-(const Hermitian& a, const Hermitian& b);
  friend Hermitian operator*(double s, const Hermitian& a);

 private:
  struct Unchecked {};
  Hermitian(Unchecked, ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

/// Positive-definite Hermitian matrix: a point of the manifold.
class PdMatrix {
 public:
  explicit PdMatrix(const Hermitian& h, const Tolerances& tol = {});
  explicit PdMatrix(const ComplexMatrix& m, const Tolerances& tol = {})
      : PdMatrix(Hermitian(m, tol.hermiticity), tol) {}

  static PdMatrix identity(Index n);
  /// No spectral check; for results positive by construction (exp, sqrt,
  /// congruences of known points).
  static PdMatrix assume_positive(const Hermitian& h) { return PdMatrix(Unchecked{}, h); }

  const Hermitian& hermitian() const noexcept { return h_; }
  const ComplexMatrix& matrix() const noexcept { return h_.matrix(); }
  Index dim() const noexcept { return h_.dim(); }

 private:
  struct Unchecked {};
  PdMatrix(Unchecked, const Hermitian& h) : h_(h) {}
  Hermitian h_;
};

class Unitary {
 public:
  explicit Unitary(const ComplexMatrix& m, double tol = Tolerances{}.unitarity);
  static Unitary identity(Index n);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }

 private:
  ComplexMatrix m_;
};

/// H = Q diag(values) Q*, values ascending, the largest-magnitude entry of
/// each column of Q real and positive.
struct EigenDecomposition {
  RealVector values;
  Unitary basis;

  ComplexMatrix reconstruct() const;
};

/// Cyclic complex Jacobi. Throws NumericalFailure if the off-diagonal mass
/// has not dropped below tol.eig * ||H||_F after tol.max_sweeps sweeps.
EigenDecomposition eig_hermitian(const Hermitian& h, const Tolerances& tol = {});

/// Q diag(f(values)) Q*.
Hermitian spectral_apply(const EigenDecomposition& eig,
                         const std::function<double(double)>& f);
Hermitian matrix_function(const Hermitian& h, const std::function<double(double)>& f);

PdMatrix exp_h(const Hermitian& h);
/// exp(iH), unitary for Hermitian H.
Unitary exp_i(const Hermitian& h);

/// log, sqrt and inverse sqrt require a positive spectrum; the Hermitian
/// overloads throw DomainError otherwise.
Hermitian log_pd(const PdMatrix& p);
Hermitian log_pd(const Hermitian& h);
PdMatrix sqrt_pd(const PdMatrix& p);
PdMatrix sqrt_pd(const Hermitian& h);
PdMatrix inv_sqrt_pd(const PdMatrix& p);
PdMatrix inverse_pd(const PdMatrix& p);
/// p^t for real t.
PdMatrix pow_pd(const PdMatrix& p, double t);

/// <A, B> = Tr(A* B). Throws ShapeError on dimension mismatch.
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);
/// Re Tr(A* B); equals Tr(AB) for Hermitian arguments.
double hs_inner_real(const Hermitian& a, const Hermitian& b);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Throws SingularError when x is not numerically invertible.
ComplexMatrix inverse(const ComplexMatrix& x);

/// Largest singular value.
double spectral_norm(const ComplexMatrix& m);

void require_same_dim(Index a, Index b, const char* what);

}  // namespace mostow
