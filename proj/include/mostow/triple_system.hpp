#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "mostow/linalg.hpp"

namespace mostow {

/// Real-linear subspace of n x n Hermitian matrices with an orthonormal basis
/// for the real inner product Re Tr(A* B). Immutable; copies share the lazily
/// computed triple-closure defect.
class SubspaceBasis {
 public:
  /// Validates orthonormality to 1e-10.
  SubspaceBasis(Index n, std::vector<Hermitian> basis);

  static SubspaceBasis zero(Index n);
  /// E_ii, (E_ij + E_ji)/sqrt2, i(E_ij - E_ji)/sqrt2 for i < j.
  static SubspaceBasis full(Index n);
  static SubspaceBasis diagonal(Index n);
  static SubspaceBasis traceless(Index n);
  static SubspaceBasis real_symmetric(Index n);

  Index n() const noexcept { return n_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<Hermitian>& basis() const noexcept { return basis_; }

  /// Coordinates <b_i, X>.
  RealVector coordinates(const Hermitian& x) const;
  Hermitian combine(const RealVector& coords) const;
  Hermitian project(const Hermitian& x) const;
  /// ||X - proj X||_F
  double distance_to(const Hermitian& x) const;

  /// Cached triple_closure_defect(*this).
  double closure_defect() const;

 private:
  struct Cache {
    std::once_flag once;
    double defect = 0.0;
  };
  Index n_;
  std::vector<Hermitian> basis_;
  Eigen::MatrixXd coords_;  // column i = real vectorization of basis_[i]
  std::shared_ptr<Cache> cache_;
};

/// Real vectorization [Re entries; Im entries]; Euclidean product = Re Tr(A*B).
RealVector real_vectorize(const ComplexMatrix& m);
ComplexMatrix real_devectorize(const RealVector& v, Index n);

/// Modified Gram-Schmidt with one reorthogonalization pass; vectors whose
/// residual falls below 1e-10 (relative to their norm, floor 1) are dropped.
/// Throws EmptySubspace if nothing survives.
SubspaceBasis orthonormalize(const std::vector<Hermitian>& spanning);

/// max over X in {b_i, b_i + b_j}, Y in {b_k} of ||proj_perp [X,[X,Y]]||_F.
double triple_closure_defect(const SubspaceBasis& e);

inline constexpr double kTripleClosureTol = 1e-8;

/// Throws ValidationError if E is not a Lie triple system.
void require_triple_closed(const SubspaceBasis& e);

/// Orthogonal complement within the n^2-dimensional Hermitian space.
SubspaceBasis complement(const SubspaceBasis& e);

Hermitian project_vector(const SubspaceBasis& e, const Hermitian& x);

struct FlowResult {
  Hermitian value;        // X(1)
  double max_drift;       // max ||proj_F X(t)|| over the accepted steps
  double error_estimate;  // step-doubling estimate
  int steps;
};

inline constexpr double kOdeTol = 1e-8;

/// Integrates X' = ad X coth(ad X / 2)(Y), X(0) = log f, to t = 1 with RK4,
/// starting at 64 steps and doubling until the step-doubling estimate is
/// below ode_tol. X(1) = log(exp(Y) f exp(Y)).
/// Throws NotInSubspace if Y or log f leave E, NumericalFailure if the step
/// count exceeds 2^16.
FlowResult efe_flow(const SubspaceBasis& e, const Hermitian& y, const PdMatrix& f,
                    double ode_tol = kOdeTol);

}  // namespace mostow
