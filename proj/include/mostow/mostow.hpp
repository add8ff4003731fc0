#pragma once

#include <cstdint>
#include <optional>

#include "mostow/linalg.hpp"
#include "mostow/triple_system.hpp"

namespace mostow {

struct ProjectionOptions {
  double tol = 1e-9;
  int max_iter = 500;
  /// Starting point in E; defaults to proj_E(log p).
  std::optional<Hermitian> initial;
};

/// Nearest point of exp E to p.
struct ProjectionResult {
  PdMatrix foot;          // exp(log_foot)
  Hermitian log_foot;     // in E
  double distance;        // dist(p, foot)
  int iterations;
  double grad_norm;       // chart gradient of dist(exp Y, p)^2 at Y = log_foot
  double orthogonality;   // ||proj_E log(foot^-1/2 p foot^-1/2)||_F
  bool converged;         // grad_norm <= tol
};

/// Phi(Y) = dist(exp Y, p)^2 for Y in E.
double projection_objective(const PdMatrix& p, const Hermitian& y);

/// Gradient of Phi restricted to E:
/// proj_E 2 tau_Y(exp(Y/2) p^-1/2 M^-1 log M p^-1/2 exp(Y/2)),
/// M = p^-1/2 exp(Y) p^-1/2.
Hermitian projection_gradient(const PdMatrix& p, const SubspaceBasis& e, const Hermitian& y);

/// Minimizes Phi over E in the flat chart Y -> exp Y. Steps are Newton steps
/// on the chart gradient (finite-difference Hessian) with Armijo backtracking
/// on Phi; where the Hessian is not positive definite the step follows the
/// geodesic of exp E from q = exp(Y) in the direction proj_E log(q^-1/2 p q^-1/2).
/// Near the minimum, where Phi no longer resolves the decrease, steps are
/// accepted on the gradient norm instead. Stops when the chart gradient norm
/// is <= tol. Non-convergence is reported through `converged`, not thrown.
/// Throws ValidationError when E is not triple-closed.
ProjectionResult project_to_exp_subspace(const PdMatrix& p, const SubspaceBasis& e,
                                         const ProjectionOptions& opts = {});

struct ContractionPair {
  double before;  // dist(p1, p2)
  double after;   // dist(pi(p1), pi(p2))
};

ContractionPair projection_contraction_check(const PdMatrix& p1, const PdMatrix& p2,
                                             const SubspaceBasis& e,
                                             const ProjectionOptions& opts = {});

struct MostowSplit {
  PdMatrix e;  // log e in E
  PdMatrix f;  // log f in F = E^perp
};

/// A = e f e with e = pi(A)^1/2, f = e^-1 A e^-1. Throws NonConvergence when
/// the projection does not converge.
MostowSplit mostow_split(const PdMatrix& a, const SubspaceBasis& e,
                         const ProjectionOptions& opts = {});

/// Reruns the split from a random starting point in E (seeded) and returns
/// the largest Frobenius deviation of the factors from `reference`.
double mostow_uniqueness_witness(const PdMatrix& a, const SubspaceBasis& e,
                                 const MostowSplit& reference, std::uint64_t seed,
                                 const ProjectionOptions& opts = {});

struct MostowFactors {
  Unitary k;
  PdMatrix f;  // log f in F
  PdMatrix e;  // log e in E

  ComplexMatrix recompose() const { return k.matrix() * f.matrix() * e.matrix(); }
};

/// x = k f e. Throws SingularError for singular x, NonConvergence from the
/// projection.
MostowFactors group_decompose(const ComplexMatrix& x, const SubspaceBasis& e,
                              const ProjectionOptions& opts = {});

struct FactorResiduals {
  double recomposition;  // ||k f e - x||_F / ||x||_F
  double unitarity;      // ||k* k - I||_F
  double e_membership;   // ||proj_F log e||_F
  double f_membership;   // ||proj_E log f||_F
};

FactorResiduals factor_residuals(const ComplexMatrix& x, const MostowFactors& m,
                                 const SubspaceBasis& e);

}  // namespace mostow
