#pragma once

#include <functional>
#include <string>

#include "mostow/linalg.hpp"

namespace mostow {

/// Scalar function applied to ad(X) through its spectrum {l_i - l_j}.
/// `at_zero` is the removable-singularity value used when a gap vanishes.
struct AdFunction {
  std::string name;
  std::function<double(double)> f;
  double at_zero;

  double operator()(double gap) const;

  static AdFunction identity();
  /// sinh(t/2)/(t/2): the factor tau in dexp.
  static AdFunction tau();
  /// (t/2)/sinh(t/2)
  static AdFunction tau_inverse();
  /// t coth(t/2)
  static AdFunction t_coth_half();
  static AdFunction sinh();
};

/// Gaps below this are treated as exact zeros.
inline constexpr double kGapThreshold = 1e-8;

/// Entrywise multiplier F_ij = f(l_i - l_j) in the eigenbasis of X.
Eigen::MatrixXd ad_multipliers(const EigenDecomposition& eig, const AdFunction& f);

/// f(ad X)(Y) = Q (F o Q*YQ) Q*.
ComplexMatrix apply_ad_function(const Hermitian& x, const AdFunction& f, const ComplexMatrix& y);
ComplexMatrix apply_ad_function(const EigenDecomposition& eig, const AdFunction& f,
                                const ComplexMatrix& y);

/// Directional derivative of exp at X along Y: exp(X/2) tau_X(Y) exp(X/2).
ComplexMatrix dexp(const Hermitian& x, const Hermitian& y);
ComplexMatrix dexp(const Hermitian& x, const ComplexMatrix& y);
/// Inverse of dexp(X, .): tau_X^{-1}(exp(-X/2) Z exp(-X/2)).
ComplexMatrix dexp_inv(const Hermitian& x, const ComplexMatrix& z);

/// (dexp_X)^{-1}(Y exp X + exp X Y) = ad X coth(ad X / 2)(Y).
Hermitian gamma_coth(const Hermitian& x, const Hermitian& y);

}  // namespace mostow
