#include "mostow/ad_calculus.hpp"

#include <cmath>

namespace mostow {

double AdFunction::operator()(double gap) const {
  return std::abs(gap) < kGapThreshold ? at_zero : f(gap);
}

AdFunction AdFunction::identity() { return {"identity", [](double t) { return t; }, 0.0}; }

AdFunction AdFunction::tau() {
  return {"sinh(t/2)/(t/2)", [](double t) { return std::sinh(t / 2) / (t / 2); }, 1.0};
}

AdFunction AdFunction::tau_inverse() {
  return {"(t/2)/sinh(t/2)", [](double t) { return (t / 2) / std::sinh(t / 2); }, 1.0};
}

AdFunction AdFunction::t_coth_half() {
  return {"t coth(t/2)", [](double t) { return t / std::tanh(t / 2); }, 2.0};
}

AdFunction AdFunction::sinh() {
  return {"sinh", [](double t) { return std::sinh(t); }, 0.0};
}

Eigen::MatrixXd ad_multipliers(const EigenDecomposition& eig, const AdFunction& f) {
  const Index n = eig.values.size();
  Eigen::MatrixXd m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = f(eig.values(i) - eig.values(j));
  return m;
}

ComplexMatrix apply_ad_function(const EigenDecomposition& eig, const AdFunction& f,
                                const ComplexMatrix& y) {
  require_same_dim(eig.values.size(), y.rows(), "apply_ad_function");
  require_same_dim(y.rows(), y.cols(), "apply_ad_function");
  const auto& q = eig.basis.matrix();
  ComplexMatrix in_basis = q.adjoint() * y * q;
  in_basis = in_basis.cwiseProduct(ad_multipliers(eig, f).cast<Complex>());
  return q * in_basis * q.adjoint();
}

ComplexMatrix apply_ad_function(const Hermitian& x, const AdFunction& f, const ComplexMatrix& y) {
  return apply_ad_function(eig_hermitian(x), f, y);
}

namespace {

ComplexMatrix half_exp(const EigenDecomposition& eig, double sign) {
  return spectral_apply(eig, [sign](double l) { return std::exp(sign * l / 2); }).matrix();
}

}  // namespace

ComplexMatrix dexp(const Hermitian& x, const ComplexMatrix& y) {
  require_same_dim(x.dim(), y.rows(), "dexp");
  const auto eig = eig_hermitian(x);
  const ComplexMatrix h = half_exp(eig, 1.0);
  return h * apply_ad_function(eig, AdFunction::tau(), y) * h;
}

ComplexMatrix dexp(const Hermitian& x, const Hermitian& y) { return dexp(x, y.matrix()); }

ComplexMatrix dexp_inv(const Hermitian& x, const ComplexMatrix& z) {
  require_same_dim(x.dim(), z.rows(), "dexp_inv");
  const auto eig = eig_hermitian(x);
  const ComplexMatrix h = half_exp(eig, -1.0);
  return apply_ad_function(eig, AdFunction::tau_inverse(), h * z * h);
}

Hermitian gamma_coth(const Hermitian& x, const Hermitian& y) {
  require_same_dim(x.dim(), y.dim(), "gamma_coth");
  return Hermitian::part_of(apply_ad_function(x, AdFunction::t_coth_half(), y.matrix()));
}

}  // namespace mostow
