#include "mostow/spd_manifold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mostow {

double metric_at(const PdMatrix& p, const Hermitian& u, const Hermitian& v) {
  require_same_dim(p.dim(), u.dim(), "metric_at");
  require_same_dim(p.dim(), v.dim(), "metric_at");
  const ComplexMatrix pinv = inverse_pd(p).matrix();
  return (pinv * u.matrix() * pinv * v.matrix()).trace().real();
}

PdMatrix act(const ComplexMatrix& x, const PdMatrix& p) {
  require_finite_square(x, "act");
  require_same_dim(x.rows(), p.dim(), "act");
  inverse(x);  // singularity check
  return PdMatrix::assume_positive(Hermitian::part_of(x.adjoint() * p.matrix() * x));
}

PdMatrix point_symmetry(const PdMatrix& p, const PdMatrix& x) {
  require_same_dim(p.dim(), x.dim(), "point_symmetry");
  return PdMatrix::assume_positive(
      Hermitian::part_of(p.matrix() * inverse_pd(x).matrix() * p.matrix()));
}

namespace {

ComplexMatrix congruence(const ComplexMatrix& s, const ComplexMatrix& m) { return s * m * s; }

}  // namespace

Hermitian relative_log(const PdMatrix& p, const PdMatrix& q) {
  require_same_dim(p.dim(), q.dim(), "relative_log");
  const ComplexMatrix s = inv_sqrt_pd(p).matrix();
  return log_pd(Hermitian::part_of(congruence(s, q.matrix())));
}

Geodesic::Geodesic(const PdMatrix& start, const PdMatrix& end)
    : start_(start), end_(end), half_(sqrt_pd(start)), velocity_(relative_log(start, end)) {}

PdMatrix Geodesic::operator()(double t) const {
  if (t == 0.0) return start_;
  if (t == 1.0) return end_;
  return PdMatrix::assume_positive(Hermitian::part_of(
      congruence(half_.matrix(), exp_h(t * velocity_).matrix())));
}

PdMatrix geodesic_eval(const PdMatrix& p, const PdMatrix& q, double t) {
  return Geodesic(p, q)(t);
}

double dist(const PdMatrix& p, const PdMatrix& q) {
  require_same_dim(p.dim(), q.dim(), "dist");
  if (p.matrix() == q.matrix()) return 0.0;
  const ComplexMatrix s = inv_sqrt_pd(p).matrix();
  const auto eig = eig_hermitian(Hermitian::part_of(congruence(s, q.matrix())));
  double sum = 0.0;
  for (Index i = 0; i < eig.values.size(); ++i) {
    const double l = std::log(eig.values(i));
    sum += l * l;
  }
  return std::sqrt(sum);
}

double sectional_curvature_at_identity(const Hermitian& x, const Hermitian& y) {
  require_same_dim(x.dim(), y.dim(), "sectional_curvature_at_identity");
  const double gxx = hs_inner_real(x, x);
  const double gyy = hs_inner_real(y, y);
  const double gxy = hs_inner_real(x, y);
  const double denom = gxx * gyy - gxy * gxy;
  if (!(denom > kLinearIndependenceTol * gxx * gyy) || denom <= 0.0) {
    throw DegeneratePlaneError("sectional curvature: X and Y are (nearly) linearly dependent");
  }
  const ComplexMatrix xy = commutator(x.matrix(), y.matrix());
  const double numer = (commutator(xy, x.matrix()) * y.matrix()).trace().real();
  return numer / denom;
}

AlKashiResult al_kashi_defect(const PdMatrix& a, const PdMatrix& b, const PdMatrix& c) {
  const double side_c = dist(a, b);
  const Hermitian to_a = relative_log(c, a);
  const Hermitian to_b = relative_log(c, b);
  const double side_b = to_a.norm();
  const double side_a = to_b.norm();

  AlKashiResult r{side_c * side_c - side_a * side_a - side_b * side_b, false, 0.0};
  if (side_a < kVertexSeparation || side_b < kVertexSeparation) return r;

  const double cosine = std::clamp(hs_inner_real(to_a, to_b) / (side_a * side_b), -1.0, 1.0);
  r.defect += 2.0 * side_a * side_b * cosine;
  r.angle_defined = true;
  r.angle = std::acos(cosine);
  return r;
}

std::vector<double> geodesic_gap_profile(const Geodesic& g1, const Geodesic& g2, int samples) {
  require_same_dim(g1.start().dim(), g2.start().dim(), "geodesic_gap_profile");
  if (samples < 3) throw ValidationError("geodesic_gap_profile: samples must be >= 3");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double t = static_cast<double>(i) / (samples - 1);
    out.push_back(dist(g1(t), g2(t)));
  }
  return out;
}

double min_second_difference(const std::vector<double>& profile) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < profile.size(); ++i) {
    m = std::min(m, profile[i - 1] - 2.0 * profile[i] + profile[i + 1]);
  }
  return m;
}

}  // namespace mostow
