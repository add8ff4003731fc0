#pragma once

#include <vector>

#include "mostow/linalg.hpp"

namespace mostow {

struct TangentVector {
  PdMatrix base;
  Hermitian dir;
};

/// Affine-invariant metric g_p(U, V) = Tr(p^-1 U p^-1 V).
double metric_at(const PdMatrix& p, const Hermitian& u, const Hermitian& v);

/// x . p = x* p x. Throws SingularError for singular x.
PdMatrix act(const ComplexMatrix& x, const PdMatrix& p);

/// Geodesic symmetry s_p(x) = p x^-1 p.
PdMatrix point_symmetry(const PdMatrix& p, const PdMatrix& x);

/// The geodesic t -> p^1/2 exp(t V) p^1/2 with V = log(p^-1/2 q p^-1/2).
class Geodesic {
 public:
  Geodesic(const PdMatrix& start, const PdMatrix& end);

  PdMatrix operator()(double t) const;
  const PdMatrix& start() const noexcept { return start_; }
  const PdMatrix& end() const noexcept { return end_; }
  const Hermitian& velocity() const noexcept { return velocity_; }
  /// Length of the segment [0, 1], equal to ||velocity||_F.
  double length() const { return velocity_.norm(); }

 private:
  PdMatrix start_;
  PdMatrix end_;
  PdMatrix half_;
  Hermitian velocity_;
};

PdMatrix geodesic_eval(const PdMatrix& p, const PdMatrix& q, double t);

/// log(p^-1/2 q p^-1/2): the geodesic velocity, translated to the identity.
Hermitian relative_log(const PdMatrix& p, const PdMatrix& q);

/// sqrt(sum log^2 mu_i) over the eigenvalues of p^-1/2 q p^-1/2.
double dist(const PdMatrix& p, const PdMatrix& q);

inline constexpr double kLinearIndependenceTol = 1e-10;

/// K(X, Y) = g([[X,Y],X], Y) / (g(X,X) g(Y,Y) - g(X,Y)^2) at the identity.
/// Throws DegeneratePlaneError when the denominator is below
/// kLinearIndependenceTol relative to g(X,X) g(Y,Y).
double sectional_curvature_at_identity(const Hermitian& x, const Hermitian& y);

inline constexpr double kVertexSeparation = 1e-10;

struct AlKashiResult {
  double defect;       // c^2 - a^2 - b^2 + 2ab cos(C)
  bool angle_defined;  // false when C coincides with A or B; cos term then zeroed
  double angle;        // radians, 0 when undefined
};

/// Law-of-cosines comparison for the triangle ABC with the angle taken at C.
AlKashiResult al_kashi_defect(const PdMatrix& a, const PdMatrix& b, const PdMatrix& c);

/// dist(g1(t_i), g2(t_i)) at t_i = i / (samples - 1). samples >= 3.
std::vector<double> geodesic_gap_profile(const Geodesic& g1, const Geodesic& g2, int samples);

/// Smallest second difference of a sampled profile.
double min_second_difference(const std::vector<double>& profile);

}  // namespace mostow
