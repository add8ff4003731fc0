#include "mostow/orbits.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "mostow/ad_calculus.hpp"

namespace mostow {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kUnimodularTol = 1e-8;
constexpr double kMembershipTol = 1e-8;

void require_skew(const ComplexMatrix& m, const char* what) {
  require_finite_square(m, what);
  if ((m + m.adjoint()).norm() > 1e-10 * std::max(1.0, m.norm())) {
    throw ValidationError(std::string(what) + ": matrix is not skew-Hermitian");
  }
}

// Hermitian basis element of a pair (j, k) in the eigenbasis q.
Hermitian pair_element(const ComplexMatrix& q, Index j, Index k, bool imaginary) {
  const Index n = q.rows();
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  const double r = 1.0 / std::sqrt(2.0);
  m(j, k) = imaginary ? Complex(0, r) : Complex(r, 0);
  m(k, j) = std::conj(m(j, k));
  return Hermitian::part_of(q * m * q.adjoint());
}

// Splits su(n) along the eigenvalue clusters of the skew-Hermitian `w`.
std::pair<SubspaceBasis, SubspaceBasis> split_along(const ComplexMatrix& w) {
  const Index n = w.rows();
  const Hermitian h = to_hermitian(w);
  const auto eig = eig_hermitian(h);
  const ComplexMatrix& q = eig.basis.matrix();

  const double gap_tol = kEigenGapTol * std::max(1.0, h.norm());
  std::vector<int> cluster(static_cast<std::size_t>(n), 0);
  for (Index i = 1; i < n; ++i) {
    const bool split = eig.values(i) - eig.values(i - 1) > gap_tol;
    cluster[static_cast<std::size_t>(i)] = cluster[static_cast<std::size_t>(i - 1)] + (split ? 1 : 0);
  }
  const auto same = [&](Index j, Index k) {
    return cluster[static_cast<std::size_t>(j)] == cluster[static_cast<std::size_t>(k)];
  };

  // i k: traceless block-diagonal Hermitian. Start from the identity so that
  // Gram-Schmidt removes the trace direction, then drop it.
  std::vector<Hermitian> span{(1.0 / std::sqrt(static_cast<double>(n))) * Hermitian::identity(n)};
  for (Index j = 0; j < n; ++j) {
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    m(j, j) = 1.0;
    span.push_back(Hermitian::part_of(q * m * q.adjoint()));
  }
  std::vector<Hermitian> moving;
  for (Index j = 0; j < n; ++j) {
    for (Index k = j + 1; k < n; ++k) {
      auto& dst = same(j, k) ? span : moving;
      dst.push_back(pair_element(q, j, k, false));
      dst.push_back(pair_element(q, j, k, true));
    }
  }
  auto with_identity = orthonormalize(span);
  std::vector<Hermitian> iso(with_identity.basis().begin() + 1, with_identity.basis().end());
  return {SubspaceBasis(n, std::move(iso)), SubspaceBasis(n, std::move(moving))};
}

ComplexMatrix traceless_part(const ComplexMatrix& m) {
  const Index n = m.rows();
  return m - (m.trace() / static_cast<double>(n)) * ComplexMatrix::Identity(n, n);
}

void require_unimodular(const ComplexMatrix& g) {
  require_finite_square(g, "orbit retraction");
  const Complex det = g.determinant();
  if (std::abs(det - 1.0) > kUnimodularTol) {
    throw ValidationError("orbit retraction: det g = (" + std::to_string(det.real()) + ", " +
                          std::to_string(det.imag()) + "), expected 1");
  }
}

// Shared Mostow step: g = u exp(i b) exp(i c); returns (u, b) with b in m.
std::pair<Unitary, ComplexMatrix> compact_and_moving(const ComplexMatrix& g,
                                                     const OrbitFrame& frame,
                                                     const ProjectionOptions& opts) {
  require_same_dim(g.rows(), frame.n, "orbit retraction");
  require_unimodular(g);
  const auto factors = group_decompose(g, frame.isotropy, opts);
  const Hermitian b_herm = frame.moving.project(log_pd(factors.f));
  return {factors.k, to_skew(b_herm)};
}

}  // namespace

ComplexMatrix to_skew(const Hermitian& h) { return -kI * h.matrix(); }

Hermitian to_hermitian(const ComplexMatrix& skew) { return Hermitian::part_of(kI * skew); }

OrbitFrame isotropy_split(const ComplexMatrix& x) {
  require_skew(x, "isotropy_split");
  if (std::abs(x.trace()) > 1e-10 * std::max(1.0, x.norm())) {
    throw ValidationError("isotropy_split: base point is not traceless");
  }
  auto [iso, moving] = split_along(x);
  return OrbitFrame{x.rows(), x, std::move(iso), std::move(moving), std::nullopt};
}

OrbitFrame affine_frame(const ComplexMatrix& derivation) {
  require_skew(derivation, "affine_frame");
  const Index n = derivation.rows();
  auto [iso, moving] = split_along(traceless_part(derivation));
  return OrbitFrame{n, ComplexMatrix::Zero(n, n), std::move(iso), std::move(moving), derivation};
}

ComplexMatrix adjoint_action(const ComplexMatrix& g, const ComplexMatrix& x) {
  return g * x * inverse(g);
}

ComplexMatrix affine_action(const ComplexMatrix& g, const ComplexMatrix& y,
                            const ComplexMatrix& derivation) {
  const ComplexMatrix g_inv = inverse(g);
  return g * (y + derivation) * g_inv - derivation;
}

ComplexMatrix tangent_to_orbit(const OrbitFrame& frame, const ComplexMatrix& z,
                               const ComplexMatrix& a) {
  const Hermitian ia = to_hermitian(a);
  const ComplexMatrix h = exp_h(ia).matrix();
  const ComplexMatrix h_inv = exp_h(-ia).matrix();
  if (frame.derivation) {
    const auto& d = *frame.derivation;
    return h * (z + d) * h_inv - d;
  }
  return h * z * h_inv;
}

RetractionResult orbit_retract(const ComplexMatrix& g, const OrbitFrame& frame,
                               const ProjectionOptions& opts) {
  auto [u, b] = compact_and_moving(g, frame, opts);
  const ComplexMatrix& um = u.matrix();
  return RetractionResult{um * frame.x * um.adjoint(), um * b * um.adjoint(), u};
}

RetractionResult affine_orbit_retract(const ComplexMatrix& g, const OrbitFrame& frame,
                                      const ProjectionOptions& opts) {
  if (!frame.derivation) throw ValidationError("affine_orbit_retract: frame has no derivation");
  auto [u, b] = compact_and_moving(g, frame, opts);
  const ComplexMatrix& um = u.matrix();
  const ComplexMatrix& d = *frame.derivation;
  return RetractionResult{um * d * um.adjoint() - d, um * b * um.adjoint(), u};
}

double recomposition_residual(const ComplexMatrix& g, const OrbitFrame& frame,
                              const RetractionResult& r) {
  const ComplexMatrix y = frame.derivation ? affine_action(g, frame.x, *frame.derivation)
                                           : adjoint_action(g, frame.x);
  return (y - tangent_to_orbit(frame, r.z, r.a)).norm() / std::max(1.0, y.norm());
}

double separation_defect(const OrbitFrame& frame, const ComplexMatrix& z, const ComplexMatrix& a) {
  require_same_dim(z.rows(), frame.n, "separation_defect");
  require_same_dim(a.rows(), frame.n, "separation_defect");
  require_skew(a, "separation_defect");
  const ComplexMatrix w = frame.derivation ? ComplexMatrix(z + *frame.derivation) : z;
  const Hermitian ia = to_hermitian(a);

  const auto [iso_w, moving_w] = split_along(traceless_part(w));
  const double off = iso_w.project(ia).norm();
  if (off > kMembershipTol) {
    throw NotInSubspace("separation_defect: a has a component " + std::to_string(off) +
                        " along the isotropy algebra of z");
  }
  return apply_ad_function(ia, AdFunction::sinh(), w).norm();
}

ComplexMatrix moment_map_value(const RetractionResult& r, const ComplexMatrix& y, double kappa) {
  if (!(kappa > 0.0)) throw ValidationError("moment_map_value: kappa must be positive");
  require_same_dim(r.z.rows(), y.rows(), "moment_map_value");
  return -kI * commutator(r.z / kappa, y);
}

}  // namespace mostow
