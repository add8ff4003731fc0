#pragma once

#include <optional>

#include "mostow/linalg.hpp"
#include "mostow/mostow.hpp"
#include "mostow/triple_system.hpp"

namespace mostow {

/// Skew-Hermitian <-> Hermitian identification A <-> iA.
ComplexMatrix to_skew(const Hermitian& h);
Hermitian to_hermitian(const ComplexMatrix& skew);

/// Base point x of a compact orbit in su(n) with its isotropy split
/// su(n) = k_x + m_x. Both pieces are stored multiplied by i, as Hermitian
/// subspaces: `isotropy` = i k_x, `moving` = i m_x. For affine orbits the
/// split is taken from the derivation D and x = 0.
struct OrbitFrame {
  Index n;
  ComplexMatrix x;
  SubspaceBasis isotropy;
  SubspaceBasis moving;
  std::optional<ComplexMatrix> derivation;

  /// Point whose centralizer defines the split: D for affine frames, else x.
  const ComplexMatrix& center() const { return derivation ? *derivation : x; }
};

inline constexpr double kEigenGapTol = 1e-8;

/// k_x = ker ad(x) in su(n), read off the eigenvalue clusters of x; m_x its
/// orthogonal complement. Throws ValidationError unless x is traceless
/// skew-Hermitian.
OrbitFrame isotropy_split(const ComplexMatrix& x);

/// Frame for the affine orbit of 0 under g y g^-1 + g D g^-1 - D; the split
/// comes from the centralizer of D.
OrbitFrame affine_frame(const ComplexMatrix& derivation);

/// y = exp(i a) . z with z on the compact orbit, a in m_z, u the compact
/// Mostow factor of g.
struct RetractionResult {
  ComplexMatrix z;
  ComplexMatrix a;
  Unitary u;
};

/// Ad(g) x.
ComplexMatrix adjoint_action(const ComplexMatrix& g, const ComplexMatrix& x);
/// g D g^-1 - D + g y g^-1.
ComplexMatrix affine_action(const ComplexMatrix& g, const ComplexMatrix& y,
                            const ComplexMatrix& derivation);

/// Phi(z, a) = exp(i a) . z, using the affine action when the frame has a
/// derivation.
ComplexMatrix tangent_to_orbit(const OrbitFrame& frame, const ComplexMatrix& z,
                               const ComplexMatrix& a);

/// Retraction of Ad(g) x onto the compact orbit of x via g = u exp(i b) exp(i c),
/// b in m_x, c in k_x. Throws ValidationError unless |det g - 1| <= 1e-8;
/// propagates NonConvergence.
RetractionResult orbit_retract(const ComplexMatrix& g, const OrbitFrame& frame,
                               const ProjectionOptions& opts = {});

/// Same construction for g . 0 = g D g^-1 - D; z = u D u^-1 - D.
RetractionResult affine_orbit_retract(const ComplexMatrix& g, const OrbitFrame& frame,
                                      const ProjectionOptions& opts = {});

/// ||Ad(g) . base - Phi(z, a)|| / max(1, ||Ad(g) . base||), with the action
/// matching the frame.
double recomposition_residual(const ComplexMatrix& g, const OrbitFrame& frame,
                              const RetractionResult& r);

/// ||sinh(i ad a)(w)||_F with w = z (or z + D for affine frames): the
/// component of exp(i a) . z outside su(n). Throws NotInSubspace when a is
/// not in m_w to 1e-8.
double separation_defect(const OrbitFrame& frame, const ComplexMatrix& z, const ComplexMatrix& a);

/// mu_1(y) = -i [z / kappa, y] with z = pi(y) from the retraction.
ComplexMatrix moment_map_value(const RetractionResult& r, const ComplexMatrix& y,
                               double kappa = 1.0);

}  // namespace mostow
