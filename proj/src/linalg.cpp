#include "mostow/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace mostow {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Validation: return "ValidationError";
    case ErrorKind::Shape: return "ShapeError";
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::Singular: return "SingularError";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::DegeneratePlane: return "DegeneratePlaneError";
    case ErrorKind::EmptySubspace: return "EmptySubspace";
    case ErrorKind::NotInSubspace: return "NotInSubspace";
    case ErrorKind::Io: return "IoError";
  }
  return "Error";
}

void require_finite_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ShapeError(std::string(what) + ": expected a non-empty square matrix");
  }
  if (!m.allFinite()) throw ValidationError(std::string(what) + ": non-finite entry");
}

void require_same_dim(Index a, Index b, const char* what) {
  if (a != b) {
    throw ShapeError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                     " vs " + std::to_string(b) + ")");
  }
}

// --- Hermitian -------------------------------------------------------------

Hermitian::Hermitian(const ComplexMatrix& m, double tol) {
  require_finite_square(m, "Hermitian");
  const double scale = m.norm();
  const double skew = (m - m.adjoint()).norm();
  if (skew > tol * scale) {
    throw ValidationError("Hermitian: ||M - M*||_F = " + std::to_string(skew) +
                          " exceeds tolerance");
  }
  m_ = 0.5 * (m + m.adjoint());
}

Hermitian Hermitian::part_of(const ComplexMatrix& m) {
  require_finite_square(m, "Hermitian::part_of");
  return Hermitian(Unchecked{}, 0.5 * (m + m.adjoint()));
}

Hermitian Hermitian::zero(Index n) { return Hermitian(Unchecked{}, ComplexMatrix::Zero(n, n)); }

Hermitian Hermitian::identity(Index n) {
  return Hermitian(Unchecked{}, ComplexMatrix::Identity(n, n));
}

Hermitian Hermitian::operator-() const { return Hermitian(Unchecked{}, -m_); }

Hermitian operator+(const Hermitian& a, const Hermitian& b) {
  require_same_dim(a.dim(), b.dim(), "Hermitian +");
  return Hermitian(Hermitian::Unchecked{}, a.m_ + b.m_);
}

Hermitian operator-(const Hermitian& a, const Hermitian& b) {
  require_same_dim(a.dim(), b.dim(), "Hermitian -");
  return Hermitian(Hermitian::Unchecked{}, a.m_ - b.m_);
}

Hermitian operator*(double s, const Hermitian& a) { return Hermitian(Hermitian::Unchecked{}, s * a.m_); }

// --- PdMatrix / Unitary ----------------------------------------------------

PdMatrix::PdMatrix(const Hermitian& h, const Tolerances& tol) : h_(h) {
  const auto eig = eig_hermitian(h, tol);
  if (eig.values(0) <= tol.pd) {
    throw ValidationError("PdMatrix: smallest eigenvalue " + std::to_string(eig.values(0)) +
                          " is not positive");
  }
}

PdMatrix PdMatrix::identity(Index n) { return assume_positive(Hermitian::identity(n)); }

Unitary::Unitary(const ComplexMatrix& m, double tol) : m_(m) {
  require_finite_square(m, "Unitary");
  const Index n = m.rows();
  const double defect = (m.adjoint() * m - ComplexMatrix::Identity(n, n)).norm();
  if (defect > tol) {
    throw ValidationError("Unitary: ||M*M - I||_F = " + std::to_string(defect) +
                          " exceeds tolerance");
  }
}

Unitary Unitary::identity(Index n) { return Unitary(ComplexMatrix::Identity(n, n)); }

// --- Jacobi eigensolver ----------------------------------------------------

ComplexMatrix EigenDecomposition::reconstruct() const {
  const auto& q = basis.matrix();
  return q * values.cast<Complex>().asDiagonal() * q.adjoint();
}

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// One complex Jacobi rotation annihilating a(p,q). With a(p,q) = b e^{i phi}
// the rotation is V = diag(1, e^{-i phi}) G on rows/cols (p,q), G the real
// symmetric Jacobi rotation for [[a_pp, b], [b, a_qq]].
void rotate(ComplexMatrix& a, ComplexMatrix& v, Index p, Index q) {
  const Complex apq = a(p, q);
  const double b = std::abs(apq);
  if (b == 0.0) return;
  const Complex phase = apq / b;  // e^{i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * b);
  const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const Complex vpp = c;
  const Complex vpq = s;
  const Complex vqp = -s * std::conj(phase);
  const Complex vqq = c * std::conj(phase);

  const Index n = a.rows();
  for (Index k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * vpp + akq * vqp;
    a(k, q) = akp * vpq + akq * vqq;
  }
  for (Index k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(vpp) * apk + std::conj(vqp) * aqk;
    a(q, k) = std::conj(vpq) * apk + std::conj(vqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (Index k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * vpp + vkq * vqp;
    v(k, q) = vkp * vpq + vkq * vqq;
  }
}

}  // namespace

EigenDecomposition eig_hermitian(const Hermitian& h, const Tolerances& tol) {
  const Index n = h.dim();
  ComplexMatrix a = h.matrix();
  ComplexMatrix v = ComplexMatrix::Identity(n, n);
  const double scale = a.norm();
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double floor = eps * eps * scale;

  for (int sweep = 0; sweep < tol.max_sweeps; ++sweep) {
    bool rotated = false;
    for (Index p = 0; p < n - 1; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const double negligible =
            std::max(1e-2 * eps * (std::abs(a(p, p).real()) + std::abs(a(q, q).real())), floor);
        if (std::abs(a(p, q)) > negligible) {
          rotate(a, v, p, q);
          rotated = true;
        }
      }
    }
    if (!rotated) break;
  }
  if (off_diagonal_norm(a) > tol.eig * scale) {
    throw NumericalFailure("eig_hermitian: Jacobi did not converge in " +
                           std::to_string(tol.max_sweeps) + " sweeps");
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index i, Index j) { return a(i, i).real() < a(j, j).real(); });

  RealVector values(n);
  ComplexMatrix q(n, n);
  for (Index k = 0; k < n; ++k) {
    const Index src = order[static_cast<std::size_t>(k)];
    values(k) = a(src, src).real();
    auto col = v.col(src);
    Index arg = 0;
    double best = -1.0;
    for (Index i = 0; i < n; ++i) {
      const double m = std::abs(col(i));
      if (m > best * (1.0 + 1e-12)) {
        best = m;
        arg = i;
      }
    }
    const Complex fix = std::conj(col(arg)) / std::abs(col(arg));
    q.col(k) = col * fix;
    q(arg, k) = std::abs(q(arg, k));
  }
  return EigenDecomposition{values, Unitary(q, 1e-8)};
}

// --- spectral calculus -----------------------------------------------------

Hermitian spectral_apply(const EigenDecomposition& eig,
                         const std::function<double(double)>& f) {
  const auto& q = eig.basis.matrix();
  RealVector fv = eig.values.unaryExpr(f);
  return Hermitian::part_of(q * fv.cast<Complex>().asDiagonal() * q.adjoint());
}

Hermitian matrix_function(const Hermitian& h, const std::function<double(double)>& f) {
  return spectral_apply(eig_hermitian(h), f);
}

namespace {

EigenDecomposition positive_spectrum(const Hermitian& h, const char* what) {
  auto eig = eig_hermitian(h);
  if (eig.values(0) <= 0.0) {
    throw DomainError(std::string(what) + ": spectrum not positive (min eigenvalue " +
                      std::to_string(eig.values(0)) + ")");
  }
  return eig;
}

PdMatrix trusted_pd(const Hermitian& h) { return PdMatrix::assume_positive(h); }

}  // namespace

PdMatrix exp_h(const Hermitian& h) {
  return trusted_pd(matrix_function(h, [](double x) { return std::exp(x); }));
}

Unitary exp_i(const Hermitian& h) {
  const auto eig = eig_hermitian(h);
  const auto& q = eig.basis.matrix();
  Eigen::VectorXcd phases(h.dim());
  for (Index k = 0; k < h.dim(); ++k) phases(k) = std::polar(1.0, eig.values(k));
  return Unitary(q * phases.asDiagonal() * q.adjoint(), 1e-9);
}

Hermitian log_pd(const Hermitian& h) {
  return spectral_apply(positive_spectrum(h, "log"), [](double x) { return std::log(x); });
}
Hermitian log_pd(const PdMatrix& p) { return log_pd(p.hermitian()); }

PdMatrix sqrt_pd(const Hermitian& h) {
  return trusted_pd(
      spectral_apply(positive_spectrum(h, "sqrt"), [](double x) { return std::sqrt(x); }));
}
PdMatrix sqrt_pd(const PdMatrix& p) { return sqrt_pd(p.hermitian()); }

PdMatrix inv_sqrt_pd(const PdMatrix& p) { return pow_pd(p, -0.5); }
PdMatrix inverse_pd(const PdMatrix& p) { return pow_pd(p, -1.0); }

PdMatrix pow_pd(const PdMatrix& p, double t) {
  return trusted_pd(spectral_apply(positive_spectrum(p.hermitian(), "pow"),
                                   [t](double x) { return std::pow(x, t); }));
}

// --- inner products and misc -----------------------------------------------

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError("hs_inner: dimension mismatch");
  }
  return (a.conjugate().cwiseProduct(b)).sum();
}

double hs_inner_real(const Hermitian& a, const Hermitian& b) {
  return hs_inner(a.matrix(), b.matrix()).real();
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a.rows(), b.rows(), "commutator");
  return a * b - b * a;
}

ComplexMatrix inverse(const ComplexMatrix& x) {
  require_finite_square(x, "inverse");
  Eigen::FullPivLU<ComplexMatrix> lu(x);
  lu.setThreshold(1e-13);
  if (!lu.isInvertible()) throw SingularError("matrix is numerically singular");
  return lu.inverse();
}

double spectral_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

}  // namespace mostow
