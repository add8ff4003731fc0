#include "mostow/triple_system.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mostow/ad_calculus.hpp"

namespace mostow {

RealVector real_vectorize(const ComplexMatrix& m) {
  const Index len = m.size();
  RealVector v(2 * len);
  Index k = 0;
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i, ++k) {
      v(k) = m(i, j).real();
      v(len + k) = m(i, j).imag();
    }
  return v;
}

ComplexMatrix real_devectorize(const RealVector& v, Index n) {
  const Index len = n * n;
  ComplexMatrix m(n, n);
  Index k = 0;
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i, ++k) m(i, j) = Complex(v(k), v(len + k));
  return m;
}

// --- SubspaceBasis ---------------------------------------------------------

SubspaceBasis::SubspaceBasis(Index n, std::vector<Hermitian> basis)
    : n_(n), basis_(std::move(basis)), coords_(2 * n * n, static_cast<Index>(basis_.size())),
      cache_(std::make_shared<Cache>()) {
  if (n <= 0) throw ShapeError("SubspaceBasis: dimension must be positive");
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    require_same_dim(basis_[i].dim(), n, "SubspaceBasis");
    coords_.col(static_cast<Index>(i)) = real_vectorize(basis_[i].matrix());
  }
  if (!basis_.empty()) {
    const Eigen::MatrixXd gram = coords_.transpose() * coords_;
    const double off =
        (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
    if (off > 1e-10) {
      throw ValidationError("SubspaceBasis: basis is not orthonormal (Gram defect " +
                            std::to_string(off) + ")");
    }
  }
}

SubspaceBasis SubspaceBasis::zero(Index n) { return SubspaceBasis(n, {}); }

SubspaceBasis SubspaceBasis::full(Index n) {
  std::vector<Hermitian> b;
  const double r = 1.0 / std::sqrt(2.0);
  for (Index i = 0; i < n; ++i) {
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    m(i, i) = 1.0;
    b.push_back(Hermitian::part_of(m));
  }
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      ComplexMatrix m = ComplexMatrix::Zero(n, n);
      m(i, j) = r;
      m(j, i) = r;
      b.push_back(Hermitian::part_of(m));
      m(i, j) = Complex(0, r);
      m(j, i) = Complex(0, -r);
      b.push_back(Hermitian::part_of(m));
    }
  }
  return SubspaceBasis(n, std::move(b));
}

SubspaceBasis SubspaceBasis::diagonal(Index n) {
  std::vector<Hermitian> b;
  for (Index i = 0; i < n; ++i) {
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    m(i, i) = 1.0;
    b.push_back(Hermitian::part_of(m));
  }
  return SubspaceBasis(n, std::move(b));
}

SubspaceBasis SubspaceBasis::traceless(Index n) {
  if (n == 1) return zero(n);
  std::vector<Hermitian> span;
  const SubspaceBasis all = full(n);
  for (const auto& h : all.basis()) {
    const double tr = h.matrix().trace().real();
    span.push_back(h - (tr / static_cast<double>(n)) * Hermitian::identity(n));
  }
  return orthonormalize(span);
}

SubspaceBasis SubspaceBasis::real_symmetric(Index n) {
  std::vector<Hermitian> b;
  const SubspaceBasis all = full(n);
  for (const auto& h : all.basis()) {
    if (h.matrix().imag().isZero(0.0)) b.push_back(h);
  }
  return SubspaceBasis(n, std::move(b));
}

RealVector SubspaceBasis::coordinates(const Hermitian& x) const {
  require_same_dim(x.dim(), n_, "SubspaceBasis::coordinates");
  return coords_.transpose() * real_vectorize(x.matrix());
}

Hermitian SubspaceBasis::combine(const RealVector& c) const {
  require_same_dim(c.size(), static_cast<Index>(dim()), "SubspaceBasis::combine");
  return Hermitian::part_of(real_devectorize(coords_ * c, n_));
}

Hermitian SubspaceBasis::project(const Hermitian& x) const { return combine(coordinates(x)); }

double SubspaceBasis::distance_to(const Hermitian& x) const {
  const RealVector v = real_vectorize(x.matrix());
  return (v - coords_ * (coords_.transpose() * v)).norm();
}

double SubspaceBasis::closure_defect() const {
  std::call_once(cache_->once, [this] { cache_->defect = triple_closure_defect(*this); });
  return cache_->defect;
}

// --- operations --------------------------------------------------------------

SubspaceBasis orthonormalize(const std::vector<Hermitian>& spanning) {
  if (spanning.empty()) throw ValidationError("orthonormalize: empty spanning list");
  const Index n = spanning.front().dim();
  std::vector<RealVector> kept;
  for (const auto& h : spanning) {
    require_same_dim(h.dim(), n, "orthonormalize");
    RealVector v = real_vectorize(h.matrix());
    const double original = v.norm();
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : kept) v -= q.dot(v) * q;
    const double r = v.norm();
    if (r < 1e-10 * std::max(1.0, original)) continue;
    kept.push_back(v / r);
  }
  if (kept.empty()) throw EmptySubspace("orthonormalize: spanning set has rank zero");
  std::vector<Hermitian> basis;
  basis.reserve(kept.size());
  for (const auto& v : kept) basis.push_back(Hermitian::part_of(real_devectorize(v, n)));
  return SubspaceBasis(n, std::move(basis));
}

double triple_closure_defect(const SubspaceBasis& e) {
  const auto& b = e.basis();
  std::vector<ComplexMatrix> probes;
  for (std::size_t i = 0; i < b.size(); ++i) {
    probes.push_back(b[i].matrix());
    for (std::size_t j = i + 1; j < b.size(); ++j) probes.push_back(b[i].matrix() + b[j].matrix());
  }
  double worst = 0.0;
  for (const auto& x : probes) {
    for (const auto& y : b) {
      const ComplexMatrix dc = commutator(x, commutator(x, y.matrix()));
      worst = std::max(worst, e.distance_to(Hermitian::part_of(dc)));
    }
  }
  return worst;
}

void require_triple_closed(const SubspaceBasis& e) {
  const double d = e.closure_defect();
  if (d > kTripleClosureTol) {
    throw ValidationError("subspace is not a Lie triple system (closure defect " +
                          std::to_string(d) + ")");
  }
}

SubspaceBasis complement(const SubspaceBasis& e) {
  const Index n = e.n();
  std::vector<RealVector> kept;
  for (const auto& b : e.basis()) kept.push_back(real_vectorize(b.matrix()));
  const std::size_t fixed = kept.size();
  const SubspaceBasis all = SubspaceBasis::full(n);
  for (const auto& h : all.basis()) {
    RealVector v = real_vectorize(h.matrix());
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : kept) v -= q.dot(v) * q;
    const double r = v.norm();
    if (r < 1e-8) continue;
    kept.push_back(v / r);
  }
  std::vector<Hermitian> basis;
  for (std::size_t i = fixed; i < kept.size(); ++i)
    basis.push_back(Hermitian::part_of(real_devectorize(kept[i], n)));
  return SubspaceBasis(n, std::move(basis));
}

Hermitian project_vector(const SubspaceBasis& e, const Hermitian& x) { return e.project(x); }

namespace {

struct Integration {
  ComplexMatrix value;
  double max_drift;
};

Integration rk4(const SubspaceBasis& e, const ComplexMatrix& y, const ComplexMatrix& x0,
                int steps) {
  const double h = 1.0 / steps;
  const auto field = [&](const ComplexMatrix& x) {
    return apply_ad_function(Hermitian::part_of(x), AdFunction::t_coth_half(), y);
  };
  ComplexMatrix x = x0;
  double drift = e.distance_to(Hermitian::part_of(x));
  for (int s = 0; s < steps; ++s) {
    const ComplexMatrix k1 = field(x);
    const ComplexMatrix k2 = field(x + 0.5 * h * k1);
    const ComplexMatrix k3 = field(x + 0.5 * h * k2);
    const ComplexMatrix k4 = field(x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    drift = std::max(drift, e.distance_to(Hermitian::part_of(x)));
  }
  return {x, drift};
}

}  // namespace

FlowResult efe_flow(const SubspaceBasis& e, const Hermitian& y, const PdMatrix& f,
                    double ode_tol) {
  require_same_dim(e.n(), y.dim(), "efe_flow");
  require_same_dim(e.n(), f.dim(), "efe_flow");
  require_triple_closed(e);
  const Hermitian x0 = log_pd(f);
  const double y_off = e.distance_to(y);
  const double x_off = e.distance_to(x0);
  if (y_off > kTripleClosureTol * std::max(1.0, y.norm())) {
    throw NotInSubspace("efe_flow: Y is not in E (distance " + std::to_string(y_off) + ")");
  }
  if (x_off > kTripleClosureTol * std::max(1.0, x0.norm())) {
    throw NotInSubspace("efe_flow: log f is not in E (distance " + std::to_string(x_off) + ")");
  }

  constexpr int kMaxSteps = 1 << 16;
  int steps = 64;
  Integration coarse = rk4(e, y.matrix(), x0.matrix(), steps);
  while (true) {
    Integration fine = rk4(e, y.matrix(), x0.matrix(), 2 * steps);
    const double err = (fine.value - coarse.value).norm() / 15.0;
    if (err <= ode_tol) {
      return FlowResult{Hermitian::part_of(fine.value), fine.max_drift, err, 2 * steps};
    }
    steps *= 2;
    if (2 * steps > kMaxSteps) {
      throw NumericalFailure("efe_flow: step size underflow (error estimate " +
                             std::to_string(err) + ")");
    }
    coarse = std::move(fine);
  }
}

}  // namespace mostow
