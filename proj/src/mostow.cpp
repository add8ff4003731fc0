#include "mostow/mostow.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <string>

#include "mostow/ad_calculus.hpp"
#include "mostow/spd_manifold.hpp"

namespace mostow {

namespace {

constexpr double kArmijo = 1e-4;
constexpr double kMinStep = 1e-12;
// Below this gradient norm (or once the line search stalls on round-off in
// Phi) the iteration switches to Newton steps on the chart gradient.
constexpr double kNewtonRadius = 1e-3;
constexpr double kJacobianStep = 1e-5;
// Far from the minimum the chart Hessian can be nearly singular; Newton steps
// are clipped to this length in E-coordinates.
constexpr double kMaxNewtonStep = 2.0;

// Everything the descent needs at one iterate Y.
struct Iterate {
  Hermitian y;
  ComplexMatrix half;  // exp(Y/2)
  Hermitian rel_log;   // log(exp(-Y/2) p exp(-Y/2))
  double phi;          // ||rel_log||^2 = dist(exp Y, p)^2
};

Iterate evaluate(const PdMatrix& p, const Hermitian& y) {
  const auto eig = eig_hermitian(y);
  ComplexMatrix half = spectral_apply(eig, [](double l) { return std::exp(l / 2); }).matrix();
  const ComplexMatrix inv_half =
      spectral_apply(eig, [](double l) { return std::exp(-l / 2); }).matrix();
  Hermitian rel = log_pd(Hermitian::part_of(inv_half * p.matrix() * inv_half));
  const double phi = rel.norm() * rel.norm();
  return Iterate{y, std::move(half), std::move(rel), phi};
}

// Trial points whose exponential overflows the spectral calculus count as
// rejected steps.
template <class MakeY>
std::optional<Iterate> try_evaluate(const PdMatrix& p, MakeY&& make_y) {
  try {
    Iterate it = evaluate(p, make_y());
    if (std::isfinite(it.phi)) return it;
  } catch (const DomainError&) {
  } catch (const NumericalFailure&) {
  }
  return std::nullopt;
}

}  // namespace

double projection_objective(const PdMatrix& p, const Hermitian& y) {
  require_same_dim(p.dim(), y.dim(), "projection_objective");
  return evaluate(p, y).phi;
}

Hermitian projection_gradient(const PdMatrix& p, const SubspaceBasis& e, const Hermitian& y) {
  require_same_dim(p.dim(), y.dim(), "projection_gradient");
  require_same_dim(p.dim(), e.n(), "projection_gradient");
  const ComplexMatrix s = inv_sqrt_pd(p).matrix();
  const auto eig_y = eig_hermitian(y);
  const ComplexMatrix exp_y =
      spectral_apply(eig_y, [](double l) { return std::exp(l); }).matrix();
  const ComplexMatrix half =
      spectral_apply(eig_y, [](double l) { return std::exp(l / 2); }).matrix();

  const auto eig_m = eig_hermitian(Hermitian::part_of(s * exp_y * s));
  const ComplexMatrix log_over =
      spectral_apply(eig_m, [](double mu) { return std::log(mu) / mu; }).matrix();
  const ComplexMatrix w = s * log_over * s;

  const ComplexMatrix g = 2.0 * apply_ad_function(eig_y, AdFunction::tau(), half * w * half);
  return e.project(Hermitian::part_of(g));
}

namespace {

// Hessian of Phi in E-coordinates, by central differences of the chart gradient.
Eigen::MatrixXd chart_hessian(const PdMatrix& p, const SubspaceBasis& e, const RealVector& c) {
  const Index k = c.size();
  const double h = kJacobianStep * std::max(1.0, c.norm());
  Eigen::MatrixXd jac(k, k);
  for (Index i = 0; i < k; ++i) {
    RealVector cp = c, cm = c;
    cp(i) += h;
    cm(i) -= h;
    jac.col(i) = (e.coordinates(projection_gradient(p, e, e.combine(cp))) -
                  e.coordinates(projection_gradient(p, e, e.combine(cm)))) /
                 (2.0 * h);
  }
  return 0.5 * (jac + jac.transpose());
}

// Newton direction, or nothing when the Hessian is not positive definite.
std::optional<RealVector> newton_direction(const Eigen::MatrixXd& hess, const RealVector& g) {
  const Eigen::LLT<Eigen::MatrixXd> llt(hess);
  if (llt.info() != Eigen::Success) return std::nullopt;
  RealVector d = -llt.solve(g);
  if (!d.allFinite() || d.dot(g) >= 0.0) return std::nullopt;
  if (d.norm() > kMaxNewtonStep) d *= kMaxNewtonStep / d.norm();
  return d;
}

}  // namespace

ProjectionResult project_to_exp_subspace(const PdMatrix& p, const SubspaceBasis& e,
                                         const ProjectionOptions& opts) {
  require_same_dim(p.dim(), e.n(), "project_to_exp_subspace");
  if (!(opts.tol > 0.0) || opts.max_iter < 1) {
    throw ValidationError("project_to_exp_subspace: tol must be > 0 and max_iter >= 1");
  }
  require_triple_closed(e);

  Iterate cur = evaluate(p, e.project(opts.initial ? *opts.initial : log_pd(p)));
  Hermitian grad = projection_gradient(p, e, cur.y);
  // Once Phi no longer resolves the decrease, steps are judged by the
  // gradient norm instead.
  bool polish = false;
  int iter = 0;
  for (; iter < opts.max_iter && grad.norm() > opts.tol; ++iter) {
    polish = polish || grad.norm() < kNewtonRadius;
    const RealVector c = e.coordinates(cur.y);
    const RealVector g = e.coordinates(grad);
    const auto d = newton_direction(chart_hessian(p, e, c), g);

    if (polish) {
      if (!d) break;
      bool accepted = false;
      for (double t = 1.0; t >= 1.0 / 1024; t *= 0.5) {
        const Hermitian y_next = e.combine(c + t * *d);
        Hermitian g_next = projection_gradient(p, e, y_next);
        if (g_next.norm() < grad.norm()) {
          cur = evaluate(p, y_next);
          grad = std::move(g_next);
          accepted = true;
          break;
        }
      }
      if (!accepted) break;  // gradient at its round-off floor
      continue;
    }

    bool accepted = false;
    if (d) {
      const double slope = -g.dot(*d);
      for (double t = 1.0; t >= 1.0 / 1024; t *= 0.5) {
        auto next = try_evaluate(p, [&] { return e.combine(c + t * *d); });
        if (next && next->phi <= cur.phi - kArmijo * t * slope) {
          cur = std::move(*next);
          accepted = true;
          break;
        }
      }
    }
    if (!accepted) {
      // Metric gradient step through the flat chart at the current foot.
      const Hermitian dir = e.project(cur.rel_log);
      const double slope = 2.0 * dir.norm() * dir.norm();
      for (double t = 1.0; t >= kMinStep; t *= 0.5) {
        auto next = try_evaluate(p, [&] {
          const ComplexMatrix step = exp_h(t * dir).matrix();
          return e.project(log_pd(Hermitian::part_of(cur.half * step * cur.half)));
        });
        if (next && next->phi <= cur.phi - kArmijo * t * slope) {
          cur = std::move(*next);
          accepted = true;
          break;
        }
      }
    }
    if (accepted) {
      grad = projection_gradient(p, e, cur.y);
    } else {
      polish = true;
    }
  }

  const double grad_norm = grad.norm();
  PdMatrix foot = exp_h(cur.y);
  return ProjectionResult{std::move(foot),
                          cur.y,
                          std::sqrt(cur.phi),
                          iter,
                          grad_norm,
                          e.project(cur.rel_log).norm(),
                          grad_norm <= opts.tol};
}

ContractionPair projection_contraction_check(const PdMatrix& p1, const PdMatrix& p2,
                                             const SubspaceBasis& e,
                                             const ProjectionOptions& opts) {
  const auto r1 = project_to_exp_subspace(p1, e, opts);
  const auto r2 = project_to_exp_subspace(p2, e, opts);
  if (!r1.converged || !r2.converged) {
    throw NonConvergence("projection_contraction_check: projection did not converge");
  }
  return {dist(p1, p2), dist(r1.foot, r2.foot)};
}

MostowSplit mostow_split(const PdMatrix& a, const SubspaceBasis& e,
                         const ProjectionOptions& opts) {
  const auto proj = project_to_exp_subspace(a, e, opts);
  if (!proj.converged) {
    throw NonConvergence("mostow_split: projection stopped at gradient norm " +
                         std::to_string(proj.grad_norm) + " after " +
                         std::to_string(proj.iterations) + " iterations");
  }
  const auto eig = eig_hermitian(proj.log_foot);
  const Hermitian e_half = spectral_apply(eig, [](double l) { return std::exp(l / 2); });
  const ComplexMatrix e_inv =
      spectral_apply(eig, [](double l) { return std::exp(-l / 2); }).matrix();
  return MostowSplit{
      PdMatrix::assume_positive(e_half),
      PdMatrix::assume_positive(Hermitian::part_of(e_inv * a.matrix() * e_inv))};
}

double mostow_uniqueness_witness(const PdMatrix& a, const SubspaceBasis& e,
                                 const MostowSplit& reference, std::uint64_t seed,
                                 const ProjectionOptions& opts) {
  if (e.dim() == 0) {
    const auto again = mostow_split(a, e, opts);
    return std::max((again.e.matrix() - reference.e.matrix()).norm(),
                    (again.f.matrix() - reference.f.matrix()).norm());
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  RealVector c(static_cast<Index>(e.dim()));
  for (Index i = 0; i < c.size(); ++i) c(i) = normal(rng);
  const Hermitian perturbation = (1.0 / c.norm()) * e.combine(c);

  ProjectionOptions perturbed = opts;
  perturbed.initial = e.project(log_pd(a)) + perturbation;
  const auto again = mostow_split(a, e, perturbed);
  return std::max((again.e.matrix() - reference.e.matrix()).norm(),
                  (again.f.matrix() - reference.f.matrix()).norm());
}

MostowFactors group_decompose(const ComplexMatrix& x, const SubspaceBasis& e,
                              const ProjectionOptions& opts) {
  require_finite_square(x, "group_decompose");
  require_same_dim(x.rows(), e.n(), "group_decompose");
  inverse(x);  // singularity check

  const PdMatrix gram = PdMatrix::assume_positive(Hermitian::part_of(x.adjoint() * x));
  const auto split = mostow_split(gram, e, opts);
  // split.f = f^2
  const auto eig_f2 = eig_hermitian(split.f.hermitian());
  const Hermitian f = spectral_apply(eig_f2, [](double l) { return std::sqrt(l); });
  const ComplexMatrix f_inv =
      spectral_apply(eig_f2, [](double l) { return 1.0 / std::sqrt(l); }).matrix();
  const ComplexMatrix e_inv = inverse_pd(split.e).matrix();
  return MostowFactors{Unitary(x * e_inv * f_inv, 1e-8), PdMatrix::assume_positive(f), split.e};
}

FactorResiduals factor_residuals(const ComplexMatrix& x, const MostowFactors& m,
                                 const SubspaceBasis& e) {
  const Index n = x.rows();
  return FactorResiduals{
      (m.recompose() - x).norm() / x.norm(),
      (m.k.matrix().adjoint() * m.k.matrix() - ComplexMatrix::Identity(n, n)).norm(),
      e.distance_to(log_pd(m.e)),
      e.project(log_pd(m.f)).norm(),
  };
}

}  // namespace mostow
