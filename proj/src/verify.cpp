#include "mostow/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>

#include "mostow/io.hpp"
#include "mostow/mostow.hpp"
#include "mostow/orbits.hpp"
#include "mostow/random.hpp"
#include "mostow/spd_manifold.hpp"

namespace mostow::verify {

namespace {

struct MetricSpec {
  const char* name;
  double threshold;
  bool upper;
};

struct Trial {
  std::vector<double> values;
  bool non_converged = false;
};

using TrialFn = std::function<Trial(random::Rng&, std::uint64_t)>;

struct Suite {
  std::vector<MetricSpec> metrics;
  TrialFn trial;
};

double spectrum_gap(const ComplexMatrix& a, const ComplexMatrix& b) {
  const RealVector la = eig_hermitian(to_hermitian(a)).values;
  const RealVector lb = eig_hermitian(to_hermitian(b)).values;
  return (la - lb).cwiseAbs().maxCoeff();
}

ComplexMatrix regular_base_point(Index n) {
  ComplexMatrix x = ComplexMatrix::Zero(n, n);
  for (Index k = 0; k < n; ++k) x(k, k) = Complex(0.0, 0.5 * static_cast<double>(n - 1) - k);
  return x;
}

Suite make_suite(const std::string& name, Index n) {
  if (name == "curvature") {
    return {{{"max_curvature", 1e-12, true}}, [n](random::Rng& rng, std::uint64_t) {
              const Hermitian x = random::hermitian(rng, n);
              const Hermitian y = random::hermitian(rng, n);
              return Trial{{sectional_curvature_at_identity(x, y)}};
            }};
  }
  if (name == "triangles") {
    return {{{"min_al_kashi_defect", -1e-9, false}}, [n](random::Rng& rng, std::uint64_t) {
              const PdMatrix a = random::pd(rng, n);
              const PdMatrix b = random::pd(rng, n);
              const PdMatrix c = random::pd(rng, n);
              return Trial{{al_kashi_defect(a, b, c).defect}};
            }};
  }
  if (name == "convexity") {
    return {{{"min_second_difference", -1e-8, false}}, [n](random::Rng& rng, std::uint64_t) {
              const PdMatrix p1 = random::pd(rng, n);
              const PdMatrix q1 = random::pd(rng, n);
              const PdMatrix p2 = random::pd(rng, n);
              const PdMatrix q2 = random::pd(rng, n);
              const auto profile = geodesic_gap_profile(Geodesic(p1, q1), Geodesic(p2, q2), 11);
              return Trial{{min_second_difference(profile)}};
            }};
  }
  if (name == "mostow") {
    auto subspaces = std::make_shared<std::vector<SubspaceBasis>>(std::vector<SubspaceBasis>{
        SubspaceBasis::zero(n), SubspaceBasis::diagonal(n), SubspaceBasis::real_symmetric(n),
        SubspaceBasis::traceless(n)});
    return {{{"max_recomposition", 1e-8, true},
             {"max_unitarity", 1e-9, true},
             {"max_e_membership", 1e-8, true},
             {"max_f_membership", 1e-8, true}},
            [n, subspaces](random::Rng& rng, std::uint64_t index) {
              const auto& e = (*subspaces)[index % subspaces->size()];
              const ComplexMatrix x = random::general_linear(rng, n);
              try {
                const auto factors = group_decompose(x, e);
                const auto r = factor_residuals(x, factors, e);
                return Trial{{r.recomposition, r.unitarity, r.e_membership, r.f_membership}};
              } catch (const NonConvergence&) {
                return Trial{{}, true};
              }
            }};
  }
  if (name == "orbits") {
    auto frame = std::make_shared<OrbitFrame>(isotropy_split(regular_base_point(n)));
    return {{{"max_recomposition", 1e-8, true},
             {"max_spectrum_deviation", 1e-9, true},
             {"max_equivariance", 1e-7, true}},
            [n, frame](random::Rng& rng, std::uint64_t) {
              const ComplexMatrix g = random::special_linear(rng, n);
              const ComplexMatrix v = random::special_unitary(rng, n).matrix();
              try {
                const auto r = orbit_retract(g, *frame);
                const auto rv = orbit_retract(v * g, *frame);
                const double equivariance =
                    std::max({(rv.z - v * r.z * v.adjoint()).norm(),
                              (rv.a - v * r.a * v.adjoint()).norm(),
                              (rv.u.matrix() - v * r.u.matrix()).norm()});
                return Trial{{recomposition_residual(g, *frame, r), spectrum_gap(r.z, frame->x),
                              equivariance}};
              } catch (const NonConvergence&) {
                return Trial{{}, true};
              }
            }};
  }
  throw ValidationError("unknown verify suite '" + name + "'");
}

}  // namespace

bool SuiteReport::pass() const {
  return non_converged == 0 &&
         std::all_of(metrics.begin(), metrics.end(), [](const Metric& m) { return m.pass(); });
}

unsigned thread_cap() {
  if (const char* env = std::getenv("MOSTOW_GEO_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SuiteReport run_suite(const std::string& suite, int n, int trials, std::uint64_t seed,
                      unsigned threads) {
  if (n < 2) throw ValidationError("verify: n must be >= 2");
  if (trials < 1) throw ValidationError("verify: trials must be >= 1");
  const Suite s = make_suite(suite, n);

  std::vector<Trial> results(static_cast<std::size_t>(trials));
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < results.size(); i = next++) {
      auto rng = random::substream(seed, suite, i);
      results[i] = s.trial(rng, i);
    }
  };
  const unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(trials));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
  }

  SuiteReport report{suite, n, trials, seed, {}, 0};
  for (std::size_t m = 0; m < s.metrics.size(); ++m) {
    const auto& spec = s.metrics[m];
    double acc = spec.upper ? -std::numeric_limits<double>::infinity()
                            : std::numeric_limits<double>::infinity();
    for (const auto& t : results) {
      if (t.non_converged) continue;
      acc = spec.upper ? std::max(acc, t.values[m]) : std::min(acc, t.values[m]);
    }
    report.metrics.push_back(Metric{spec.name, acc, spec.threshold, spec.upper});
  }
  for (const auto& t : results) report.non_converged += t.non_converged ? 1 : 0;
  return report;
}

std::string render(const SuiteReport& report) {
  std::ostringstream os;
  for (const auto& m : report.metrics) {
    os << "suite=" << report.suite << " n=" << report.n << " trials=" << report.trials
       << " seed=" << report.seed << ' ' << m.name << '=' << io::format_double(m.value)
       << (m.upper ? " <= " : " >= ") << io::format_double(m.threshold) << ' '
       << (m.pass() ? "PASS" : "FAIL") << '\n';
  }
  if (report.non_converged > 0) {
    os << "suite=" << report.suite << " non_converged=" << report.non_converged << " FAIL\n";
  }
  os << "suite=" << report.suite << ' ' << (report.pass() ? "PASS" : "FAIL") << '\n';
  return os.str();
}

}  // namespace mostow::verify
