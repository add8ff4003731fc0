#include "mostow/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "mostow/io.hpp"
#include "mostow/mostow.hpp"
#include "mostow/orbits.hpp"
#include "mostow/spd_manifold.hpp"
#include "mostow/verify.hpp"

namespace mostow::cli {

namespace {

using io::json;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonConvergence:
    case ErrorKind::NumericalFailure:
      return kNonConvergence;
    case ErrorKind::Io:
      return kIoError;
    default:
      return kInvariantFailure;
  }
}

void report_error(std::ostream& err, std::string_view kind, const std::string& message) {
  err << io::dump(json{{"error", kind}, {"message", message}}) << '\n';
}

SubspaceBasis load_subspace(const std::string& spec, Index n) {
  static const std::map<std::string, SubspaceBasis (*)(Index)> builtins{
      {"builtin:zero", &SubspaceBasis::zero},
      {"builtin:full", &SubspaceBasis::full},
      {"builtin:diagonal", &SubspaceBasis::diagonal},
      {"builtin:traceless", &SubspaceBasis::traceless},
      {"builtin:real-symmetric", &SubspaceBasis::real_symmetric}};
  if (const auto it = builtins.find(spec); it != builtins.end()) return it->second(n);
  return io::subspace_from_json(io::read_json_file(spec), n);
}

ComplexMatrix load_matrix(const std::string& path) {
  return io::matrix_from_json(io::read_json_file(path));
}

PdMatrix load_pd(const std::string& path) { return PdMatrix(load_matrix(path)); }

ProjectionOptions projection_options(const Config& c) {
  ProjectionOptions o;
  o.tol = c.tol;
  o.max_iter = c.max_iter;
  return o;
}

void add_common(CLI::App* sub, Config& c) {
  sub->add_option("--tol", c.tol, "Convergence tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--max-iter", c.max_iter, "Iteration cap")->check(CLI::Range(1, 1 << 30));
  sub->add_option("--output", c.output, "Write the result here instead of stdout");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mostow decomposition and geometry of positive-definite matrices", "mostow-geo"};
  app.require_subcommand(1);
  Config config;

  std::string matrix_path, subspace_spec, from_path, to_path, group_path, frame_path,
      derivation_path, suite = "all";
  double t = 0.5;
  bool check = false;
  int n = 3, trials = 1000;

  auto* decompose = app.add_subcommand("decompose", "x = k f e (Mostow decomposition)");
  decompose->add_option("--matrix", matrix_path)->required();
  decompose->add_option("--subspace", subspace_spec)->required();
  decompose->add_flag("--check", check, "Fail unless the recomposition residual is below --tol");
  add_common(decompose, config);

  auto* project = app.add_subcommand("project", "Nearest point of exp E");
  project->add_option("--matrix", matrix_path)->required();
  project->add_option("--subspace", subspace_spec)->required();
  add_common(project, config);

  auto* geodesic = app.add_subcommand("geodesic", "Point of the geodesic from P to Q");
  geodesic->add_option("--from", from_path)->required();
  geodesic->add_option("--to", to_path)->required();
  geodesic->add_option("--t", t);
  add_common(geodesic, config);

  auto* distance = app.add_subcommand("dist", "Riemannian distance");
  distance->add_option("--from", from_path)->required();
  distance->add_option("--to", to_path)->required();
  add_common(distance, config);

  auto* retract = app.add_subcommand("orbit-retract", "Retract Ad(g) x onto the compact orbit");
  retract->add_option("--group", group_path)->required();
  retract->add_option("--frame", frame_path)->required();
  retract->add_option("--derivation", derivation_path);
  add_common(retract, config);

  auto* verify_cmd = app.add_subcommand("verify", "Seeded property suites");
  verify_cmd->add_option("--suite", suite)
      ->check(CLI::IsMember({"curvature", "triangles", "convexity", "mostow", "orbits", "all"}));
  verify_cmd->add_option("--n", n)->check(CLI::Range(2, 64));
  verify_cmd->add_option("--trials", trials)->check(CLI::Range(1, 100000000));
  verify_cmd->add_option("--seed", config.seed);
  add_common(verify_cmd, config);

  std::vector<std::string> argv_rest(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(argv_rest.begin(), argv_rest.end());
  try {
    app.parse(argv_rest);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, "UsageError", e.what());
    return kIoError;
  }

  std::ostringstream result;
  int code = kOk;
  try {
    if (*decompose) {
      const ComplexMatrix x = load_matrix(matrix_path);
      const SubspaceBasis e = load_subspace(subspace_spec, x.rows());
      const auto factors = group_decompose(x, e, projection_options(config));
      const auto r = factor_residuals(x, factors, e);
      result << io::dump(json{{"k", io::matrix_to_json(factors.k.matrix())},
                              {"f", io::matrix_to_json(factors.f.matrix())},
                              {"e", io::matrix_to_json(factors.e.matrix())},
                              {"residuals",
                               {{"recomposition", r.recomposition},
                                {"unitarity", r.unitarity},
                                {"e_membership", r.e_membership},
                                {"f_membership", r.f_membership}}}})
             << '\n';
      if (check && r.recomposition > config.tol) {
        report_error(err, "ValidationError", "recomposition residual exceeds --tol");
        code = kInvariantFailure;
      }
    } else if (*project) {
      const PdMatrix p = load_pd(matrix_path);
      const SubspaceBasis e = load_subspace(subspace_spec, p.dim());
      const auto r = project_to_exp_subspace(p, e, projection_options(config));
      result << io::dump(json{{"foot", io::matrix_to_json(r.foot.matrix())},
                              {"log_foot", io::matrix_to_json(r.log_foot.matrix())},
                              {"distance", r.distance},
                              {"iterations", r.iterations},
                              {"grad_norm", r.grad_norm},
                              {"orthogonality", r.orthogonality},
                              {"converged", r.converged}})
             << '\n';
      if (!r.converged) {
        report_error(err, "NonConvergence", "projection did not reach the gradient tolerance");
        code = kNonConvergence;
      }
    } else if (*geodesic) {
      const auto point = geodesic_eval(load_pd(from_path), load_pd(to_path), t);
      result << io::dump(io::matrix_to_json(point.matrix())) << '\n';
    } else if (*distance) {
      result << io::format_double(dist(load_pd(from_path), load_pd(to_path))) << '\n';
    } else if (*retract) {
      const ComplexMatrix g = load_matrix(group_path);
      OrbitFrame frame = io::frame_from_json(io::read_json_file(frame_path));
      if (!derivation_path.empty()) frame = affine_frame(load_matrix(derivation_path));
      const auto opts = projection_options(config);
      const auto r = frame.derivation ? affine_orbit_retract(g, frame, opts)
                                      : orbit_retract(g, frame, opts);
      result << io::dump(json{{"z", io::matrix_to_json(r.z)},
                              {"a", io::matrix_to_json(r.a)},
                              {"u", io::matrix_to_json(r.u.matrix())},
                              {"residual", recomposition_residual(g, frame, r)}})
             << '\n';
    } else if (*verify_cmd) {
      const auto names = suite == "all" ? verify::suite_names() : std::vector<std::string>{suite};
      bool all_pass = true;
      bool non_converged = false;
      for (const auto& name : names) {
        const auto report = verify::run_suite(name, n, trials, config.seed, verify::thread_cap());
        result << verify::render(report);
        all_pass = all_pass && report.pass();
        non_converged = non_converged || report.non_converged > 0;
      }
      result << "verify " << (all_pass ? "PASS" : "FAIL") << '\n';
      if (!all_pass) code = non_converged ? kNonConvergence : kInvariantFailure;
    }
  } catch (const Error& e) {
    report_error(err, to_string(e.kind()), e.what());
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    report_error(err, "InternalError", e.what());
    return kInvariantFailure;
  }

  if (config.output.empty()) {
    out << result.str();
  } else {
    std::ofstream file(config.output);
    if (!file || !(file << result.str())) {
      report_error(err, "IoError", "cannot write " + config.output);
      return kIoError;
    }
  }
  return code;
}

}  // namespace mostow::cli
