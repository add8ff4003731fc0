#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "mostow/cli.hpp"
#include "mostow/io.hpp"
#include "mostow/mostow.hpp"
#include "mostow/random.hpp"
#include "mostow/verify.hpp"
#include "support.hpp"

using namespace mostow;
using io::json;
using support::diag;
using support::mat;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "mostow-geo");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Scratch {
 public:
  Scratch() : dir_(fs::temp_directory_path() / ("mostow-geo-test-" + std::to_string(::getpid()))) {
    fs::create_directories(dir_);
  }
  ~Scratch() { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string write(const std::string& name, const json& j) const { return write(name, j.dump()); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  fs::path dir_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Io, MatrixRoundTrip) {
  auto rng = random::substream(1, "io", 0);
  const ComplexMatrix m = random::gaussian(rng, 4);
  const ComplexMatrix back = io::matrix_from_json(json::parse(io::dump(io::matrix_to_json(m))));
  EXPECT_EQ(back, m);  // 17 digits round-trip exactly
}

TEST(Io, MissingImaginaryPartIsZero) {
  const auto m = io::matrix_from_json(json::parse(R"({"n": 2, "re": [[1, 2], [3, 4]]})"));
  EXPECT_EQ(m, mat({{1, 2}, {3, 4}}));
}

TEST(Io, FormatDouble) {
  EXPECT_EQ(io::format_double(0.0), "0.0");
  EXPECT_EQ(io::format_double(1.0), "1.0");
  EXPECT_EQ(io::format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(io::format_double(1e-300), "1e-300");
  EXPECT_EQ(io::format_double(-2.5e20), "-2.5e+20");
  EXPECT_EQ(std::stod(io::format_double(2.2781845411409805)), 2.2781845411409805);
  EXPECT_EQ(io::dump(json{{"a", 1.0}, {"b", 3}}), R"({"a":1.0,"b":3})");
}

TEST(Io, MalformedInput) {
  for (const char* text : {R"([1, 2])", R"({"re": [[1]]})", R"({"n": 0, "re": []})",
                           R"({"n": 2, "re": [[1, 2]]})", R"({"n": 1, "re": [["x"]]})",
                           R"({"n": 1.5, "re": [[1]]})"}) {
    EXPECT_THROW(io::matrix_from_json(json::parse(text)), IoError) << text;
  }
  EXPECT_THROW(io::subspace_from_json(json::object(), 2), IoError);
  EXPECT_THROW(io::frame_from_json(json::array()), IoError);
  EXPECT_THROW(io::read_json_file("/nonexistent/file.json"), IoError);
  Scratch s;
  EXPECT_THROW(io::read_json_file(s.write("bad.json", std::string("{not json"))), IoError);
}

TEST(Io, Subspaces) {
  EXPECT_EQ(io::subspace_from_json(json::array(), 3).dim(), 0u);
  const json span = json::array({io::matrix_to_json(diag({1, 0})), io::matrix_to_json(diag({2, 0})),
                                 io::matrix_to_json(diag({0, 1}))});
  const auto e = io::subspace_from_json(span, 2);
  EXPECT_EQ(e.dim(), 2u);
  EXPECT_LT(e.distance_to(Hermitian(diag({3, -1}))), 1e-14);
  EXPECT_THROW(io::subspace_from_json(span, 3), ShapeError);
}

TEST(Io, Frames) {
  const ComplexMatrix x = Complex(0, 1) * diag({1, -1});
  const auto bare = io::frame_from_json(io::matrix_to_json(x));
  EXPECT_EQ(bare.x, x);
  EXPECT_FALSE(bare.derivation);
  EXPECT_EQ(bare.moving.dim(), 2u);

  const ComplexMatrix d = Complex(0, 1) * diag({1, 0, -1});
  const auto affine = io::frame_from_json(json{{"derivation", io::matrix_to_json(d)}});
  ASSERT_TRUE(affine.derivation);
  EXPECT_EQ(*affine.derivation, d);
  EXPECT_THROW(io::frame_from_json(io::matrix_to_json(diag({1, -1}))), ValidationError);
}

TEST(Cli, DistOfIdenticalPoints) {
  Scratch s;
  const auto p = s.write("p.json", io::matrix_to_json(mat({{2, 1}, {1, 2}})));
  const auto r = run_cli({"dist", "--from", p, "--to", p});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "0.0\n");
  EXPECT_EQ(r.err, "");
}

TEST(Cli, DistValue) {
  Scratch s;
  const auto p = s.write("p.json", io::matrix_to_json(diag({1, 1})));
  const auto q = s.write("q.json", io::matrix_to_json(diag({std::exp(3.0), std::exp(-4.0)})));
  const auto r = run_cli({"dist", "--from", p, "--to", q});
  EXPECT_EQ(r.code, 0);
  EXPECT_NEAR(std::stod(r.out), 5.0, 1e-14);
}

TEST(Cli, DecomposeUnitaryIsTrivial) {
  Scratch s;
  auto rng = random::substream(2, "cli", 0);
  const ComplexMatrix u = random::unitary(rng, 3).matrix();
  const auto x = s.write("x.json", io::matrix_to_json(u));
  const auto r = run_cli({"decompose", "--matrix", x, "--subspace", "builtin:real-symmetric", "--check"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_LT((io::matrix_from_json(j["k"]) - u).norm(), 1e-12);
  EXPECT_LT((io::matrix_from_json(j["f"]) - ComplexMatrix::Identity(3, 3)).norm(), 1e-12);
  EXPECT_LT((io::matrix_from_json(j["e"]) - ComplexMatrix::Identity(3, 3)).norm(), 1e-12);
  EXPECT_LE(j["residuals"]["recomposition"].get<double>(), 1e-12);
}

TEST(Cli, DecomposeFromSubspaceFile) {
  Scratch s;
  auto rng = random::substream(2, "cli", 1);
  const ComplexMatrix g = random::general_linear(rng, 3);
  const auto x = s.write("x.json", io::matrix_to_json(g));
  const auto e = s.write("e.json", json::array({io::matrix_to_json(diag({1, 0, 0})),
                                                io::matrix_to_json(diag({0, 1, 0})),
                                                io::matrix_to_json(diag({0, 0, 1}))}));
  const auto r = run_cli({"decompose", "--matrix", x, "--subspace", e, "--check", "--tol", "1e-10"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  const ComplexMatrix k = io::matrix_from_json(j["k"]);
  const ComplexMatrix f = io::matrix_from_json(j["f"]);
  const ComplexMatrix ee = io::matrix_from_json(j["e"]);
  EXPECT_LT((k * f * ee - g).norm() / g.norm(), 1e-10);
  EXPECT_LT((ee - ComplexMatrix(ee.diagonal().asDiagonal())).norm(), 1e-10);
}

TEST(Cli, ProjectAndGeodesic) {
  Scratch s;
  const auto p = s.write("p.json", io::matrix_to_json(mat({{2, 1}, {1, 2}})));
  const auto r = run_cli({"project", "--matrix", p, "--subspace", "builtin:diagonal"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_TRUE(j["converged"].get<bool>());
  EXPECT_NEAR(j["distance"].get<double>(), 0.7768361992120933, 1e-12);

  const auto q = s.write("q.json", io::matrix_to_json(diag({4, 9})));
  const auto one = s.write("one.json", io::matrix_to_json(diag({1, 1})));
  const auto g = run_cli({"geodesic", "--from", one, "--to", q, "--t", "0.5"});
  ASSERT_EQ(g.code, 0) << g.err;
  EXPECT_LT((io::matrix_from_json(json::parse(g.out)) - diag({2, 3})).norm(), 1e-14);
}

TEST(Cli, OrbitRetract) {
  Scratch s;
  const auto frame = s.write("x.json", io::matrix_to_json(Complex(0, 1) * diag({1, -1})));
  auto rng = random::substream(2, "cli", 2);
  const auto g = s.write("g.json", io::matrix_to_json(random::special_linear(rng, 2)));
  const auto r = run_cli({"orbit-retract", "--group", g, "--frame", frame});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_LE(json::parse(r.out)["residual"].get<double>(), 1e-8);

  const auto d = s.write("d.json", io::matrix_to_json(Complex(0, 1) * diag({1, 0, -1})));
  const auto g3 = s.write("g3.json", io::matrix_to_json(random::special_linear(rng, 3)));
  const auto a = run_cli({"orbit-retract", "--group", g3, "--frame", d, "--derivation", d});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_LE(json::parse(a.out)["residual"].get<double>(), 1e-8);
}

TEST(Cli, OutputFile) {
  Scratch s;
  const auto p = s.write("p.json", io::matrix_to_json(diag({1, 1})));
  const auto q = s.write("q.json", io::matrix_to_json(diag({1, std::exp(2.0)})));
  const auto r = run_cli({"dist", "--from", p, "--to", q, "--output", s.path("out.txt")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "");
  EXPECT_NEAR(std::stod(read_file(s.path("out.txt"))), 2.0, 1e-14);

  const auto bad = run_cli({"dist", "--from", p, "--to", q, "--output", "/nonexistent/dir/out"});
  EXPECT_EQ(bad.code, 3);
  EXPECT_EQ(json::parse(bad.err)["error"], "IoError");
}

TEST(Cli, ExitCodes) {
  Scratch s;
  const auto p = s.write("p.json", io::matrix_to_json(mat({{3, 1}, {1, 2}})));

  const auto usage = run_cli({"dist", "--from", p});
  EXPECT_EQ(usage.code, 3);
  EXPECT_EQ(json::parse(usage.err)["error"], "UsageError");
  EXPECT_EQ(run_cli({}).code, 3);
  EXPECT_EQ(run_cli({"verify", "--suite", "nope"}).code, 3);
  EXPECT_EQ(run_cli({"verify", "--tol", "-1"}).code, 3);
  EXPECT_EQ(run_cli({"--help"}).code, 0);

  const auto missing = run_cli({"dist", "--from", p, "--to", s.path("missing.json")});
  EXPECT_EQ(missing.code, 3);
  EXPECT_EQ(json::parse(missing.err)["error"], "IoError");
  EXPECT_EQ(run_cli({"dist", "--from", p, "--to", s.write("junk.json", std::string("[["))}).code, 3);

  // Not positive definite.
  const auto indefinite = s.write("i.json", io::matrix_to_json(diag({1, -1})));
  EXPECT_EQ(run_cli({"dist", "--from", p, "--to", indefinite}).code, 1);

  // A span that is not closed under [X,[X,Y]].
  const auto open = s.write("open.json", json::array({io::matrix_to_json(diag({1, 0})),
                                                      io::matrix_to_json(mat({{0, 1}, {1, 0}}))}));
  const auto not_closed = run_cli({"project", "--matrix", p, "--subspace", open});
  EXPECT_EQ(not_closed.code, 1);
  EXPECT_EQ(json::parse(not_closed.err)["error"], "ValidationError");

  const auto stalled =
      run_cli({"project", "--matrix", p, "--subspace", "builtin:diagonal", "--max-iter", "1", "--tol", "1e-300"});
  EXPECT_EQ(stalled.code, 2);
  EXPECT_FALSE(json::parse(stalled.out)["converged"].get<bool>());
  EXPECT_EQ(json::parse(stalled.err)["error"], "NonConvergence");

  const auto decompose_stalled = run_cli(
      {"decompose", "--matrix", p, "--subspace", "builtin:diagonal", "--max-iter", "1", "--tol", "1e-300"});
  EXPECT_EQ(decompose_stalled.code, 2);

  const auto singular = s.write("s.json", io::matrix_to_json(mat({{1, 1}, {1, 1}})));
  EXPECT_EQ(run_cli({"decompose", "--matrix", singular, "--subspace", "builtin:zero"}).code, 1);

  const auto sl = s.write("g.json", io::matrix_to_json(diag({2, 2})));
  const auto frame = s.write("x.json", io::matrix_to_json(Complex(0, 1) * diag({1, -1})));
  EXPECT_EQ(run_cli({"orbit-retract", "--group", sl, "--frame", frame}).code, 1);
}

TEST(Cli, VerifySuites) {
  const auto r = run_cli({"verify", "--suite", "curvature", "--n", "3", "--trials", "1000", "--seed", "42"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("suite=curvature PASS"), std::string::npos);
  EXPECT_NE(r.out.find("verify PASS"), std::string::npos);

  const auto all = run_cli({"verify", "--n", "2", "--trials", "20", "--seed", "3"});
  EXPECT_EQ(all.code, 0) << all.out;
  for (const auto& name : verify::suite_names()) {
    EXPECT_NE(all.out.find("suite=" + name + " PASS"), std::string::npos) << name;
  }
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args{"verify", "--n", "3", "--trials", "50", "--seed", "11"};
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, run_cli({"verify", "--n", "3", "--trials", "50", "--seed", "12"}).out);

  // Worker count does not change the reductions.
  const auto seq = verify::run_suite("mostow", 3, 40, 5, 0);
  const auto par = verify::run_suite("mostow", 3, 40, 5, 4);
  EXPECT_EQ(verify::render(seq), verify::render(par));
}

TEST(Cli, Subprocess) {
  const std::string cmd = std::string(MOSTOW_GEO_CLI) + " verify --suite triangles --n 2 --trials 10 --seed 1";
  std::string out;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  std::array<char, 256> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  const int status = ::pclose(pipe);
  EXPECT_EQ(status, 0);
  EXPECT_EQ(out, run_cli({"verify", "--suite", "triangles", "--n", "2", "--trials", "10", "--seed", "1"}).out);
}
