#include "mostow/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace mostow::io {

namespace {

Eigen::MatrixXd real_block(const json& j, Index n, const char* key) {
  if (!j.is_array() || static_cast<Index>(j.size()) != n) {
    throw IoError(std::string("matrix: \"") + key + "\" must have n rows");
  }
  Eigen::MatrixXd m(n, n);
  for (Index i = 0; i < n; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != n) {
      throw IoError(std::string("matrix: \"") + key + "\" rows must have n entries");
    }
    for (Index k = 0; k < n; ++k) {
      const auto& v = row[static_cast<std::size_t>(k)];
      if (!v.is_number()) throw IoError(std::string("matrix: non-numeric entry in \"") + key + "\"");
      m(i, k) = v.get<double>();
    }
  }
  return m;
}

}  // namespace

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("re")) {
    throw IoError("matrix: expected an object with \"n\" and \"re\"");
  }
  if (!j["n"].is_number_integer() || j["n"].get<long long>() <= 0) {
    throw IoError("matrix: \"n\" must be a positive integer");
  }
  const Index n = j["n"].get<Index>();
  const Eigen::MatrixXd re = real_block(j["re"], n, "re");
  const Eigen::MatrixXd im = j.contains("im") ? real_block(j["im"], n, "im")
                                               : Eigen::MatrixXd::Zero(n, n);
  ComplexMatrix m(n, n);
  m.real() = re;
  m.imag() = im;
  if (!m.allFinite()) throw ValidationError("matrix: non-finite entry");
  return m;
}

json matrix_to_json(const ComplexMatrix& m) {
  json re = json::array();
  json im = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json r = json::array();
    json c = json::array();
    for (Index k = 0; k < m.cols(); ++k) {
      r.push_back(m(i, k).real());
      c.push_back(m(i, k).imag());
    }
    re.push_back(std::move(r));
    im.push_back(std::move(c));
  }
  return json{{"n", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

SubspaceBasis subspace_from_json(const json& j, Index n) {
  if (!j.is_array()) throw IoError("subspace: expected a JSON array of matrices");
  if (j.empty()) return SubspaceBasis::zero(n);
  std::vector<Hermitian> span;
  for (const auto& item : j) {
    const ComplexMatrix m = matrix_from_json(item);
    require_same_dim(m.rows(), n, "subspace");
    span.emplace_back(m);
  }
  return orthonormalize(span);
}

OrbitFrame frame_from_json(const json& j) {
  if (!j.is_object()) throw IoError("frame: expected a JSON object");
  if (j.contains("n")) return isotropy_split(matrix_from_json(j));
  if (j.contains("derivation")) {
    const ComplexMatrix d = matrix_from_json(j["derivation"]);
    if (j.contains("x")) require_same_dim(matrix_from_json(j["x"]).rows(), d.rows(), "frame");
    return affine_frame(d);
  }
  if (!j.contains("x")) throw IoError("frame: expected \"x\" and/or \"derivation\"");
  return isotropy_split(matrix_from_json(j["x"]));
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

namespace {

void dump_to(const json& j, std::ostringstream& os) {
  switch (j.type()) {
    case json::value_t::object: {
      os << '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) os << ',';
        first = false;
        os << json(k).dump() << ':';
        dump_to(v, os);
      }
      os << '}';
      break;
    }
    case json::value_t::array: {
      os << '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ',';
        dump_to(j[i], os);
      }
      os << ']';
      break;
    }
    case json::value_t::number_float:
      os << format_double(j.get<double>());
      break;
    default:
      os << j.dump();
  }
}

}  // namespace

std::string dump(const json& j) {
  std::ostringstream os;
  dump_to(j, os);
  return os.str();
}

}  // namespace mostow::io
