#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "mostow/linalg.hpp"
#include "mostow/orbits.hpp"
#include "mostow/triple_system.hpp"

namespace mostow::io {

using nlohmann::json;

/// {"n": int, "re": [[...]], "im": [[...]]}; a missing "im" means zero.
/// Throws IoError on malformed input.
ComplexMatrix matrix_from_json(const json& j);
json matrix_to_json(const ComplexMatrix& m);

/// JSON array of matrix objects spanning E over the reals. An empty array is
/// the zero subspace of dimension n.
SubspaceBasis subspace_from_json(const json& j, Index n);

/// {"x": matrix, "derivation": matrix?} or a bare matrix object (base point).
/// Skew-Hermitian validated. With a derivation the affine frame is returned.
OrbitFrame frame_from_json(const json& j);

json read_json_file(const std::filesystem::path& path);

/// Serializes with every floating-point number printed to 17 significant
/// digits (always with a decimal point or exponent), compact separators.
std::string dump(const json& j);

std::string format_double(double v);

}  // namespace mostow::io
