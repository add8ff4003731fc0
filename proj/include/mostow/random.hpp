#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "mostow/linalg.hpp"
#include "mostow/triple_system.hpp"

namespace mostow::random {

using Rng = std::mt19937_64;

/// Independent generator for trial `index` of stream `stream` under `seed`.
Rng substream(std::uint64_t seed, std::string_view stream, std::uint64_t index);

inline constexpr double kDefaultScale = 3.0;

/// (G + G*)/2 with i.i.d. standard normal real and imaginary parts, scaled
/// down to ||H||_F <= max_norm.
Hermitian hermitian(Rng& rng, Index n, double max_norm = kDefaultScale);
/// exp of a random Hermitian.
PdMatrix pd(Rng& rng, Index n, double max_norm = kDefaultScale);
Unitary unitary(Rng& rng, Index n);
Unitary special_unitary(Rng& rng, Index n);
/// unitary * pd: invertible with bounded condition number.
ComplexMatrix general_linear(Rng& rng, Index n, double max_norm = kDefaultScale);
/// general_linear rescaled to det = 1.
ComplexMatrix special_linear(Rng& rng, Index n, double max_norm = kDefaultScale);
/// Random element of a subspace, ||.||_F <= max_norm.
Hermitian in_subspace(Rng& rng, const SubspaceBasis& e, double max_norm = kDefaultScale);
/// Standard complex Gaussian matrix.
ComplexMatrix gaussian(Rng& rng, Index n);

}  // namespace mostow::random
