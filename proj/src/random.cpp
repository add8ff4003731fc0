#include "mostow/random.hpp"

#include <cmath>

namespace mostow::random {

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

Hermitian scaled(const ComplexMatrix& m, double max_norm) {
  Hermitian h = Hermitian::part_of(m);
  const double norm = h.norm();
  return norm > max_norm ? (max_norm / norm) * h : h;
}

}  // namespace

Rng substream(std::uint64_t seed, std::string_view stream, std::uint64_t index) {
  const std::uint64_t tag = fnv1a(stream);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(tag), static_cast<std::uint32_t>(tag >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

ComplexMatrix gaussian(Rng& rng, Index n) {
  std::normal_distribution<double> normal;
  ComplexMatrix m(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  return m;
}

Hermitian hermitian(Rng& rng, Index n, double max_norm) {
  return scaled(gaussian(rng, n), max_norm);
}

PdMatrix pd(Rng& rng, Index n, double max_norm) { return exp_h(hermitian(rng, n, max_norm)); }

Unitary unitary(Rng& rng, Index n) { return exp_i(hermitian(rng, n, 2.0 * M_PI)); }

Unitary special_unitary(Rng& rng, Index n) {
  const Unitary u = unitary(rng, n);
  const Complex det = u.matrix().determinant();
  const Complex root = std::polar(1.0, -std::arg(det) / static_cast<double>(n));
  return Unitary(root * u.matrix(), 1e-9);
}

ComplexMatrix general_linear(Rng& rng, Index n, double max_norm) {
  const Unitary u = unitary(rng, n);
  return u.matrix() * pd(rng, n, max_norm).matrix();
}

ComplexMatrix special_linear(Rng& rng, Index n, double max_norm) {
  const ComplexMatrix g = general_linear(rng, n, max_norm);
  const Complex det = g.determinant();
  return g / std::pow(det, 1.0 / static_cast<double>(n));
}

Hermitian in_subspace(Rng& rng, const SubspaceBasis& e, double max_norm) {
  if (e.dim() == 0) return Hermitian::zero(e.n());
  std::normal_distribution<double> normal;
  RealVector c(static_cast<Index>(e.dim()));
  for (Index i = 0; i < c.size(); ++i) c(i) = normal(rng);
  if (c.norm() > max_norm) c *= max_norm / c.norm();
  return e.combine(c);
}

}  // namespace mostow::random
