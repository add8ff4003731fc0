#include <gtest/gtest.h>

#include <cmath>

#include "mostow/ad_calculus.hpp"
#include "mostow/random.hpp"
#include "support.hpp"

using namespace mostow;
using support::diag;
using support::mat;

namespace {

const ComplexMatrix kSigmaX = mat({{0, 1}, {1, 0}});

// scipy.linalg.expm_frechet(X, Y) (tests/oracles/gen_oracles.py).
const ComplexMatrix kX = mat({{0.3, {1.0, -0.5}, 0.2}, {{1.0, 0.5}, -1.1, {0, 0.4}}, {0.2, {0, -0.4}, 0.6}});
const ComplexMatrix kY = mat({{1.0, {0, -0.3}, 0.5}, {{0, 0.3}, 0.2, {0.7, -0.1}}, {0.5, {0.7, 0.1}, -0.8}});
const ComplexMatrix kDexpXY =
    mat({{{2.2888099759804472, 0}, {0.77740170341925308, -0.73172486395077241}, {1.433026264998728, -0.21448321260596701}},
         {{0.77740170341925308, 0.73172486395077241}, {0.43099643386841174, 0}, {1.052932934167141, -0.036472733302342908}},
         {{1.4330262649987282, 0.21448321260596698}, {1.052932934167141, 0.036472733302342748}, {-1.276038084819656, 0}}});

Hermitian commuting_partner(const Hermitian& x) {
  // A polynomial in X commutes with X.
  return Hermitian::part_of(x.matrix() * x.matrix() - 0.5 * x.matrix());
}

}  // namespace

TEST(AdFunction, Examples) {
  auto rng = random::substream(1, "ad", 0);
  const ComplexMatrix y = random::gaussian(rng, 3);
  EXPECT_LT((apply_ad_function(Hermitian::zero(3), AdFunction::tau(), y) - y).norm(), 1e-15);

  const Hermitian x(diag({1, -1}));
  EXPECT_LT((apply_ad_function(x, AdFunction::identity(), kSigmaX) - mat({{0, 2}, {-2, 0}})).norm(),
            1e-15);
  const double s = std::sinh(1.0);
  EXPECT_LT((apply_ad_function(x, AdFunction::tau(), kSigmaX) - mat({{0, s}, {s, 0}})).norm(), 1e-15);
}

TEST(AdFunction, IdentityIsCommutator) {
  auto rng = random::substream(2, "ad", 0);
  const Hermitian x = random::hermitian(rng, 5);
  const ComplexMatrix y = random::gaussian(rng, 5);
  EXPECT_LT((apply_ad_function(x, AdFunction::identity(), y) - commutator(x.matrix(), y)).norm(),
            1e-12);
}

TEST(AdFunction, SmallGapsUseLimit) {
  const Hermitian x(diag({1.0, 1.0 + 1e-9}));
  const auto f = ad_multipliers(eig_hermitian(x), AdFunction::t_coth_half());
  EXPECT_EQ(f(0, 1), 2.0);
  EXPECT_EQ(AdFunction::tau()(0.0), 1.0);
  EXPECT_EQ(AdFunction::tau_inverse()(1e-12), 1.0);
}

TEST(AdFunction, TauMultiplierBounds) {
  for (std::uint64_t t = 0; t < 200; ++t) {
    auto rng = random::substream(3, "tau-bounds", t);
    const Hermitian x = random::hermitian(rng, 2 + static_cast<Index>(t % 6));
    const double s = spectral_norm(x.matrix());
    const auto f = ad_multipliers(eig_hermitian(x), AdFunction::tau());
    EXPECT_GE(f.minCoeff(), 1.0);
    EXPECT_LE(f.maxCoeff(), std::sinh(2 * s) / s);
  }
}

TEST(AdFunction, SelfAdjoint) {
  for (std::uint64_t t = 0; t < 20; ++t) {
    auto rng = random::substream(4, "selfadj", t);
    const Hermitian x = random::hermitian(rng, 4);
    const ComplexMatrix a = random::gaussian(rng, 4);
    const ComplexMatrix b = random::gaussian(rng, 4);
    for (const auto& f : {AdFunction::tau(), AdFunction::t_coth_half(), AdFunction::sinh()}) {
      const Complex lhs = hs_inner(apply_ad_function(x, f, a), b);
      const Complex rhs = hs_inner(a, apply_ad_function(x, f, b));
      EXPECT_LT(std::abs(lhs - rhs), 1e-10 * (1 + std::abs(lhs))) << f.name;
    }
  }
}

TEST(AdFunction, Parity) {
  auto rng = random::substream(5, "parity", 0);
  const Hermitian x = random::hermitian(rng, 4);
  const Hermitian y = random::hermitian(rng, 4);
  const ComplexMatrix even = apply_ad_function(x, AdFunction::t_coth_half(), y.matrix());
  EXPECT_LT((even - even.adjoint()).norm(), 1e-12);
  const ComplexMatrix odd = apply_ad_function(x, AdFunction::identity(), y.matrix());
  EXPECT_LT((odd + odd.adjoint()).norm(), 1e-12);
}

TEST(Dexp, TrivialCases) {
  auto rng = random::substream(6, "dexp", 0);
  const Hermitian x = random::hermitian(rng, 3);
  const Hermitian y = random::hermitian(rng, 3);
  EXPECT_LT((dexp(Hermitian::zero(3), y) - y.matrix()).norm(), 1e-14);
  const Hermitian c = commuting_partner(x);
  EXPECT_LT(support::rel_err(dexp(x, c), exp_h(x).matrix() * c.matrix()), 1e-12);
}

TEST(Dexp, FrozenFrechetDerivative) {
  EXPECT_LT(support::rel_err(dexp(Hermitian(kX), Hermitian(kY)), kDexpXY), 1e-13);
}

TEST(Dexp, MatchesCentralDifferences) {
  for (std::uint64_t t = 0; t < 200; ++t) {
    auto rng = random::substream(7, "dexp-fd", t);
    const Index n = 2 + static_cast<Index>(t % 4);
    const Hermitian x = random::hermitian(rng, n);
    const Hermitian y = random::hermitian(rng, n);
    const ComplexMatrix fd = support::fd_dexp(x.matrix(), y.matrix());
    EXPECT_LE((dexp(x, y) - fd).norm() / fd.norm(), 1e-6);
  }
}

TEST(DexpInv, RoundTripAndContraction) {
  EXPECT_LT((dexp_inv(Hermitian::zero(2), kSigmaX) - kSigmaX).norm(), 1e-15);
  for (std::uint64_t t = 0; t < 100; ++t) {
    auto rng = random::substream(8, "dexp-inv", t);
    const Index n = 2 + static_cast<Index>(t % 5);
    const Hermitian x = random::hermitian(rng, n);
    const Hermitian y = random::hermitian(rng, n);
    EXPECT_LE((dexp_inv(x, dexp(x, y)) - y.matrix()).norm(), 1e-9 * (1 + y.norm()));
    const ComplexMatrix w = random::gaussian(rng, n);
    EXPECT_LE(apply_ad_function(x, AdFunction::tau_inverse(), w).norm(), w.norm() * (1 + 1e-14));
  }
}

TEST(GammaCoth, TrivialCases) {
  auto rng = random::substream(9, "gamma", 0);
  const Hermitian x = random::hermitian(rng, 3);
  const Hermitian y = random::hermitian(rng, 3);
  EXPECT_LT((gamma_coth(Hermitian::zero(3), y) - 2.0 * y).norm(), 1e-14);
  const Hermitian c = commuting_partner(x);
  EXPECT_LT((gamma_coth(x, c) - 2.0 * c).norm(), 1e-12);
}

TEST(GammaCoth, RecomposesAnticommutatorOfExp) {
  for (std::uint64_t t = 0; t < 50; ++t) {
    auto rng = random::substream(10, "gamma-recompose", t);
    const Index n = 2 + static_cast<Index>(t % 4);
    const Hermitian x = random::hermitian(rng, n);
    const Hermitian y = random::hermitian(rng, n);
    const ComplexMatrix ex = support::expm(x.matrix());
    const ComplexMatrix want = y.matrix() * ex + ex * y.matrix();
    EXPECT_LE(support::rel_err(dexp(x, gamma_coth(x, y)), want), 1e-8);
  }
}
