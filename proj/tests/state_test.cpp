#include "globent/state.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "globent/errors.hpp"
#include "globent/seed.hpp"
#include "oracles.hpp"

using namespace globent;

namespace {

const double kR2 = 1.0 / std::sqrt(2.0);

void expect_amps(const PureState& psi, const std::vector<cplx>& ref, double tol = 1e-15) {
  ASSERT_EQ(psi.dim(), ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) {
    EXPECT_NEAR(psi[i].real(), ref[i].real(), tol) << "i=" << i;
    EXPECT_NEAR(psi[i].imag(), ref[i].imag(), tol) << "i=" << i;
  }
}

PureState bell() { return PureState::from_amplitudes(2, {kR2, 0, 0, kR2}); }

}  // namespace

// ---------- from_amplitudes ----------
TEST(FromAmplitudes, BasisAndConvention) {
  expect_amps(PureState::from_amplitudes(1, {1, 0}), {1, 0});
  // |0,1> sits at index 1: qubit 1 is the most significant bit.
  const auto psi = PureState::from_amplitudes(2, {0, 1, 0, 0});
  EXPECT_EQ(psi[1], cplx(1, 0));
}

TEST(FromAmplitudes, Normalizes345) {
  const auto psi = PureState::from_amplitudes(1, {3, cplx(0, 4)});
  expect_amps(psi, {0.6, cplx(0, 0.8)});
}

TEST(FromAmplitudes, Errors) {
  EXPECT_THROW(PureState::from_amplitudes(2, {1, 0, 0}), DimensionError);
  EXPECT_THROW(PureState::from_amplitudes(1, {0, 0}), NormError);
  EXPECT_THROW(PureState::from_amplitudes(0, {1}), DimensionError);
  EXPECT_THROW(PureState::basis(kMaxQubits + 1, 0), DimensionError);
  EXPECT_THROW(PureState::from_normalized(1, {1, 1}), NormError);
}

// ---------- product_state ----------
TEST(ProductState, Examples) {
  const std::vector<QubitFactor> zero_one{{0, 1}, {1, 0}};
  expect_amps(product_state(zero_one), {0, 1, 0, 0});

  const std::vector<QubitFactor> plus{{kR2, kR2}, {kR2, kR2}};
  expect_amps(product_state(plus), {0.5, 0.5, 0.5, 0.5}, 1e-15);
}

TEST(ProductState, IndexConvention) {
  const std::vector<QubitFactor> f{{0, 1}, {0, 1}, {1, 0}};
  const auto psi = product_state(f);
  for (std::size_t i = 0; i < psi.dim(); ++i) EXPECT_EQ(psi[i], cplx(i == 1 ? 1.0 : 0.0, 0.0));
}

TEST(ProductState, RejectsUnnormalizedFactor) {
  const std::vector<QubitFactor> f{{1, 1}};
  EXPECT_THROW(product_state(f), NormError);
  EXPECT_THROW(product_state(std::vector<QubitFactor>{}), DimensionError);
}

TEST(ProductState, MatchesNaiveKroneckerExactly) {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 10; ++n) {
    std::vector<QubitFactor> f;
    for (int q = 0; q < n; ++q) f.push_back(oracle::random_factor(rng));
    const auto psi = product_state(f);
    const auto ref = oracle::kron_factors(f);
    ASSERT_EQ(psi.dim(), ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) ASSERT_EQ(psi[i], ref[i]) << "n=" << n;
  }
}

// ---------- decompose / recompose ----------
TEST(Decompose, Examples) {
  const auto psi01 = PureState::from_amplitudes(2, {0, 1, 0, 0});
  auto d = decompose(psi01, 1);
  EXPECT_EQ(d.u, (Amplitudes{0, 1}));
  EXPECT_EQ(d.v, (Amplitudes{0, 0}));
  d = decompose(psi01, 2);
  EXPECT_EQ(d.u, (Amplitudes{0, 0}));
  EXPECT_EQ(d.v, (Amplitudes{1, 0}));

  d = decompose(bell(), 1);
  EXPECT_NEAR(std::abs(d.u[0] - kR2), 0.0, 1e-15);
  EXPECT_EQ(d.u[1], cplx(0, 0));
  EXPECT_EQ(d.v[0], cplx(0, 0));
  EXPECT_NEAR(std::abs(d.v[1] - kR2), 0.0, 1e-15);
}

TEST(Decompose, MatchesIndexGatherOracle) {
  const auto psi = random_state(5, 3);
  for (int n = 1; n <= 5; ++n) {
    const auto d = decompose(psi, n);
    EXPECT_EQ(d.u, oracle::gather_slice(psi.amplitudes(), 5, n, 0));
    EXPECT_EQ(d.v, oracle::gather_slice(psi.amplitudes(), 5, n, 1));
  }
}

TEST(Decompose, QubitOutOfRange) {
  EXPECT_THROW(decompose(bell(), 0), DimensionError);
  EXPECT_THROW(decompose(bell(), 3), DimensionError);
}

TEST(Recompose, Examples) {
  expect_amps(recompose({2, 1, {0, 1}, {0, 0}}), {0, 1, 0, 0});
  expect_amps(recompose({2, 2, {0, 0}, {1, 0}}), {0, 1, 0, 0});
  EXPECT_THROW(recompose({2, 1, {1, 0}, {1, 0}}), NormError);
}

TEST(Recompose, RoundTripIsBitExactWithNormSplit) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const int n_qubits = 1 + static_cast<int>(s % 8);
    const auto psi = random_state(n_qubits, mix_seed(99, s));
    for (int n = 1; n <= n_qubits; ++n) {
      const auto d = decompose(psi, n);
      EXPECT_NEAR(norm_sq(d.u) + norm_sq(d.v), 1.0, 1e-12);
      ASSERT_EQ(recompose(d), psi);
    }
  }
}

// ---------- inner ----------
TEST(Inner, Examples) {
  const auto s01 = PureState::basis(2, 1);
  EXPECT_EQ(inner(s01, s01), cplx(1, 0));
  EXPECT_EQ(inner(PureState::basis(2, 0), PureState::basis(2, 3)), cplx(0, 0));
  EXPECT_NEAR(std::abs(inner(bell(), bell()) - 1.0), 0.0, 1e-15);
  EXPECT_THROW(inner(bell(), PureState::basis(3, 0)), DimensionError);
}

TEST(Inner, ConjugateLinearInFirstArgument) {
  const auto psi = random_state(3, 1);
  const auto phi = random_state(3, 2);
  const cplx i{0, 1};
  Amplitudes scaled(psi.amplitudes().begin(), psi.amplitudes().end());
  for (auto& z : scaled) z *= i;
  EXPECT_NEAR(std::abs(inner(scaled, phi.amplitudes()) + i * inner(psi, phi)), 0.0, 1e-15);
  EXPECT_LE(std::abs(inner(psi, phi)), 1.0 + 1e-12);
}

// ---------- random_state ----------
TEST(RandomState, DeterministicAndNormalized) {
  EXPECT_EQ(random_state(2, 42), random_state(2, 42));
  EXPECT_NE(random_state(2, 42), random_state(2, 43));
  EXPECT_NEAR(norm_sq(random_state(2, 42).amplitudes()), 1.0, 1e-12);
}

TEST(RandomState, HaarFirstMoment) {
  // E|<0..0|psi>|^2 = 1/2^N; the variance of |psi_0|^2 for Haar states in
  // dimension d is (d-1)/(d^2 (d+1)).
  const int samples = 10000;
  const double d = 8.0;
  double sum = 0.0;
  for (int s = 0; s < samples; ++s) sum += std::norm(random_state(3, mix_seed(5, s))[0]);
  const double mean = sum / samples;
  const double se = std::sqrt((d - 1) / (d * d * (d + 1)) / samples);
  EXPECT_NEAR(mean, 1.0 / 8.0, 3 * se);
}

// ---------- local operations ----------
TEST(PermuteQubits, MovesFactors) {
  const std::vector<QubitFactor> f{{1, 0}, {0, 1}, {kR2, kR2}};
  const std::vector<QubitFactor> g{{kR2, kR2}, {1, 0}, {0, 1}};
  const std::vector<int> perm{2, 3, 1};
  EXPECT_EQ(permute_qubits(product_state(f), perm), product_state(g));
  EXPECT_THROW(permute_qubits(product_state(f), std::vector<int>{1, 1, 2}), DimensionError);
}

TEST(ApplySingleQubit, FlipsTheNamedQubit) {
  const Mat2 x{{{0, 1}, {1, 0}}};
  // X on qubit 3 of |000> gives |001> = index 1.
  EXPECT_EQ(apply_single_qubit(PureState::basis(3, 0), 3, x), PureState::basis(3, 1));
  EXPECT_EQ(apply_single_qubit(PureState::basis(3, 0), 1, x), PureState::basis(3, 4));
}
