// Copyright 2026 The qite Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qite/state.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracle.hpp"
#include "qite/error.hpp"

namespace qite {
namespace {

TEST(BasisState, BigEndian) {
  const StateVector s = basis_state(2, "00");
  EXPECT_EQ(s.amplitudes(), (CVector(4) << 1, 0, 0, 0).finished());
  EXPECT_EQ(basis_state(1, "1").amplitudes(), (CVector(2) << 0, 1).finished());
  const StateVector five = basis_state(3, "101");
  EXPECT_EQ(five[5], Complex(1, 0));
  EXPECT_NEAR(five.norm(), 1.0, 0);
  EXPECT_THROW(basis_state(2, "1"), Error);
  EXPECT_THROW(basis_state(2, "12"), Error);
}

TEST(BitStrings, RoundTrip) {
  EXPECT_EQ(index_to_bits(5, 3), "101");
  EXPECT_EQ(bits_to_index("101"), 5u);
  EXPECT_EQ(index_to_bits(0, 4), "0000");
}

TEST(EqualSuperposition, Amplitudes) {
  const StateVector one = equal_superposition(1);
  EXPECT_NEAR(one[0].real(), M_SQRT1_2, 1e-16);
  EXPECT_NEAR(one[1].real(), M_SQRT1_2, 1e-16);
  const StateVector two = equal_superposition(2);
  for (Index k = 0; k < 4; ++k) EXPECT_NEAR(two[k].real(), 0.5, 1e-16);
  // Overlap with every basis state is 2^{-Q}.
  const StateVector three = equal_superposition(3);
  for (std::uint64_t k = 0; k < 8; ++k) {
    EXPECT_NEAR(std::norm(inner(basis_state(3, index_to_bits(k, 3)), three)),
                0.125, 1e-15);
  }
}

TEST(Inner, Examples) {
  EXPECT_EQ(inner(basis_state(1, "0"), basis_state(1, "0")), Complex(1, 0));
  EXPECT_EQ(inner(basis_state(1, "0"), basis_state(1, "1")), Complex(0, 0));
  const StateVector psi = random_state(4, 99);
  EXPECT_NEAR(std::abs(inner(psi, psi)), 1.0, 1e-14);
  EXPECT_THROW(inner(psi, random_state(3, 1)), DimensionError);
}

TEST(RandomState, SeededAndNormalized) {
  const StateVector a = random_state(5, 7);
  const StateVector b = random_state(5, 7);
  const StateVector c = random_state(5, 8);
  EXPECT_EQ(a.amplitudes(), b.amplitudes());
  EXPECT_NE(a.amplitudes(), c.amplitudes());
  EXPECT_NEAR(a.norm(), 1.0, 1e-14);
  const StateVector r = random_state(3, 4, /*real_only=*/true);
  EXPECT_EQ(r.amplitudes().imag().norm(), 0.0);
}

TEST(StateVector, NormalizeRejectsZero) {
  StateVector z(2, CVector::Zero(4));
  EXPECT_THROW(z.normalize(), StateError);
  EXPECT_THROW(StateVector(2, CVector::Zero(3)), DimensionError);
}

TEST(Rotation, IdentityAndOracle) {
  const StateVector psi = random_state(3, 21);
  const StateVector same = apply_rotation(psi, parse_pauli("XYZ"), 0.0);
  EXPECT_LT((same.amplitudes() - psi.amplitudes()).norm(), 1e-15);

  const StateVector r =
      apply_rotation(basis_state(1, "0"), parse_pauli("Y"), M_PI / 2);
  const CVector want =
      oracle::expm(Complex(0, -M_PI / 4) * oracle::pauli_matrix('Y')) *
      basis_state(1, "0").amplitudes();
  EXPECT_LT((r.amplitudes() - want).norm(), 1e-14);
  EXPECT_NEAR(r[0].real(), M_SQRT1_2, 1e-14);
  EXPECT_NEAR(r[1].real(), M_SQRT1_2, 1e-14);
}

TEST(Rotation, GroupPropertyAndDenseOracle) {
  const StateVector psi = random_state(3, 3);
  const PauliString p = parse_pauli("YIX");
  const Real theta = 0.731;
  const StateVector twice =
      apply_rotation(apply_rotation(psi, p, theta / 2), p, theta / 2);
  const StateVector once = apply_rotation(psi, p, theta);
  EXPECT_LT((twice.amplitudes() - once.amplitudes()).norm(), 1e-14);
  const CVector want =
      oracle::expm(Complex(0, -theta / 2) * oracle::dense("YIX")) *
      psi.amplitudes();
  EXPECT_LT((once.amplitudes() - want).norm(), 1e-13);
}

TEST(SampleZ, Deterministic) {
  const SampleCounts c = sample_z(basis_state(2, "00"), 100, 3);
  EXPECT_EQ(c.counts.size(), 1u);
  EXPECT_EQ(c.counts.at("00"), 100u);
  const StateVector psi = random_state(3, 2);
  EXPECT_EQ(sample_z(psi, 1000, 9).counts, sample_z(psi, 1000, 9).counts);
  EXPECT_THROW(sample_z(psi, 0, 1), DomainError);
  StateVector bad(1, (CVector(2) << 1, 1).finished());
  EXPECT_THROW(sample_z(bad, 10, 1), StateError);
}

void expect_binomial(const SampleCounts& c, Real p) {
  const Real n = static_cast<Real>(c.shots);
  const Real sigma = std::sqrt(p * (1 - p) / n);
  std::uint64_t total = 0;
  for (const auto& [bits, k] : c.counts) {
    EXPECT_LE(std::abs(k / n - p), 5 * sigma) << bits;
    total += k;
  }
  EXPECT_EQ(total, c.shots);
}

TEST(SampleZ, BinomialStatistics) {
  const SampleCounts plus = sample_z(equal_superposition(1), 100000, 12345);
  EXPECT_EQ(plus.counts.size(), 2u);
  expect_binomial(plus, 0.5);
  const SampleCounts two = sample_z(equal_superposition(2), 40000, 777);
  EXPECT_EQ(two.counts.size(), 4u);
  expect_binomial(two, 0.25);
}

}  // namespace
}  // namespace qite
