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

#include "qite/pauli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>

#include "oracle.hpp"
#include "qite/error.hpp"
#include "qite/state.hpp"

namespace qite {
namespace {

TEST(PauliString, ParsesWeight) {
  EXPECT_EQ(parse_pauli("ZZ").qubits(), 2);
  EXPECT_EQ(parse_pauli("ZZ").weight(), 2);
  EXPECT_EQ(parse_pauli("IIII").weight(), 0);
  EXPECT_TRUE(parse_pauli("IIII").is_identity());
  const PauliString p = parse_pauli("XIZY");
  EXPECT_EQ(p.qubits(), 4);
  EXPECT_EQ(p.weight(), 3);
  EXPECT_EQ(p.to_string(), "XIZY");
  EXPECT_EQ(p.y_count(), 1);
  EXPECT_EQ(p.op(0), Pauli::X);
  EXPECT_EQ(p.op(3), Pauli::Y);
  EXPECT_EQ(p.support(), (std::vector<int>{0, 2, 3}));
}

TEST(PauliString, RejectsBadCharacters) {
  try {
    parse_pauli("XQZ");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 1u);
  }
  EXPECT_THROW(parse_pauli(""), ParseError);
  EXPECT_THROW(parse_pauli("xz"), ParseError);
}

TEST(ApplyPauli, BitAndSignFlips) {
  const StateVector one = apply_pauli(basis_state(1, "0"), parse_pauli("X"));
  EXPECT_NEAR(std::abs(one[1] - Complex(1, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(one[0]), 0.0, 1e-15);

  const StateVector minus =
      apply_pauli(equal_superposition(1), parse_pauli("Z"));
  EXPECT_NEAR(minus[0].real(), M_SQRT1_2, 1e-15);
  EXPECT_NEAR(minus[1].real(), -M_SQRT1_2, 1e-15);
}

TEST(ApplyPauli, MatchesKroneckerOracle) {
  for (const std::string s : {"XYZ", "YYI", "ZIX", "IYY", "XXX"}) {
    const StateVector psi = random_state(3, 11);
    const StateVector got = apply_pauli(psi, parse_pauli(s));
    const CVector want = oracle::dense(s) * psi.amplitudes();
    EXPECT_LT((got.amplitudes() - want).norm(), 1e-14) << s;
  }
}

TEST(ApplyPauli, Involution) {
  const StateVector psi = random_state(3, 5);
  const PauliString p = parse_pauli("XYZ");
  const StateVector back = apply_pauli(apply_pauli(psi, p), p);
  EXPECT_LT((back.amplitudes() - psi.amplitudes()).norm(), 1e-14);
}

TEST(Expectation, Examples) {
  const Hamiltonian z = parse_hamiltonian("1.0 Z\n");
  EXPECT_NEAR(expectation(basis_state(1, "0"), z), 1.0, 1e-15);
  EXPECT_NEAR(expectation(equal_superposition(1), z), 0.0, 1e-15);
  const Hamiltonian h = parse_hamiltonian("0.5 II\n-0.5 ZZ\n");
  EXPECT_NEAR(expectation(basis_state(2, "00"), h), 0.0, 1e-15);
}

TEST(Expectation, MatchesDenseOracle) {
  const Hamiltonian h = oracle::random_hamiltonian(4, 2, 9, 3);
  const StateVector psi = random_state(4, 8);
  const CMatrix m = oracle::dense(h);
  const Complex want = psi.amplitudes().dot(m * psi.amplitudes());
  EXPECT_NEAR(expectation(psi, h), want.real(), 1e-12);
  EXPECT_LT((apply_hamiltonian(h, psi) - m * psi.amplitudes()).norm(), 1e-12);
}

TEST(ToDense, Examples) {
  const CMatrix z = to_dense(parse_hamiltonian("1.0 Z"));
  EXPECT_LT((z - oracle::pauli_matrix('Z')).norm(), 1e-15);

  const CMatrix m = to_dense(parse_hamiltonian("0.5 II\n-0.5 ZZ"));
  CMatrix want = CMatrix::Zero(4, 4);
  want.diagonal() << 0, 1, 1, 0;
  EXPECT_LT((m - want).norm(), 1e-15);
}

TEST(ToDense, HermitianAndMatchesKronecker) {
  const Hamiltonian h = oracle::random_hamiltonian(5, 3, 12, 17);
  const CMatrix m = to_dense(h);
  EXPECT_LE((m - m.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((m - oracle::dense(h)).norm(), 1e-12);
}

TEST(ToDense, CapIsEnforced) {
  const Hamiltonian h = parse_hamiltonian("1.0 ZIIIII");
  EXPECT_THROW(to_dense(h, 5), ResourceError);
  EXPECT_NO_THROW(to_dense(h, 6));
}

TEST(Hamiltonian, ParseErrorsCarryLineNumbers) {
  try {
    parse_hamiltonian("1.0 Z\n# ok\nfoo Z\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_hamiltonian("1.0 Z\n1.0 ZZ\n"), ParseError);
  EXPECT_THROW(parse_hamiltonian("nan Z\n"), Error);
}

TEST(Hamiltonian, OrderBoundValidated) {
  std::vector<PauliTerm> terms{{1.0, parse_pauli("ZZZ")}};
  EXPECT_THROW(Hamiltonian(3, terms, 2), InputError);
  EXPECT_EQ(Hamiltonian(3, terms).order_bound(), 3);
}

TEST(Hamiltonian, TextRoundTrip) {
  const Hamiltonian h = oracle::random_hamiltonian(3, 2, 5, 2);
  const Hamiltonian back = parse_hamiltonian(to_text(h));
  ASSERT_EQ(back.size(), h.size());
  for (std::size_t k = 0; k < h.size(); ++k) {
    EXPECT_EQ(back.terms()[k].coefficient, h.terms()[k].coefficient);
    EXPECT_EQ(back.terms()[k].string, h.terms()[k].string);
  }
}

TEST(Hamiltonian, MaxTermCount) {
  EXPECT_DOUBLE_EQ(max_term_count(3, 1), 3 * 4);
  EXPECT_DOUBLE_EQ(max_term_count(3, 2), 3 * 16);
}

}  // namespace
}  // namespace qite
