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
#pragma once

#include <bit>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qite/state_vector.hpp"
#include "qite/types.hpp"

namespace qite {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(Pauli p);

/**
 * Tensor product of single-qubit Paulis stored as X and Z bit masks
 * (Y = i X Z per qubit). Character k of the text form is qubit k, which
 * maps to basis-index bit (qubits - 1 - k).
 */
class PauliString {
 public:
  static constexpr int kMaxQubits = 64;

  PauliString() = default;
  PauliString(int qubits, std::uint64_t x_mask, std::uint64_t z_mask);

  static PauliString identity(int qubits);

  int qubits() const noexcept { return qubits_; }
  std::uint64_t x_mask() const noexcept { return x_; }
  std::uint64_t z_mask() const noexcept { return z_; }
  std::uint64_t support_mask() const noexcept { return x_ | z_; }
  int weight() const noexcept { return std::popcount(x_ | z_); }
  int y_count() const noexcept { return std::popcount(x_ & z_); }
  bool is_identity() const noexcept { return (x_ | z_) == 0; }
  bool is_diagonal() const noexcept { return x_ == 0; }

  Pauli op(int qubit) const;

  /// Qubit labels (ascending) on which the string acts non-trivially.
  std::vector<int> support() const;

  std::string to_string() const;

  /// Basis-index bit that carries `qubit`.
  std::uint64_t bit(int qubit) const noexcept {
    return std::uint64_t{1} << (qubits_ - 1 - qubit);
  }

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  int qubits_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

/// Parses a string over {I,X,Y,Z}; throws ParseError naming the offending
/// position for anything else, and for the empty string.
PauliString parse_pauli(std::string_view text);

struct PauliTerm {
  Real coefficient = 0.0;
  PauliString string;
};

/**
 * Real linear combination of Pauli strings on a fixed register. Terms keep
 * their construction order, which is the order Trotter layers apply them.
 */
class Hamiltonian {
 public:
  /// `order_bound` defaults to the largest term weight; when given, every
  /// term must respect it.
  Hamiltonian(int qubits, std::vector<PauliTerm> terms,
              std::optional<int> order_bound = std::nullopt);

  int qubits() const noexcept { return qubits_; }
  int order_bound() const noexcept { return order_bound_; }
  const std::vector<PauliTerm>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  bool is_diagonal() const;

  /// Sum of |a_i|; an upper bound on the spectral radius.
  Real coefficient_l1() const;

 private:
  int qubits_;
  std::vector<PauliTerm> terms_;
  int order_bound_;
};

/// Loose count bound binomial(Q,B) * 4^B used to sanity-check generated
/// instances.
double max_term_count(int qubits, int order_bound);

Hamiltonian parse_hamiltonian(std::istream& in);
Hamiltonian parse_hamiltonian(std::string_view text);
Hamiltonian load_hamiltonian(const std::filesystem::path& path);

/// One `<coefficient> <pauli-string>` line per term, round-trips through
/// parse_hamiltonian.
std::string to_text(const Hamiltonian& h);

/// P applied in place to a vector of 2^Q amplitudes.
template <typename Derived>
void apply_pauli_inplace(const PauliString& p,
                         Eigen::MatrixBase<Derived>& amps) {
  using Scalar = typename Derived::Scalar;
  using RealScalar = typename Derived::RealScalar;
  static constexpr Scalar kPhases[4] = {
      Scalar(1, 0), Scalar(0, 1), Scalar(-1, 0), Scalar(0, -1)};
  const Scalar phase = kPhases[p.y_count() & 3];
  const std::uint64_t x = p.x_mask();
  const std::uint64_t z = p.z_mask();
  const auto dim = static_cast<std::uint64_t>(amps.size());
  auto sign = [z](std::uint64_t b) {
    return (std::popcount(b & z) & 1) ? RealScalar(-1) : RealScalar(1);
  };
  if (x == 0) {
    for (std::uint64_t b = 0; b < dim; ++b) amps(b) *= phase * sign(b);
    return;
  }
  for (std::uint64_t b = 0; b < dim; ++b) {
    const std::uint64_t c = b ^ x;
    if (c < b) continue;
    const Scalar from_b = amps(b);
    const Scalar from_c = amps(c);
    amps(c) = phase * sign(b) * from_b;
    amps(b) = phase * sign(c) * from_c;
  }
}

/// <psi|P|psi> without materializing P|psi>.
template <typename Derived>
typename Derived::Scalar pauli_expectation(
    const PauliString& p, const Eigen::MatrixBase<Derived>& amps) {
  using Scalar = typename Derived::Scalar;
  static constexpr Scalar kPhases[4] = {
      Scalar(1, 0), Scalar(0, 1), Scalar(-1, 0), Scalar(0, -1)};
  const std::uint64_t x = p.x_mask();
  const std::uint64_t z = p.z_mask();
  const auto dim = static_cast<std::uint64_t>(amps.size());
  Scalar acc(0);
  for (std::uint64_t b = 0; b < dim; ++b) {
    const Scalar term = std::conj(amps(b ^ x)) * amps(b);
    acc += (std::popcount(b & z) & 1) ? -term : term;
  }
  return kPhases[p.y_count() & 3] * acc;
}

/// P|psi>; throws DimensionError on a register mismatch.
StateVector apply_pauli(const StateVector& state, const PauliString& p);

/// H|psi> as a raw amplitude vector.
CVector apply_hamiltonian(const Hamiltonian& h, const StateVector& state);

/// <psi|H|psi>. Imaginary residue above 1e-8 throws InputError.
Real expectation(const StateVector& state, const Hamiltonian& h);

/// Dense 2^Q x 2^Q matrix of H. Q above `cap` throws ResourceError; pass a
/// larger cap (or set QITE_DENSE_CAP) to override.
CMatrix to_dense(const Hamiltonian& h, int cap = dense_cap());
CMatrix to_dense(const PauliString& p, int cap = dense_cap());

}  // namespace qite
