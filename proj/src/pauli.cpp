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

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "qite/error.hpp"

namespace qite {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

char to_char(Pauli p) {
  static constexpr char kChars[4] = {'I', 'X', 'Y', 'Z'};
  return kChars[static_cast<int>(p)];
}

PauliString::PauliString(int qubits, std::uint64_t x_mask,
                         std::uint64_t z_mask)
    : qubits_(qubits), x_(x_mask), z_(z_mask) {
  if (qubits < 1 || qubits > kMaxQubits) {
    throw DimensionError("PauliString: qubit count " + std::to_string(qubits) +
                         " outside [1, 64]");
  }
  const std::uint64_t valid =
      qubits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << qubits) - 1;
  if (((x_mask | z_mask) & ~valid) != 0) {
    throw DimensionError("PauliString: mask bits beyond register");
  }
}

PauliString PauliString::identity(int qubits) {
  return PauliString(qubits, 0, 0);
}

Pauli PauliString::op(int qubit) const {
  const std::uint64_t m = bit(qubit);
  const bool has_x = (x_ & m) != 0;
  const bool has_z = (z_ & m) != 0;
  if (has_x && has_z) return Pauli::Y;
  if (has_x) return Pauli::X;
  if (has_z) return Pauli::Z;
  return Pauli::I;
}

std::vector<int> PauliString::support() const {
  std::vector<int> out;
  for (int q = 0; q < qubits_; ++q) {
    if (support_mask() & bit(q)) out.push_back(q);
  }
  return out;
}

std::string PauliString::to_string() const {
  std::string s(qubits_, 'I');
  for (int q = 0; q < qubits_; ++q) s[q] = to_char(op(q));
  return s;
}

PauliString parse_pauli(std::string_view text) {
  if (text.empty()) throw ParseError("empty Pauli string", 0, 0);
  if (text.size() > PauliString::kMaxQubits) {
    throw ParseError("Pauli string longer than 64 qubits", 0,
                     PauliString::kMaxQubits);
  }
  const int q = static_cast<int>(text.size());
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  for (int k = 0; k < q; ++k) {
    const std::uint64_t m = std::uint64_t{1} << (q - 1 - k);
    switch (text[k]) {
      case 'I':
        break;
      case 'X':
        x |= m;
        break;
      case 'Y':
        x |= m;
        z |= m;
        break;
      case 'Z':
        z |= m;
        break;
      default:
        throw ParseError("invalid Pauli character '" + std::string(1, text[k]) +
                             "' at position " + std::to_string(k),
                         0, static_cast<std::size_t>(k));
    }
  }
  return PauliString(q, x, z);
}

Hamiltonian::Hamiltonian(int qubits, std::vector<PauliTerm> terms,
                         std::optional<int> order_bound)
    : qubits_(qubits), terms_(std::move(terms)), order_bound_(0) {
  if (qubits < 1) throw DimensionError("Hamiltonian needs at least one qubit");
  int max_weight = 0;
  for (const auto& term : terms_) {
    if (term.string.qubits() != qubits) {
      throw DimensionError("Hamiltonian term " + term.string.to_string() +
                           " does not act on " + std::to_string(qubits) +
                           " qubits");
    }
    if (!std::isfinite(term.coefficient)) {
      throw InputError("Hamiltonian coefficient is not finite");
    }
    max_weight = std::max(max_weight, term.string.weight());
  }
  order_bound_ = order_bound.value_or(max_weight);
  if (max_weight > order_bound_) {
    throw InputError("term weight " + std::to_string(max_weight) +
                     " exceeds declared order bound " +
                     std::to_string(order_bound_));
  }
}

bool Hamiltonian::is_diagonal() const {
  for (const auto& t : terms_) {
    if (!t.string.is_diagonal()) return false;
  }
  return true;
}

Real Hamiltonian::coefficient_l1() const {
  Real s = 0;
  for (const auto& t : terms_) s += std::abs(t.coefficient);
  return s;
}

double max_term_count(int qubits, int order_bound) {
  if (order_bound < 0 || order_bound > qubits) return 0.0;
  double binom = 1.0;
  for (int k = 1; k <= order_bound; ++k) {
    binom = binom * (qubits - order_bound + k) / k;
  }
  return binom * std::pow(4.0, order_bound);
}

Hamiltonian parse_hamiltonian(std::istream& in) {
  std::vector<PauliTerm> terms;
  int qubits = -1;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    const auto split = line.find_first_of(" \t");
    if (split == std::string_view::npos) {
      throw ParseError("line " + std::to_string(line_no) +
                           ": expected '<coefficient> <pauli-string>'",
                       line_no, 0);
    }
    const std::string_view coeff_text = line.substr(0, split);
    const std::string_view pauli_text = trim(line.substr(split));
    if (pauli_text.find_first_of(" \t") != std::string_view::npos) {
      throw ParseError("line " + std::to_string(line_no) +
                           ": trailing tokens after Pauli string",
                       line_no, split);
    }

    double coeff = 0.0;
    const auto* first = coeff_text.data();
    const auto* last = first + coeff_text.size();
    if (*first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, coeff);
    if (ec != std::errc() || ptr != last) {
      throw ParseError("line " + std::to_string(line_no) +
                           ": coefficient '" + std::string(coeff_text) +
                           "' is not a real decimal number",
                       line_no, static_cast<std::size_t>(ptr - coeff_text.data()));
    }
    if (!std::isfinite(coeff)) {
      throw ParseError("line " + std::to_string(line_no) +
                           ": coefficient is not finite",
                       line_no, 0);
    }

    PauliString p;
    try {
      p = parse_pauli(pauli_text);
    } catch (const ParseError& e) {
      const std::size_t column =
          static_cast<std::size_t>(pauli_text.data() - line.data()) +
          e.position();
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what(),
                       line_no, column);
    }
    if (qubits < 0) {
      qubits = p.qubits();
    } else if (p.qubits() != qubits) {
      throw ParseError("line " + std::to_string(line_no) + ": Pauli string has " +
                           std::to_string(p.qubits()) + " qubits, expected " +
                           std::to_string(qubits),
                       line_no, 0);
    }
    terms.push_back({coeff, p});
  }
  if (qubits < 0) throw ParseError("Hamiltonian has no terms", line_no, 0);
  return Hamiltonian(qubits, std::move(terms));
}

Hamiltonian parse_hamiltonian(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_hamiltonian(in);
}

Hamiltonian load_hamiltonian(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open Hamiltonian file " + path.string());
  return parse_hamiltonian(in);
}

std::string to_text(const Hamiltonian& h) {
  std::ostringstream out;
  out << std::setprecision(17);
  for (const auto& t : h.terms()) {
    out << t.coefficient << ' ' << t.string.to_string() << '\n';
  }
  return out.str();
}

StateVector apply_pauli(const StateVector& state, const PauliString& p) {
  if (state.qubits() != p.qubits()) {
    throw DimensionError("apply_pauli: state has " +
                         std::to_string(state.qubits()) + " qubits, string " +
                         std::to_string(p.qubits()));
  }
  StateVector out = state;
  apply_pauli_inplace(p, out.amplitudes());
  return out;
}

CVector apply_hamiltonian(const Hamiltonian& h, const StateVector& state) {
  if (state.qubits() != h.qubits()) {
    throw DimensionError("apply_hamiltonian: register mismatch");
  }
  CVector acc = CVector::Zero(state.dim());
  CVector scratch(state.dim());
  for (const auto& t : h.terms()) {
    scratch = state.amplitudes();
    apply_pauli_inplace(t.string, scratch);
    acc += t.coefficient * scratch;
  }
  return acc;
}

Real expectation(const StateVector& state, const Hamiltonian& h) {
  if (state.qubits() != h.qubits()) {
    throw DimensionError("expectation: register mismatch");
  }
  Complex e(0);
  for (const auto& t : h.terms()) {
    e += t.coefficient * pauli_expectation(t.string, state.amplitudes());
  }
  if (std::abs(e.imag()) > 1e-8) {
    throw InputError("expectation has imaginary part " +
                     std::to_string(e.imag()) + "; operator is not Hermitian");
  }
  return e.real();
}

CMatrix to_dense(const PauliString& p, int cap) {
  if (p.qubits() > cap) {
    throw ResourceError("dense matrix of " + std::to_string(p.qubits()) +
                        " qubits exceeds dense cap " + std::to_string(cap) +
                        "; raise QITE_DENSE_CAP or pass an explicit cap");
  }
  const Index dim = Index{1} << p.qubits();
  CMatrix m = CMatrix::Zero(dim, dim);
  for (Index b = 0; b < dim; ++b) {
    CVector e = CVector::Zero(dim);
    e[b] = 1.0;
    apply_pauli_inplace(p, e);
    m.col(b) = e;
  }
  return m;
}

CMatrix to_dense(const Hamiltonian& h, int cap) {
  if (h.qubits() > cap) {
    throw ResourceError("dense matrix of " + std::to_string(h.qubits()) +
                        " qubits exceeds dense cap " + std::to_string(cap) +
                        "; raise QITE_DENSE_CAP or pass an explicit cap");
  }
  const Index dim = Index{1} << h.qubits();
  CMatrix m = CMatrix::Zero(dim, dim);
  static constexpr Complex kPhases[4] = {
      Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)};
  for (const auto& t : h.terms()) {
    const Complex phase = t.coefficient * kPhases[t.string.y_count() & 3];
    const auto x = t.string.x_mask();
    const auto z = t.string.z_mask();
    for (Index b = 0; b < dim; ++b) {
      const auto ub = static_cast<std::uint64_t>(b);
      const Real sign = (std::popcount(ub & z) & 1) ? -1.0 : 1.0;
      m(static_cast<Index>(ub ^ x), b) += sign * phase;
    }
  }
  return m;
}

}  // namespace qite
