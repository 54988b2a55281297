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

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace qite {

template <typename Scalar>
using ComplexT = std::complex<Scalar>;

template <typename Scalar>
using CVectorT = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar>
using CMatrixT =
    Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

using Real = double;
using Complex = ComplexT<Real>;
using CVector = CVectorT<Real>;
using CMatrix = CMatrixT<Real>;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Largest register handled by the dense (matrix) paths unless overridden
/// through QITE_DENSE_CAP.
inline constexpr int kDefaultDenseCap = 12;

/// Largest statevector register unless overridden through QITE_STATE_CAP.
inline constexpr int kDefaultStateCap = 20;

int dense_cap();
int state_cap();

}  // namespace qite
