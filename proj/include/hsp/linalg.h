// Copyright 2026 The hspsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HSP_LINALG_H
#define HSP_LINALG_H

#include <complex>

#include <Eigen/Dense>

namespace hsp {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Singular values above this count toward the rank of a projector.
constexpr double kRankThreshold = 0.5;

/// Number of singular values strictly greater than `threshold`.
int numerical_rank(const ComplexMatrix &m, double threshold = kRankThreshold);

/// Largest singular value.
double operator_norm(const ComplexMatrix &m);

/// Sum of singular values.
double trace_norm(const ComplexMatrix &m);

/// Largest entry modulus of m† m − I.
double unitarity_residual(const ComplexMatrix &m);

/// Largest entry modulus of m − m†.
double hermiticity_residual(const ComplexMatrix &m);

/// Orthonormal basis (as columns) of the eigenspace of a Hermitian projector with eigenvalue > 1/2.
ComplexMatrix projector_range(const ComplexMatrix &projector);

/// Orthogonal projector onto the column span of `basis`, whose columns must be orthonormal.
ComplexMatrix projector_onto(const ComplexMatrix &basis);

}  // namespace hsp

#endif
