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

#include "hsp/linalg.h"

namespace hsp {

namespace {

Eigen::VectorXd singular_values(const ComplexMatrix &m) {
    if (m.size() == 0) {
        return Eigen::VectorXd();
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues();
}

}  // namespace

int numerical_rank(const ComplexMatrix &m, double threshold) {
    auto sv = singular_values(m);
    int rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); k++) {
        if (sv(k) > threshold) {
            rank++;
        }
    }
    return rank;
}

double operator_norm(const ComplexMatrix &m) {
    auto sv = singular_values(m);
    return sv.size() == 0 ? 0.0 : sv(0);
}

double trace_norm(const ComplexMatrix &m) {
    return singular_values(m).sum();
}

double unitarity_residual(const ComplexMatrix &m) {
    ComplexMatrix g = m.adjoint() * m;
    g -= ComplexMatrix::Identity(g.rows(), g.cols());
    return g.cwiseAbs().maxCoeff();
}

double hermiticity_residual(const ComplexMatrix &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

ComplexMatrix projector_range(const ComplexMatrix &projector) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(projector);
    const auto &values = eig.eigenvalues();
    Eigen::Index rank = 0;
    for (Eigen::Index k = 0; k < values.size(); k++) {
        if (values(k) > kRankThreshold) {
            rank++;
        }
    }
    // Eigenvalues ascend, so the range is spanned by the trailing columns.
    return eig.eigenvectors().rightCols(rank);
}

ComplexMatrix projector_onto(const ComplexMatrix &basis) {
    return basis * basis.adjoint();
}

}  // namespace hsp
