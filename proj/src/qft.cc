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

#include "hsp/qft.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace hsp {

namespace {

std::size_t reg(int x, int a, int b, int p) {
    return (static_cast<std::size_t>(x) * p + a) * p + b;
}

void check_cap(const Prime &p, int max_prime) {
    if (p.value() > max_prime) {
        throw std::length_error(
            "dense p^3 x p^3 matrix refused: p=" + std::to_string(p.value()) + " exceeds dimension cap " +
            std::to_string(max_prime));
    }
}

}  // namespace

std::size_t qft_row(const IrrepName &name, int i, int j, const Prime &p) {
    validate_irrep(name, p);
    if (auto chi = std::get_if<Chi>(&name)) {
        return static_cast<std::size_t>(chi->a) * p + chi->b;
    }
    std::size_t k = std::get<Rho>(name).k;
    return static_cast<std::size_t>(p) * p + (k - 1) * p * p + static_cast<std::size_t>(i) * p + j;
}

ComplexMatrix qft_matrix(const Prime &p, int max_prime) {
    check_cap(p, max_prime);
    int n = p.group_order();
    RootsOfUnity omega(p);
    ComplexMatrix f = ComplexMatrix::Zero(n, n);
    double chi_norm = std::sqrt(1.0 / n);
    double rho_norm = std::sqrt(static_cast<double>(p) / n);
    for (int col = 0; col < n; col++) {
        GroupElement g = element_at(col, p);
        for (int a = 0; a < p; a++) {
            for (int b = 0; b < p; b++) {
                f(qft_row(Chi{a, b}, 0, 0, p), col) =
                    omega(static_cast<std::int64_t>(a) * g.x + static_cast<std::int64_t>(b) * g.y) * chi_norm;
            }
        }
        for (int k = 1; k < p; k++) {
            for (int i = 0; i < p; i++) {
                std::int64_t phase = static_cast<std::int64_t>(k) * g.z + static_cast<std::int64_t>(k) * g.y * i;
                f(qft_row(Rho{k}, i, mod(i + g.x, p), p), col) = omega(phase) * rho_norm;
            }
        }
    }
    return f;
}

ComplexMatrix left_regular(const GroupElement &g, const Prime &p) {
    int n = p.group_order();
    ComplexMatrix l = ComplexMatrix::Zero(n, n);
    for (int col = 0; col < n; col++) {
        l(element_index(compose(g, element_at(col, p), p), p), col) = 1.0;
    }
    return l;
}

ComplexMatrix regular_block_form(const GroupElement &g, const Prime &p) {
    int n = p.group_order();
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    for (const auto &name : canonical_irreps(p)) {
        ComplexMatrix rho = irrep_eval(name, g, p);
        int d = irrep_dimension(name, p);
        std::size_t base = qft_row(name, 0, 0, p);
        // Row (i,j) couples to row (i',j) with coefficient ρ(g)_{i,i'}.
        for (int i = 0; i < d; i++) {
            for (int i2 = 0; i2 < d; i2++) {
                for (int j = 0; j < d; j++) {
                    out(base + i * d + j, base + i2 * d + j) = rho(i, i2);
                }
            }
        }
    }
    return out;
}

double block_diagonal_residual(const ComplexMatrix &f, const GroupElement &g, const Prime &p) {
    ComplexMatrix conj = f * left_regular(g, p) * f.adjoint();
    return (conj - regular_block_form(g, p)).cwiseAbs().maxCoeff();
}

ComplexMatrix twiddle_transform(const Prime &p) {
    int n = p.group_order();
    RootsOfUnity omega(p);
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    for (int x = 0; x < p; x++) {
        for (int a = 0; a < p; a++) {
            for (int b = 0; b < p; b++) {
                if (a != 0) {
                    out(reg(x, a, mod(b - static_cast<std::int64_t>(a) * x, p), p), reg(x, a, b, p)) = 1.0;
                } else {
                    out(reg(x, 0, b, p), reg(x, 0, b, p)) = omega(static_cast<std::int64_t>(x) * b);
                }
            }
        }
    }
    return out;
}

ComplexMatrix normal_subgroup_transform(const Prime &p) {
    int n = p.group_order();
    RootsOfUnity omega(p);
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    double norm = 1.0 / p;
    for (int x = 0; x < p; x++) {
        for (int y = 0; y < p; y++) {
            for (int z = 0; z < p; z++) {
                for (int a = 0; a < p; a++) {
                    for (int b = 0; b < p; b++) {
                        std::int64_t phase = static_cast<std::int64_t>(b) * y + static_cast<std::int64_t>(a) * z;
                        out(reg(x, a, b, p), reg(x, y, z, p)) = omega(phase) * norm;
                    }
                }
            }
        }
    }
    return out;
}

namespace {

ComplexMatrix quotient_transform(const Prime &p, bool sector_only) {
    int n = p.group_order();
    RootsOfUnity omega(p);
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    double norm = 1.0 / std::sqrt(static_cast<double>(p));
    for (int a = 0; a < p; a++) {
        for (int b = 0; b < p; b++) {
            if (sector_only && a != 0) {
                for (int x = 0; x < p; x++) {
                    out(reg(x, a, b, p), reg(x, a, b, p)) = 1.0;
                }
                continue;
            }
            for (int x = 0; x < p; x++) {
                for (int c = 0; c < p; c++) {
                    out(reg(c, a, b, p), reg(x, a, b, p)) = omega(static_cast<std::int64_t>(c) * x) * norm;
                }
            }
        }
    }
    return out;
}

}  // namespace

ComplexMatrix quotient_transform_sector(const Prime &p) {
    return quotient_transform(p, true);
}

ComplexMatrix quotient_transform_full(const Prime &p) {
    return quotient_transform(p, false);
}

ComplexMatrix adapted_qft_product(const Prime &p) {
    return quotient_transform_sector(p) * twiddle_transform(p) * normal_subgroup_transform(p);
}

ComplexMatrix adapted_qft_fixup(const Prime &p) {
    int n = p.group_order();
    ComplexMatrix q = ComplexMatrix::Zero(n, n);
    for (int x = 0; x < p; x++) {
        for (int a = 0; a < p; a++) {
            for (int b = 0; b < p; b++) {
                std::size_t row;
                if (a == 0) {
                    row = qft_row(Chi{mod(x + b, p), b}, 0, 0, p);
                } else {
                    int i = mod(static_cast<std::int64_t>(b) * inverse_mod(a, p) + x, p);
                    row = qft_row(Rho{a}, i, mod(i + x, p), p);
                }
                q(reg(x, a, b, p), row) = 1.0;
            }
        }
    }
    return q;
}

double qft_factorization_residual(const Prime &p, int max_prime) {
    check_cap(p, max_prime);
    ComplexMatrix diff = adapted_qft_product(p) - adapted_qft_fixup(p) * qft_matrix(p, max_prime);
    return diff.cwiseAbs().maxCoeff();
}

ComplexMatrix literal_order_product(const Prime &p) {
    return normal_subgroup_transform(p) * twiddle_transform(p) * quotient_transform_full(p);
}

double isotypic_leakage(const ComplexMatrix &m, const Prime &p) {
    ComplexMatrix coeffs = m * qft_matrix(p, p.value()).adjoint();
    auto irreps = canonical_irreps(p);
    double worst = 0.0;
    for (Eigen::Index r = 0; r < coeffs.rows(); r++) {
        std::vector<double> weight;
        weight.reserve(irreps.size());
        double total = 0.0;
        for (const auto &name : irreps) {
            int d = irrep_dimension(name, p);
            std::size_t base = qft_row(name, 0, 0, p);
            double w = coeffs.row(r).segment(base, d * d).squaredNorm();
            weight.push_back(w);
            total += w;
        }
        if (total == 0.0) {
            continue;
        }
        double dominant = *std::max_element(weight.begin(), weight.end());
        worst = std::max(worst, 1.0 - dominant / total);
    }
    return worst;
}

}  // namespace hsp
