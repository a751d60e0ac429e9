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

#ifndef HSP_QFT_H
#define HSP_QFT_H

#include <cstddef>

#include "hsp/heisenberg.h"
#include "hsp/linalg.h"
#include "hsp/representations.h"

namespace hsp {

/// Dense p³ × p³ matrices are refused above this prime unless the caller raises the cap.
constexpr int kDefaultQftMaxPrime = 13;

/// Row of the QFT matrix for entry (i,j) of irrep `name`. Chi rows ignore (i,j).
std::size_t qft_row(const IrrepName &name, int i, int j, const Prime &p);

/// F[(ρ,i,j), g] = sqrt(d_ρ/p³) ρ_ij(g). Throws std::length_error if p exceeds `max_prime`.
ComplexMatrix qft_matrix(const Prime &p, int max_prime = kDefaultQftMaxPrime);

/// Left-regular permutation matrix L(g)|h⟩ = |gh⟩.
ComplexMatrix left_regular(const GroupElement &g, const Prime &p);

/// The block-diagonal target ⊕_ρ ρ(g) ⊗ I_{d_ρ} in canonical row order.
ComplexMatrix regular_block_form(const GroupElement &g, const Prime &p);

/// max |F L(g) F† − ⊕_ρ ρ(g) ⊗ I_{d_ρ}|.
double block_diagonal_residual(const ComplexMatrix &f, const GroupElement &g, const Prime &p);

/// Λ on registers |x⟩|a⟩|b⟩ (index (x·p+a)·p+b):
/// |x,a,b⟩ ↦ |x,a,b−ax⟩ for a ≠ 0 and ω^{xb}|x,0,b⟩ for a = 0.
ComplexMatrix twiddle_transform(const Prime &p);

/// F_N on the (y,z) registers: |x,y,z⟩ ↦ (1/p) Σ_{a,b} ω^{by+az} |x,a,b⟩.
ComplexMatrix normal_subgroup_transform(const Prime &p);

/// F_{ℤp} on the x register, applied only where the middle register is 0.
ComplexMatrix quotient_transform_sector(const Prime &p);

/// F_{ℤp} on the x register for every value of (a,b).
ComplexMatrix quotient_transform_full(const Prime &p);

/// Sector transform · Λ · F_N, the implemented three-factor circuit.
ComplexMatrix adapted_qft_product(const Prime &p);

/// Permutation Q with adapted_qft_product = Q · qft_matrix.
/// |c,0,b⟩ ↔ χ(c+b, b); |x,k,b⟩ (k ≠ 0) ↔ ρ_k entry (i, i+x) with i = b/k + x.
ComplexMatrix adapted_qft_fixup(const Prime &p);

/// ‖adapted_qft_product − Q·F‖ (largest entry modulus).
double qft_factorization_residual(const Prime &p, int max_prime = kDefaultQftMaxPrime);

/// (I⊗F_N)·Λ·(F_{ℤp}⊗I) with every factor applied unconditionally, in the displayed order.
ComplexMatrix literal_order_product(const Prime &p);

/// Largest fraction of a row's squared weight of M·F† that falls outside that row's dominant irrep.
/// Zero iff every row of M is supported on a single isotypic block of F.
double isotypic_leakage(const ComplexMatrix &m, const Prime &p);

}  // namespace hsp

#endif
