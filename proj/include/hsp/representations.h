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

#ifndef HSP_REPRESENTATIONS_H
#define HSP_REPRESENTATIONS_H

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hsp/heisenberg.h"
#include "hsp/linalg.h"

namespace hsp {

/// One-dimensional irrep χ_{a,b}(x,y,z) = ω^{ax+by}.
struct Chi {
    int a = 0;
    int b = 0;
    auto operator<=>(const Chi &) const = default;
};

/// p-dimensional irrep ρ_k, k ≠ 0, induced from the central character ω^{kz}.
struct Rho {
    int k = 1;
    auto operator<=>(const Rho &) const = default;
};

/// Variant order (all Chi, then all Rho) is the canonical irrep order.
using IrrepName = std::variant<Chi, Rho>;

int irrep_dimension(const IrrepName &name, const Prime &p);
std::string irrep_str(const IrrepName &name);
IrrepName parse_irrep(std::string_view text, const Prime &p);
void validate_irrep(const IrrepName &name, const Prime &p);

/// χ_{a,b} lexicographic in (a,b), then ρ_1 .. ρ_{p-1}.
std::vector<IrrepName> canonical_irreps(const Prime &p);
std::size_t irrep_index(const IrrepName &name, const Prime &p);

/// Powers of ω = exp(2πi/p), looked up by exponent mod p.
class RootsOfUnity {
   public:
    explicit RootsOfUnity(int p);
    Complex operator()(std::int64_t exponent) const {
        return table_[mod(exponent, p_)];
    }
    int p() const {
        return p_;
    }

   private:
    int p_;
    std::vector<Complex> table_;
};

/// The d_ρ × d_ρ unitary ρ(g). For ρ_k: ω^{kz} Σ_a ω^{kya} |a⟩⟨a+x|.
ComplexMatrix irrep_eval(const IrrepName &name, const GroupElement &g, const Prime &p);

/// (1/|H|) Σ_{h∈H} ρ(h).
ComplexMatrix averaged_matrix(const IrrepName &name, const Subgroup &h);

/// Orthogonal projector onto the H-fixed vectors of ρ.
struct Projector {
    ComplexMatrix matrix;
    int rank = 0;
    IrrepName irrep;
    SubgroupLabel subgroup;
};

Projector subgroup_projector(const IrrepName &name, const Subgroup &h);

/// ψ_{k;i,j}: the unit vector spanning the range of the ρ_k projector of A(i,j).
struct MubVector {
    int k = 1;
    Slope i;
    int j = 0;
    ComplexVector vector;
};

MubVector mub_vector(int k, const Slope &i, int j, const Prime &p);

/// All p² + p vectors ψ_{k;i,j} for fixed k, ordered i = 0..p-1, ∞ (outer) and j (inner).
std::vector<MubVector> mub_family(int k, const Prime &p);

/// ‖Π₁Π₂‖ (largest singular value). Throws std::invalid_argument on a dimension mismatch.
double overlap(const Projector &p1, const Projector &p2);
double overlap(const ComplexMatrix &p1, const ComplexMatrix &p2);

/// |Σ_μ ω^{k(C(μ,2)Δi + μΔj)}|, which equals √p whenever Δi ≠ 0.
double weil_sum_check(const Prime &p, int k, int delta_i, int delta_j);

}  // namespace hsp

#endif
