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

#ifndef HSP_FOURIER_SAMPLING_H
#define HSP_FOURIER_SAMPLING_H

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "hsp/heisenberg.h"
#include "hsp/random_bases.h"
#include "hsp/representations.h"
#include "hsp/rng.h"

namespace hsp {

/// Probabilities below this are treated as exact zeros.
constexpr double kProbabilityDust = 1e-15;

/// Flattened outcome ids: the p² characters first, then p columns for each ρ_k.
std::size_t outcome_count(int p);
std::size_t outcome_id(const IrrepName &name, int column, const Prime &p);
std::pair<IrrepName, int> outcome_at(std::size_t id, const Prime &p);
std::string outcome_str(std::size_t id, const Prime &p);

/// Indexed by canonical irrep order.
struct WeakDistribution {
    int p = 3;
    SubgroupLabel subgroup;
    std::vector<double> prob;
};

/// Indexed by outcome id.
struct ColumnDistribution {
    int p = 3;
    SubgroupLabel subgroup;
    BasisKind basis_kind = BasisKind::Natural;
    std::uint64_t basis_seed = 0;
    std::uint64_t basis_stream = 0;
    std::vector<double> prob;

    /// Σ_j P(ρ, j), indexed by canonical irrep order.
    std::vector<double> irrep_marginal() const;
};

/// Ranks and averaged matrices for every (subgroup, irrep) at one prime, built once and read-only after.
class ProjectorTable {
   public:
    explicit ProjectorTable(const Prime &p);

    const Prime &prime() const {
        return p_;
    }
    const std::vector<Subgroup> &subgroups() const {
        return subgroups_;
    }
    std::size_t subgroup_index(const SubgroupLabel &label) const;
    const Subgroup &subgroup(const SubgroupLabel &label) const;
    /// Π^{ρ_k}_H as a p × p matrix.
    const ComplexMatrix &rho_projector(const SubgroupLabel &label, int k) const;
    int rho_rank(const SubgroupLabel &label, int k) const;
    /// 1 if χ is trivial on H, else 0.
    int chi_rank(const SubgroupLabel &label, const Chi &chi) const;

   private:
    Prime p_;
    std::vector<Subgroup> subgroups_;
    std::map<SubgroupLabel, std::size_t> index_;
    // [subgroup][k-1]
    std::vector<std::vector<ComplexMatrix>> rho_;
    std::vector<std::vector<int>> rho_rank_;
    // [subgroup][a*p+b]
    std::vector<std::vector<int>> chi_rank_;
};

/// P(ρ) = d_ρ |H| rank(Π^ρ_H) / |G|.
WeakDistribution weak_distribution(const Subgroup &h);
WeakDistribution weak_distribution(const ProjectorTable &table, const SubgroupLabel &h);

/// P(ρ, j) = (d_ρ |H| / |G|) ‖Π^ρ_H b_j‖² with b_j the j-th column of the family's basis for ρ.
ColumnDistribution strong_distribution(const Subgroup &h, const BasisFamily &basis);
ColumnDistribution strong_distribution(const ProjectorTable &table, const SubgroupLabel &h,
                                       const BasisFamily &basis);

/// Applies the dense QFT to a state on ℂ[G] and returns P(ρ, j) = ‖(A_ρ B_ρ) e_j‖², A_ρ the d_ρ × d_ρ block of
/// Fourier amplitudes and B_ρ the family's basis.
std::vector<double> measure_state(const ComplexVector &state, const BasisFamily &basis, const Prime &p);

/// Distribution read off the explicit coset state |gH⟩ after the dense QFT, with each irrep expressed in
/// the family's basis (column amplitudes A·B for the d_ρ × d_ρ amplitude block A).
ColumnDistribution coset_state_distribution(const Subgroup &h, const GroupElement &g, const BasisFamily &basis);

/// L1 distance between coset_state_distribution and strong_distribution.
double coset_invariance_check(const Subgroup &h, const GroupElement &g, const BasisFamily &basis);

/// Abelian Fourier sampling of the coset (0,0,τ)·A(i,j) over ℤ_p³, indexed by (a·p + b)·p + c.
struct AbelianDistribution {
    int p = 3;
    int i = 0;
    int j = 0;
    int tau = 0;
    std::vector<double> prob;

    double at(int a, int b, int c) const {
        return prob[(static_cast<std::size_t>(a) * p + b) * p + c];
    }
};

/// Closed form p⁻⁴ |Σ_μ ω^{(a+bi+cj)μ + c·i·C(μ,2)}|².
AbelianDistribution forgetful_abelian_distribution(int i, int j, int tau, const Prime &p);

/// Same distribution from a direct ℤ_p³ DFT of the coset indicator.
AbelianDistribution forgetful_abelian_by_dft(int i, int j, int tau, const Prime &p);

/// Cumulative table for inversion sampling; zero entries can never be drawn.
class OutcomeSampler {
   public:
    explicit OutcomeSampler(const std::vector<double> &prob);
    std::size_t draw(RngStream &rng) const;

   private:
    std::vector<double> cumulative_;
    std::vector<std::size_t> ids_;
};

/// t i.i.d. outcome ids. Throws std::invalid_argument for t < 1 or an empty distribution.
std::vector<std::size_t> draw_samples(const std::vector<double> &prob, int t, RngStream &rng);

/// Uniformity of ρ_k columns for A(i,j): max |P(ρ_k, j) − P(ρ_k)/p| over k and j.
double column_uniformity_residual(const ColumnDistribution &dist);

}  // namespace hsp

#endif
