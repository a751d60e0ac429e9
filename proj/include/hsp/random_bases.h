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

#ifndef HSP_RANDOM_BASES_H
#define HSP_RANDOM_BASES_H

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hsp/heisenberg.h"
#include "hsp/linalg.h"
#include "hsp/representations.h"
#include "hsp/rng.h"

namespace hsp {

/// Residual norm below which Gram–Schmidt runs a second orthogonalization pass.
constexpr double kReorthogonalizeBelow = 1e-4;
/// Residual norm below which a vector counts as linearly dependent.
constexpr double kDependentBelow = 1e-8;

/// 2d standard Gaussians paired into d complex coordinates, normalized.
ComplexVector gaussian_unit_vector(int d, RngStream &rng);

/// Orthonormal columns, with the stream that produced them.
struct OrthonormalSet {
    int dim = 0;
    ComplexMatrix vectors;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    int size() const {
        return static_cast<int>(vectors.cols());
    }
};

/// Orthonormalizes the columns in order. Throws std::domain_error on a dependent column.
ComplexMatrix gram_schmidt(const ComplexMatrix &columns);

/// Orthonormalizes `columns` against the orthonormal columns of `against`, then among themselves.
ComplexMatrix gram_schmidt_against(const ComplexMatrix &against, const ComplexMatrix &columns);

/// m Gaussian unit vectors orthonormalized in draw order; dependent draws are redrawn.
OrthonormalSet random_orthonormal_set(int d, int m, RngStream &rng);

enum class BasisKind { Random, Natural, Fourier, Mub };

std::string basis_kind_str(BasisKind kind);
BasisKind parse_basis_kind(const std::string &text);

/// One orthonormal basis (as matrix columns) per ρ_k. One-dimensional irreps use the trivial basis.
struct BasisFamily {
    int p = 3;
    BasisKind kind = BasisKind::Natural;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    /// Slope of the MUB basis when kind == Mub.
    Slope mub_slope = 0;
    /// rho_bases[k-1] is the basis for ρ_k.
    std::vector<ComplexMatrix> rho_bases;

    const ComplexMatrix &rho_basis(int k) const;
    ComplexMatrix basis(const IrrepName &name) const;
};

/// ρ_k receives an independent basis drawn from RngStream(seed, stream).derive(k).
BasisFamily random_basis_family(const Prime &p, std::uint64_t seed, std::uint64_t stream = 0);
/// Identity matrix for every ρ_k.
BasisFamily natural_basis_family(const Prime &p);
/// Columns ω^{μj}/√p, the ℤ_p Fourier transform of the natural basis.
BasisFamily fourier_basis_family(const Prime &p);
/// ρ_k measured in {ψ_{k;i,j}}_j.
BasisFamily mub_basis_family(const Prime &p, const Slope &i);

/// Largest entry modulus of B†B − I over all bases.
double basis_family_residual(const BasisFamily &family);

/// ‖A − B‖_tr, unhalved. Throws std::invalid_argument on shape mismatch or non-Hermitian input.
double trace_distance(const ComplexMatrix &a, const ComplexMatrix &b);

struct BoundCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double delta = 0.0;

    bool holds(double tol) const {
        return lhs <= rhs + tol;
    }
};

/// Totally mixed state on span(V2) against the mixed state on the complement of span(V1) in span(V1)+span(V2).
/// Throws std::domain_error when the spans intersect (overlap ≥ 1 − 1e−6).
BoundCheck prop3_bound_check(const ComplexMatrix &v1, const ComplexMatrix &v2);

/// Gram–Schmidt the unit vectors; per vector, trace distance between input and output rank-one states
/// against 2√6·δ√n. Throws std::domain_error if δ ≥ 1/(2n) or a pairwise overlap exceeds δ.
std::vector<BoundCheck> prop4_bound_check(const std::vector<ComplexVector> &vectors, double delta);

struct TailResult {
    int d = 0;
    double t = 0.0;
    int trials = 0;
    /// t + 10/√d.
    double threshold = 0.0;
    int exceedances = 0;
    double frequency = 0.0;
    /// 2 exp(−t² d).
    double bound = 0.0;
};

/// Frequency with which two independent random unit vectors have |⟨v|w⟩| > t + 10/√d.
TailResult tail_experiment(int d, double t, int trials, RngStream &rng);

/// ‖S − U‖₁ for S_j = (1/p) Σ_i |a^i_j|² over a random orthonormal p-set in C^d, one value per trial.
std::vector<double> uniformity_gap_samples(int d, int p, int trials, RngStream &rng);

/// ‖S − T‖₁ for the three-block construction with block sizes (p, q, r), one value per trial.
std::vector<double> block_gap_samples(int d, int p, int q, int r, int trials, RngStream &rng);

/// √p/(p+r) + √q/(q+r).
double block_gap_scale(int p, int q, int r);

struct ConcentrationConfig {
    std::uint64_t seed = 1;
    int trials = 200;
    int tail_trials = 10000;
    std::vector<int> tail_dims{16, 64, 256};
    std::vector<double> tail_ts{0.3, 0.5};
    int gap_dim = 256;
    std::vector<int> gap_sizes{4, 8, 16, 32, 64};
    int block_dim = 256;
    /// Reference configuration first; its median fixes the calibration constant.
    std::vector<std::array<int, 3>> block_configs{{1, 1, 0}, {4, 4, 0}, {4, 4, 4}, {16, 16, 0}};
    double slope_low = -0.65;
    double slope_high = -0.35;
};

struct GapSummary {
    int p = 0;
    double median = 0.0;
    double mean = 0.0;
};

struct BlockSummary {
    int p = 0;
    int q = 0;
    int r = 0;
    double median = 0.0;
    double scale = 0.0;
    /// median / scale.
    double ratio = 0.0;
};

struct ConcentrationReport {
    std::vector<TailResult> tails;
    bool tails_within_bound = true;
    std::vector<GapSummary> gaps;
    double gap_slope = 0.0;
    bool slope_in_range = false;
    std::vector<BlockSummary> blocks;
    double block_constant = 0.0;
    bool blocks_scale = false;
};

/// Validates block sizes and dimensions, then runs all experiments on streams derived from `seed`.
ConcentrationReport concentration_experiments(const ConcentrationConfig &config);

}  // namespace hsp

#endif
