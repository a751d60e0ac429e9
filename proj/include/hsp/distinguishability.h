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

#ifndef HSP_DISTINGUISHABILITY_H
#define HSP_DISTINGUISHABILITY_H

#include <cstdint>
#include <string>
#include <vector>

#include "hsp/fourier_sampling.h"
#include "hsp/heisenberg.h"
#include "hsp/random_bases.h"
#include "hsp/representations.h"

namespace hsp {

/// Case thresholds C1, C2 and the multipliers c1, c2 standing in for the unspecified Ω(·) constants.
struct Constants {
    double c1 = 0.0;
    double c2 = 0.0;
    double C1 = 0.1;
    double C2 = 0.1;

    /// Throws std::invalid_argument unless every field is positive and finite.
    void validate() const;
};

/// Frozen values from calibrate_constants at p = 7, seeds 1000..1019.
Constants calibrated_constants();

/// Unhalved L1 distance. Throws std::invalid_argument on size mismatch.
double total_variation(const std::vector<double> &p, const std::vector<double> &q);

/// Σ_ρ |P_{H1}(ρ) − P_{H2}(ρ)|.
double w_distance(const Subgroup &h1, const Subgroup &h2);
double w_distance(const ProjectorTable &table, const SubgroupLabel &h1, const SubgroupLabel &h2);

/// Per-irrep quantities for a pair. Logs are natural.
struct RParams {
    IrrepName irrep = Chi{0, 0};
    int dim = 1;
    std::size_t order1 = 1;
    std::size_t order2 = 1;
    int r1 = 0;
    int r2 = 0;
    int r1_prime = 0;
    int r2_prime = 0;
    double h_hat = 0.0;
    double h_tilde = 0.0;
    double delta = 0.0;
    int rcase = 3;
};

RParams r_params(const Subgroup &h1, const Subgroup &h2, const IrrepName &irrep, const Constants &constants);
RParams r_params(const ProjectorTable &table, const SubgroupLabel &h1, const SubgroupLabel &h2,
                 const IrrepName &irrep, const Constants &constants);

/// Smallest subgroup in the table containing both, i.e. ⟨H1, H2⟩.
SubgroupLabel join_label(const ProjectorTable &table, const SubgroupLabel &h1, const SubgroupLabel &h2);

/// max{case expression, h̃}. The case is taken from params; only c1, c2 are read from constants.
double r_irrep(const RParams &params, const Constants &constants);

/// Σ_ρ (d_ρ / |G|) r(ρ) over precomputed per-irrep parameters.
double r_value(const std::vector<RParams> &params, const Constants &constants, int p);
double r_value(const Subgroup &h1, const Subgroup &h2, const Constants &constants);
double r_value(const ProjectorTable &table, const SubgroupLabel &h1, const SubgroupLabel &h2,
               const Constants &constants);

/// r_params for every irrep, in canonical irrep order.
std::vector<RParams> pair_params(const ProjectorTable &table, const SubgroupLabel &h1, const SubgroupLabel &h2,
                                 const Constants &constants);

/// Symmetric matrix over the table's subgroups in canonical order.
struct PairMatrix {
    int p = 3;
    std::vector<SubgroupLabel> labels;
    std::vector<double> values;

    double at(std::size_t i, std::size_t j) const {
        return values[i * labels.size() + j];
    }
    double &at(std::size_t i, std::size_t j) {
        return values[i * labels.size() + j];
    }
    std::size_t index(const SubgroupLabel &label) const;
    /// CSV with label header row and label first column.
    std::string csv() const;
};

/// Exact TV between strong distributions for every pair of subgroups.
PairMatrix empirical_tv_matrix(const ProjectorTable &table, const BasisFamily &basis, int workers = 1);
PairMatrix empirical_tv_matrix(const Prime &p, const BasisFamily &basis, int workers = 1);

struct CalibrationConfig {
    int p = 7;
    std::uint64_t first_seed = 1000;
    int seeds = 20;
    /// Fraction of seeds on which every pair must satisfy TV ≥ r.
    double pass_fraction = 0.95;
    /// Multiplier applied to the calibrated maxima before freezing.
    double margin = 0.8;
    double C1 = 0.1;
    double C2 = 0.1;
    int workers = 1;
};

struct CalibrationResult {
    CalibrationConfig config;
    /// Largest c1 (resp. c2) per seed for which all trivial-core pairs satisfy TV ≥ r.
    std::vector<double> c1_max;
    std::vector<double> c2_max;
    Constants constants;
    /// Seeds on which the chosen constants hold for all pairs.
    int seeds_passing = 0;
};

CalibrationResult calibrate_constants(const CalibrationConfig &config);

/// Labels of the family with trivial normal core: all A(i,j) and the trivial subgroup.
std::vector<SubgroupLabel> trivial_core_labels(const Prime &p);

struct TheoremCheck {
    int p = 7;
    int seeds = 0;
    /// Seeds where min TV over trivial-core pairs ≥ tv_floor.
    int seeds_tv_floor = 0;
    /// Seeds where TV ≥ r_value for every trivial-core pair.
    int seeds_tv_above_r = 0;
    std::vector<double> min_tv;
    double tv_floor = 0.05;
};

/// Empirical form of the random-basis lower bound over seeds first_seed, first_seed + 1, ...
TheoremCheck theorem_check(const Prime &p, std::uint64_t first_seed, int seeds, const Constants &constants,
                           double tv_floor = 0.05, int workers = 1);

}  // namespace hsp

#endif
