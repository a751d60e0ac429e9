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

#ifndef HSP_HSP_ENGINE_H
#define HSP_HSP_ENGINE_H

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hsp/fourier_sampling.h"
#include "hsp/heisenberg.h"
#include "hsp/linalg.h"
#include "hsp/random_bases.h"
#include "hsp/rng.h"

namespace hsp {

/// Floor applied to probabilities inside log-likelihoods.
constexpr double kLikelihoodFloor = 1e-300;

/// Black box constant on the left cosets of a hidden subgroup and distinct across them.
class HiddenOracle {
   public:
    explicit HiddenOracle(Subgroup hidden) : hidden_(std::move(hidden)) {}

    const Subgroup &hidden() const {
        return hidden_;
    }
    const Prime &prime() const {
        return hidden_.prime();
    }

   private:
    Subgroup hidden_;
};

/// Lexicographically smallest element of g·H.
GroupElement oracle_label(const HiddenOracle &oracle, const GroupElement &g);

/// Outcome distributions for every subgroup of H_p under one measurement scheme.
struct DistributionTable {
    int p = 3;
    /// "strong" or "weak".
    std::string layer = "strong";
    BasisKind basis_kind = BasisKind::Natural;
    std::uint64_t basis_seed = 0;
    std::uint64_t basis_stream = 0;
    /// Canonical subgroup order.
    std::vector<SubgroupLabel> labels;
    std::vector<std::vector<double>> prob;

    std::size_t index(const SubgroupLabel &label) const;
    const std::vector<double> &at(const SubgroupLabel &label) const {
        return prob[index(label)];
    }
};

DistributionTable strong_table(const ProjectorTable &projectors, const BasisFamily &basis);
/// Weak distributions; outcomes are irrep indices.
DistributionTable weak_table(const ProjectorTable &projectors);

/// t i.i.d. outcome ids from the hidden subgroup's row of the table. Coset invariance makes this equal in
/// law to measuring t fresh coset states. Throws std::invalid_argument for t < 1.
std::vector<std::size_t> run_sampling(const HiddenOracle &oracle, const DistributionTable &table, int t,
                                      RngStream &rng);

/// Exact outcome distribution of one query round by state-vector simulation: prepare Σ_g |g⟩|f(g)⟩, measure
/// the label register (uniform over cosets), apply the QFT and measure (ρ, column) in the family's bases.
std::vector<double> state_vector_distribution(const HiddenOracle &oracle, const BasisFamily &basis);

/// Σ_s log max(P(s), kLikelihoodFloor).
double log_likelihood(const std::vector<std::size_t> &samples, const std::vector<double> &prob);

struct PairwiseResult {
    SubgroupLabel winner;
    /// log L(H1) − log L(H2).
    double log_ratio = 0.0;
};

/// Maximum likelihood between two candidates; ties (within 1e-9 relative) go to the smaller label.
PairwiseResult bayes_pairwise(const std::vector<std::size_t> &samples, const SubgroupLabel &h1,
                              const SubgroupLabel &h2, const DistributionTable &table);

/// Sequential champion scan over the table in canonical order. Throws std::invalid_argument on empty samples
/// or an empty table.
SubgroupLabel tournament_identify(const std::vector<std::size_t> &samples, const DistributionTable &table);

/// 40·⌈log₂ s(G)⌉ with s(G) = p² + 2p + 4.
int default_samples(int p, int multiplier = 40);

enum class HiddenMode { Uniform, WorstCase };
enum class BasisMode { Fresh, Fixed };

std::string hidden_mode_str(HiddenMode mode);
HiddenMode parse_hidden_mode(const std::string &text);
std::string basis_mode_str(BasisMode mode);
BasisMode parse_basis_mode(const std::string &text);

struct ExperimentConfig {
    int p = 5;
    int trials = 100;
    /// Samples per trial; 0 selects default_samples(p).
    int t = 0;
    std::uint64_t seed = 1;
    /// Index of the first trial; trial n runs on stream n + 1, so a single trial can be replayed.
    int first_trial = 0;
    HiddenMode hidden_mode = HiddenMode::Uniform;
    BasisMode basis_mode = BasisMode::Fresh;
    int workers = 1;
};

struct TrialRecord {
    /// Trial n uses RngStream(seed, stream) with stream = n + 1; basis family stream 0 in fixed mode.
    int trial = 0;
    std::uint64_t stream = 0;
    SubgroupLabel hidden;
    SubgroupLabel returned;
};

struct ExperimentReport {
    ExperimentConfig config;
    int t = 0;
    int successes = 0;
    double success_rate = 0.0;
    double wall_seconds = 0.0;
    std::vector<TrialRecord> records;
    /// (hidden, returned) → count, misclassifications only.
    std::map<std::pair<SubgroupLabel, SubgroupLabel>, int> confusion;
    /// Worst per-hidden-subgroup success rate; equals success_rate in uniform mode with one hidden kind.
    double worst_subgroup_rate = 0.0;
};

/// Throws std::invalid_argument on bad configuration.
ExperimentReport hsp_experiment(const ExperimentConfig &config);
/// In fixed-basis mode `fixed_table`, when given, replaces the table built from basis stream 0.
ExperimentReport hsp_experiment(const ExperimentConfig &config, const ProjectorTable &projectors,
                                const DistributionTable *fixed_table = nullptr);

/// Identifies which of `states` is emitted, from t rounds of measurement in fresh random bases of C^n.
/// Throws std::invalid_argument when some pair overlaps more than delta (message names the pair), when the
/// states have different dimensions, or when t < 1. With own_basis set, every round measures in the basis
/// formed by the states themselves, which requires m = n orthonormal states.
std::size_t state_identification(const std::vector<ComplexVector> &states, double delta, std::size_t hidden, int t,
                                 RngStream &rng, bool own_basis = false);

/// Throws std::invalid_argument naming the first pair with |⟨ψ_a|ψ_b⟩| > delta.
void check_overlaps(const std::vector<ComplexVector> &states, double delta);

/// The p² + p vectors ψ_{1;i,j}, i ∈ F_p ∪ {∞}.
std::vector<ComplexVector> mub_states(const Prime &p);

struct StateIdReport {
    std::size_t m = 0;
    std::size_t n = 0;
    double delta = 0.0;
    int t = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    int successes = 0;
    double success_rate = 0.0;
};

/// Hidden index uniform per trial; trial n uses RngStream(seed, n + 1).
StateIdReport state_id_experiment(const std::vector<ComplexVector> &states, double delta, int t, int trials,
                                  std::uint64_t seed, int workers = 1, bool own_basis = false);

}  // namespace hsp

#endif
