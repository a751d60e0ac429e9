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

#include "hsp/hsp_engine.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "hsp/parallel.h"

namespace hsp {

namespace {

// Child stream used for the hidden choice and the samples; children 1..p-1 carry the bases.
constexpr std::uint64_t kTrialStream = 0;

}  // namespace

GroupElement oracle_label(const HiddenOracle &oracle, const GroupElement &g) {
    const Prime &p = oracle.prime();
    std::optional<GroupElement> best;
    for (const auto &h : oracle.hidden().elements()) {
        GroupElement e = compose(g, h, p);
        if (!best || e < *best) {
            best = e;
        }
    }
    return *best;
}

std::size_t DistributionTable::index(const SubgroupLabel &label) const {
    auto it = std::lower_bound(labels.begin(), labels.end(), label);
    if (it == labels.end() || *it != label) {
        throw std::out_of_range("DistributionTable: unknown subgroup " + label_str(label));
    }
    return static_cast<std::size_t>(it - labels.begin());
}

DistributionTable strong_table(const ProjectorTable &projectors, const BasisFamily &basis) {
    DistributionTable table;
    table.p = projectors.prime();
    table.layer = "strong";
    table.basis_kind = basis.kind;
    table.basis_seed = basis.seed;
    table.basis_stream = basis.stream;
    for (const auto &h : projectors.subgroups()) {
        table.labels.push_back(h.label());
        table.prob.push_back(strong_distribution(projectors, h.label(), basis).prob);
    }
    return table;
}

DistributionTable weak_table(const ProjectorTable &projectors) {
    DistributionTable table;
    table.p = projectors.prime();
    table.layer = "weak";
    for (const auto &h : projectors.subgroups()) {
        table.labels.push_back(h.label());
        table.prob.push_back(weak_distribution(projectors, h.label()).prob);
    }
    return table;
}

std::vector<std::size_t> run_sampling(const HiddenOracle &oracle, const DistributionTable &table, int t,
                                      RngStream &rng) {
    if (t < 1) {
        throw std::invalid_argument("run_sampling: t must be at least 1");
    }
    if (table.p != oracle.prime().value()) {
        throw std::invalid_argument("run_sampling: table built for a different prime");
    }
    return draw_samples(table.at(oracle.hidden().label()), t, rng);
}

std::vector<double> state_vector_distribution(const HiddenOracle &oracle, const BasisFamily &basis) {
    const Prime &p = oracle.prime();
    auto elems = all_elements(p);
    std::map<GroupElement, std::vector<std::size_t>> cosets;
    for (const auto &g : elems) {
        cosets[oracle_label(oracle, g)].push_back(element_index(g, p));
    }
    std::vector<double> out(outcome_count(p), 0.0);
    for (const auto &[label, members] : cosets) {
        ComplexVector state = ComplexVector::Zero(p.group_order());
        for (auto idx : members) {
            state(idx) = 1.0 / std::sqrt(static_cast<double>(members.size()));
        }
        double weight = static_cast<double>(members.size()) / p.group_order();
        auto dist = measure_state(state, basis, p);
        for (std::size_t k = 0; k < out.size(); k++) {
            out[k] += weight * dist[k];
        }
    }
    return out;
}

double log_likelihood(const std::vector<std::size_t> &samples, const std::vector<double> &prob) {
    double out = 0.0;
    for (auto s : samples) {
        out += std::log(std::max(prob.at(s), kLikelihoodFloor));
    }
    return out;
}

namespace {

// True when (l1, ll1) beats (l2, ll2).
bool prefers(const SubgroupLabel &l1, double ll1, const SubgroupLabel &l2, double ll2) {
    double tol = 1e-9 * std::max({1.0, std::abs(ll1), std::abs(ll2)});
    if (std::abs(ll1 - ll2) <= tol) {
        return l1 < l2;
    }
    return ll1 > ll2;
}

}  // namespace

PairwiseResult bayes_pairwise(const std::vector<std::size_t> &samples, const SubgroupLabel &h1,
                              const SubgroupLabel &h2, const DistributionTable &table) {
    if (h1 == h2) {
        throw std::invalid_argument("bayes_pairwise: candidates must differ");
    }
    double ll1 = log_likelihood(samples, table.at(h1));
    double ll2 = log_likelihood(samples, table.at(h2));
    return {prefers(h1, ll1, h2, ll2) ? h1 : h2, ll1 - ll2};
}

SubgroupLabel tournament_identify(const std::vector<std::size_t> &samples, const DistributionTable &table) {
    if (samples.empty()) {
        throw std::invalid_argument("tournament_identify: no samples");
    }
    if (table.labels.empty()) {
        throw std::invalid_argument("tournament_identify: empty table");
    }
    std::size_t champion = 0;
    double best = log_likelihood(samples, table.prob[0]);
    for (std::size_t n = 1; n < table.labels.size(); n++) {
        double ll = log_likelihood(samples, table.prob[n]);
        if (prefers(table.labels[n], ll, table.labels[champion], best)) {
            champion = n;
            best = ll;
        }
    }
    return table.labels[champion];
}

int default_samples(int p, int multiplier) {
    int s = subgroup_count(p);
    return multiplier * static_cast<int>(std::ceil(std::log2(static_cast<double>(s))));
}

std::string hidden_mode_str(HiddenMode mode) {
    return mode == HiddenMode::Uniform ? "uniform" : "worst-case";
}

HiddenMode parse_hidden_mode(const std::string &text) {
    if (text == "uniform") {
        return HiddenMode::Uniform;
    }
    if (text == "worst-case") {
        return HiddenMode::WorstCase;
    }
    throw std::invalid_argument("unknown hidden mode: " + text);
}

std::string basis_mode_str(BasisMode mode) {
    return mode == BasisMode::Fresh ? "fresh" : "fixed";
}

BasisMode parse_basis_mode(const std::string &text) {
    if (text == "fresh") {
        return BasisMode::Fresh;
    }
    if (text == "fixed") {
        return BasisMode::Fixed;
    }
    throw std::invalid_argument("unknown basis mode: " + text);
}

ExperimentReport hsp_experiment(const ExperimentConfig &config) {
    if (!is_prime(config.p) || config.p < 3) {
        throw std::invalid_argument("p must be an odd prime");
    }
    return hsp_experiment(config, ProjectorTable(Prime(config.p)));
}

ExperimentReport hsp_experiment(const ExperimentConfig &config, const ProjectorTable &projectors,
                                const DistributionTable *fixed_table) {
    if (config.trials < 0 || config.t < 0 || config.workers < 1 || config.first_trial < 0) {
        throw std::invalid_argument("hsp_experiment: trials, t must be non-negative and workers positive");
    }
    if (projectors.prime().value() != config.p) {
        throw std::invalid_argument("hsp_experiment: projector table built for a different prime");
    }
    auto start = std::chrono::steady_clock::now();
    const Prime &p = projectors.prime();
    const auto &subs = projectors.subgroups();
    ExperimentReport report;
    report.config = config;
    report.t = config.t > 0 ? config.t : default_samples(p);
    std::optional<DistributionTable> fixed;
    if (config.basis_mode == BasisMode::Fixed) {
        if (fixed_table != nullptr) {
            if (fixed_table->p != config.p || fixed_table->labels.size() != subs.size()) {
                throw std::invalid_argument("hsp_experiment: fixed table does not match p");
            }
            fixed = *fixed_table;
        } else {
            fixed = strong_table(projectors, random_basis_family(p, config.seed, 0));
        }
    }
    report.records.resize(static_cast<std::size_t>(config.trials));
    parallel_for(report.records.size(), config.workers, [&](std::size_t n) {
        TrialRecord &rec = report.records[n];
        rec.trial = config.first_trial + static_cast<int>(n);
        rec.stream = static_cast<std::uint64_t>(rec.trial) + 1;
        RngStream rng = RngStream(config.seed, rec.stream).derive(kTrialStream);
        std::size_t which = config.hidden_mode == HiddenMode::Uniform ? rng.uniform_int(subs.size())
                                                                      : static_cast<std::size_t>(rec.trial) % subs.size();
        HiddenOracle oracle(subs[which]);
        rec.hidden = oracle.hidden().label();
        if (fixed) {
            rec.returned = tournament_identify(run_sampling(oracle, *fixed, report.t, rng), *fixed);
        } else {
            auto table = strong_table(projectors, random_basis_family(p, config.seed, rec.stream));
            rec.returned = tournament_identify(run_sampling(oracle, table, report.t, rng), table);
        }
    });
    std::map<SubgroupLabel, std::pair<int, int>> per_hidden;
    for (const auto &rec : report.records) {
        auto &[hits, seen] = per_hidden[rec.hidden];
        seen++;
        if (rec.hidden == rec.returned) {
            hits++;
            report.successes++;
        } else {
            report.confusion[{rec.hidden, rec.returned}]++;
        }
    }
    if (config.trials > 0) {
        report.success_rate = static_cast<double>(report.successes) / config.trials;
        report.worst_subgroup_rate = 1.0;
        for (const auto &[label, counts] : per_hidden) {
            report.worst_subgroup_rate =
                std::min(report.worst_subgroup_rate, static_cast<double>(counts.first) / counts.second);
        }
    }
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

void check_overlaps(const std::vector<ComplexVector> &states, double delta) {
    for (std::size_t a = 0; a < states.size(); a++) {
        if (states[a].size() != states[0].size()) {
            throw std::invalid_argument("state_identification: states have different dimensions");
        }
        for (std::size_t b = a + 1; b < states.size(); b++) {
            double ov = std::abs(states[a].dot(states[b]));
            if (ov > delta + 1e-9) {
                throw std::invalid_argument("state_identification: states " + std::to_string(a) + " and " +
                                            std::to_string(b) + " overlap " + std::to_string(ov) +
                                            " exceeds delta " + std::to_string(delta));
            }
        }
    }
}

std::size_t state_identification(const std::vector<ComplexVector> &states, double delta, std::size_t hidden, int t,
                                 RngStream &rng, bool own_basis) {
    if (states.empty() || hidden >= states.size()) {
        throw std::invalid_argument("state_identification: hidden index out of range");
    }
    if (t < 1) {
        throw std::invalid_argument("state_identification: t must be at least 1");
    }
    check_overlaps(states, delta);
    int n = static_cast<int>(states[0].size());
    ComplexMatrix own;
    if (own_basis) {
        if (states.size() != static_cast<std::size_t>(n)) {
            throw std::invalid_argument("state_identification: own-basis mode needs m = n states");
        }
        own.resize(n, n);
        for (int c = 0; c < n; c++) {
            own.col(c) = states[c];
        }
        if (unitarity_residual(own) > 1e-9) {
            throw std::invalid_argument("state_identification: own-basis mode needs orthonormal states");
        }
    }
    std::vector<double> ll(states.size(), 0.0);
    for (int round = 0; round < t; round++) {
        ComplexMatrix basis = own_basis ? own : random_orthonormal_set(n, n, rng).vectors;
        std::vector<double> prob(n);
        for (int j = 0; j < n; j++) {
            prob[j] = std::norm(basis.col(j).dot(states[hidden]));
        }
        std::size_t outcome = OutcomeSampler(prob).draw(rng);
        for (std::size_t s = 0; s < states.size(); s++) {
            ll[s] += std::log(std::max(std::norm(basis.col(outcome).dot(states[s])), kLikelihoodFloor));
        }
    }
    std::size_t best = 0;
    for (std::size_t s = 1; s < states.size(); s++) {
        double tol = 1e-9 * std::max({1.0, std::abs(ll[s]), std::abs(ll[best])});
        if (ll[s] > ll[best] + tol) {
            best = s;
        }
    }
    return best;
}

std::vector<ComplexVector> mub_states(const Prime &p) {
    std::vector<ComplexVector> out;
    for (const auto &v : mub_family(1, p)) {
        out.push_back(v.vector);
    }
    return out;
}

StateIdReport state_id_experiment(const std::vector<ComplexVector> &states, double delta, int t, int trials,
                                  std::uint64_t seed, int workers, bool own_basis) {
    if (trials < 0) {
        throw std::invalid_argument("state_id_experiment: trials must be non-negative");
    }
    check_overlaps(states, delta);
    StateIdReport report;
    report.m = states.size();
    report.n = states.empty() ? 0 : static_cast<std::size_t>(states[0].size());
    report.delta = delta;
    report.t = t;
    report.trials = trials;
    report.seed = seed;
    std::vector<int> hit(static_cast<std::size_t>(trials), 0);
    parallel_for(hit.size(), workers, [&](std::size_t n) {
        RngStream rng(seed, n + 1);
        std::size_t hidden = rng.uniform_int(states.size());
        hit[n] = state_identification(states, delta, hidden, t, rng, own_basis) == hidden ? 1 : 0;
    });
    for (int h : hit) {
        report.successes += h;
    }
    report.success_rate = trials > 0 ? static_cast<double>(report.successes) / trials : 0.0;
    return report;
}

}  // namespace hsp
