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

#include <cmath>
#include <set>

#include "gtest/gtest.h"
#include "hsp/distinguishability.h"

using namespace hsp;

TEST(oracle, labels_are_coset_invariants) {
    for (int pv : {3, 5}) {
        Prime p(pv);
        auto elems = all_elements(p);
        for (const auto &h : enumerate_subgroups(p)) {
            HiddenOracle oracle(h);
            EXPECT_EQ(oracle_label(oracle, identity_element()), identity_element());
            std::set<GroupElement> labels;
            for (const auto &g1 : elems) {
                labels.insert(oracle_label(oracle, g1));
            }
            ASSERT_EQ(labels.size(), elems.size() / h.order()) << h.str();
            for (int n = 0; n < 200; n++) {
                const auto &g1 = elems[(n * 7919) % elems.size()];
                const auto &g2 = elems[(n * 104729 + 13) % elems.size()];
                bool same = h.contains(compose(inverse(g1, p), g2, p));
                ASSERT_EQ(oracle_label(oracle, g1) == oracle_label(oracle, g2), same);
            }
        }
    }
    HiddenOracle a10(Subgroup(ALabel{1, 0}, Prime(3)));
    std::set<GroupElement> labels;
    for (const auto &g : all_elements(Prime(3))) {
        labels.insert(oracle_label(a10, g));
    }
    EXPECT_EQ(labels.size(), 9u);
}

TEST(sampling, rejects_zero_and_reproduces) {
    Prime p(3);
    ProjectorTable proj(p);
    auto table = strong_table(proj, random_basis_family(p, 5));
    HiddenOracle oracle(Subgroup(ALabel{1, 2}, p));
    RngStream r0(1, 1);
    EXPECT_THROW(run_sampling(oracle, table, 0, r0), std::invalid_argument);
    RngStream r1(8, 2);
    RngStream r2(8, 2);
    EXPECT_EQ(run_sampling(oracle, table, 500, r1), run_sampling(oracle, table, 500, r2));
}

TEST(sampling, empirical_matches_table) {
    Prime p(3);
    ProjectorTable proj(p);
    auto table = strong_table(proj, random_basis_family(p, 6));
    HiddenOracle oracle(Subgroup(ALabel{Infinity{}, 1}, p));
    RngStream rng(12, 0);
    const int t = 100000;
    auto samples = run_sampling(oracle, table, t, rng);
    std::vector<int> counts(outcome_count(3), 0);
    for (auto s : samples) {
        counts[s]++;
    }
    const auto &prob = table.at(oracle.hidden().label());
    for (std::size_t k = 0; k < prob.size(); k++) {
        double sigma = std::sqrt(prob[k] * (1.0 - prob[k]) / t);
        EXPECT_LE(std::abs(counts[k] / static_cast<double>(t) - prob[k]), 4.0 * sigma + 1e-12) << k;
    }
}

TEST(sampling, surrogate_matches_state_vector_simulation) {
    Prime p(3);
    ProjectorTable proj(p);
    auto basis = random_basis_family(p, 31);
    auto table = strong_table(proj, basis);
    std::vector<SubgroupLabel> labels{TrivialLabel{}, CenterLabel{}, ALabel{2, 1}, NLabel{Infinity{}}, FullLabel{}};
    for (const auto &l : labels) {
        auto exact = state_vector_distribution(HiddenOracle(Subgroup(l, p)), basis);
        const auto &row = table.at(l);
        ASSERT_EQ(exact.size(), row.size());
        for (std::size_t k = 0; k < row.size(); k++) {
            EXPECT_NEAR(exact[k], row[k], 1e-12) << label_str(l) << " " << outcome_str(k, p);
        }
    }
}

TEST(bayes, separated_pair) {
    Prime p(5);
    ProjectorTable proj(p);
    auto table = strong_table(proj, random_basis_family(p, 17));
    // Closest pair with TV ≥ 0.1.
    std::size_t ba = 0;
    std::size_t bb = 0;
    double best = 3.0;
    for (std::size_t a = 0; a < table.labels.size(); a++) {
        for (std::size_t b = a + 1; b < table.labels.size(); b++) {
            double tv = total_variation(table.prob[a], table.prob[b]);
            if (tv >= 0.1 && tv < best) {
                best = tv;
                ba = a;
                bb = b;
            }
        }
    }
    ASSERT_LT(best, 0.5);
    HiddenOracle oracle(proj.subgroups()[ba]);
    int wins = 0;
    for (int n = 0; n < 100; n++) {
        RngStream rng(3, n);
        auto samples = run_sampling(oracle, table, 2000, rng);
        auto res = bayes_pairwise(samples, table.labels[ba], table.labels[bb], table);
        wins += res.winner == table.labels[ba] ? 1 : 0;
        EXPECT_EQ(res.log_ratio > 0, res.winner == table.labels[ba]);
    }
    EXPECT_GE(wins, 99);
}

TEST(bayes, identical_distributions_are_a_coin_flip) {
    Prime p(5);
    ProjectorTable proj(p);
    auto table = weak_table(proj);
    SubgroupLabel h1 = ALabel{0, 0};
    SubgroupLabel h2 = ALabel{0, 3};
    ASSERT_EQ(table.at(h1), table.at(h2));
    int correct = 0;
    const int trials = 400;
    for (int n = 0; n < trials; n++) {
        RngStream rng(21, n);
        SubgroupLabel hidden = rng.uniform_int(2) == 0 ? h1 : h2;
        auto samples = run_sampling(HiddenOracle(Subgroup(hidden, p)), table, 50, rng);
        auto res = bayes_pairwise(samples, h1, h2, table);
        EXPECT_EQ(res.winner, h1);
        EXPECT_EQ(res.log_ratio, 0.0);
        correct += res.winner == hidden ? 1 : 0;
    }
    EXPECT_NEAR(correct / static_cast<double>(trials), 0.5, 0.1);
}

TEST(bayes, zero_likelihood_annihilates) {
    Prime p(5);
    ProjectorTable proj(p);
    auto table = weak_table(proj);
    // Z has no weight on ρ_k; the trivial subgroup does.
    std::vector<std::size_t> samples(100, irrep_index(Chi{0, 0}, p));
    samples.push_back(irrep_index(Rho{2}, p));
    auto res = bayes_pairwise(samples, CenterLabel{}, TrivialLabel{}, table);
    EXPECT_EQ(res.winner, SubgroupLabel{TrivialLabel{}});
    EXPECT_THROW(bayes_pairwise(samples, CenterLabel{}, CenterLabel{}, table), std::invalid_argument);
}

TEST(tournament, edge_cases) {
    Prime p(3);
    ProjectorTable proj(p);
    auto full = weak_table(proj);
    DistributionTable single;
    single.p = 3;
    single.labels = {CenterLabel{}};
    single.prob = {full.at(CenterLabel{})};
    EXPECT_EQ(tournament_identify({0, 1, 2}, single), SubgroupLabel{CenterLabel{}});
    EXPECT_THROW(tournament_identify({}, full), std::invalid_argument);
    EXPECT_THROW(tournament_identify({0}, DistributionTable{}), std::invalid_argument);
}

TEST(tournament, identifies_hidden) {
    for (auto [pv, label] : {std::pair<int, SubgroupLabel>{5, CenterLabel{}}, {7, ALabel{2, 3}}}) {
        Prime p(pv);
        ProjectorTable proj(p);
        int t = default_samples(pv);
        int hits = 0;
        for (int n = 0; n < 100; n++) {
            RngStream rng(55, n + 1);
            auto table = strong_table(proj, random_basis_family(p, 55, n + 1));
            hits += tournament_identify(run_sampling(HiddenOracle(Subgroup(label, p)), table, t, rng), table) == label;
        }
        EXPECT_GE(hits, 67) << label_str(label);
    }
    EXPECT_EQ(default_samples(5), 240);
    EXPECT_EQ(default_samples(11), 320);
}

TEST(tournament, strict_winner_independent_of_order) {
    Prime p(5);
    ProjectorTable proj(p);
    for (int n = 0; n < 40; n++) {
        RngStream rng(90, n);
        auto table = strong_table(proj, random_basis_family(p, 90, n));
        const auto &hidden = proj.subgroups()[rng.uniform_int(proj.subgroups().size())];
        auto samples = run_sampling(HiddenOracle(hidden), table, 8, rng);
        auto forward = tournament_identify(samples, table);
        SubgroupLabel champion = table.labels.back();
        for (std::size_t k = table.labels.size() - 1; k-- > 0;) {
            champion = bayes_pairwise(samples, champion, table.labels[k], table).winner;
        }
        double top = log_likelihood(samples, table.at(forward));
        bool strict = true;
        for (const auto &l : table.labels) {
            if (l != forward && log_likelihood(samples, table.at(l)) >= top - 1e-6) {
                strict = false;
            }
        }
        if (strict) {
            EXPECT_EQ(champion, forward);
        }
    }
}

TEST(experiment, success_rates) {
    ExperimentConfig c;
    c.p = 5;
    c.trials = 100;
    c.t = 240;
    c.seed = 42;
    auto r = hsp_experiment(c);
    EXPECT_GE(r.success_rate, 2.0 / 3.0);
    EXPECT_EQ(r.records.size(), 100u);
    c.p = 3;
    c.t = 10000;
    EXPECT_GE(hsp_experiment(c).success_rate, 0.95);
}

TEST(experiment, empty_and_invalid) {
    ExperimentConfig c;
    c.trials = 0;
    auto r = hsp_experiment(c);
    EXPECT_EQ(r.successes, 0);
    EXPECT_EQ(r.success_rate, 0.0);
    EXPECT_TRUE(r.records.empty());
    c.p = 9;
    EXPECT_THROW(hsp_experiment(c), std::invalid_argument);
    c.p = 5;
    c.trials = -1;
    EXPECT_THROW(hsp_experiment(c), std::invalid_argument);
}

TEST(experiment, deterministic_across_workers) {
    ExperimentConfig c;
    c.p = 5;
    c.trials = 60;
    c.t = 6;
    c.seed = 7;
    auto a = hsp_experiment(c);
    c.workers = 3;
    auto b = hsp_experiment(c);
    ASSERT_EQ(a.records.size(), b.records.size());
    for (std::size_t n = 0; n < a.records.size(); n++) {
        EXPECT_EQ(a.records[n].stream, b.records[n].stream);
        EXPECT_EQ(a.records[n].hidden, b.records[n].hidden);
        EXPECT_EQ(a.records[n].returned, b.records[n].returned);
    }
    EXPECT_EQ(a.confusion, b.confusion);
    EXPECT_LT(a.success_rate, 1.0);
    c.first_trial = 37;
    c.trials = 1;
    auto one = hsp_experiment(c);
    EXPECT_EQ(one.records[0].stream, a.records[37].stream);
    EXPECT_EQ(one.records[0].hidden, a.records[37].hidden);
    EXPECT_EQ(one.records[0].returned, a.records[37].returned);
}

TEST(experiment, modes) {
    ExperimentConfig c;
    c.p = 5;
    c.trials = 2 * subgroup_count(5);
    c.hidden_mode = HiddenMode::WorstCase;
    auto r = hsp_experiment(c);
    std::map<SubgroupLabel, int> seen;
    for (const auto &rec : r.records) {
        seen[rec.hidden]++;
    }
    EXPECT_EQ(seen.size(), static_cast<std::size_t>(subgroup_count(5)));
    EXPECT_GE(r.worst_subgroup_rate, 0.5);
    c.hidden_mode = HiddenMode::Uniform;
    c.basis_mode = BasisMode::Fixed;
    c.trials = 100;
    EXPECT_GE(hsp_experiment(c).success_rate, 2.0 / 3.0);
    EXPECT_EQ(parse_hidden_mode(hidden_mode_str(HiddenMode::WorstCase)), HiddenMode::WorstCase);
    EXPECT_EQ(parse_basis_mode(basis_mode_str(BasisMode::Fixed)), BasisMode::Fixed);
    EXPECT_THROW(parse_basis_mode("sometimes"), std::invalid_argument);
}

TEST(experiment, success_nondecreasing_in_t) {
    for (const auto &grid : {std::vector<int>{2, 5, 10, 20}, std::vector<int>{50, 100, 200, 400}}) {
        double prev = 0.0;
        for (int t : grid) {
            ExperimentConfig c;
            c.p = 5;
            c.trials = 200;
            c.t = t;
            c.seed = 100 + t;
            double rate = hsp_experiment(c).success_rate;
            double sigma = std::sqrt(std::max(prev * (1 - prev), 0.25 / 200) / 200);
            EXPECT_GE(rate, prev - 2.0 * sigma) << "t=" << t;
            prev = rate;
        }
    }
}

TEST(experiment, conjugacy_index_resolved) {
    Prime p(7);
    ProjectorTable proj(p);
    int t = default_samples(7);
    int right_i = 0;
    for (int n = 0; n < 100; n++) {
        RngStream rng(61, n + 1);
        ALabel h{static_cast<int>(rng.uniform_int(7)), static_cast<int>(rng.uniform_int(7))};
        auto table = strong_table(proj, random_basis_family(p, 61, n + 1));
        auto got = tournament_identify(run_sampling(HiddenOracle(Subgroup(h, p)), table, t, rng), table);
        right_i += std::holds_alternative<ALabel>(got) && std::get<ALabel>(got).i == h.i ? 1 : 0;
    }
    EXPECT_GE(right_i, 95);
}

TEST(state_id, own_basis_is_exact) {
    std::vector<ComplexVector> states;
    for (int k = 0; k < 4; k++) {
        states.push_back(ComplexVector::Unit(4, k));
    }
    for (std::size_t h = 0; h < 4; h++) {
        RngStream rng(1, h);
        EXPECT_EQ(state_identification(states, 0.0, h, 1, rng, true), h);
    }
    auto rep = state_id_experiment(states, 0.0, 200, 50, 4);
    EXPECT_EQ(rep.successes, 50);
}

TEST(state_id, rejects_bad_overlap) {
    std::vector<ComplexVector> states{ComplexVector::Unit(3, 0), ComplexVector::Unit(3, 1), ComplexVector(3)};
    states[2] << 0.9, std::sqrt(1 - 0.81), 0.0;
    RngStream rng(1, 1);
    try {
        state_identification(states, 0.2, 0, 5, rng);
        FAIL() << "expected rejection";
    } catch (const std::invalid_argument &e) {
        EXPECT_NE(std::string(e.what()).find("states 0 and 2"), std::string::npos) << e.what();
    }
    EXPECT_THROW(state_identification({ComplexVector::Unit(3, 0)}, 0.1, 0, 0, rng), std::invalid_argument);
}

TEST(state_id, mub_family) {
    Prime p(7);
    auto states = mub_states(p);
    ASSERT_EQ(states.size(), 56u);
    int t = 8 * static_cast<int>(std::ceil(std::log(56.0)));
    auto rep = state_id_experiment(states, 1.0 / std::sqrt(7.0), t, 100, 17);
    EXPECT_GE(rep.success_rate, 2.0 / 3.0);
    auto rep3 = state_id_experiment(states, 1.0 / std::sqrt(7.0), t, 100, 17, 3);
    EXPECT_EQ(rep.successes, rep3.successes);
}

TEST(state_id, two_close_states) {
    std::vector<ComplexVector> states{ComplexVector::Unit(2, 0), ComplexVector(2)};
    states[1] << 0.1, std::sqrt(0.99);
    auto rep = state_id_experiment(states, 0.1, 50, 100, 23);
    EXPECT_GE(rep.success_rate, 0.99);
}
