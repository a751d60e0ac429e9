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

#include "hsp/distinguishability.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hsp/linalg.h"
#include "hsp/parallel.h"

namespace hsp {

void Constants::validate() const {
    for (double v : {c1, c2, C1, C2}) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument("constants must be positive and finite");
        }
    }
}

Constants calibrated_constants() {
    return Constants{0.47, 0.75, 0.1, 0.1};
}

double total_variation(const std::vector<double> &p, const std::vector<double> &q) {
    if (p.size() != q.size()) {
        throw std::invalid_argument("total_variation: outcome spaces differ");
    }
    double out = 0.0;
    for (std::size_t k = 0; k < p.size(); k++) {
        out += std::abs(p[k] - q[k]);
    }
    return out;
}

double w_distance(const Subgroup &h1, const Subgroup &h2) {
    if (!(h1.prime() == h2.prime())) {
        throw std::invalid_argument("w_distance: subgroups of different groups");
    }
    return total_variation(weak_distribution(h1).prob, weak_distribution(h2).prob);
}

double w_distance(const ProjectorTable &table, const SubgroupLabel &h1, const SubgroupLabel &h2) {
    return total_variation(weak_distribution(table, h1).prob, weak_distribution(table, h2).prob);
}

namespace {

int choose_case(const RParams &r, const Constants &constants, int p) {
    double log_g = std::log(static_cast<double>(p) * p * p);
    double lhs = std::sqrt(static_cast<double>(r.dim)) / log_g;
    int sum = r.r1 + r.r2;
    if (sum > 0 && lhs >= constants.C1 * std::pow(sum, 1.5)) {
        return 1;
    }
    int lo = std::min(r.r1, r.r2);
    int hi = std::max(r.r1, r.r2);
    if (lo > 0 && lhs >= constants.C1 * lo && static_cast<double>(hi) / lo >= constants.C2 * log_g * log_g) {
        return 2;
    }
    return 3;
}

// Π_{1,2} ≤ Π_i, so rank Π′_i = rank Π_i − rank Π_{1,2}.
RParams fill(const IrrepName &irrep, const ComplexMatrix &pi1, const ComplexMatrix &pi2, const ComplexMatrix &pi12,
             const int ranks[3], std::size_t order1, std::size_t order2, const Constants &constants,
             const Prime &p) {
    RParams r;
    r.irrep = irrep;
    r.dim = irrep_dimension(irrep, p);
    r.order1 = order1;
    r.order2 = order2;
    r.r1 = ranks[0];
    r.r2 = ranks[1];
    ComplexMatrix d1 = pi1 - pi12;
    ComplexMatrix d2 = pi2 - pi12;
    r.r1_prime = ranks[0] - ranks[2];
    r.r2_prime = ranks[1] - ranks[2];
    double m1 = static_cast<double>(order1) * r.r1;
    double m2 = static_cast<double>(order2) * r.r2;
    r.h_hat = std::max(m1, m2);
    r.h_tilde = std::abs(m1 - m2);
    r.delta = std::min(1.0, operator_norm(d1 * d2));
    // √δ enters the case-1 expression, so rounding noise on orthogonal pairs is removed.
    if (r.delta < 1e-12) {
        r.delta = 0.0;
    }
    r.rcase = choose_case(r, constants, p);
    return r;
}

ComplexMatrix scalar(double v) {
    ComplexMatrix m(1, 1);
    m(0, 0) = v;
    return m;
}

}  // namespace

RParams r_params(const Subgroup &h1, const Subgroup &h2, const IrrepName &irrep, const Constants &constants) {
    if (!(h1.prime() == h2.prime())) {
        throw std::invalid_argument("r_params: subgroups of different groups");
    }
    Subgroup join = generated_subgroup(h1, h2);
    ComplexMatrix m[3] = {averaged_matrix(irrep, h1), averaged_matrix(irrep, h2), averaged_matrix(irrep, join)};
    int ranks[3] = {numerical_rank(m[0]), numerical_rank(m[1]), numerical_rank(m[2])};
    return fill(irrep, m[0], m[1], m[2], ranks, h1.order(), h2.order(), constants, h1.prime());
}

SubgroupLabel join_label(const ProjectorTable &table, const SubgroupLabel &h1, const SubgroupLabel &h2) {
    const Subgroup &s1 = table.subgroup(h1);
    const Subgroup &s2 = table.subgroup(h2);
    const Subgroup *best = nullptr;
    for (const auto &h : table.subgroups()) {
        if (best != nullptr && h.order() >= best->order()) {
            continue;
        }
        auto inside = [&](const Subgroup &s) {
            return std::all_of(s.elements().begin(), s.elements().end(),
                               [&](const GroupElement &g) { return h.contains(g); });
        };
        if (inside(s1) && inside(s2)) {
            best = &h;
        }
    }
    return best->label();
}

namespace {

RParams table_params(const ProjectorTable &table, const SubgroupLabel &h1, const SubgroupLabel &h2,
                     const SubgroupLabel &join, const IrrepName &irrep, const Constants &constants) {
    const Prime &p = table.prime();
    std::size_t o1 = table.subgroup(h1).order();
    std::size_t o2 = table.subgroup(h2).order();
    if (auto chi = std::get_if<Chi>(&irrep)) {
        int ranks[3] = {table.chi_rank(h1, *chi), table.chi_rank(h2, *chi), table.chi_rank(join, *chi)};
        return fill(irrep, scalar(ranks[0]), scalar(ranks[1]), scalar(ranks[2]), ranks, o1, o2, constants, p);
    }
    int k = std::get<Rho>(irrep).k;
    int ranks[3] = {table.rho_rank(h1, k), table.rho_rank(h2, k), table.rho_rank(join, k)};
    return fill(irrep, table.rho_projector(h1, k), table.rho_projector(h2, k), table.rho_projector(join, k), ranks,
                o1, o2, constants, p);
}

}  // namespace

RParams r_params(const ProjectorTable &table, const SubgroupLabel &h1, const SubgroupLabel &h2,
                 const IrrepName &irrep, const Constants &constants) {
    return table_params(table, h1, h2, join_label(table, h1, h2), irrep, constants);
}

double r_irrep(const RParams &r, const Constants &constants) {
    double expr = -std::numeric_limits<double>::infinity();
    if (r.rcase == 1) {
        double gain = 0.0;
        if (r.r1 > 0) {
            gain += std::sqrt(static_cast<double>(r.r1_prime)) / r.r1;
        }
        if (r.r2 > 0) {
            gain += std::sqrt(static_cast<double>(r.r2_prime)) / r.r2;
        }
        double loss = r.delta < 1.0 ? 2.0 * std::sqrt(r.delta) * std::pow(1.0 - r.delta * r.delta, -0.25)
                                    : std::numeric_limits<double>::infinity();
        expr = r.h_hat / 2.0 * (constants.c1 * gain - loss);
    } else if (r.rcase == 2) {
        expr = r.h_hat / 2.0 * constants.c2 / std::sqrt(static_cast<double>(std::min(r.r1, r.r2)));
    }
    return std::max(expr, r.h_tilde);
}

double r_value(const std::vector<RParams> &params, const Constants &constants, int p) {
    double g = static_cast<double>(p) * p * p;
    double out = 0.0;
    for (const auto &r : params) {
        out += r.dim / g * r_irrep(r, constants);
    }
    return out;
}

std::vector<RParams> pair_params(const ProjectorTable &table, const SubgroupLabel &h1, const SubgroupLabel &h2,
                                 const Constants &constants) {
    std::vector<RParams> out;
    SubgroupLabel join = join_label(table, h1, h2);
    for (const auto &irrep : canonical_irreps(table.prime())) {
        out.push_back(table_params(table, h1, h2, join, irrep, constants));
    }
    return out;
}

double r_value(const Subgroup &h1, const Subgroup &h2, const Constants &constants) {
    constants.validate();
    std::vector<RParams> params;
    for (const auto &irrep : canonical_irreps(h1.prime())) {
        params.push_back(r_params(h1, h2, irrep, constants));
    }
    return r_value(params, constants, h1.prime());
}

double r_value(const ProjectorTable &table, const SubgroupLabel &h1, const SubgroupLabel &h2,
               const Constants &constants) {
    constants.validate();
    return r_value(pair_params(table, h1, h2, constants), constants, table.prime());
}

std::size_t PairMatrix::index(const SubgroupLabel &label) const {
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) {
        throw std::out_of_range("PairMatrix: unknown subgroup " + label_str(label));
    }
    return static_cast<std::size_t>(it - labels.begin());
}

std::string PairMatrix::csv() const {
    std::ostringstream out;
    out.precision(12);
    out << "subgroup";
    for (const auto &l : labels) {
        out << ",\"" << label_str(l) << "\"";
    }
    out << "\n";
    for (std::size_t i = 0; i < labels.size(); i++) {
        out << "\"" << label_str(labels[i]) << "\"";
        for (std::size_t j = 0; j < labels.size(); j++) {
            out << "," << at(i, j);
        }
        out << "\n";
    }
    return out.str();
}

PairMatrix empirical_tv_matrix(const ProjectorTable &table, const BasisFamily &basis, int workers) {
    PairMatrix m;
    m.p = table.prime();
    std::size_t n = table.subgroups().size();
    std::vector<std::vector<double>> dists(n);
    for (std::size_t s = 0; s < n; s++) {
        m.labels.push_back(table.subgroups()[s].label());
    }
    parallel_for(n, workers, [&](std::size_t s) {
        dists[s] = strong_distribution(table, m.labels[s], basis).prob;
    });
    m.values.assign(n * n, 0.0);
    parallel_for(n, workers, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; j++) {
            m.values[i * n + j] = total_variation(dists[i], dists[j]);
        }
    });
    for (std::size_t i = 0; i < n; i++) {
        for (std::size_t j = 0; j < i; j++) {
            m.at(i, j) = m.at(j, i);
        }
    }
    return m;
}

PairMatrix empirical_tv_matrix(const Prime &p, const BasisFamily &basis, int workers) {
    return empirical_tv_matrix(ProjectorTable(p), basis, workers);
}

std::vector<SubgroupLabel> trivial_core_labels(const Prime &p) {
    std::vector<SubgroupLabel> out{TrivialLabel{}};
    for (int i = 0; i <= p; i++) {
        Slope s = i < p ? Slope{i} : Slope{Infinity{}};
        for (int j = 0; j < p; j++) {
            out.push_back(ALabel{s, j});
        }
    }
    return out;
}

namespace {

struct PairData {
    std::size_t a = 0;
    std::size_t b = 0;
    std::vector<RParams> params;
};

std::vector<PairData> trivial_core_pairs(const ProjectorTable &table, const Constants &constants, int workers) {
    auto labels = trivial_core_labels(table.prime());
    std::vector<PairData> pairs;
    for (std::size_t x = 0; x < labels.size(); x++) {
        for (std::size_t y = x + 1; y < labels.size(); y++) {
            pairs.push_back({table.subgroup_index(labels[x]), table.subgroup_index(labels[y]), {}});
        }
    }
    parallel_for(pairs.size(), workers, [&](std::size_t n) {
        const auto &subs = table.subgroups();
        pairs[n].params = pair_params(table, subs[pairs[n].a].label(), subs[pairs[n].b].label(), constants);
    });
    return pairs;
}

bool all_pairs_hold(const std::vector<PairData> &pairs, const PairMatrix &tv, const Constants &constants, int p) {
    for (const auto &pair : pairs) {
        if (tv.at(pair.a, pair.b) < r_value(pair.params, constants, p)) {
            return false;
        }
    }
    return true;
}

// Largest value of one multiplier, the other held at a negligible level, for which every pair holds.
double max_multiplier(const std::vector<PairData> &pairs, const PairMatrix &tv, Constants base, bool first,
                      int p) {
    double lo = 0.0;
    double hi = 64.0;
    for (int it = 0; it < 60; it++) {
        double mid = 0.5 * (lo + hi);
        (first ? base.c1 : base.c2) = mid;
        if (all_pairs_hold(pairs, tv, base, p)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

double order_statistic(std::vector<double> values, double pass_fraction) {
    std::sort(values.begin(), values.end());
    std::size_t allowed = static_cast<std::size_t>(std::floor((1.0 - pass_fraction) * values.size() + 1e-9));
    return values[std::min(allowed, values.size() - 1)];
}

}  // namespace

CalibrationResult calibrate_constants(const CalibrationConfig &config) {
    if (config.seeds < 1 || !(config.margin > 0.0) || config.margin > 1.0) {
        throw std::invalid_argument("calibrate_constants: bad configuration");
    }
    Prime p(config.p);
    ProjectorTable table(p);
    Constants base{1e-12, 1e-12, config.C1, config.C2};
    base.validate();
    auto pairs = trivial_core_pairs(table, base, config.workers);
    CalibrationResult result;
    result.config = config;
    std::vector<PairMatrix> tvs;
    for (int s = 0; s < config.seeds; s++) {
        auto basis = random_basis_family(p, config.first_seed + static_cast<std::uint64_t>(s));
        tvs.push_back(empirical_tv_matrix(table, basis, config.workers));
        result.c1_max.push_back(max_multiplier(pairs, tvs.back(), base, true, p));
        result.c2_max.push_back(max_multiplier(pairs, tvs.back(), base, false, p));
    }
    Constants chosen = base;
    chosen.c1 = config.margin * order_statistic(result.c1_max, config.pass_fraction);
    chosen.c2 = config.margin * order_statistic(result.c2_max, config.pass_fraction);
    auto count_passing = [&](const Constants &c) {
        int n = 0;
        for (const auto &tv : tvs) {
            n += all_pairs_hold(pairs, tv, c, p) ? 1 : 0;
        }
        return n;
    };
    int needed = static_cast<int>(std::ceil(config.pass_fraction * config.seeds - 1e-9));
    while (count_passing(chosen) < needed) {
        chosen.c1 *= config.margin;
        chosen.c2 *= config.margin;
    }
    result.constants = chosen;
    result.seeds_passing = count_passing(chosen);
    return result;
}

TheoremCheck theorem_check(const Prime &p, std::uint64_t first_seed, int seeds, const Constants &constants,
                           double tv_floor, int workers) {
    constants.validate();
    ProjectorTable table(p);
    auto pairs = trivial_core_pairs(table, constants, workers);
    TheoremCheck out;
    out.p = p;
    out.seeds = seeds;
    out.tv_floor = tv_floor;
    for (int s = 0; s < seeds; s++) {
        auto tv = empirical_tv_matrix(table, random_basis_family(p, first_seed + static_cast<std::uint64_t>(s)),
                                      workers);
        double min_tv = std::numeric_limits<double>::infinity();
        for (const auto &pair : pairs) {
            min_tv = std::min(min_tv, tv.at(pair.a, pair.b));
        }
        out.min_tv.push_back(min_tv);
        out.seeds_tv_floor += min_tv >= tv_floor ? 1 : 0;
        out.seeds_tv_above_r += all_pairs_hold(pairs, tv, constants, p) ? 1 : 0;
    }
    return out;
}

}  // namespace hsp
