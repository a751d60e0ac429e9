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

#include "hsp/fourier_sampling.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hsp/qft.h"

namespace hsp {

std::size_t outcome_count(int p) {
    return static_cast<std::size_t>(p) * p + static_cast<std::size_t>(p - 1) * p;
}

std::size_t outcome_id(const IrrepName &name, int column, const Prime &p) {
    validate_irrep(name, p);
    if (auto chi = std::get_if<Chi>(&name)) {
        if (column != 0) {
            throw std::invalid_argument("outcome_id: characters have a single column");
        }
        return static_cast<std::size_t>(chi->a) * p + chi->b;
    }
    if (column < 0 || column >= p) {
        throw std::invalid_argument("outcome_id: column out of range");
    }
    std::size_t k = std::get<Rho>(name).k;
    return static_cast<std::size_t>(p) * p + (k - 1) * p + column;
}

std::pair<IrrepName, int> outcome_at(std::size_t id, const Prime &p) {
    std::size_t pp = static_cast<std::size_t>(p) * p;
    if (id >= outcome_count(p)) {
        throw std::out_of_range("outcome id out of range");
    }
    if (id < pp) {
        return {Chi{static_cast<int>(id / p), static_cast<int>(id % p)}, 0};
    }
    id -= pp;
    return {Rho{static_cast<int>(id / p) + 1}, static_cast<int>(id % p)};
}

std::string outcome_str(std::size_t id, const Prime &p) {
    auto [name, column] = outcome_at(id, p);
    return irrep_str(name) + ":" + std::to_string(column);
}

std::vector<double> ColumnDistribution::irrep_marginal() const {
    Prime pr(p);
    std::vector<double> out(static_cast<std::size_t>(p) * p + p - 1, 0.0);
    for (std::size_t id = 0; id < prob.size(); id++) {
        out[irrep_index(outcome_at(id, pr).first, pr)] += prob[id];
    }
    return out;
}

namespace {

int chi_rank_on(const Subgroup &h, const Chi &chi, int p) {
    for (const auto &g : h.elements()) {
        if (mod(static_cast<std::int64_t>(chi.a) * g.x + static_cast<std::int64_t>(chi.b) * g.y, p) != 0) {
            return 0;
        }
    }
    return 1;
}

}  // namespace

ProjectorTable::ProjectorTable(const Prime &p) : p_(p), subgroups_(enumerate_subgroups(p)) {
    for (std::size_t s = 0; s < subgroups_.size(); s++) {
        const Subgroup &h = subgroups_[s];
        index_.emplace(h.label(), s);
        std::vector<ComplexMatrix> mats;
        std::vector<int> ranks;
        for (int k = 1; k < p; k++) {
            auto proj = subgroup_projector(Rho{k}, h);
            mats.push_back(std::move(proj.matrix));
            ranks.push_back(proj.rank);
        }
        rho_.push_back(std::move(mats));
        rho_rank_.push_back(std::move(ranks));
        std::vector<int> chis;
        for (int a = 0; a < p; a++) {
            for (int b = 0; b < p; b++) {
                chis.push_back(chi_rank_on(h, Chi{a, b}, p));
            }
        }
        chi_rank_.push_back(std::move(chis));
    }
}

std::size_t ProjectorTable::subgroup_index(const SubgroupLabel &label) const {
    auto it = index_.find(label);
    if (it == index_.end()) {
        throw std::out_of_range("ProjectorTable: unknown subgroup " + label_str(label));
    }
    return it->second;
}

const Subgroup &ProjectorTable::subgroup(const SubgroupLabel &label) const {
    return subgroups_[subgroup_index(label)];
}

const ComplexMatrix &ProjectorTable::rho_projector(const SubgroupLabel &label, int k) const {
    return rho_[subgroup_index(label)].at(k - 1);
}

int ProjectorTable::rho_rank(const SubgroupLabel &label, int k) const {
    return rho_rank_[subgroup_index(label)].at(k - 1);
}

int ProjectorTable::chi_rank(const SubgroupLabel &label, const Chi &chi) const {
    return chi_rank_[subgroup_index(label)].at(static_cast<std::size_t>(chi.a) * p_ + chi.b);
}

WeakDistribution weak_distribution(const ProjectorTable &table, const SubgroupLabel &label) {
    const Prime &p = table.prime();
    const Subgroup &h = table.subgroup(label);
    double g_order = p.group_order();
    WeakDistribution out{p, label, {}};
    for (const auto &name : canonical_irreps(p)) {
        int d = irrep_dimension(name, p);
        int rank = std::holds_alternative<Chi>(name) ? table.chi_rank(label, std::get<Chi>(name))
                                                     : table.rho_rank(label, std::get<Rho>(name).k);
        out.prob.push_back(d * static_cast<double>(h.order()) * rank / g_order);
    }
    return out;
}

WeakDistribution weak_distribution(const Subgroup &h) {
    const Prime &p = h.prime();
    double g_order = p.group_order();
    WeakDistribution out{p, h.label(), {}};
    for (const auto &name : canonical_irreps(p)) {
        int d = irrep_dimension(name, p);
        int rank = subgroup_projector(name, h).rank;
        out.prob.push_back(d * static_cast<double>(h.order()) * rank / g_order);
    }
    return out;
}

namespace {

void check_basis(const BasisFamily &basis, const Prime &p) {
    if (basis.p != p.value() || static_cast<int>(basis.rho_bases.size()) != p - 1) {
        throw std::invalid_argument("basis family does not match p=" + std::to_string(p.value()));
    }
    for (const auto &b : basis.rho_bases) {
        if (b.rows() != p || b.cols() != p) {
            throw std::invalid_argument("basis family has a basis of the wrong dimension");
        }
    }
}

ColumnDistribution make_column_distribution(const Prime &p, const SubgroupLabel &label, const BasisFamily &basis) {
    ColumnDistribution out;
    out.p = p;
    out.subgroup = label;
    out.basis_kind = basis.kind;
    out.basis_seed = basis.seed;
    out.basis_stream = basis.stream;
    out.prob.assign(outcome_count(p), 0.0);
    return out;
}

double clamp_dust(double x) {
    return x < kProbabilityDust ? 0.0 : x;
}

template <typename ChiRank, typename RhoProjector>
ColumnDistribution strong_impl(const Prime &p, const SubgroupLabel &label, std::size_t order,
                               const BasisFamily &basis, ChiRank chi_rank, RhoProjector rho_projector) {
    check_basis(basis, p);
    ColumnDistribution out = make_column_distribution(p, label, basis);
    double scale = static_cast<double>(order) / p.group_order();
    for (int a = 0; a < p; a++) {
        for (int b = 0; b < p; b++) {
            out.prob[outcome_id(Chi{a, b}, 0, p)] = scale * chi_rank(Chi{a, b});
        }
    }
    for (int k = 1; k < p; k++) {
        ComplexMatrix pb = rho_projector(k) * basis.rho_basis(k);
        for (int j = 0; j < p; j++) {
            out.prob[outcome_id(Rho{k}, j, p)] = clamp_dust(p * scale * pb.col(j).squaredNorm());
        }
    }
    return out;
}

}  // namespace

ColumnDistribution strong_distribution(const ProjectorTable &table, const SubgroupLabel &label,
                                       const BasisFamily &basis) {
    const Subgroup &h = table.subgroup(label);
    return strong_impl(
        table.prime(), label, h.order(), basis, [&](const Chi &c) { return table.chi_rank(label, c); },
        [&](int k) -> const ComplexMatrix & { return table.rho_projector(label, k); });
}

ColumnDistribution strong_distribution(const Subgroup &h, const BasisFamily &basis) {
    const Prime &p = h.prime();
    return strong_impl(
        p, h.label(), h.order(), basis, [&](const Chi &c) { return chi_rank_on(h, c, p); },
        [&](int k) { return averaged_matrix(Rho{k}, h); });
}

std::vector<double> measure_state(const ComplexVector &state, const BasisFamily &basis, const Prime &p) {
    check_basis(basis, p);
    if (state.size() != p.group_order()) {
        throw std::invalid_argument("measure_state: state has the wrong dimension");
    }
    ComplexVector fourier = qft_matrix(p) * state;
    std::vector<double> out(outcome_count(p), 0.0);
    for (const auto &name : canonical_irreps(p)) {
        int d = irrep_dimension(name, p);
        std::size_t base = qft_row(name, 0, 0, p);
        ComplexMatrix block(d, d);
        for (int i = 0; i < d; i++) {
            for (int j = 0; j < d; j++) {
                block(i, j) = fourier(base + i * d + j);
            }
        }
        ComplexMatrix rotated = block * basis.basis(name);
        for (int j = 0; j < d; j++) {
            out[outcome_id(name, j, p)] = clamp_dust(rotated.col(j).squaredNorm());
        }
    }
    return out;
}

ColumnDistribution coset_state_distribution(const Subgroup &h, const GroupElement &g, const BasisFamily &basis) {
    const Prime &p = h.prime();
    check_basis(basis, p);
    ComplexVector state = ComplexVector::Zero(p.group_order());
    double amp = 1.0 / std::sqrt(static_cast<double>(h.order()));
    for (const auto &x : h.elements()) {
        state(element_index(compose(g, x, p), p)) = amp;
    }
    ColumnDistribution out = make_column_distribution(p, h.label(), basis);
    out.prob = measure_state(state, basis, p);
    return out;
}

double coset_invariance_check(const Subgroup &h, const GroupElement &g, const BasisFamily &basis) {
    auto direct = coset_state_distribution(h, g, basis);
    auto exact = strong_distribution(h, basis);
    double l1 = 0.0;
    for (std::size_t k = 0; k < exact.prob.size(); k++) {
        l1 += std::abs(direct.prob[k] - exact.prob[k]);
    }
    return l1;
}

AbelianDistribution forgetful_abelian_distribution(int i, int j, int tau, const Prime &p) {
    if (i < 0 || i >= p || j < 0 || j >= p || tau < 0 || tau >= p) {
        throw std::invalid_argument("forgetful_abelian_distribution: indices must be residues mod p");
    }
    RootsOfUnity omega(p);
    AbelianDistribution out{p, i, j, tau, {}};
    out.prob.reserve(static_cast<std::size_t>(p) * p * p);
    double scale = 1.0 / std::pow(static_cast<double>(p.value()), 4);
    for (std::int64_t a = 0; a < p; a++) {
        for (std::int64_t b = 0; b < p; b++) {
            for (std::int64_t c = 0; c < p; c++) {
                Complex sum = 0;
                for (std::int64_t mu = 0; mu < p; mu++) {
                    std::int64_t linear = mod((a + b * i + c * j) * mu, p);
                    std::int64_t quadratic = mod(c * i * (mu * (mu - 1) / 2), p);
                    sum += omega(linear + quadratic);
                }
                out.prob.push_back(std::norm(sum) * scale);
            }
        }
    }
    return out;
}

AbelianDistribution forgetful_abelian_by_dft(int i, int j, int tau, const Prime &p) {
    Subgroup h(ALabel{i, j}, p);
    std::vector<double> indicator(p.group_order(), 0.0);
    for (const auto &x : h.elements()) {
        indicator[element_index(compose({0, 0, tau}, x, p), p)] = 1.0 / std::sqrt(static_cast<double>(p.value()));
    }
    AbelianDistribution out{p, i, j, tau, {}};
    double norm = std::pow(static_cast<double>(p.value()), -1.5);
    for (int a = 0; a < p; a++) {
        for (int b = 0; b < p; b++) {
            for (int c = 0; c < p; c++) {
                Complex sum = 0;
                for (std::size_t idx = 0; idx < indicator.size(); idx++) {
                    if (indicator[idx] == 0.0) {
                        continue;
                    }
                    GroupElement e = element_at(idx, p);
                    double angle = 2.0 * std::numbers::pi * (a * e.x + b * e.y + c * e.z) / p;
                    sum += std::polar(indicator[idx] * norm, angle);
                }
                out.prob.push_back(std::norm(sum));
            }
        }
    }
    return out;
}

OutcomeSampler::OutcomeSampler(const std::vector<double> &prob) {
    double total = 0.0;
    for (std::size_t k = 0; k < prob.size(); k++) {
        if (prob[k] > kProbabilityDust) {
            total += prob[k];
            cumulative_.push_back(total);
            ids_.push_back(k);
        }
    }
    if (ids_.empty()) {
        throw std::invalid_argument("cannot sample from an empty distribution");
    }
    for (auto &c : cumulative_) {
        c /= total;
    }
    cumulative_.back() = 1.0;
}

std::size_t OutcomeSampler::draw(RngStream &rng) const {
    double u = rng.uniform();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return ids_[std::min<std::size_t>(it - cumulative_.begin(), ids_.size() - 1)];
}

std::vector<std::size_t> draw_samples(const std::vector<double> &prob, int t, RngStream &rng) {
    if (t < 1) {
        throw std::invalid_argument("draw_samples: t must be >= 1");
    }
    OutcomeSampler sampler(prob);
    std::vector<std::size_t> out;
    out.reserve(t);
    for (int s = 0; s < t; s++) {
        out.push_back(sampler.draw(rng));
    }
    return out;
}

double column_uniformity_residual(const ColumnDistribution &dist) {
    Prime p(dist.p);
    double worst = 0.0;
    for (int k = 1; k < p; k++) {
        double total = 0.0;
        for (int j = 0; j < p; j++) {
            total += dist.prob[outcome_id(Rho{k}, j, p)];
        }
        for (int j = 0; j < p; j++) {
            worst = std::max(worst, std::abs(dist.prob[outcome_id(Rho{k}, j, p)] - total / p));
        }
    }
    return worst;
}

}  // namespace hsp
