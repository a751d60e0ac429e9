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

#include "hsp/checks.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <sstream>

#include "hsp/fourier_sampling.h"
#include "hsp/qft.h"
#include "hsp/random_bases.h"
#include "hsp/representations.h"
#include "hsp/rng.h"

namespace hsp {

namespace {

CheckResult residual(std::string name, double value, double tolerance, std::string note = "") {
    return {std::move(name), value <= tolerance, false, value, tolerance, std::move(note)};
}

CheckResult exact(std::string name, bool pass, double value, std::string note = "") {
    return {std::move(name), pass, false, value, 0.0, std::move(note)};
}

using Mat3 = std::array<std::array<std::int64_t, 3>, 3>;

Mat3 to_matrix(const GroupElement &g) {
    return {{{1, g.x, g.z}, {0, 1, g.y}, {0, 0, 1}}};
}

GroupElement matrix_product(const GroupElement &a, const GroupElement &b, int p) {
    Mat3 x = to_matrix(a);
    Mat3 y = to_matrix(b);
    Mat3 c{};
    for (int i = 0; i < 3; i++) {
        for (int j = 0; j < 3; j++) {
            for (int k = 0; k < 3; k++) {
                c[i][j] += x[i][k] * y[k][j];
            }
        }
    }
    return {mod(c[0][1], p), mod(c[1][2], p), mod(c[0][2], p)};
}

bool axioms_hold(const GroupElement &a, const GroupElement &b, const GroupElement &c, const Prime &p) {
    GroupElement e = identity_element();
    return compose(a, b, p) == matrix_product(a, b, p) &&
           compose(compose(a, b, p), c, p) == compose(a, compose(b, c, p), p) && compose(a, e, p) == a &&
           compose(e, a, p) == a && compose(a, inverse(a, p), p) == e && compose(inverse(a, p), a, p) == e;
}

Slope slope_at(int i, int p) {
    return i < p ? Slope{i} : Slope{Infinity{}};
}

}  // namespace

bool all_pass(const std::vector<CheckResult> &checks) {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult &c) { return c.pass; });
}

CheckResult group_axiom_check(const Prime &p, int samples, std::uint64_t seed) {
    int failures = 0;
    int cases = 0;
    if (samples == 0) {
        auto elems = all_elements(p);
        for (const auto &a : elems) {
            for (const auto &b : elems) {
                for (const auto &c : elems) {
                    cases++;
                    failures += axioms_hold(a, b, c, p) ? 0 : 1;
                }
            }
        }
    } else {
        RngStream rng(seed, static_cast<std::uint64_t>(p.value()));
        auto draw = [&] {
            return element_at(rng.uniform_int(static_cast<std::uint64_t>(p.group_order())), p);
        };
        for (; cases < samples; cases++) {
            GroupElement a = draw();
            GroupElement b = draw();
            GroupElement c = draw();
            failures += axioms_hold(a, b, c, p) ? 0 : 1;
        }
    }
    return exact("group_axioms", failures == 0, failures, std::to_string(cases) + " triples");
}

std::vector<CheckResult> lattice_checks(const Prime &p) {
    std::vector<CheckResult> out;
    auto subs = enumerate_subgroups(p);
    int expected = subgroup_count(p);
    out.push_back(exact("subgroup_count", static_cast<int>(subs.size()) == expected, subs.size(),
                        "expected " + std::to_string(expected)));
    std::map<std::size_t, int> by_order;
    for (const auto &h : subs) {
        by_order[h.order()]++;
    }
    int pv = p;
    std::map<std::size_t, int> want{{1, 1}, {static_cast<std::size_t>(pv), pv * pv + pv + 1},
                                    {static_cast<std::size_t>(pv) * pv, pv + 1},
                                    {static_cast<std::size_t>(pv) * pv * pv, 1}};
    std::ostringstream hist;
    for (const auto &[order, count] : by_order) {
        hist << (hist.tellp() > 0 ? ", " : "") << count << "x order " << order;
    }
    out.push_back(exact("order_histogram", by_order == want, by_order.size(), hist.str()));
    auto families = core_families(p);
    std::size_t trivial = families.count(TrivialLabel{}) ? families.at(TrivialLabel{}).size() : 0;
    bool singletons = true;
    for (const auto &[core, members] : families) {
        if (!std::holds_alternative<TrivialLabel>(core)) {
            singletons &= members.size() == 1;
        }
    }
    out.push_back(exact("core_families", trivial == static_cast<std::size_t>(pv * pv + pv + 1) && singletons &&
                                             families.size() == static_cast<std::size_t>(pv + 4),
                        trivial, std::to_string(families.size()) + " families; trivial core family has " +
                                     std::to_string(trivial) + " members"));
    Subgroup kappa = baer_subgroup(p);
    out.push_back(exact("kappa_is_center", kappa.label() == SubgroupLabel{CenterLabel{}}, kappa.order(),
                        "kappa = " + kappa.str()));
    Subgroup comm = commutator_subgroup(p);
    out.push_back(exact("commutator_is_center", comm.label() == SubgroupLabel{CenterLabel{}}, comm.order(),
                        "[G,G] = " + comm.str()));
    return out;
}

CheckResult mub_overlap_check(const Prime &p) {
    double worst = 0.0;
    double inv = 1.0 / std::sqrt(static_cast<double>(p.value()));
    for (int k = 1; k < p; k++) {
        std::vector<ComplexVector> vs;
        std::vector<std::pair<int, int>> idx;
        for (int i = 0; i <= p; i++) {
            for (int j = 0; j < p; j++) {
                vs.push_back(mub_vector(k, slope_at(i, p), j, p).vector);
                idx.emplace_back(i, j);
            }
        }
        for (std::size_t a = 0; a < vs.size(); a++) {
            for (std::size_t b = a; b < vs.size(); b++) {
                double want = idx[a].first != idx[b].first ? inv : (idx[a].second == idx[b].second ? 1.0 : 0.0);
                worst = std::max(worst, std::abs(std::abs(vs[a].dot(vs[b])) - want));
            }
        }
    }
    return residual("mub_overlaps", worst, 1e-9, "|<psi|psi'>| in {0, 1, 1/sqrt(p)}");
}

CheckResult weil_sum_check_all(const Prime &p) {
    double worst = 0.0;
    double root = std::sqrt(static_cast<double>(p.value()));
    for (int k = 1; k < p; k++) {
        for (int di = 1; di < p; di++) {
            for (int dj = 0; dj < p; dj++) {
                worst = std::max(worst, std::abs(weil_sum_check(p, k, di, dj) - root));
            }
        }
    }
    return residual("weil_sums", worst, 1e-9, "quadratic sums have modulus sqrt(p)");
}

std::vector<CheckResult> qft_checks(const Prime &p, int cap_dim) {
    std::vector<CheckResult> out;
    if (p.group_order() > cap_dim) {
        std::string note = "dimension cap: " + std::to_string(p.group_order()) + " > " + std::to_string(cap_dim);
        for (const char *name : {"qft_unitarity", "qft_block_diagonal", "qft_factorization"}) {
            out.push_back({name, true, true, 0.0, 1e-9, note});
        }
        return out;
    }
    ComplexMatrix f = qft_matrix(p, p);
    out.push_back(residual("qft_unitarity", unitarity_residual(f), 1e-9));
    // Both sides are homomorphisms, so generators suffice beyond small p.
    std::vector<GroupElement> gs;
    if (p <= 5) {
        gs = all_elements(p);
    } else {
        gs = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    }
    double worst = 0.0;
    for (const auto &g : gs) {
        worst = std::max(worst, block_diagonal_residual(f, g, p));
    }
    out.push_back(residual("qft_block_diagonal", worst, 1e-9, std::to_string(gs.size()) + " elements"));
    out.push_back(residual("qft_factorization", qft_factorization_residual(p, p), 1e-9));
    return out;
}

CheckResult weak_layer_check(const Prime &p) {
    ProjectorTable table(p);
    double worst = 0.0;
    std::size_t first_rho = static_cast<std::size_t>(p) * p;
    for (int i = 0; i <= p; i++) {
        std::vector<double> slope_ref;
        for (int j = 0; j < p; j++) {
            auto w = weak_distribution(table, ALabel{slope_at(i, p), j});
            double rho = 0.0;
            for (std::size_t k = first_rho; k < w.prob.size(); k++) {
                rho += w.prob[k];
            }
            worst = std::max(worst, std::abs(rho - (1.0 - 1.0 / p)));
            if (slope_ref.empty()) {
                slope_ref = w.prob;
            }
            for (std::size_t k = 0; k < w.prob.size(); k++) {
                worst = std::max(worst, std::abs(w.prob[k] - slope_ref[k]));
            }
        }
    }
    return residual("weak_layer", worst, 1e-9, "P(p-dim) = 1 - 1/p; conjugates A(i,j), A(i,j') identical");
}

std::vector<CheckResult> uniformity_checks(const Prime &p) {
    std::vector<CheckResult> out;
    auto natural = natural_basis_family(p);
    auto fourier = fourier_basis_family(p);
    double worst_nat = 0.0;
    double worst_fourier = 0.0;
    for (int i = 0; i < p; i++) {
        for (int j = 0; j < p; j++) {
            Subgroup h(ALabel{i, j}, p);
            worst_nat = std::max(worst_nat, column_uniformity_residual(strong_distribution(h, natural)));
            if (i != 0) {
                worst_fourier = std::max(worst_fourier, column_uniformity_residual(strong_distribution(h, fourier)));
            }
        }
    }
    out.push_back(residual("natural_basis_uniform", worst_nat, 1e-9, "A(i,j), i finite"));
    out.push_back(residual("fourier_basis_uniform", worst_fourier, 1e-9, "A(i,j), i != 0"));
    double worst_point = 0.0;
    double worst_mass = 0.0;
    double cube = std::pow(static_cast<double>(p.value()), -3.0);
    for (int i = 1; i < p; i++) {
        for (int j = 0; j < p; j++) {
            for (int tau = 0; tau < p; tau++) {
                auto d = forgetful_abelian_distribution(i, j, tau, p);
                double mass = 0.0;
                for (int a = 0; a < p; a++) {
                    for (int b = 0; b < p; b++) {
                        for (int c = 1; c < p; c++) {
                            worst_point = std::max(worst_point, std::abs(d.at(a, b, c) - cube));
                            mass += d.at(a, b, c);
                        }
                    }
                }
                worst_mass = std::max(worst_mass, std::abs(mass - (1.0 - 1.0 / p)));
            }
        }
    }
    out.push_back(residual("forgetful_abelian_uniform", worst_point, 1e-9, "P(a,b,c) = p^-3 for c != 0, i != 0"));
    out.push_back(residual("forgetful_abelian_mass", worst_mass, 1e-9, "c != 0 mass = 1 - 1/p"));
    return out;
}

std::vector<CheckResult> verify_checks(const Prime &p, int cap_dim) {
    std::vector<CheckResult> out{mub_overlap_check(p), weil_sum_check_all(p)};
    for (auto &c : qft_checks(p, cap_dim)) {
        out.push_back(std::move(c));
    }
    out.push_back(weak_layer_check(p));
    for (auto &c : uniformity_checks(p)) {
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace hsp
