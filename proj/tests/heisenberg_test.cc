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

#include "hsp/heisenberg.h"

#include <array>
#include <random>
#include <set>

#include "gtest/gtest.h"

using namespace hsp;

namespace {

using Mat3 = std::array<std::array<int, 3>, 3>;

Mat3 to_matrix(const GroupElement &g) {
    return {{{1, g.x, g.z}, {0, 1, g.y}, {0, 0, 1}}};
}

GroupElement from_matrix(const Mat3 &m) {
    return {m[0][1], m[1][2], m[0][2]};
}

Mat3 multiply(const Mat3 &a, const Mat3 &b, int p) {
    Mat3 c{};
    for (int i = 0; i < 3; i++) {
        for (int j = 0; j < 3; j++) {
            int s = 0;
            for (int k = 0; k < 3; k++) {
                s += a[i][k] * b[k][j];
            }
            c[i][j] = mod(s, p);
        }
    }
    return c;
}

// Inverse of a unit upper triangular 3x3 matrix by back substitution.
Mat3 invert(const Mat3 &a, int p) {
    Mat3 inv{{{1, mod(-a[0][1], p), 0}, {0, 1, mod(-a[1][2], p)}, {0, 0, 1}}};
    inv[0][2] = mod(-a[0][2] - a[0][1] * inv[1][2], p);
    return inv;
}

GroupElement oracle_compose(const GroupElement &a, const GroupElement &b, int p) {
    return from_matrix(multiply(to_matrix(a), to_matrix(b), p));
}

std::set<std::vector<GroupElement>> brute_force_subgroups(const Prime &p) {
    auto elems = all_elements(p);
    std::set<std::vector<GroupElement>> out;
    for (std::size_t ia = 0; ia < elems.size(); ia++) {
        for (std::size_t ib = ia; ib < elems.size(); ib++) {
            const auto &a = elems[ia];
            const auto &b = elems[ib];
            // Closure by repeated multiplication until the set stops growing.
            std::set<GroupElement> s{identity_element(), a, b};
            bool grew = true;
            while (grew) {
                grew = false;
                std::vector<GroupElement> cur(s.begin(), s.end());
                for (const auto &u : cur) {
                    for (const auto &v : cur) {
                        if (s.insert(oracle_compose(u, v, p)).second) {
                            grew = true;
                        }
                    }
                }
            }
            out.insert(std::vector<GroupElement>(s.begin(), s.end()));
        }
    }
    return out;
}

std::vector<GroupElement> sorted(std::vector<GroupElement> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

TEST(prime, validation) {
    EXPECT_EQ(Prime(3).value(), 3);
    EXPECT_EQ(Prime(31).value(), 31);
    EXPECT_THROW(Prime(2), std::invalid_argument);
    EXPECT_THROW(Prime(4), std::invalid_argument);
    EXPECT_THROW(Prime(1), std::invalid_argument);
    EXPECT_THROW(Prime(37), std::invalid_argument);
    EXPECT_EQ(Prime(37, 40).value(), 37);
}

TEST(group, compose_examples) {
    Prime p5(5);
    Prime p3(3);
    EXPECT_EQ(compose({0, 0, 0}, {1, 2, 3}, p5), (GroupElement{1, 2, 3}));
    EXPECT_EQ(compose({1, 2, 3}, {2, 1, 0}, p5), oracle_compose({1, 2, 3}, {2, 1, 0}, 5));
    EXPECT_EQ(compose({1, 2, 3}, {2, 1, 0}, p5), (GroupElement{3, 3, 4}));
    EXPECT_EQ(compose({1, 1, 0}, {1, 1, 0}, p3), (GroupElement{2, 2, 1}));
}

TEST(group, inverse_examples) {
    Prime p5(5);
    Prime p3(3);
    EXPECT_EQ(inverse({0, 0, 0}, p5), (GroupElement{0, 0, 0}));
    EXPECT_EQ(inverse({1, 2, 3}, p5), from_matrix(invert(to_matrix({1, 2, 3}), 5)));
    EXPECT_EQ(inverse({1, 2, 3}, p5), (GroupElement{4, 3, 4}));
    EXPECT_EQ(inverse({0, 1, 0}, p3), (GroupElement{0, 2, 0}));
}

TEST(group, axioms_exhaustive_p3) {
    Prime p(3);
    auto elems = all_elements(p);
    for (const auto &a : elems) {
        EXPECT_EQ(compose(a, identity_element(), p), a);
        EXPECT_EQ(compose(identity_element(), a, p), a);
        EXPECT_EQ(compose(a, inverse(a, p), p), identity_element());
        EXPECT_EQ(compose(inverse(a, p), a, p), identity_element());
        for (const auto &b : elems) {
            EXPECT_EQ(compose(a, b, p), oracle_compose(a, b, 3));
            for (const auto &c : elems) {
                ASSERT_EQ(compose(compose(a, b, p), c, p), compose(a, compose(b, c, p), p));
            }
        }
    }
}

TEST(group, matrix_agreement_random) {
    std::mt19937_64 rng(7);
    for (int pv : {5, 7, 11, 31}) {
        Prime p(pv);
        std::uniform_int_distribution<int> u(0, pv - 1);
        for (int t = 0; t < 1000; t++) {
            GroupElement a{u(rng), u(rng), u(rng)};
            GroupElement b{u(rng), u(rng), u(rng)};
            GroupElement c{u(rng), u(rng), u(rng)};
            ASSERT_EQ(compose(a, b, p), oracle_compose(a, b, pv));
            ASSERT_EQ(inverse(a, p), from_matrix(invert(to_matrix(a), pv)));
            ASSERT_EQ(compose(compose(a, b, p), c, p), compose(a, compose(b, c, p), p));
        }
    }
}

TEST(group, element_index_round_trip) {
    Prime p(5);
    for (std::size_t k = 0; k < 125; k++) {
        EXPECT_EQ(element_index(element_at(k, 5), 5), k);
    }
    auto elems = all_elements(p);
    EXPECT_TRUE(std::is_sorted(elems.begin(), elems.end()));
}

TEST(subgroup, examples) {
    Prime p(3);
    EXPECT_EQ(Subgroup(CenterLabel{}, p).elements(), (std::vector<GroupElement>{{0, 0, 0}, {0, 0, 1}, {0, 0, 2}}));
    EXPECT_EQ(Subgroup(ALabel{1, 0}, p).elements(), sorted(closure({{1, 1, 0}}, p)));
    EXPECT_EQ(Subgroup(ALabel{1, 0}, p).elements(), (std::vector<GroupElement>{{0, 0, 0}, {1, 1, 0}, {2, 2, 1}}));
    EXPECT_EQ(Subgroup(ALabel{Infinity{}, 1}, p).elements(),
              (std::vector<GroupElement>{{0, 0, 0}, {0, 1, 1}, {0, 2, 2}}));
    EXPECT_THROW(Subgroup(ALabel{3, 0}, p), std::invalid_argument);
    EXPECT_THROW(Subgroup(NLabel{-1}, p), std::invalid_argument);
}

TEST(subgroup, closed_formula_matches_generator) {
    for (int pv : {3, 5, 7}) {
        Prime p(pv);
        for (int i = 0; i <= pv; i++) {
            Slope s = i < pv ? Slope{i} : Slope{Infinity{}};
            for (int j = 0; j < pv; j++) {
                GroupElement gen = i < pv ? GroupElement{1, i, j} : GroupElement{0, 1, j};
                EXPECT_EQ(Subgroup(ALabel{s, j}, p).elements(), closure({gen}, p));
            }
        }
    }
}

TEST(subgroup, labels_round_trip) {
    Prime p(5);
    for (const auto &h : enumerate_subgroups(p)) {
        EXPECT_EQ(parse_label(h.str(), p), h.label());
        EXPECT_EQ(identify_subgroup(h.elements(), p), h.label());
        EXPECT_EQ(label_order(h.label(), p), static_cast<int>(h.order()));
    }
    EXPECT_EQ(label_str(ALabel{Infinity{}, 2}), "A(inf,2)");
    EXPECT_EQ(label_str(NLabel{3}), "N(3)");
    EXPECT_THROW(parse_label("A(5,0)", p), std::invalid_argument);
    EXPECT_THROW(parse_label("B", p), std::invalid_argument);
}

TEST(subgroup, enumeration_matches_brute_force) {
    for (int pv : {3, 5}) {
        Prime p(pv);
        auto subs = enumerate_subgroups(p);
        ASSERT_EQ(static_cast<int>(subs.size()), subgroup_count(pv));
        std::set<std::vector<GroupElement>> ours;
        for (const auto &h : subs) {
            EXPECT_TRUE(is_subgroup(h.elements(), p));
            ours.insert(h.elements());
        }
        EXPECT_EQ(ours.size(), subs.size());
        EXPECT_EQ(ours, brute_force_subgroups(p));
        EXPECT_TRUE(std::is_sorted(subs.begin(), subs.end()));
    }
    EXPECT_EQ(enumerate_subgroups(Prime(3)).size(), 19u);
    EXPECT_EQ(enumerate_subgroups(Prime(5)).size(), 39u);
}

TEST(subgroup, counts_by_order) {
    for (int pv : {3, 5, 7, 11}) {
        Prime p(pv);
        std::map<std::size_t, int> by_order;
        for (const auto &h : enumerate_subgroups(p)) {
            by_order[h.order()]++;
        }
        EXPECT_EQ(by_order[1], 1);
        EXPECT_EQ(by_order[pv], pv * pv + pv + 1);
        EXPECT_EQ(by_order[pv * pv], pv + 1);
        EXPECT_EQ(by_order[pv * pv * pv], 1);
    }
}

TEST(subgroup, generated_examples) {
    Prime p(3);
    Subgroup a00(ALabel{0, 0}, p);
    EXPECT_EQ(generated_subgroup(a00, a00).label(), SubgroupLabel(ALabel{0, 0}));
    EXPECT_EQ(generated_subgroup(a00, Subgroup(ALabel{0, 1}, p)).label(), SubgroupLabel(NLabel{0}));
    EXPECT_EQ(generated_subgroup(a00, Subgroup(ALabel{1, 0}, p)).label(), SubgroupLabel(FullLabel{}));
}

TEST(subgroup, generated_pairs_exhaustive) {
    for (int pv : {3, 5}) {
        Prime p(pv);
        auto subs = enumerate_subgroups(p);
        for (const auto &h1 : subs) {
            for (const auto &h2 : subs) {
                Subgroup g = generated_subgroup(h1, h2);
                std::vector<GroupElement> gens = h1.elements();
                gens.insert(gens.end(), h2.elements().begin(), h2.elements().end());
                ASSERT_EQ(g.elements(), closure(gens, p));
                auto *a1 = std::get_if<ALabel>(&h1.label());
                auto *a2 = std::get_if<ALabel>(&h2.label());
                if (a1 && a2) {
                    if (a1->i != a2->i) {
                        EXPECT_EQ(g.order(), static_cast<std::size_t>(pv * pv * pv));
                    } else if (a1->j != a2->j) {
                        EXPECT_EQ(g.label(), SubgroupLabel(NLabel{a1->i}));
                    }
                }
            }
        }
    }
}

TEST(subgroup, normal_core_examples) {
    Prime p(3);
    EXPECT_EQ(normal_core(Subgroup(NLabel{0}, p)).label(), SubgroupLabel(NLabel{0}));
    EXPECT_EQ(normal_core(Subgroup(ALabel{0, 0}, p)).label(), SubgroupLabel(TrivialLabel{}));
    EXPECT_EQ(normal_core(Subgroup(CenterLabel{}, p)).label(), SubgroupLabel(CenterLabel{}));
}

TEST(subgroup, normal_core_matches_conjugate_intersection) {
    for (int pv : {3, 5}) {
        Prime p(pv);
        auto elems = all_elements(p);
        for (const auto &h : enumerate_subgroups(p)) {
            std::set<GroupElement> core(h.elements().begin(), h.elements().end());
            for (const auto &g : elems) {
                std::set<GroupElement> conj;
                for (const auto &x : h.elements()) {
                    conj.insert(compose(compose(g, x, p), inverse(g, p), p));
                }
                std::set<GroupElement> keep;
                std::set_intersection(core.begin(), core.end(), conj.begin(), conj.end(),
                                      std::inserter(keep, keep.begin()));
                core = keep;
            }
            Subgroup c = normal_core(h);
            EXPECT_EQ(c.elements(), std::vector<GroupElement>(core.begin(), core.end()));
            EXPECT_TRUE(is_normal(c));
        }
    }
}

TEST(subgroup, core_families) {
    for (int pv : {3, 5, 7}) {
        Prime p(pv);
        auto fams = core_families(p);
        std::size_t total = 0;
        std::set<SubgroupLabel> seen;
        for (const auto &[core, members] : fams) {
            total += members.size();
            for (const auto &m : members) {
                EXPECT_TRUE(seen.insert(m.label()).second);
                EXPECT_EQ(normal_core(m).label(), core);
            }
            if (core != SubgroupLabel(TrivialLabel{})) {
                EXPECT_EQ(members.size(), 1u);
            }
        }
        EXPECT_EQ(total, static_cast<std::size_t>(subgroup_count(pv)));
        EXPECT_EQ(fams.at(TrivialLabel{}).size(), static_cast<std::size_t>(pv * pv + pv + 1));
        EXPECT_EQ(fams.at(CenterLabel{}).size(), 1u);
    }
}

TEST(subgroup, baer_and_commutator_equal_center) {
    for (int pv : {3, 5, 7}) {
        Prime p(pv);
        EXPECT_EQ(baer_subgroup(p).label(), SubgroupLabel(CenterLabel{}));
        EXPECT_EQ(commutator_subgroup(p).label(), SubgroupLabel(CenterLabel{}));
    }
}

TEST(subgroup, normalizer_of_normal_is_everything) {
    Prime p(5);
    EXPECT_EQ(normalizer(Subgroup(NLabel{Infinity{}}, p)).size(), 125u);
    EXPECT_EQ(normalizer(Subgroup(ALabel{2, 1}, p)).size(), 25u);
}
