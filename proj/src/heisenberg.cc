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

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace hsp {

bool is_prime(int n) {
    if (n < 2) {
        return false;
    }
    for (int d = 2; d * d <= n; d++) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

Prime::Prime(int value, int max_value) : value_(value) {
    if (value < 3 || value % 2 == 0 || !is_prime(value)) {
        throw std::invalid_argument("p must be an odd prime (got " + std::to_string(value) + ")");
    }
    if (value > max_value) {
        throw std::invalid_argument(
            "p = " + std::to_string(value) + " exceeds the configured maximum " + std::to_string(max_value));
    }
}

int inverse_mod(int a, int p) {
    a = mod(a, p);
    if (a == 0) {
        throw std::domain_error("0 has no inverse mod p");
    }
    // Fermat: a^(p-2).
    std::int64_t result = 1;
    std::int64_t base = a;
    int e = p - 2;
    while (e > 0) {
        if (e & 1) {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<int>(result);
}

std::string GroupElement::str() const {
    return "(" + std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(z) + ")";
}

GroupElement identity_element() {
    return {0, 0, 0};
}

GroupElement compose(const GroupElement &g1, const GroupElement &g2, const Prime &p) {
    return {
        mod(g1.x + g2.x, p),
        mod(g1.y + g2.y, p),
        mod(g1.z + g2.z + static_cast<std::int64_t>(g1.x) * g2.y, p),
    };
}

GroupElement inverse(const GroupElement &g, const Prime &p) {
    return {mod(-g.x, p), mod(-g.y, p), mod(static_cast<std::int64_t>(g.x) * g.y - g.z, p)};
}

GroupElement conjugate(const GroupElement &g, const GroupElement &h, const Prime &p) {
    return compose(compose(h, g, p), inverse(h, p), p);
}

GroupElement power(const GroupElement &g, int n, const Prime &p) {
    n = mod(n, p);
    GroupElement result = identity_element();
    for (int k = 0; k < n; k++) {
        result = compose(result, g, p);
    }
    return result;
}

bool is_reduced(const GroupElement &g, const Prime &p) {
    return g.x >= 0 && g.x < p && g.y >= 0 && g.y < p && g.z >= 0 && g.z < p;
}

GroupElement element_at(std::size_t index, int p) {
    int z = static_cast<int>(index % p);
    index /= p;
    int y = static_cast<int>(index % p);
    int x = static_cast<int>(index / p);
    return {x, y, z};
}

std::vector<GroupElement> all_elements(const Prime &p) {
    std::vector<GroupElement> out;
    out.reserve(p.group_order());
    for (std::size_t k = 0; k < static_cast<std::size_t>(p.group_order()); k++) {
        out.push_back(element_at(k, p));
    }
    return out;
}

std::string slope_str(const Slope &s) {
    if (is_infinite(s)) {
        return "inf";
    }
    return std::to_string(std::get<int>(s));
}

std::string label_str(const SubgroupLabel &label) {
    struct Visitor {
        std::string operator()(const TrivialLabel &) const {
            return "1";
        }
        std::string operator()(const CenterLabel &) const {
            return "Z";
        }
        std::string operator()(const ALabel &a) const {
            return "A(" + slope_str(a.i) + "," + std::to_string(a.j) + ")";
        }
        std::string operator()(const NLabel &n) const {
            return "N(" + slope_str(n.i) + ")";
        }
        std::string operator()(const FullLabel &) const {
            return "G";
        }
    };
    return std::visit(Visitor{}, label);
}

namespace {

int parse_int(std::string_view text, std::string_view whole) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw std::invalid_argument("malformed subgroup label '" + std::string(whole) + "'");
    }
    return value;
}

Slope parse_slope(std::string_view text, std::string_view whole) {
    if (text == "inf") {
        return Infinity{};
    }
    return parse_int(text, whole);
}

void check_slope(const Slope &s, const Prime &p) {
    if (!is_infinite(s)) {
        int i = std::get<int>(s);
        if (i < 0 || i >= p) {
            throw std::invalid_argument("slope index " + std::to_string(i) + " out of range for p=" + std::to_string(p));
        }
    }
}

}  // namespace

SubgroupLabel parse_label(std::string_view text, const Prime &p) {
    SubgroupLabel label;
    if (text == "1") {
        label = TrivialLabel{};
    } else if (text == "Z") {
        label = CenterLabel{};
    } else if (text == "G") {
        label = FullLabel{};
    } else if (text.size() > 3 && text.substr(0, 2) == "A(" && text.back() == ')') {
        auto body = text.substr(2, text.size() - 3);
        auto comma = body.find(',');
        if (comma == std::string_view::npos) {
            throw std::invalid_argument("malformed subgroup label '" + std::string(text) + "'");
        }
        label = ALabel{parse_slope(body.substr(0, comma), text), parse_int(body.substr(comma + 1), text)};
    } else if (text.size() > 3 && text.substr(0, 2) == "N(" && text.back() == ')') {
        label = NLabel{parse_slope(text.substr(2, text.size() - 3), text)};
    } else {
        throw std::invalid_argument("malformed subgroup label '" + std::string(text) + "'");
    }
    validate_label(label, p);
    return label;
}

void validate_label(const SubgroupLabel &label, const Prime &p) {
    if (auto a = std::get_if<ALabel>(&label)) {
        check_slope(a->i, p);
        if (a->j < 0 || a->j >= p) {
            throw std::invalid_argument("A(i,j): j out of range for p=" + std::to_string(p));
        }
    } else if (auto n = std::get_if<NLabel>(&label)) {
        check_slope(n->i, p);
    }
}

int label_order(const SubgroupLabel &label, const Prime &p) {
    switch (label.index()) {
        case 0:
            return 1;
        case 1:
        case 2:
            return p;
        case 3:
            return p * p;
        default:
            return p.group_order();
    }
}

namespace {

std::vector<GroupElement> build_elements(const SubgroupLabel &label, const Prime &p) {
    std::vector<GroupElement> out;
    if (std::holds_alternative<TrivialLabel>(label)) {
        out.push_back(identity_element());
    } else if (std::holds_alternative<CenterLabel>(label)) {
        for (int z = 0; z < p; z++) {
            out.push_back({0, 0, z});
        }
    } else if (auto a = std::get_if<ALabel>(&label)) {
        for (std::int64_t mu = 0; mu < p; mu++) {
            if (is_infinite(a->i)) {
                out.push_back({0, static_cast<int>(mu), mod(mu * a->j, p)});
            } else {
                std::int64_t i = std::get<int>(a->i);
                std::int64_t choose2 = mu * (mu - 1) / 2;
                out.push_back({static_cast<int>(mu), mod(mu * i, p), mod(choose2 * i + mu * a->j, p)});
            }
        }
    } else if (auto n = std::get_if<NLabel>(&label)) {
        for (std::int64_t u = 0; u < p; u++) {
            for (int z = 0; z < p; z++) {
                if (is_infinite(n->i)) {
                    out.push_back({0, static_cast<int>(u), z});
                } else {
                    out.push_back({static_cast<int>(u), mod(u * std::get<int>(n->i), p), z});
                }
            }
        }
    } else {
        out = all_elements(p);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

Subgroup::Subgroup(const SubgroupLabel &label, const Prime &p) : label_(label), p_(p) {
    validate_label(label, p);
    elements_ = build_elements(label, p);
}

bool Subgroup::contains(const GroupElement &g) const {
    return std::binary_search(elements_.begin(), elements_.end(), g);
}

Subgroup subgroup_elements(const SubgroupLabel &label, const Prime &p) {
    return Subgroup(label, p);
}

std::vector<GroupElement> closure(const std::vector<GroupElement> &generators, const Prime &p) {
    std::vector<bool> seen(p.group_order(), false);
    std::vector<GroupElement> members{identity_element()};
    seen[0] = true;
    for (std::size_t k = 0; k < members.size(); k++) {
        for (const auto &gen : generators) {
            GroupElement next = compose(members[k], gen, p);
            auto idx = element_index(next, p);
            if (!seen[idx]) {
                seen[idx] = true;
                members.push_back(next);
            }
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

bool is_subgroup(const std::vector<GroupElement> &elements, const Prime &p) {
    if (elements.empty()) {
        return false;
    }
    std::vector<bool> member(p.group_order(), false);
    for (const auto &g : elements) {
        if (!is_reduced(g, p)) {
            return false;
        }
        member[element_index(g, p)] = true;
    }
    if (!member[0]) {
        return false;
    }
    for (const auto &a : elements) {
        if (!member[element_index(inverse(a, p), p)]) {
            return false;
        }
        for (const auto &b : elements) {
            if (!member[element_index(compose(a, b, p), p)]) {
                return false;
            }
        }
    }
    return true;
}

SubgroupLabel identify_subgroup(const std::vector<GroupElement> &elements, const Prime &p) {
    auto fail = [] {
        throw std::invalid_argument("element set is not a subgroup of H_p");
    };
    auto find_x_one = [&]() -> const GroupElement * {
        for (const auto &g : elements) {
            if (g.x == 1) {
                return &g;
            }
        }
        return nullptr;
    };
    bool all_x_zero = std::all_of(elements.begin(), elements.end(), [](const GroupElement &g) {
        return g.x == 0;
    });

    SubgroupLabel guess;
    std::size_t n = elements.size();
    if (n == 1) {
        guess = TrivialLabel{};
    } else if (n == static_cast<std::size_t>(p)) {
        bool central = std::all_of(elements.begin(), elements.end(), [](const GroupElement &g) {
            return g.x == 0 && g.y == 0;
        });
        if (central) {
            guess = CenterLabel{};
        } else if (all_x_zero) {
            int j = -1;
            for (const auto &g : elements) {
                if (g.y == 1) {
                    j = g.z;
                }
            }
            if (j < 0) {
                fail();
            }
            guess = ALabel{Infinity{}, j};
        } else {
            // The μ = 1 element of A(i,j) is its generator (1, i, j).
            const GroupElement *gen = find_x_one();
            if (gen == nullptr) {
                fail();
            }
            guess = ALabel{gen->y, gen->z};
        }
    } else if (n == static_cast<std::size_t>(p) * p) {
        if (all_x_zero) {
            guess = NLabel{Infinity{}};
        } else {
            const GroupElement *g = find_x_one();
            if (g == nullptr) {
                fail();
            }
            guess = NLabel{g->y};
        }
    } else if (n == static_cast<std::size_t>(p.group_order())) {
        guess = FullLabel{};
    } else {
        fail();
    }
    Subgroup candidate(guess, p);
    if (candidate.elements() != elements) {
        fail();
    }
    return guess;
}

std::vector<Subgroup> enumerate_subgroups(const Prime &p) {
    std::vector<Subgroup> out;
    out.reserve(subgroup_count(p));
    out.emplace_back(TrivialLabel{}, p);
    out.emplace_back(CenterLabel{}, p);
    for (int i = 0; i < p; i++) {
        for (int j = 0; j < p; j++) {
            out.emplace_back(ALabel{i, j}, p);
        }
    }
    for (int j = 0; j < p; j++) {
        out.emplace_back(ALabel{Infinity{}, j}, p);
    }
    for (int i = 0; i < p; i++) {
        out.emplace_back(NLabel{i}, p);
    }
    out.emplace_back(NLabel{Infinity{}}, p);
    out.emplace_back(FullLabel{}, p);
    return out;
}

Subgroup generated_subgroup(const Subgroup &h1, const Subgroup &h2) {
    if (!(h1.prime() == h2.prime())) {
        throw std::invalid_argument("generated_subgroup: subgroups of different groups");
    }
    const Prime &p = h1.prime();
    std::vector<GroupElement> gens = h1.elements();
    gens.insert(gens.end(), h2.elements().begin(), h2.elements().end());
    return Subgroup(identify_subgroup(closure(gens, p), p), p);
}

Subgroup normal_core(const Subgroup &h) {
    const Prime &p = h.prime();
    // Central elements act trivially by conjugation, so conjugators (x, y, 0) suffice.
    std::vector<int> hits(p.group_order(), 0);
    int conjugators = 0;
    for (int x = 0; x < p; x++) {
        for (int y = 0; y < p; y++) {
            GroupElement g{x, y, 0};
            conjugators++;
            for (const auto &e : h.elements()) {
                hits[element_index(conjugate(e, g, p), p)]++;
            }
        }
    }
    std::vector<GroupElement> core;
    for (std::size_t k = 0; k < hits.size(); k++) {
        if (hits[k] == conjugators) {
            core.push_back(element_at(k, p));
        }
    }
    return Subgroup(identify_subgroup(core, p), p);
}

bool is_normal(const Subgroup &h) {
    return normal_core(h) == h;
}

std::vector<GroupElement> normalizer(const Subgroup &h) {
    const Prime &p = h.prime();
    std::vector<GroupElement> out;
    for (int x = 0; x < p; x++) {
        for (int y = 0; y < p; y++) {
            GroupElement g{x, y, 0};
            bool stabilizes = std::all_of(h.elements().begin(), h.elements().end(), [&](const GroupElement &e) {
                return h.contains(conjugate(e, g, p));
            });
            if (stabilizes) {
                for (int z = 0; z < p; z++) {
                    out.push_back({x, y, z});
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::map<SubgroupLabel, std::vector<Subgroup>> core_families(const Prime &p) {
    std::map<SubgroupLabel, std::vector<Subgroup>> families;
    for (const auto &h : enumerate_subgroups(p)) {
        families[normal_core(h).label()].push_back(h);
    }
    return families;
}

Subgroup baer_subgroup(const Prime &p) {
    std::vector<int> hits(p.group_order(), 0);
    int count = 0;
    for (const auto &k : enumerate_subgroups(p)) {
        count++;
        for (const auto &g : normalizer(k)) {
            hits[element_index(g, p)]++;
        }
    }
    std::vector<GroupElement> kappa;
    for (std::size_t k = 0; k < hits.size(); k++) {
        if (hits[k] == count) {
            kappa.push_back(element_at(k, p));
        }
    }
    return Subgroup(identify_subgroup(kappa, p), p);
}

Subgroup commutator_subgroup(const Prime &p) {
    std::vector<GroupElement> commutators;
    std::vector<bool> seen(p.group_order(), false);
    for (int x1 = 0; x1 < p; x1++) {
        for (int y1 = 0; y1 < p; y1++) {
            for (int x2 = 0; x2 < p; x2++) {
                for (int y2 = 0; y2 < p; y2++) {
                    GroupElement g{x1, y1, 0};
                    GroupElement h{x2, y2, 0};
                    GroupElement c = compose(compose(g, h, p), compose(inverse(g, p), inverse(h, p), p), p);
                    auto idx = element_index(c, p);
                    if (!seen[idx]) {
                        seen[idx] = true;
                        commutators.push_back(c);
                    }
                }
            }
        }
    }
    return Subgroup(identify_subgroup(closure(commutators, p), p), p);
}

}  // namespace hsp
