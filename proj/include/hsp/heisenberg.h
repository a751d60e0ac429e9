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

#ifndef HSP_HEISENBERG_H
#define HSP_HEISENBERG_H

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hsp {

constexpr int kDefaultMaxPrime = 31;

/// An odd prime, validated at construction.
class Prime {
   public:
    explicit Prime(int value, int max_value = kDefaultMaxPrime);

    int value() const {
        return value_;
    }
    operator int() const {
        return value_;
    }
    int group_order() const {
        return value_ * value_ * value_;
    }

    bool operator==(const Prime &other) const = default;

   private:
    int value_;
};

bool is_prime(int n);

/// Reduces `a` into [0, p).
inline int mod(std::int64_t a, int p) {
    std::int64_t r = a % p;
    return static_cast<int>(r < 0 ? r + p : r);
}

/// Multiplicative inverse of a nonzero residue mod p.
int inverse_mod(int a, int p);

/// (x, y, z) encodes the unit upper triangular matrix [[1,x,z],[0,1,y],[0,0,1]].
struct GroupElement {
    int x = 0;
    int y = 0;
    int z = 0;

    auto operator<=>(const GroupElement &) const = default;
    std::string str() const;
};

GroupElement identity_element();
GroupElement compose(const GroupElement &g1, const GroupElement &g2, const Prime &p);
GroupElement inverse(const GroupElement &g, const Prime &p);
GroupElement conjugate(const GroupElement &g, const GroupElement &h, const Prime &p);
GroupElement power(const GroupElement &g, int n, const Prime &p);
bool is_reduced(const GroupElement &g, const Prime &p);

/// Position of `g` in the lexicographic order on (x, y, z); also the basis index in C[H_p].
inline std::size_t element_index(const GroupElement &g, int p) {
    return (static_cast<std::size_t>(g.x) * p + g.y) * p + g.z;
}
GroupElement element_at(std::size_t index, int p);
std::vector<GroupElement> all_elements(const Prime &p);

/// The point at infinity of the projective line F_p ∪ {∞}.
struct Infinity {
    auto operator<=>(const Infinity &) const = default;
};

/// Slope index of A(i,j) and N(i). Finite values order before infinity.
using Slope = std::variant<int, Infinity>;

inline bool is_infinite(const Slope &s) {
    return std::holds_alternative<Infinity>(s);
}
std::string slope_str(const Slope &s);

struct TrivialLabel {
    auto operator<=>(const TrivialLabel &) const = default;
};
struct CenterLabel {
    auto operator<=>(const CenterLabel &) const = default;
};
struct ALabel {
    Slope i;
    int j = 0;
    auto operator<=>(const ALabel &) const = default;
};
struct NLabel {
    Slope i;
    auto operator<=>(const NLabel &) const = default;
};
struct FullLabel {
    auto operator<=>(const FullLabel &) const = default;
};

/// Names a subgroup of H_p. Variant order is the canonical subgroup order.
using SubgroupLabel = std::variant<TrivialLabel, CenterLabel, ALabel, NLabel, FullLabel>;

/// Serializes as "1", "Z", "A(i,j)", "N(i)" or "G", with "inf" for the infinite slope.
std::string label_str(const SubgroupLabel &label);
SubgroupLabel parse_label(std::string_view text, const Prime &p);
void validate_label(const SubgroupLabel &label, const Prime &p);
/// |H| implied by the label alone.
int label_order(const SubgroupLabel &label, const Prime &p);

class Subgroup {
   public:
    /// Builds the subgroup named by `label`. Throws std::invalid_argument on bad indices.
    Subgroup(const SubgroupLabel &label, const Prime &p);

    const SubgroupLabel &label() const {
        return label_;
    }
    const Prime &prime() const {
        return p_;
    }
    /// Sorted lexicographically.
    const std::vector<GroupElement> &elements() const {
        return elements_;
    }
    std::size_t order() const {
        return elements_.size();
    }
    bool contains(const GroupElement &g) const;
    std::string str() const {
        return label_str(label_);
    }

    bool operator==(const Subgroup &other) const {
        return p_ == other.p_ && label_ == other.label_;
    }
    /// Canonical order: by label.
    bool operator<(const Subgroup &other) const {
        return label_ < other.label_;
    }

   private:
    SubgroupLabel label_;
    Prime p_;
    std::vector<GroupElement> elements_;
};

/// Alias matching the operation name; equivalent to the Subgroup constructor.
Subgroup subgroup_elements(const SubgroupLabel &label, const Prime &p);

/// Smallest subgroup containing `generators`, as a sorted element list.
std::vector<GroupElement> closure(const std::vector<GroupElement> &generators, const Prime &p);
bool is_subgroup(const std::vector<GroupElement> &elements, const Prime &p);

/// Names the subgroup whose sorted element set is `elements`.
/// Throws std::invalid_argument when the set is not a subgroup of H_p.
SubgroupLabel identify_subgroup(const std::vector<GroupElement> &elements, const Prime &p);

/// All p² + 2p + 4 subgroups, in canonical order.
std::vector<Subgroup> enumerate_subgroups(const Prime &p);

Subgroup generated_subgroup(const Subgroup &h1, const Subgroup &h2);
Subgroup normal_core(const Subgroup &h);
bool is_normal(const Subgroup &h);
/// Elements g with g H g⁻¹ = H.
std::vector<GroupElement> normalizer(const Subgroup &h);

/// Partition of all subgroups by normal core, keyed by the core's label.
std::map<SubgroupLabel, std::vector<Subgroup>> core_families(const Prime &p);

/// ∩ of the normalizers of all subgroups.
Subgroup baer_subgroup(const Prime &p);
/// Subgroup generated by all commutators g h g⁻¹ h⁻¹.
Subgroup commutator_subgroup(const Prime &p);

/// Number of subgroups of H_p, p² + 2p + 4.
inline int subgroup_count(int p) {
    return p * p + 2 * p + 4;
}

}  // namespace hsp

#endif
