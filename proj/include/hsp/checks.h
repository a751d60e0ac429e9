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

#ifndef HSP_CHECKS_H
#define HSP_CHECKS_H

#include <cstdint>
#include <string>
#include <vector>

#include "hsp/heisenberg.h"

namespace hsp {

/// Largest dense QFT dimension built by default (p = 11).
constexpr int kDefaultCapDim = 1331;

struct CheckResult {
    std::string name;
    bool pass = true;
    bool skipped = false;
    /// Measured quantity; for residual checks the worst residual.
    double value = 0.0;
    double tolerance = 0.0;
    std::string note;
};

bool all_pass(const std::vector<CheckResult> &checks);

/// Subgroup count, order histogram, core-family sizes, κ and the commutator subgroup.
std::vector<CheckResult> lattice_checks(const Prime &p);

/// Group axioms and matrix-product agreement: exhaustive when `samples` is 0, else `samples` random triples.
CheckResult group_axiom_check(const Prime &p, int samples, std::uint64_t seed);

/// MUB overlaps, Weil sums, QFT checks (skipped when p³ > cap_dim), weak layer and failure-mode uniformity.
std::vector<CheckResult> verify_checks(const Prime &p, int cap_dim = kDefaultCapDim);

CheckResult mub_overlap_check(const Prime &p);
CheckResult weil_sum_check_all(const Prime &p);
std::vector<CheckResult> qft_checks(const Prime &p, int cap_dim = kDefaultCapDim);
std::vector<CheckResult> uniformity_checks(const Prime &p);
CheckResult weak_layer_check(const Prime &p);

}  // namespace hsp

#endif
