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

#include "hsp/random_bases.h"

#include <cmath>

#include "gtest/gtest.h"
#include "hsp/stats.h"

using namespace hsp;

namespace {

double gram_residual(const ComplexMatrix &v) {
    return (v.adjoint() * v - ComplexMatrix::Identity(v.cols(), v.cols())).cwiseAbs().maxCoeff();
}

// Random unit vectors near e_1..e_n; perturbation size eta.
std::vector<ComplexVector> near_orthogonal(int d, int n, double eta, RngStream &rng) {
    std::vector<ComplexVector> out;
    for (int a = 0; a < n; a++) {
        ComplexVector v = eta * gaussian_unit_vector(d, rng);
        v(a) += 1.0;
        out.push_back(v / v.norm());
    }
    return out;
}

double max_pairwise_overlap(const std::vector<ComplexVector> &vs) {
    double worst = 0.0;
    for (std::size_t a = 0; a < vs.size(); a++) {
        for (std::size_t b = 0; b < a; b++) {
            worst = std::max(worst, std::abs(vs[a].dot(vs[b])));
        }
    }
    return worst;
}

}  // namespace

TEST(rng, determinism_and_streams) {
    RngStream a(42, 7);
    RngStream b(42, 7);
    RngStream c(42, 8);
    bool differs = false;
    for (int k = 0; k < 100; k++) {
        auto x = a.next_u64();
        EXPECT_EQ(x, b.next_u64());
        differs |= x != c.next_u64();
    }
    EXPECT_TRUE(differs);
    EXPECT_NE(RngStream(1, 0).derive(1).stream(), RngStream(1, 0).derive(2).stream());
    EXPECT_EQ(RngStream(1, 0).derive(5).stream(), RngStream(1, 0).derive(5).stream());
}

TEST(rng, ranges) {
    RngStream r(3, 0);
    std::vector<int> counts(7, 0);
    for (int k = 0; k < 70000; k++) {
        double u = r.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        counts[r.uniform_int(7)]++;
    }
    for (int c : counts) {
        EXPECT_NEAR(c, 10000, 5 * std::sqrt(10000.0));
    }
    EXPECT_THROW(r.uniform_int(0), std::invalid_argument);
}

TEST(rng, gaussian_moments) {
    RngStream r(5, 0);
    std::vector<double> xs;
    for (int k = 0; k < 100000; k++) {
        xs.push_back(r.gaussian());
    }
    double m = mean(xs);
    double var = 0.0;
    for (double x : xs) {
        var += (x - m) * (x - m);
    }
    var /= xs.size();
    EXPECT_NEAR(m, 0.0, 4.0 / std::sqrt(1e5));
    EXPECT_NEAR(var, 1.0, 4.0 * std::sqrt(2.0 / 1e5));
}

TEST(random_vectors, unit_norm_and_d1) {
    RngStream r(1, 0);
    auto s = gaussian_unit_vector(1, r);
    EXPECT_NEAR(std::abs(s(0)), 1.0, 1e-12);
    for (int d : {2, 7, 64}) {
        EXPECT_NEAR(gaussian_unit_vector(d, r).norm(), 1.0, 1e-12);
    }
    EXPECT_THROW(gaussian_unit_vector(0, r), std::invalid_argument);
}

TEST(random_vectors, coordinate_mass_mean) {
    RngStream r(2, 0);
    std::vector<double> xs;
    for (int k = 0; k < 100000; k++) {
        xs.push_back(std::norm(gaussian_unit_vector(16, r)(0)));
    }
    double m = mean(xs);
    double var = 0.0;
    for (double x : xs) {
        var += (x - m) * (x - m);
    }
    double se = std::sqrt(var / (xs.size() - 1) / xs.size());
    EXPECT_NEAR(m, 1.0 / 16.0, 3.0 * se);
}

TEST(random_vectors, bit_identical_for_fixed_seed) {
    RngStream a(99, 3);
    RngStream b(99, 3);
    ComplexVector va = gaussian_unit_vector(8, a);
    ComplexVector vb = gaussian_unit_vector(8, b);
    for (int k = 0; k < 8; k++) {
        EXPECT_EQ(va(k), vb(k));
    }
    RngStream c(99, 3);
    RngStream e(99, 3);
    EXPECT_EQ(random_orthonormal_set(6, 4, c).vectors, random_orthonormal_set(6, 4, e).vectors);
}

TEST(random_vectors, invariance_ks) {
    // |<u|v>| for random v has the same law for u = e_1 and for any other fixed unit u.
    RngStream r(77, 0);
    ComplexVector u = gaussian_unit_vector(16, r);
    std::vector<double> a, b;
    for (int k = 0; k < 10000; k++) {
        a.push_back(std::abs(gaussian_unit_vector(16, r)(0)));
        b.push_back(std::abs(u.dot(gaussian_unit_vector(16, r))));
    }
    EXPECT_LT(ks_statistic(a, b), ks_critical(a.size(), b.size(), 1e-3));
}

TEST(orthonormal_sets, gram_identity) {
    RngStream r(4, 0);
    for (auto [d, m] : {std::pair{4, 4}, {8, 3}, {16, 16}, {31, 31}, {5, 0}}) {
        auto s = random_orthonormal_set(d, m, r);
        EXPECT_EQ(s.size(), m);
        if (m > 0) {
            EXPECT_LT(gram_residual(s.vectors), 1e-10);
        }
    }
    EXPECT_THROW(random_orthonormal_set(3, 4, r), std::invalid_argument);
}

TEST(orthonormal_sets, gram_schmidt_fixes_orthonormal_input) {
    RngStream r(6, 0);
    ComplexMatrix q = random_orthonormal_set(10, 6, r).vectors;
    EXPECT_LT((gram_schmidt(q) - q).cwiseAbs().maxCoeff(), 1e-12);
    ComplexMatrix dep(3, 2);
    dep << 1, 2, 0, 0, 0, 0;
    EXPECT_THROW(gram_schmidt(dep), std::domain_error);
}

TEST(basis_families, shapes_and_unitarity) {
    Prime p(3);
    auto fam = random_basis_family(p, 10);
    EXPECT_EQ(fam.rho_bases.size(), 2u);
    EXPECT_LT(basis_family_residual(fam), 1e-10);
    EXPECT_GT((fam.rho_bases[0] - fam.rho_bases[1]).norm(), 1e-3);
    EXPECT_EQ(fam.basis(Chi{1, 2}), ComplexMatrix::Identity(1, 1));
    auto again = random_basis_family(p, 10);
    EXPECT_EQ(again.rho_bases[1], fam.rho_bases[1]);
    for (int pv : {5, 7}) {
        Prime q(pv);
        EXPECT_LT(basis_family_residual(natural_basis_family(q)), 1e-12);
        EXPECT_LT(basis_family_residual(fourier_basis_family(q)), 1e-12);
        EXPECT_LT(basis_family_residual(mub_basis_family(q, 2)), 1e-12);
        EXPECT_LT(basis_family_residual(mub_basis_family(q, Infinity{})), 1e-12);
    }
    EXPECT_THROW(fam.rho_basis(3), std::out_of_range);
}

TEST(trace_distance, examples) {
    RngStream r(8, 0);
    ComplexVector a = gaussian_unit_vector(2, r);
    ComplexMatrix pa = a * a.adjoint();
    EXPECT_NEAR(trace_distance(pa, pa), 0.0, 1e-12);
    ComplexVector e0 = ComplexVector::Unit(3, 0);
    ComplexVector e1 = ComplexVector::Unit(3, 1);
    EXPECT_NEAR(trace_distance(e0 * e0.adjoint(), e1 * e1.adjoint()), 2.0, 1e-12);
    for (double c : {0.1, 0.5, 0.9}) {
        ComplexVector u(2), v(2);
        u << 1.0, 0.0;
        v << c, std::sqrt(1.0 - c * c);
        ComplexMatrix diff = u * u.adjoint() - v * v.adjoint();
        // Oracle: eigenvalues of the 2x2 traceless Hermitian difference are ±sqrt(-det).
        double det = (diff(0, 0) * diff(1, 1) - diff(0, 1) * diff(1, 0)).real();
        double oracle = 2.0 * std::sqrt(-det);
        EXPECT_NEAR(trace_distance(u * u.adjoint(), v * v.adjoint()), oracle, 1e-12);
        EXPECT_NEAR(oracle, 2.0 * std::sqrt(1.0 - c * c), 1e-12);
    }
    ComplexMatrix bad(2, 2);
    bad << 0, 1, 0, 0;
    EXPECT_THROW(trace_distance(bad, bad), std::invalid_argument);
    EXPECT_THROW(trace_distance(pa, ComplexMatrix::Identity(3, 3)), std::invalid_argument);
}

TEST(prop3, orthogonal_and_mub) {
    ComplexMatrix v1 = ComplexMatrix::Identity(4, 4).leftCols(2);
    ComplexMatrix v2 = ComplexMatrix::Identity(4, 4).rightCols(2);
    auto ortho = prop3_bound_check(v1, v2);
    EXPECT_NEAR(ortho.lhs, 0.0, 1e-12);
    EXPECT_NEAR(ortho.rhs, 0.0, 1e-12);

    Prime p(5);
    ComplexMatrix a = mub_vector(1, 0, 0, p).vector;
    ComplexMatrix b = mub_vector(1, 1, 0, p).vector;
    auto mub = prop3_bound_check(a, b);
    double delta = 1.0 / std::sqrt(5.0);
    EXPECT_NEAR(mub.delta, delta, 1e-9);
    EXPECT_NEAR(mub.rhs, 2.0 * std::pow(5.0, -0.25) * std::pow(0.8, -0.25), 1e-12);
    // Oracle: for two lines, σ'_2 is the line along b − <a|b>a, so the distance is 2·|<a|b>|.
    EXPECT_NEAR(mub.lhs, 2.0 * delta, 1e-9);
    EXPECT_LE(mub.lhs, mub.rhs + 1e-9);
    EXPECT_THROW(prop3_bound_check(a, a), std::domain_error);
}

TEST(prop3, random_instances) {
    RngStream r(12, 0);
    for (int t = 0; t < 200; t++) {
        int r1 = 1 + static_cast<int>(r.uniform_int(4));
        int r2 = 1 + static_cast<int>(r.uniform_int(4));
        ComplexMatrix v1 = random_orthonormal_set(16, r1, r).vectors;
        ComplexMatrix v2 = random_orthonormal_set(16, r2, r).vectors;
        auto check = prop3_bound_check(v1, v2);
        ASSERT_TRUE(check.holds(1e-9)) << check.lhs << " > " << check.rhs;
    }
}

TEST(prop4, orthonormal_and_perturbed) {
    std::vector<ComplexVector> basis;
    for (int a = 0; a < 3; a++) {
        basis.push_back(ComplexVector::Unit(5, a));
    }
    for (const auto &c : prop4_bound_check(basis, 0.1)) {
        EXPECT_NEAR(c.lhs, 0.0, 1e-12);
    }
    RngStream r(13, 0);
    auto vs = near_orthogonal(25, 3, 0.03, r);
    double delta = 0.19 / 3.0;
    ASSERT_LE(max_pairwise_overlap(vs), delta);
    for (const auto &c : prop4_bound_check(vs, delta)) {
        EXPECT_LT(c.lhs, c.rhs);
    }
    EXPECT_THROW(prop4_bound_check(vs, 1.0 / 6.0), std::domain_error);
    EXPECT_THROW(prop4_bound_check(vs, 1e-6), std::domain_error);
}

TEST(prop4, random_instances) {
    RngStream r(14, 0);
    int checked = 0;
    for (int t = 0; t < 200; t++) {
        int n = 2 + static_cast<int>(r.uniform_int(5));
        auto vs = near_orthogonal(64, n, 0.05 / n, r);
        double delta = max_pairwise_overlap(vs);
        ASSERT_LT(delta, 1.0 / (2.0 * n));
        for (const auto &c : prop4_bound_check(vs, delta)) {
            ASSERT_LT(c.lhs, c.rhs + 1e-9);
            checked++;
        }
    }
    EXPECT_GT(checked, 400);
}

TEST(concentration, tail_frequency_within_bound) {
    RngStream r(15, 0);
    auto res = tail_experiment(64, 0.5, 10000, r);
    EXPECT_EQ(res.exceedances, 0);
    EXPECT_NEAR(res.bound, 2.0 * std::exp(-16.0), 1e-18);
    EXPECT_LE(res.frequency, res.bound);
}

TEST(concentration, gap_scaling_small) {
    RngStream r(16, 0);
    std::vector<double> xs, ys;
    for (int p : {4, 16, 64}) {
        xs.push_back(p);
        ys.push_back(median(uniformity_gap_samples(256, p, 40, r)));
    }
    double slope = loglog_slope(xs, ys);
    EXPECT_GT(slope, -0.65);
    EXPECT_LT(slope, -0.35);
    EXPECT_THROW(uniformity_gap_samples(8, 9, 1, r), std::invalid_argument);
}

TEST(concentration, block_validation) {
    RngStream r(17, 0);
    EXPECT_THROW(block_gap_samples(8, 4, 4, 4, 1, r), std::invalid_argument);
    EXPECT_THROW(block_gap_samples(8, 0, 2, 0, 1, r), std::invalid_argument);
    EXPECT_NEAR(block_gap_scale(1, 1, 0), 2.0, 1e-15);
    EXPECT_NEAR(block_gap_scale(4, 4, 4), 0.5, 1e-15);
    ConcentrationConfig bad;
    bad.block_configs = {{200, 100, 0}};
    EXPECT_THROW(concentration_experiments(bad), std::invalid_argument);
}

TEST(concentration, full_report_small) {
    ConcentrationConfig cfg;
    cfg.trials = 30;
    cfg.tail_trials = 500;
    auto rep = concentration_experiments(cfg);
    EXPECT_TRUE(rep.tails_within_bound);
    EXPECT_TRUE(rep.slope_in_range) << rep.gap_slope;
    EXPECT_TRUE(rep.blocks_scale);
    EXPECT_EQ(rep.tails.size(), 6u);
}
