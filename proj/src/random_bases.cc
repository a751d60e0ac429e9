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
#include <optional>
#include <stdexcept>

#include "hsp/stats.h"

namespace hsp {

ComplexVector gaussian_unit_vector(int d, RngStream &rng) {
    if (d < 1) {
        throw std::invalid_argument("gaussian_unit_vector: d must be >= 1");
    }
    ComplexVector v(d);
    for (int k = 0; k < d; k++) {
        double re = rng.gaussian();
        double im = rng.gaussian();
        v(k) = Complex(re, im);
    }
    return v / v.norm();
}

namespace {

// Orthogonalizes v against the first `count` columns of q. Returns the
// normalized residual, or nothing if v is numerically dependent.
std::optional<ComplexVector> orthogonalize(const ComplexMatrix &q, Eigen::Index count, ComplexVector v) {
    auto basis = q.leftCols(count);
    v -= basis * (basis.adjoint() * v);
    double norm = v.norm();
    if (norm < kReorthogonalizeBelow) {
        v -= basis * (basis.adjoint() * v);
        norm = v.norm();
    }
    if (norm < kDependentBelow) {
        return std::nullopt;
    }
    return ComplexVector(v / norm);
}

}  // namespace

ComplexMatrix gram_schmidt_against(const ComplexMatrix &against, const ComplexMatrix &columns) {
    Eigen::Index base = against.cols();
    ComplexMatrix q(columns.rows(), base + columns.cols());
    q.leftCols(base) = against;
    for (Eigen::Index c = 0; c < columns.cols(); c++) {
        auto next = orthogonalize(q, base + c, columns.col(c));
        if (!next) {
            throw std::domain_error("gram_schmidt: column " + std::to_string(c) + " is linearly dependent");
        }
        q.col(base + c) = *next;
    }
    return q.rightCols(columns.cols());
}

ComplexMatrix gram_schmidt(const ComplexMatrix &columns) {
    return gram_schmidt_against(ComplexMatrix(columns.rows(), 0), columns);
}

OrthonormalSet random_orthonormal_set(int d, int m, RngStream &rng) {
    if (m > d) {
        throw std::invalid_argument("random_orthonormal_set: m > d");
    }
    if (m < 0) {
        throw std::invalid_argument("random_orthonormal_set: m < 0");
    }
    OrthonormalSet out{d, ComplexMatrix(d, m), rng.seed(), rng.stream()};
    for (int c = 0; c < m; c++) {
        while (true) {
            auto next = orthogonalize(out.vectors, c, gaussian_unit_vector(d, rng));
            if (next) {
                out.vectors.col(c) = *next;
                break;
            }
        }
    }
    return out;
}

std::string basis_kind_str(BasisKind kind) {
    switch (kind) {
        case BasisKind::Random:
            return "random";
        case BasisKind::Natural:
            return "natural";
        case BasisKind::Fourier:
            return "fourier";
        case BasisKind::Mub:
            return "mub";
    }
    return "unknown";
}

BasisKind parse_basis_kind(const std::string &text) {
    for (auto kind : {BasisKind::Random, BasisKind::Natural, BasisKind::Fourier, BasisKind::Mub}) {
        if (basis_kind_str(kind) == text) {
            return kind;
        }
    }
    throw std::invalid_argument("unknown basis kind '" + text + "'");
}

const ComplexMatrix &BasisFamily::rho_basis(int k) const {
    if (k < 1 || k >= p || static_cast<std::size_t>(k) > rho_bases.size()) {
        throw std::out_of_range("BasisFamily: no basis for rho(" + std::to_string(k) + ")");
    }
    return rho_bases[k - 1];
}

ComplexMatrix BasisFamily::basis(const IrrepName &name) const {
    if (std::holds_alternative<Chi>(name)) {
        return ComplexMatrix::Identity(1, 1);
    }
    return rho_basis(std::get<Rho>(name).k);
}

BasisFamily random_basis_family(const Prime &p, std::uint64_t seed, std::uint64_t stream) {
    BasisFamily family{p, BasisKind::Random, seed, stream, 0, {}};
    RngStream root(seed, stream);
    for (int k = 1; k < p; k++) {
        RngStream rng = root.derive(k);
        family.rho_bases.push_back(random_orthonormal_set(p, p, rng).vectors);
    }
    return family;
}

BasisFamily natural_basis_family(const Prime &p) {
    BasisFamily family{p, BasisKind::Natural, 0, 0, 0, {}};
    for (int k = 1; k < p; k++) {
        family.rho_bases.push_back(ComplexMatrix::Identity(p.value(), p.value()));
    }
    return family;
}

BasisFamily fourier_basis_family(const Prime &p) {
    BasisFamily family{p, BasisKind::Fourier, 0, 0, 0, {}};
    RootsOfUnity omega(p);
    ComplexMatrix dft(p.value(), p.value());
    double norm = 1.0 / std::sqrt(static_cast<double>(p.value()));
    for (int mu = 0; mu < p; mu++) {
        for (int j = 0; j < p; j++) {
            dft(mu, j) = omega(static_cast<std::int64_t>(mu) * j) * norm;
        }
    }
    for (int k = 1; k < p; k++) {
        family.rho_bases.push_back(dft);
    }
    return family;
}

BasisFamily mub_basis_family(const Prime &p, const Slope &i) {
    BasisFamily family{p, BasisKind::Mub, 0, 0, i, {}};
    for (int k = 1; k < p; k++) {
        ComplexMatrix b(p.value(), p.value());
        for (int j = 0; j < p; j++) {
            b.col(j) = mub_vector(k, i, j, p).vector;
        }
        family.rho_bases.push_back(b);
    }
    return family;
}

double basis_family_residual(const BasisFamily &family) {
    double worst = 0.0;
    for (const auto &b : family.rho_bases) {
        worst = std::max(worst, unitarity_residual(b));
    }
    return worst;
}

double trace_distance(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
        throw std::invalid_argument("trace_distance: shape mismatch");
    }
    if (hermiticity_residual(a) > 1e-9 || hermiticity_residual(b) > 1e-9) {
        throw std::invalid_argument("trace_distance: input is not Hermitian");
    }
    return trace_norm(a - b);
}

BoundCheck prop3_bound_check(const ComplexMatrix &v1, const ComplexMatrix &v2) {
    if (v1.rows() != v2.rows() || v2.cols() == 0) {
        throw std::invalid_argument("prop3_bound_check: incompatible inputs");
    }
    ComplexMatrix p1 = projector_onto(v1);
    ComplexMatrix p2 = projector_onto(v2);
    double delta = operator_norm(p1 * p2);
    if (delta >= 1.0 - 1e-6) {
        throw std::domain_error("prop3_bound_check: subspaces intersect nontrivially");
    }
    double r2 = static_cast<double>(v2.cols());
    ComplexMatrix sigma = p2 / r2;
    ComplexMatrix sigma_prime = projector_onto(gram_schmidt_against(v1, v2)) / r2;
    BoundCheck out;
    out.delta = delta;
    out.lhs = trace_distance(sigma, sigma_prime);
    out.rhs = 2.0 * std::sqrt(delta) * std::pow(1.0 - delta * delta, -0.25);
    return out;
}

std::vector<BoundCheck> prop4_bound_check(const std::vector<ComplexVector> &vectors, double delta) {
    std::size_t n = vectors.size();
    if (n == 0) {
        return {};
    }
    if (delta < 0.0 || delta >= 1.0 / (2.0 * n)) {
        throw std::domain_error("prop4_bound_check: delta must lie in [0, 1/(2n))");
    }
    ComplexMatrix cols(vectors[0].size(), n);
    for (std::size_t a = 0; a < n; a++) {
        cols.col(a) = vectors[a];
        for (std::size_t b = 0; b < a; b++) {
            if (std::abs(vectors[a].dot(vectors[b])) > delta + 1e-12) {
                throw std::domain_error("prop4_bound_check: pairwise overlap exceeds delta");
            }
        }
    }
    ComplexMatrix ortho = gram_schmidt(cols);
    double rhs = 2.0 * std::sqrt(6.0) * delta * std::sqrt(static_cast<double>(n));
    std::vector<BoundCheck> out;
    for (std::size_t a = 0; a < n; a++) {
        ComplexMatrix in = vectors[a] * vectors[a].adjoint();
        ComplexMatrix res = ortho.col(a) * ortho.col(a).adjoint();
        out.push_back({trace_distance(in, res), rhs, delta});
    }
    return out;
}

TailResult tail_experiment(int d, double t, int trials, RngStream &rng) {
    TailResult out;
    out.d = d;
    out.t = t;
    out.trials = trials;
    out.threshold = t + 10.0 / std::sqrt(static_cast<double>(d));
    out.bound = 2.0 * std::exp(-t * t * d);
    for (int k = 0; k < trials; k++) {
        ComplexVector v = gaussian_unit_vector(d, rng);
        ComplexVector w = gaussian_unit_vector(d, rng);
        if (std::abs(v.dot(w)) > out.threshold) {
            out.exceedances++;
        }
    }
    out.frequency = trials > 0 ? static_cast<double>(out.exceedances) / trials : 0.0;
    return out;
}

std::vector<double> uniformity_gap_samples(int d, int p, int trials, RngStream &rng) {
    if (p < 1 || p > d) {
        throw std::invalid_argument("uniformity_gap_samples: need 1 <= p <= d");
    }
    std::vector<double> out;
    out.reserve(trials);
    for (int k = 0; k < trials; k++) {
        ComplexMatrix a = random_orthonormal_set(d, p, rng).vectors;
        Eigen::VectorXd s = a.cwiseAbs2().rowwise().sum() / static_cast<double>(p);
        out.push_back((s.array() - 1.0 / d).abs().sum());
    }
    return out;
}

std::vector<double> block_gap_samples(int d, int p, int q, int r, int trials, RngStream &rng) {
    if (p < 0 || q < 0 || r < 0 || p + r == 0 || q + r == 0) {
        throw std::invalid_argument("block_gap_samples: invalid block sizes");
    }
    if (p + q + r > d) {
        throw std::invalid_argument("block_gap_samples: p + q + r exceeds d");
    }
    std::vector<double> out;
    out.reserve(trials);
    for (int k = 0; k < trials; k++) {
        Eigen::MatrixXd w = random_orthonormal_set(d, p + q + r, rng).vectors.cwiseAbs2();
        Eigen::VectorXd a = w.leftCols(p).rowwise().sum();
        Eigen::VectorXd b = w.middleCols(p, q).rowwise().sum();
        Eigen::VectorXd c = w.rightCols(r).rowwise().sum();
        Eigen::VectorXd s = (a + c) / static_cast<double>(p + r);
        Eigen::VectorXd t = (b + c) / static_cast<double>(q + r);
        out.push_back((s - t).cwiseAbs().sum());
    }
    return out;
}

double block_gap_scale(int p, int q, int r) {
    double out = 0.0;
    if (p > 0) {
        out += std::sqrt(static_cast<double>(p)) / (p + r);
    }
    if (q > 0) {
        out += std::sqrt(static_cast<double>(q)) / (q + r);
    }
    return out;
}

ConcentrationReport concentration_experiments(const ConcentrationConfig &config) {
    for (int p : config.gap_sizes) {
        if (p < 1 || p > config.gap_dim) {
            throw std::invalid_argument("concentration: gap size " + std::to_string(p) + " outside [1, d]");
        }
    }
    for (const auto &[p, q, r] : config.block_configs) {
        if (p < 0 || q < 0 || r < 0 || p + r == 0 || q + r == 0 || p + q + r > config.block_dim) {
            throw std::invalid_argument("concentration: invalid block sizes (p+q+r > d or empty block)");
        }
    }
    if (config.trials < 1) {
        throw std::invalid_argument("concentration: trials must be >= 1");
    }

    ConcentrationReport report;
    RngStream root(config.seed, 0);

    std::uint64_t idx = 0;
    for (int d : config.tail_dims) {
        for (double t : config.tail_ts) {
            RngStream rng = root.derive(1000 + idx++);
            report.tails.push_back(tail_experiment(d, t, config.tail_trials, rng));
            if (report.tails.back().frequency > report.tails.back().bound) {
                report.tails_within_bound = false;
            }
        }
    }

    std::vector<double> xs, ys;
    for (int p : config.gap_sizes) {
        RngStream rng = root.derive(2000 + p);
        auto samples = uniformity_gap_samples(config.gap_dim, p, config.trials, rng);
        report.gaps.push_back({p, median(samples), mean(samples)});
        xs.push_back(p);
        ys.push_back(report.gaps.back().median);
    }
    if (xs.size() >= 2) {
        report.gap_slope = loglog_slope(xs, ys);
        report.slope_in_range = report.gap_slope >= config.slope_low && report.gap_slope <= config.slope_high;
    }

    idx = 0;
    report.blocks_scale = true;
    for (const auto &[p, q, r] : config.block_configs) {
        RngStream rng = root.derive(3000 + idx++);
        auto samples = block_gap_samples(config.block_dim, p, q, r, config.trials, rng);
        BlockSummary s{p, q, r, median(samples), block_gap_scale(p, q, r), 0.0};
        s.ratio = s.median / s.scale;
        if (report.blocks.empty()) {
            report.block_constant = s.ratio;
        } else if (s.ratio < report.block_constant / 2.0 || s.ratio > 2.0 * report.block_constant) {
            report.blocks_scale = false;
        }
        report.blocks.push_back(s);
    }
    return report;
}

}  // namespace hsp
