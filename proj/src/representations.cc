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

#include "hsp/representations.h"

#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hsp {

int irrep_dimension(const IrrepName &name, const Prime &p) {
    return std::holds_alternative<Chi>(name) ? 1 : p.value();
}

std::string irrep_str(const IrrepName &name) {
    if (auto chi = std::get_if<Chi>(&name)) {
        return "chi(" + std::to_string(chi->a) + "," + std::to_string(chi->b) + ")";
    }
    return "rho(" + std::to_string(std::get<Rho>(name).k) + ")";
}

void validate_irrep(const IrrepName &name, const Prime &p) {
    if (auto chi = std::get_if<Chi>(&name)) {
        if (chi->a < 0 || chi->a >= p || chi->b < 0 || chi->b >= p) {
            throw std::invalid_argument("chi(a,b): index out of range");
        }
    } else {
        int k = std::get<Rho>(name).k;
        if (k <= 0 || k >= p) {
            throw std::invalid_argument("rho(k): k must lie in 1..p-1");
        }
    }
}

IrrepName parse_irrep(std::string_view text, const Prime &p) {
    auto as_int = [&](std::string_view s) {
        int v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size()) {
            throw std::invalid_argument("malformed irrep name '" + std::string(text) + "'");
        }
        return v;
    };
    IrrepName name;
    if (text.size() > 5 && text.substr(0, 4) == "chi(" && text.back() == ')') {
        auto body = text.substr(4, text.size() - 5);
        auto comma = body.find(',');
        if (comma == std::string_view::npos) {
            throw std::invalid_argument("malformed irrep name '" + std::string(text) + "'");
        }
        name = Chi{as_int(body.substr(0, comma)), as_int(body.substr(comma + 1))};
    } else if (text.size() > 5 && text.substr(0, 4) == "rho(" && text.back() == ')') {
        name = Rho{as_int(text.substr(4, text.size() - 5))};
    } else {
        throw std::invalid_argument("malformed irrep name '" + std::string(text) + "'");
    }
    validate_irrep(name, p);
    return name;
}

std::vector<IrrepName> canonical_irreps(const Prime &p) {
    std::vector<IrrepName> out;
    out.reserve(p * p + p - 1);
    for (int a = 0; a < p; a++) {
        for (int b = 0; b < p; b++) {
            out.push_back(Chi{a, b});
        }
    }
    for (int k = 1; k < p; k++) {
        out.push_back(Rho{k});
    }
    return out;
}

std::size_t irrep_index(const IrrepName &name, const Prime &p) {
    validate_irrep(name, p);
    if (auto chi = std::get_if<Chi>(&name)) {
        return static_cast<std::size_t>(chi->a) * p + chi->b;
    }
    return static_cast<std::size_t>(p) * p + std::get<Rho>(name).k - 1;
}

RootsOfUnity::RootsOfUnity(int p) : p_(p), table_(p) {
    for (int n = 0; n < p; n++) {
        double angle = 2.0 * std::numbers::pi * n / p;
        table_[n] = Complex(std::cos(angle), std::sin(angle));
    }
}

ComplexMatrix irrep_eval(const IrrepName &name, const GroupElement &g, const Prime &p) {
    validate_irrep(name, p);
    RootsOfUnity omega(p);
    if (auto chi = std::get_if<Chi>(&name)) {
        ComplexMatrix m(1, 1);
        m(0, 0) = omega(static_cast<std::int64_t>(chi->a) * g.x + static_cast<std::int64_t>(chi->b) * g.y);
        return m;
    }
    std::int64_t k = std::get<Rho>(name).k;
    ComplexMatrix m = ComplexMatrix::Zero(p, p);
    for (int a = 0; a < p; a++) {
        m(a, mod(a + g.x, p)) = omega(k * g.z + k * g.y * a);
    }
    return m;
}

ComplexMatrix averaged_matrix(const IrrepName &name, const Subgroup &h) {
    const Prime &p = h.prime();
    validate_irrep(name, p);
    RootsOfUnity omega(p);
    double weight = 1.0 / static_cast<double>(h.order());
    if (auto chi = std::get_if<Chi>(&name)) {
        Complex sum = 0;
        for (const auto &g : h.elements()) {
            sum += omega(static_cast<std::int64_t>(chi->a) * g.x + static_cast<std::int64_t>(chi->b) * g.y);
        }
        ComplexMatrix m(1, 1);
        m(0, 0) = sum * weight;
        return m;
    }
    std::int64_t k = std::get<Rho>(name).k;
    ComplexMatrix m = ComplexMatrix::Zero(p, p);
    // ρ_k(h) is monomial, so accumulate its p nonzero entries directly.
    for (const auto &g : h.elements()) {
        for (int a = 0; a < p; a++) {
            m(a, mod(a + g.x, p)) += omega(k * g.z + k * g.y * a);
        }
    }
    return m * weight;
}

Projector subgroup_projector(const IrrepName &name, const Subgroup &h) {
    Projector out{averaged_matrix(name, h), 0, name, h.label()};
    out.rank = numerical_rank(out.matrix);
    return out;
}

MubVector mub_vector(int k, const Slope &i, int j, const Prime &p) {
    if (mod(k, p) == 0) {
        throw std::invalid_argument("mub_vector: k must be nonzero mod p");
    }
    validate_label(ALabel{i, j}, p);
    ComplexVector v = ComplexVector::Zero(p);
    if (is_infinite(i)) {
        v(mod(-j, p)) = 1.0;
    } else {
        RootsOfUnity omega(p);
        std::int64_t slope = std::get<int>(i);
        double norm = 1.0 / std::sqrt(static_cast<double>(p));
        for (std::int64_t mu = 0; mu < p; mu++) {
            std::int64_t phase = mu * (mu - 1) / 2 * slope + mu * j;
            v(mu) = omega(-static_cast<std::int64_t>(k) * mod(phase, p)) * norm;
        }
    }
    return {k, i, j, v};
}

std::vector<MubVector> mub_family(int k, const Prime &p) {
    std::vector<MubVector> out;
    out.reserve(p * p + p);
    for (int i = 0; i <= p; i++) {
        Slope slope = i < p ? Slope{i} : Slope{Infinity{}};
        for (int j = 0; j < p; j++) {
            out.push_back(mub_vector(k, slope, j, p));
        }
    }
    return out;
}

double overlap(const ComplexMatrix &p1, const ComplexMatrix &p2) {
    if (p1.rows() != p2.rows() || p1.cols() != p2.cols()) {
        throw std::invalid_argument("overlap: projector dimensions differ");
    }
    return operator_norm(p1 * p2);
}

double overlap(const Projector &p1, const Projector &p2) {
    return overlap(p1.matrix, p2.matrix);
}

double weil_sum_check(const Prime &p, int k, int delta_i, int delta_j) {
    if (mod(delta_i, p) == 0) {
        throw std::domain_error("weil_sum_check: the quadratic coefficient must be nonzero");
    }
    if (mod(k, p) == 0) {
        throw std::domain_error("weil_sum_check: k must be nonzero mod p");
    }
    RootsOfUnity omega(p);
    Complex sum = 0;
    for (std::int64_t mu = 0; mu < p; mu++) {
        std::int64_t e = mod(mu * (mu - 1) / 2 * delta_i + mu * delta_j, p);
        sum += omega(static_cast<std::int64_t>(k) * e);
    }
    return std::abs(sum);
}

}  // namespace hsp
