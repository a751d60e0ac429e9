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

#include "hsp/report_io.h"

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace hsp {

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

double round12(double v) {
    return std::strtod(format_number(v).c_str(), nullptr);
}

std::string dump_json(const Json &j) {
    return j.dump(2) + "\n";
}

Constants parse_constants(const std::string &text) {
    std::vector<double> vals;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception &) {
            throw std::invalid_argument("--constants: cannot parse '" + item + "'");
        }
        if (used != item.size()) {
            throw std::invalid_argument("--constants: cannot parse '" + item + "'");
        }
        vals.push_back(v);
    }
    if (vals.size() != 4) {
        throw std::invalid_argument("--constants expects c1,c2,C1,C2");
    }
    Constants c{vals[0], vals[1], vals[2], vals[3]};
    c.validate();
    return c;
}

Json constants_json(const Constants &c) {
    return {{"C1", round12(c.C1)}, {"C2", round12(c.C2)}, {"c1", round12(c.c1)}, {"c2", round12(c.c2)}};
}

Json check_json(const CheckResult &c) {
    Json j{{"name", c.name}, {"pass", c.pass}, {"skipped", c.skipped}, {"value", round12(c.value)},
           {"tolerance", round12(c.tolerance)}};
    if (!c.note.empty()) {
        j["note"] = c.note;
    }
    return j;
}

Json checks_json(const std::vector<CheckResult> &checks) {
    Json out = Json::array();
    for (const auto &c : checks) {
        out.push_back(check_json(c));
    }
    return out;
}

namespace {

Json matrix_json(const ComplexMatrix &m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); i++) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); j++) {
            row.push_back({m(i, j).real(), m(i, j).imag()});
        }
        rows.push_back(row);
    }
    return rows;
}

ComplexMatrix matrix_from_json(const Json &rows, int d) {
    if (!rows.is_array() || static_cast<int>(rows.size()) != d) {
        throw std::runtime_error("basis cache: matrix has the wrong shape");
    }
    ComplexMatrix m(d, d);
    for (int i = 0; i < d; i++) {
        if (static_cast<int>(rows[i].size()) != d) {
            throw std::runtime_error("basis cache: matrix has the wrong shape");
        }
        for (int j = 0; j < d; j++) {
            m(i, j) = Complex(rows[i][j][0].get<double>(), rows[i][j][1].get<double>());
        }
    }
    return m;
}

void check_version(const Json &j, const char *what) {
    if (!j.contains("format_version") || j["format_version"].get<int>() != kCacheFormatVersion) {
        throw std::runtime_error(std::string(what) + ": unsupported format version");
    }
}

}  // namespace

Json basis_family_json(const BasisFamily &family) {
    Json bases = Json::array();
    for (const auto &b : family.rho_bases) {
        bases.push_back(matrix_json(b));
    }
    return {{"format_version", kCacheFormatVersion},
            {"version", kArtifactVersion},
            {"p", family.p},
            {"kind", basis_kind_str(family.kind)},
            {"seed", family.seed},
            {"stream", family.stream},
            {"mub_slope", slope_str(family.mub_slope)},
            {"rho_bases", bases}};
}

BasisFamily basis_family_from_json(const Json &j) {
    check_version(j, "basis cache");
    BasisFamily f;
    f.p = j.at("p").get<int>();
    Prime p(f.p);
    f.kind = parse_basis_kind(j.at("kind").get<std::string>());
    f.seed = j.at("seed").get<std::uint64_t>();
    f.stream = j.at("stream").get<std::uint64_t>();
    std::string slope = j.at("mub_slope").get<std::string>();
    f.mub_slope = slope == "inf" ? Slope{Infinity{}} : Slope{std::stoi(slope)};
    const auto &bases = j.at("rho_bases");
    if (static_cast<int>(bases.size()) != f.p - 1) {
        throw std::runtime_error("basis cache: expected p - 1 bases");
    }
    for (const auto &b : bases) {
        f.rho_bases.push_back(matrix_from_json(b, f.p));
    }
    return f;
}

Json distribution_table_json(const DistributionTable &table) {
    Json labels = Json::array();
    for (const auto &l : table.labels) {
        labels.push_back(label_str(l));
    }
    return {{"format_version", kCacheFormatVersion},
            {"version", kArtifactVersion},
            {"p", table.p},
            {"layer", table.layer},
            {"basis_kind", basis_kind_str(table.basis_kind)},
            {"basis_seed", table.basis_seed},
            {"basis_stream", table.basis_stream},
            {"labels", labels},
            {"prob", table.prob}};
}

DistributionTable distribution_table_from_json(const Json &j) {
    check_version(j, "table cache");
    DistributionTable t;
    t.p = j.at("p").get<int>();
    Prime p(t.p);
    t.layer = j.at("layer").get<std::string>();
    t.basis_kind = parse_basis_kind(j.at("basis_kind").get<std::string>());
    t.basis_seed = j.at("basis_seed").get<std::uint64_t>();
    t.basis_stream = j.at("basis_stream").get<std::uint64_t>();
    for (const auto &l : j.at("labels")) {
        t.labels.push_back(parse_label(l.get<std::string>(), p));
    }
    t.prob = j.at("prob").get<std::vector<std::vector<double>>>();
    if (t.prob.size() != t.labels.size()) {
        throw std::runtime_error("table cache: label and row counts differ");
    }
    return t;
}

std::string csv_header(const Json &config) {
    return "# " + config.dump() + "\n";
}

std::string distribution_table_csv(const DistributionTable &table, const std::string &header) {
    std::ostringstream out;
    out << header << "subgroup,outcome,probability\n";
    Prime p(table.p);
    for (std::size_t s = 0; s < table.labels.size(); s++) {
        for (std::size_t k = 0; k < table.prob[s].size(); k++) {
            std::string outcome = table.layer == "weak" ? irrep_str(canonical_irreps(p)[k]) : outcome_str(k, p);
            out << "\"" << label_str(table.labels[s]) << "\"," << outcome << "," << format_number(table.prob[s][k])
                << "\n";
        }
    }
    return out.str();
}

Json experiment_json(const ExperimentReport &r) {
    Json confusion = Json::array();
    for (const auto &[key, count] : r.confusion) {
        confusion.push_back({{"hidden", label_str(key.first)}, {"returned", label_str(key.second)}, {"count", count}});
    }
    return {{"t", r.t},
            {"trials", r.config.trials},
            {"successes", r.successes},
            {"success_rate", round12(r.success_rate)},
            {"worst_subgroup_rate", round12(r.worst_subgroup_rate)},
            {"confusion", confusion}};
}

std::string confusion_csv(const ExperimentReport &r, const std::string &header) {
    std::ostringstream out;
    out << header << "hidden,returned,count\n";
    for (const auto &[key, count] : r.confusion) {
        out << "\"" << label_str(key.first) << "\",\"" << label_str(key.second) << "\"," << count << "\n";
    }
    return out.str();
}

std::string trials_csv(const ExperimentReport &r, const std::string &header) {
    std::ostringstream out;
    out << header << "trial,seed,stream,hidden,returned,success\n";
    for (const auto &rec : r.records) {
        out << rec.trial << "," << r.config.seed << "," << rec.stream << ",\"" << label_str(rec.hidden) << "\",\""
            << label_str(rec.returned) << "\"," << (rec.hidden == rec.returned ? 1 : 0) << "\n";
    }
    return out.str();
}

Json state_id_json(const StateIdReport &r) {
    return {{"m", r.m},
            {"n", r.n},
            {"delta", round12(r.delta)},
            {"t", r.t},
            {"trials", r.trials},
            {"successes", r.successes},
            {"success_rate", round12(r.success_rate)}};
}

Json concentration_json(const ConcentrationReport &r) {
    Json tails = Json::array();
    for (const auto &t : r.tails) {
        tails.push_back({{"d", t.d},
                         {"t", round12(t.t)},
                         {"trials", t.trials},
                         {"threshold", round12(t.threshold)},
                         {"exceedances", t.exceedances},
                         {"frequency", round12(t.frequency)},
                         {"bound", round12(t.bound)}});
    }
    Json gaps = Json::array();
    for (const auto &g : r.gaps) {
        gaps.push_back({{"p", g.p}, {"median", round12(g.median)}, {"mean", round12(g.mean)}});
    }
    Json blocks = Json::array();
    for (const auto &b : r.blocks) {
        blocks.push_back({{"p", b.p},
                          {"q", b.q},
                          {"r", b.r},
                          {"median", round12(b.median)},
                          {"scale", round12(b.scale)},
                          {"ratio", round12(b.ratio)}});
    }
    return {{"tails", tails},
            {"tails_within_bound", r.tails_within_bound},
            {"gaps", gaps},
            {"gap_slope", round12(r.gap_slope)},
            {"slope_in_range", r.slope_in_range},
            {"blocks", blocks},
            {"block_constant", round12(r.block_constant)},
            {"blocks_scale", r.blocks_scale}};
}

Json calibration_json(const CalibrationResult &r) {
    Json c1 = Json::array();
    Json c2 = Json::array();
    for (double v : r.c1_max) {
        c1.push_back(round12(v));
    }
    for (double v : r.c2_max) {
        c2.push_back(round12(v));
    }
    return {{"c1_max", c1}, {"c2_max", c2}, {"constants", constants_json(r.constants)},
            {"seeds_passing", r.seeds_passing}};
}

Json r_params_json(const RParams &r) {
    return {{"irrep", irrep_str(r.irrep)},
            {"r1", r.r1},
            {"r2", r.r2},
            {"r1_prime", r.r1_prime},
            {"r2_prime", r.r2_prime},
            {"h_hat", round12(r.h_hat)},
            {"h_tilde", round12(r.h_tilde)},
            {"delta", round12(r.delta)},
            {"case", r.rcase}};
}

std::vector<ComplexVector> states_from_json(const Json &j) {
    std::vector<ComplexVector> out;
    for (const auto &s : j.at("states")) {
        ComplexVector v(static_cast<int>(s.size()));
        for (std::size_t k = 0; k < s.size(); k++) {
            v(static_cast<int>(k)) = Complex(s[k][0].get<double>(), s[k][1].get<double>());
        }
        out.push_back(v);
    }
    if (out.empty()) {
        throw std::invalid_argument("states file: no states");
    }
    return out;
}

}  // namespace hsp
