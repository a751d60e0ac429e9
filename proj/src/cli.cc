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

#include "hsp/cli.h"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "hsp/checks.h"
#include "hsp/distinguishability.h"
#include "hsp/hsp_engine.h"
#include "hsp/parallel.h"
#include "hsp/random_bases.h"
#include "hsp/report_io.h"

namespace hsp {

namespace {

namespace fs = std::filesystem;

constexpr int kMaxPrime = 31;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    int p = 5;
    std::uint64_t seed = 1;
    int t = 0;
    int trials = 100;
    std::string constants;
    std::string out_dir;
    std::string cache_dir;
    int workers = std::max(1u, std::thread::hardware_concurrency());
    int cap_dim = kDefaultCapDim;
    bool json = false;
    // solve
    std::string hidden_mode = "uniform";
    std::string basis_mode = "fresh";
    double min_success = 2.0 / 3.0;
    int first_trial = 0;
    // stateid
    std::string vectors;
    double delta = -1.0;
    bool own_basis = false;
    // distances
    bool r_params = false;
    // concentration
    int tail_trials = 10000;
    // calibrate
    int seeds = 20;
    double margin = 0.8;
};

Prime checked_prime(int p) {
    if (p < 3 || !is_prime(p)) {
        throw ConfigError("p must be an odd prime");
    }
    if (p > kMaxPrime) {
        throw ConfigError("p must be at most " + std::to_string(kMaxPrime));
    }
    return Prime(p);
}

Constants checked_constants(const std::string &text) {
    if (text.empty()) {
        return calibrated_constants();
    }
    try {
        return parse_constants(text);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
}

void require(bool ok, const std::string &message) {
    if (!ok) {
        throw ConfigError(message);
    }
}

class Output {
   public:
    Output(const Options &opt, std::ostream &out) : opt_(opt), out_(out), start_(std::chrono::steady_clock::now()) {
        if (!opt.out_dir.empty()) {
            std::error_code ec;
            fs::create_directories(opt.out_dir, ec);
            require(!ec, "cannot create output directory " + opt.out_dir);
        }
    }

    void file(const std::string &name, const std::string &content) {
        if (opt_.out_dir.empty()) {
            return;
        }
        std::ofstream f(fs::path(opt_.out_dir) / name, std::ios::binary);
        f << content;
        if (!f) {
            throw std::runtime_error("cannot write " + name);
        }
        written_.push_back(name);
    }

    void line(const std::string &text) {
        if (!opt_.json) {
            out_ << text << "\n";
        }
    }

    /// Writes the main report, prints it with --json, and returns the exit code.
    int finish(const std::string &name, Json report, bool pass) {
        report["pass"] = pass;
        report["version"] = kArtifactVersion;
        double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        report["timing"] = {{"wall_seconds", round12(wall)}, {"workers", opt_.workers}};
        file(name, dump_json(report));
        if (opt_.json) {
            out_ << dump_json(report);
        } else {
            for (const auto &w : written_) {
                out_ << "wrote " << (fs::path(opt_.out_dir) / w).string() << "\n";
            }
            out_ << (pass ? "PASS" : "FAIL") << "\n";
        }
        return pass ? kExitOk : kExitCheckFailed;
    }

   private:
    const Options &opt_;
    std::ostream &out_;
    std::chrono::steady_clock::time_point start_;
    std::vector<std::string> written_;
};

void print_checks(Output &o, const std::vector<CheckResult> &checks) {
    for (const auto &c : checks) {
        std::string status = c.skipped ? "SKIP" : (c.pass ? "PASS" : "FAIL");
        std::string line = status + " " + c.name + " value=" + format_number(c.value);
        if (!c.note.empty()) {
            line += " (" + c.note + ")";
        }
        o.line(line);
    }
}

std::optional<Json> read_cache(const Options &opt, const std::string &name) {
    if (opt.cache_dir.empty()) {
        return std::nullopt;
    }
    fs::path path = fs::path(opt.cache_dir) / name;
    if (!fs::exists(path)) {
        return std::nullopt;
    }
    std::ifstream f(path);
    try {
        return Json::parse(f);
    } catch (const Json::exception &) {
        return std::nullopt;
    }
}

void write_cache(const Options &opt, const std::string &name, const Json &j) {
    if (opt.cache_dir.empty()) {
        return;
    }
    std::error_code ec;
    fs::create_directories(opt.cache_dir, ec);
    std::ofstream f(fs::path(opt.cache_dir) / name);
    f << j.dump();
}

std::string cache_key(const char *kind, int p, std::uint64_t seed, std::uint64_t stream) {
    return std::string(kind) + "_p" + std::to_string(p) + "_seed" + std::to_string(seed) + "_stream" +
           std::to_string(stream) + "_v" + std::to_string(kCacheFormatVersion) + ".json";
}

BasisFamily cached_basis(const Options &opt, const Prime &p, std::uint64_t seed, std::uint64_t stream) {
    std::string name = cache_key("basis", p, seed, stream);
    if (auto j = read_cache(opt, name)) {
        try {
            auto fam = basis_family_from_json(*j);
            if (fam.p == p.value() && fam.seed == seed && fam.stream == stream) {
                return fam;
            }
        } catch (const std::exception &) {
        }
    }
    auto fam = random_basis_family(p, seed, stream);
    write_cache(opt, name, basis_family_json(fam));
    return fam;
}

DistributionTable cached_table(const Options &opt, const ProjectorTable &proj, std::uint64_t seed,
                               std::uint64_t stream) {
    const Prime &p = proj.prime();
    std::string name = cache_key("table", p, seed, stream);
    if (auto j = read_cache(opt, name)) {
        try {
            auto t = distribution_table_from_json(*j);
            if (t.p == p.value() && t.basis_seed == seed && t.basis_stream == stream) {
                return t;
            }
        } catch (const std::exception &) {
        }
    }
    auto t = strong_table(proj, cached_basis(opt, p, seed, stream));
    write_cache(opt, name, distribution_table_json(t));
    return t;
}

int cmd_lattice(const Options &opt, std::ostream &out) {
    Prime p = checked_prime(opt.p);
    Output o(opt, out);
    Json config{{"command", "lattice"}, {"p", opt.p}};
    auto checks = lattice_checks(p);
    checks.push_back(group_axiom_check(p, p <= 5 ? 0 : 1000, 1));
    auto subs = enumerate_subgroups(p);
    std::map<std::size_t, int> by_order;
    for (const auto &h : subs) {
        by_order[h.order()]++;
    }
    std::ostringstream summary;
    summary << subs.size() << " subgroups:";
    Json orders = Json::object();
    bool first = true;
    for (const auto &[order, count] : by_order) {
        summary << (first ? " " : ", ") << count << "x order " << order;
        orders[std::to_string(order)] = count;
        first = false;
    }
    o.line(summary.str());
    Json families = Json::object();
    for (const auto &[core, members] : core_families(p)) {
        Json names = Json::array();
        for (const auto &m : members) {
            names.push_back(m.str());
        }
        families[label_str(core)] = names;
        o.line("core " + label_str(core) + ": " + std::to_string(members.size()) + " member(s)");
    }
    print_checks(o, checks);
    Json report{{"config", config},
                {"results", {{"subgroups", subs.size()}, {"orders", orders}, {"core_families", families}}},
                {"checks", checks_json(checks)}};
    return o.finish("lattice.json", report, all_pass(checks));
}

int cmd_verify(const Options &opt, std::ostream &out) {
    Prime p = checked_prime(opt.p);
    require(opt.cap_dim >= 1, "--cap-dim must be positive");
    Output o(opt, out);
    Json config{{"command", "verify"}, {"p", opt.p}, {"cap_dim", opt.cap_dim}};
    auto checks = verify_checks(p, opt.cap_dim);
    print_checks(o, checks);
    Json report{{"config", config}, {"checks", checks_json(checks)}};
    return o.finish("verify.json", report, all_pass(checks));
}

int cmd_solve(const Options &opt, std::ostream &out) {
    Prime p = checked_prime(opt.p);
    require(opt.trials >= 0, "--trials must be non-negative");
    require(opt.t >= 0, "--t must be non-negative (0 selects the default)");
    require(opt.workers >= 1, "--workers must be positive");
    require(opt.first_trial >= 0, "--first-trial must be non-negative");
    require(opt.min_success >= 0.0 && opt.min_success <= 1.0, "--min-success must lie in [0, 1]");
    ExperimentConfig cfg;
    try {
        cfg.hidden_mode = parse_hidden_mode(opt.hidden_mode);
        cfg.basis_mode = parse_basis_mode(opt.basis_mode);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    cfg.p = p;
    cfg.trials = opt.trials;
    cfg.t = opt.t;
    cfg.seed = opt.seed;
    cfg.first_trial = opt.first_trial;
    cfg.workers = opt.workers;
    Output o(opt, out);
    Json config{{"command", "solve"},
                {"p", opt.p},
                {"seed", opt.seed},
                {"t", opt.t > 0 ? opt.t : default_samples(p)},
                {"trials", opt.trials},
                {"first_trial", opt.first_trial},
                {"hidden_mode", opt.hidden_mode},
                {"basis_mode", opt.basis_mode},
                {"min_success", round12(opt.min_success)}};
    ProjectorTable proj(p);
    std::optional<DistributionTable> fixed;
    if (cfg.basis_mode == BasisMode::Fixed) {
        fixed = cached_table(opt, proj, opt.seed, 0);
    }
    auto report = hsp_experiment(cfg, proj, fixed ? &*fixed : nullptr);
    std::string header = csv_header(config);
    o.file("solve_confusion.csv", confusion_csv(report, header));
    o.file("solve_trials.csv", trials_csv(report, header));
    o.line("p=" + std::to_string(opt.p) + " t=" + std::to_string(report.t) + " trials=" + std::to_string(opt.trials) +
           " successes=" + std::to_string(report.successes) + " rate=" + format_number(report.success_rate));
    bool pass = opt.trials == 0 || report.success_rate >= opt.min_success;
    Json result{{"config", config},
                {"results", experiment_json(report)},
                {"checks", checks_json({{"success_rate", pass, false, report.success_rate, opt.min_success,
                                         "success rate at least min_success"}})}};
    return o.finish("solve_report.json", result, pass);
}

int cmd_stateid(const Options &opt, std::ostream &out) {
    require(opt.trials >= 0, "--trials must be non-negative");
    require(opt.workers >= 1, "--workers must be positive");
    std::vector<ComplexVector> states;
    double delta = opt.delta;
    Json config{{"command", "stateid"}, {"seed", opt.seed}, {"trials", opt.trials}, {"own_basis", opt.own_basis}};
    if (!opt.vectors.empty()) {
        std::ifstream f(opt.vectors);
        require(static_cast<bool>(f), "cannot read vectors file " + opt.vectors);
        Json j;
        try {
            j = Json::parse(f);
            states = states_from_json(j);
        } catch (const std::exception &e) {
            throw ConfigError(std::string("bad vectors file: ") + e.what());
        }
        if (delta < 0.0 && j.contains("delta")) {
            delta = j["delta"].get<double>();
        }
        require(delta >= 0.0, "vectors file needs a declared delta (file field or --delta)");
        config["vectors"] = opt.vectors;
    } else {
        Prime p = checked_prime(opt.p);
        states = mub_states(p);
        if (delta < 0.0) {
            delta = 1.0 / std::sqrt(static_cast<double>(p.value()));
        }
        config["p"] = opt.p;
    }
    try {
        check_overlaps(states, delta);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    int t = opt.t > 0 ? opt.t : 8 * static_cast<int>(std::ceil(std::log(static_cast<double>(states.size()))));
    t = std::max(t, 1);
    config["delta"] = round12(delta);
    config["t"] = t;
    config["min_success"] = round12(opt.min_success);
    Output o(opt, out);
    StateIdReport report;
    try {
        report = state_id_experiment(states, delta, t, opt.trials, opt.seed, opt.workers, opt.own_basis);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    o.line("m=" + std::to_string(report.m) + " n=" + std::to_string(report.n) + " t=" + std::to_string(t) +
           " successes=" + std::to_string(report.successes) + "/" + std::to_string(report.trials));
    bool pass = opt.trials == 0 || report.success_rate >= opt.min_success;
    Json result{{"config", config},
                {"results", state_id_json(report)},
                {"checks", checks_json({{"success_rate", pass, false, report.success_rate, opt.min_success,
                                         "success rate at least min_success"}})}};
    return o.finish("stateid.json", result, pass);
}

int cmd_distances(const Options &opt, std::ostream &out) {
    Prime p = checked_prime(opt.p);
    Constants constants = checked_constants(opt.constants);
    require(opt.workers >= 1, "--workers must be positive");
    Output o(opt, out);
    Json config{{"command", "distances"},
                {"p", opt.p},
                {"seed", opt.seed},
                {"constants", constants_json(constants)},
                {"log", "natural"}};
    std::string header = csv_header(config);
    ProjectorTable proj(p);
    auto basis = cached_basis(opt, p, opt.seed, 0);
    auto tv = empirical_tv_matrix(proj, basis, opt.workers);
    PairMatrix w = tv;
    PairMatrix r = tv;
    std::size_t n = tv.labels.size();
    std::vector<SubgroupLabel> cores;
    for (const auto &h : proj.subgroups()) {
        cores.push_back(normal_core(h).label());
    }
    std::vector<Json> params(n * n);
    parallel_for(n, opt.workers, [&](std::size_t a) {
        for (std::size_t b = 0; b < n; b++) {
            w.at(a, b) = w_distance(proj, tv.labels[a], tv.labels[b]);
            auto rp = pair_params(proj, tv.labels[a], tv.labels[b], constants);
            r.at(a, b) = r_value(rp, constants, p);
            if (opt.r_params && a < b) {
                Json list = Json::array();
                for (const auto &x : rp) {
                    list.push_back(r_params_json(x));
                }
                params[a * n + b] = {{"h1", label_str(tv.labels[a])}, {"h2", label_str(tv.labels[b])},
                                     {"irreps", list}};
            }
        }
    });
    double max_diag = 0.0;
    double min_cross_w = 2.0;
    double min_tv = 2.0;
    double worst_r_minus_w = 0.0;
    double worst_asym = 0.0;
    for (std::size_t a = 0; a < n; a++) {
        max_diag = std::max({max_diag, std::abs(w.at(a, a)), std::abs(r.at(a, a)), std::abs(tv.at(a, a))});
        for (std::size_t b = 0; b < n; b++) {
            if (a == b) {
                continue;
            }
            min_tv = std::min(min_tv, tv.at(a, b));
            worst_r_minus_w = std::min(worst_r_minus_w, r.at(a, b) - w.at(a, b));
            worst_asym = std::max(worst_asym, std::abs(r.at(a, b) - r.at(b, a)));
            if (cores[a] != cores[b]) {
                min_cross_w = std::min(min_cross_w, w.at(a, b));
            }
        }
    }
    std::vector<CheckResult> checks{
        {"zero_diagonals", max_diag <= 1e-12, false, max_diag, 1e-12, ""},
        {"distinct_cores_w_at_least_half", min_cross_w >= 0.5 - 1e-12, false, min_cross_w, 0.5, "minimum w"},
        {"r_at_least_w", worst_r_minus_w >= -1e-12, false, worst_r_minus_w, 0.0, "minimum r - w"},
        {"r_symmetric", worst_asym <= 1e-9, false, worst_asym, 1e-9, ""},
        {"min_offdiagonal_tv_positive", min_tv > 0.0, false, min_tv, 0.0, "minimum TV"}};
    print_checks(o, checks);
    o.file("w_matrix.csv", header + w.csv());
    o.file("r_matrix.csv", header + r.csv());
    o.file("tv_matrix.csv", header + tv.csv());
    if (opt.r_params) {
        Json all = Json::array();
        for (auto &j : params) {
            if (!j.is_null()) {
                all.push_back(std::move(j));
            }
        }
        o.file("r_params.json", dump_json({{"config", config}, {"version", kArtifactVersion}, {"pairs", all}}));
    }
    Json report{{"config", config},
                {"results", {{"subgroups", n}, {"min_offdiagonal_tv", round12(min_tv)}}},
                {"checks", checks_json(checks)}};
    return o.finish("distances.json", report, all_pass(checks));
}

int cmd_concentration(const Options &opt, std::ostream &out) {
    require(opt.trials >= 1, "--trials must be positive");
    require(opt.tail_trials >= 1, "--tail-trials must be positive");
    ConcentrationConfig cfg;
    cfg.seed = opt.seed;
    cfg.trials = opt.trials;
    cfg.tail_trials = opt.tail_trials;
    Output o(opt, out);
    Json config{{"command", "concentration"}, {"seed", opt.seed}, {"trials", opt.trials},
                {"tail_trials", opt.tail_trials}};
    ConcentrationReport report;
    try {
        report = concentration_experiments(cfg);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    std::vector<CheckResult> checks{
        {"tail_frequencies_within_bound", report.tails_within_bound, false, 0.0, 0.0, ""},
        {"gap_slope_in_range", report.slope_in_range, false, report.gap_slope, 0.0,
         "slope in [" + format_number(cfg.slope_low) + ", " + format_number(cfg.slope_high) + "]"},
        {"block_gap_scaling", report.blocks_scale, false, report.block_constant, 0.0,
         "median within a factor 2 of constant * scale"}};
    print_checks(o, checks);
    Json report_json{{"config", config}, {"results", concentration_json(report)}, {"checks", checks_json(checks)}};
    return o.finish("concentration.json", report_json, all_pass(checks));
}

int cmd_calibrate(const Options &opt, std::ostream &out) {
    Prime p = checked_prime(opt.p);
    require(opt.seeds >= 1, "--seeds must be positive");
    require(opt.margin > 0.0 && opt.margin <= 1.0, "--margin must lie in (0, 1]");
    CalibrationConfig cfg;
    cfg.p = p;
    cfg.first_seed = opt.seed;
    cfg.seeds = opt.seeds;
    cfg.margin = opt.margin;
    cfg.workers = opt.workers;
    if (!opt.constants.empty()) {
        Constants c = checked_constants(opt.constants);
        cfg.C1 = c.C1;
        cfg.C2 = c.C2;
    }
    Output o(opt, out);
    Json config{{"command", "calibrate"}, {"p", opt.p},           {"first_seed", opt.seed},
                {"seeds", opt.seeds},     {"margin", round12(opt.margin)}, {"C1", round12(cfg.C1)},
                {"C2", round12(cfg.C2)}};
    auto result = calibrate_constants(cfg);
    o.line("c1=" + format_number(result.constants.c1) + " c2=" + format_number(result.constants.c2) +
           " seeds passing=" + std::to_string(result.seeds_passing) + "/" + std::to_string(opt.seeds));
    Json report{{"config", config}, {"results", calibration_json(result)}};
    return o.finish("calibration.json", report, true);
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Random-strong Fourier sampling simulator for Heisenberg groups"};
    app.set_version_flag("--version", kArtifactVersion);
    app.require_subcommand(1);
    Options opt;

    auto common = [&](CLI::App *sub, bool with_p) {
        if (with_p) {
            sub->add_option("--p", opt.p, "odd prime, at most 31");
        }
        sub->add_option("--out", opt.out_dir, "directory for report files");
        sub->add_flag("--json", opt.json, "print the JSON report to stdout");
        sub->add_option("--workers", opt.workers, "worker threads (results do not depend on it)");
    };

    auto *lattice = app.add_subcommand("lattice", "subgroup lattice, normal-core families, kappa and [G,G]");
    common(lattice, true);

    auto *verify = app.add_subcommand("verify", "MUB overlaps, Weil sums, QFT and uniformity checks");
    common(verify, true);
    verify->add_option("--cap-dim", opt.cap_dim, "largest dense QFT dimension p^3 to build");

    auto *solve = app.add_subcommand("solve", "end-to-end hidden subgroup experiment");
    common(solve, true);
    solve->add_option("--seed", opt.seed);
    solve->add_option("--t", opt.t, "samples per trial (0: 40 ceil(log2 s(G)))");
    solve->add_option("--trials", opt.trials);
    solve->add_option("--mode", opt.hidden_mode, "uniform or worst-case");
    solve->add_option("--basis", opt.basis_mode, "fresh or fixed");
    solve->add_option("--min-success", opt.min_success);
    solve->add_option("--first-trial", opt.first_trial, "index of the first trial, for replay");
    solve->add_option("--cache", opt.cache_dir, "cache directory for fixed-basis tables");

    auto *stateid = app.add_subcommand("stateid", "state identification with random measurements");
    common(stateid, true);
    stateid->add_option("--seed", opt.seed);
    stateid->add_option("--t", opt.t, "rounds (0: 8 ceil(ln m))");
    stateid->add_option("--trials", opt.trials);
    stateid->add_option("--vectors", opt.vectors, "JSON states file instead of the MUB family");
    stateid->add_option("--delta", opt.delta, "declared overlap bound");
    stateid->add_flag("--own-basis", opt.own_basis, "measure in the states' own basis (m = n)");
    stateid->add_option("--min-success", opt.min_success);

    auto *distances = app.add_subcommand("distances", "w, r and empirical TV matrices");
    common(distances, true);
    distances->add_option("--seed", opt.seed);
    distances->add_option("--constants", opt.constants, "c1,c2,C1,C2");
    distances->add_option("--cache", opt.cache_dir, "cache directory for basis families");
    distances->add_flag("--r-params", opt.r_params, "also write per-pair, per-irrep parameters");

    auto *concentration = app.add_subcommand("concentration", "random-basis concentration experiments");
    common(concentration, false);
    concentration->add_option("--seed", opt.seed);
    concentration->add_option("--trials", opt.trials);
    concentration->add_option("--tail-trials", opt.tail_trials);

    auto *calibrate = app.add_subcommand("calibrate", "calibrate c1, c2 against empirical TV");
    common(calibrate, true);
    calibrate->add_option("--seed", opt.seed, "first basis seed");
    calibrate->add_option("--seeds", opt.seeds);
    calibrate->add_option("--margin", opt.margin);
    calibrate->add_option("--constants", opt.constants, "c1,c2,C1,C2 (only C1, C2 are used)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion &e) {
        out << kArtifactVersion << "\n";
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
    if (calibrate->parsed()) {
        if (calibrate->count("--p") == 0) {
            opt.p = 7;
        }
        if (calibrate->count("--seed") == 0) {
            opt.seed = 1000;
        }
    }
    if (concentration->parsed() && concentration->count("--trials") == 0) {
        opt.trials = ConcentrationConfig{}.trials;
    }
    try {
        if (lattice->parsed()) {
            return cmd_lattice(opt, out);
        }
        if (verify->parsed()) {
            return cmd_verify(opt, out);
        }
        if (solve->parsed()) {
            return cmd_solve(opt, out);
        }
        if (stateid->parsed()) {
            return cmd_stateid(opt, out);
        }
        if (distances->parsed()) {
            return cmd_distances(opt, out);
        }
        if (concentration->parsed()) {
            return cmd_concentration(opt, out);
        }
        return cmd_calibrate(opt, out);
    } catch (const ConfigError &e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
}

}  // namespace hsp
