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

#ifndef HSP_REPORT_IO_H
#define HSP_REPORT_IO_H

#include <string>
#include <vector>

#include "hsp/checks.h"
#include "hsp/distinguishability.h"
#include "hsp/hsp_engine.h"
#include "hsp/random_bases.h"
#include "json.hpp"

namespace hsp {

using Json = nlohmann::json;

constexpr const char *kArtifactVersion = "hspsim 1.0.0";
/// Bumped whenever the cached basis or table layout changes.
constexpr int kCacheFormatVersion = 1;

/// %.12g.
std::string format_number(double v);
/// v rounded to 12 significant digits, so dumps print at most 12 digits.
double round12(double v);

/// Two-space indented dump with sorted keys and a trailing newline.
std::string dump_json(const Json &j);

/// "c1,c2,C1,C2". Throws std::invalid_argument on malformed or non-positive input.
Constants parse_constants(const std::string &text);
Json constants_json(const Constants &c);

Json check_json(const CheckResult &c);
Json checks_json(const std::vector<CheckResult> &checks);

/// Full-precision round trip for caching.
Json basis_family_json(const BasisFamily &family);
/// Throws std::runtime_error on a version or shape mismatch.
BasisFamily basis_family_from_json(const Json &j);

Json distribution_table_json(const DistributionTable &table);
DistributionTable distribution_table_from_json(const Json &j);

/// Long format: subgroup,outcome,probability.
std::string distribution_table_csv(const DistributionTable &table, const std::string &header);

Json experiment_json(const ExperimentReport &report);
/// hidden,returned,count over misclassifications.
std::string confusion_csv(const ExperimentReport &report, const std::string &header);
/// trial,seed,stream,hidden,returned,success.
std::string trials_csv(const ExperimentReport &report, const std::string &header);

Json state_id_json(const StateIdReport &report);
Json concentration_json(const ConcentrationReport &report);
Json calibration_json(const CalibrationResult &result);
Json r_params_json(const RParams &r);

/// States file: {"delta": δ, "states": [[[re, im], ...], ...]}.
std::vector<ComplexVector> states_from_json(const Json &j);

/// "# " + compact config JSON + newline.
std::string csv_header(const Json &config);

}  // namespace hsp

#endif
