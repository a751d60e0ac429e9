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

#ifndef HSP_STATS_H
#define HSP_STATS_H

#include <cstddef>
#include <vector>

namespace hsp {

double mean(const std::vector<double> &xs);
/// Average of the two middle values for even sizes. Throws on empty input.
double median(std::vector<double> xs);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double> &xs, const std::vector<double> &ys);

/// Two-sample Kolmogorov–Smirnov statistic sup |F_a − F_b|.
double ks_statistic(std::vector<double> a, std::vector<double> b);

/// Asymptotic two-sample KS critical value c(α)·sqrt((n+m)/(n·m)), c(α) = sqrt(−ln(α/2)/2).
double ks_critical(std::size_t n, std::size_t m, double alpha);

/// Standard error of a binomial proportion, sqrt(q(1−q)/n).
double binomial_stderr(double q, std::size_t n);

}  // namespace hsp

#endif
