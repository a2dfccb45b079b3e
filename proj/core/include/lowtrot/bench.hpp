// Copyright 2026 The lowtrot Authors
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

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "lowtrot/io.hpp"

namespace lowtrot {

struct ResultRow {
    std::string scenario;
    std::string kind;
    int p = 0;
    long r = 0;
    double delta = 0.0;
    double T = 0.0;
    int sigma = 0;
    double full_error = 0.0;  // NaN when the full propagator was skipped
    double lowE_error = 0.0;
    double leakage_measured = 0.0;
    double leakage_bound = 0.0;    // integral form of the adiabatic bound
    double long_time_bound = 0.0;  // full-space bound
    double lowE_bound = 0.0;       // low-energy bound
    double alpha_com = 0.0;
    bool smallness_ok = false;
    std::string point = "sweep";  // or "solve"
    bool pass = true;
    double runtime_seconds = 0.0;
};

struct ParityRow {
    std::string scenario;
    int n_bits = 0;
    int d = 0;
    std::string schedule;
    double integral = 0.0;
    double predicted = 0.0;
    double measured = 0.0;
    double orthogonal = 0.0;
    bool pass = true;
};

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

// Least squares on (ln x, ln y). Throws InsufficientData below 3 points and
// NonPositiveValue for x or y <= 0.
SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

// Numeric ResultRow fields by name: r, delta, T, sigma, p, full_error,
// lowE_error, leakage_measured, leakage_bound, long_time_bound, lowE_bound,
// alpha_com, runtime_seconds.
double row_field(const ResultRow& row, const std::string& field);
SlopeFit fit_slope(const std::vector<ResultRow>& rows, const std::string& x_field, const std::string& y_field);

struct RunOptions {
    int jobs = 1;
    std::string scenario_filter;  // substring match on the name
    double tol = 1e-11;
    std::optional<std::uint64_t> seed;  // overrides every scenario seed
    bool timing = true;
    // Above this many columns times steps the full propagator is not formed.
    double full_error_budget = 4.0e6;
};

struct RunResult {
    std::vector<ResultRow> rows;
    std::vector<ParityRow> parity_rows;
    std::vector<std::string> summary;  // lines without the leading '#'
    int violations = 0;
    int failures = 0;

    int exit_code() const { return violations == 0 && failures == 0 ? 0 : 1; }
};

RunResult run_config(const BenchConfig& cfg, const RunOptions& opts);

void write_results_csv(std::ostream& os, const RunResult& result);
void write_parity_csv(std::ostream& os, const RunResult& result);

// Loads the config, runs it and writes `output_path` (plus
// `output_path`.parity.csv when parity rows exist). Returns the exit code.
int run(const std::string& config_path, const std::string& output_path, const RunOptions& opts);

}  // namespace lowtrot
