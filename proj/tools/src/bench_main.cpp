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

#include <cstdint>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "lowtrot/bench.hpp"
#include "lowtrot/error.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Run lowtrot benchmark scenarios and write a CSV report"};
    std::string config;
    std::string out;
    lowtrot::RunOptions opts;
    opts.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::uint64_t seed = 0;
    bool no_timing = false;

    app.add_option("--config", config, "Scenario config (JSON)")->required()->check(CLI::ExistingFile);
    app.add_option("--out", out, "Output CSV path")->required();
    app.add_option("--jobs", opts.jobs, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--scenario", opts.scenario_filter, "Only run scenarios whose name contains this");
    app.add_option("--tol", opts.tol, "Exact propagator tolerance")->check(CLI::PositiveNumber);
    auto* seed_opt = app.add_option("--seed", seed, "Override every scenario seed");
    app.add_flag("--no-timing", no_timing, "Write 0 for runtime_seconds so reruns are byte-identical");
    CLI11_PARSE(app, argc, argv);

    if (*seed_opt) opts.seed = seed;
    opts.timing = !no_timing;
    try {
        const int code = lowtrot::run(config, out, opts);
        if (code != 0) std::cerr << "lowtrot-bench: bound violation or scenario failure, see " << out << "\n";
        return code;
    } catch (const lowtrot::Error& e) {
        std::cerr << "lowtrot-bench: " << e.what() << "\n";
        return 1;
    }
}
