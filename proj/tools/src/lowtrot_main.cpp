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

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lowtrot/bounds.hpp"
#include "lowtrot/error.hpp"
#include "lowtrot/hard_instance.hpp"
#include "lowtrot/io.hpp"
#include "lowtrot/product_formula.hpp"
#include "lowtrot/spectral.hpp"

namespace {

struct HamiltonianArgs {
    std::string builtin;
    std::string file;
    std::vector<std::string> params;
    double T = 1.0;
    std::uint64_t seed = 0;
};

void add_hamiltonian_options(CLI::App* cmd, HamiltonianArgs& a) {
    auto* b = cmd->add_option("--builtin", a.builtin, "driven-heisenberg-chain, adiabatic-single-spin or linear-interpolation-ising");
    auto* f = cmd->add_option("--file", a.file, "Hamiltonian description (JSON)")->check(CLI::ExistingFile);
    b->excludes(f);
    cmd->add_option("--param", a.params, "Builtin parameter key=value (repeatable)");
    cmd->add_option("-T,--total-time", a.T, "Total evolution time")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", a.seed, "Seed for randomized builtin couplings");
}

lowtrot::TimeDependentHamiltonian make_hamiltonian(const HamiltonianArgs& a) {
    lowtrot::Scenario sc;
    sc.name = "cli";
    sc.seed = a.seed;
    if (a.file.empty() && a.builtin.empty()) throw lowtrot::Error(lowtrot::Errc::InvalidArgument, "need --builtin or --file");
    sc.hamiltonian.builtin = a.builtin;
    sc.hamiltonian.file = a.file;
    for (const auto& kv : a.params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw lowtrot::Error(lowtrot::Errc::InvalidArgument, "parameter '" + kv + "' is not key=value");
        sc.hamiltonian.params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    }
    return lowtrot::scenario_hamiltonian(sc, a.T);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lowtrot: product formulas, spectral profiles and Trotter-number bounds"};
    app.require_subcommand(1);

    auto* schedule = app.add_subcommand("schedule", "Print a product-formula schedule as CSV");
    int sched_p = 2;
    int sched_groups = 2;
    std::string sched_kind = "generalized";
    bool sched_merged = false;
    schedule->add_option("-p,--order", sched_p, "Order (1, 2, 4, 6)");
    schedule->add_option("-g,--groups", sched_groups, "Number of groups")->check(CLI::PositiveNumber);
    schedule->add_option("--kind", sched_kind, "generalized or standard");
    schedule->add_flag("--merged", sched_merged, "Merge adjacent exponentials of the same group");

    auto* profile = app.add_subcommand("profile", "Print the gap profile of a Hamiltonian as CSV");
    HamiltonianArgs prof_h;
    int prof_sigma = 1;
    int prof_grid = 201;
    add_hamiltonian_options(profile, prof_h);
    profile->add_option("--sigma", prof_sigma, "Low-energy subspace dimension")->check(CLI::PositiveNumber);
    profile->add_option("--grid", prof_grid, "Grid points on [0, T]")->check(CLI::Range(2, 100001));

    auto* solve = app.add_subcommand("solve", "Smallest Trotter number meeting eps under the long-time bound");
    HamiltonianArgs solve_h;
    int solve_p = 2;
    int solve_sigma = 1;
    double solve_eps = 0.1;
    bool solve_full = false;
    bool solve_adiabatic = false;
    double solve_c = 1.0;
    long solve_r = 0;
    add_hamiltonian_options(solve, solve_h);
    solve->add_option("-p,--order", solve_p, "Order (1, 2, 4, 6)");
    solve->add_option("--sigma", solve_sigma, "Low-energy subspace dimension")->check(CLI::PositiveNumber);
    solve->add_option("--eps", solve_eps, "Target error")->check(CLI::Range(0.0, 1.0));
    solve->add_flag("--full-space", solve_full, "Use the full-space bound");
    solve->add_flag("--adiabatic", solve_adiabatic, "Drop the leakage term in the adiabatic regime");
    solve->add_option("--adiabatic-constant", solve_c, "Constant of the adiabatic-regime test")->check(CLI::PositiveNumber);
    solve->add_option("-r,--trotter-number", solve_r, "Evaluate the bound at this r instead of solving")->check(CLI::PositiveNumber);

    auto* parity = app.add_subcommand("parity", "Parity hard instance amplitude check");
    std::string bits = "10";
    int parity_d = 2;
    std::string parity_sched = "1";
    double parity_T = 1.0;
    parity->add_option("--bits", bits, "Bit string, e.g. 1011");
    parity->add_option("-d,--sparsity", parity_d, "Sparsity d (d' = floor(d/2))");
    parity->add_option("--schedule", parity_sched, "Max-norm schedule as a coefficient expression in s");
    parity->add_option("-T,--total-time", parity_T, "Total evolution time")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (schedule->parsed()) {
            const auto s = lowtrot::build_schedule(sched_p, sched_groups, lowtrot::parse_kind(sched_kind));
            lowtrot::write_schedule_csv(std::cout, s, sched_merged);
        } else if (profile->parsed()) {
            const auto h = make_hamiltonian(prof_h);
            lowtrot::write_gap_profile_csv(std::cout, lowtrot::gap_profile(h, prof_sigma, prof_grid));
        } else if (solve->parsed()) {
            const auto h = make_hamiltonian(solve_h);
            const auto prof = lowtrot::gap_profile(h, solve_sigma);
            lowtrot::BoundInputs in = lowtrot::bound_inputs(h, solve_p, solve_sigma, solve_eps, prof);
            if (solve_full) in = lowtrot::full_space_inputs(in);
            const auto mode = solve_adiabatic ? lowtrot::SolveMode::Adiabatic : lowtrot::SolveMode::General;
            const auto rep = solve_r > 0 ? lowtrot::long_time_bound(in, solve_r, mode, lowtrot::SmallStepPolicy::EvaluateAsIs, solve_c)
                                         : lowtrot::solve_trotter_number(in, mode, solve_c);
            lowtrot::write_bound_report_csv_header(std::cout);
            lowtrot::write_bound_report_csv_row(std::cout, rep);
        } else if (parity->parsed()) {
            std::vector<int> x;
            for (char c : bits) {
                if (c != '0' && c != '1') throw lowtrot::Error(lowtrot::Errc::InvalidArgument, "bits must be 0 or 1");
                x.push_back(c - '0');
            }
            const auto inst = lowtrot::build_parity(x, parity_d, lowtrot::parse_coefficient(parity_sched, parity_T), parity_T);
            lowtrot::write_parity_csv_header(std::cout);
            lowtrot::write_parity_csv_row(std::cout, inst, lowtrot::amplitude_check(inst));
        }
    } catch (const lowtrot::Error& e) {
        std::cerr << "lowtrot: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
