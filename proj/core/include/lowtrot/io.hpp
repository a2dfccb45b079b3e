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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lowtrot/hamiltonian.hpp"
#include "lowtrot/linalg.hpp"

namespace lowtrot {

struct PauliOperator {
    std::vector<int> support;
    Matrix op;
};

// "<sum of Pauli strings> on [i, j, ...]", e.g. "XZ on [2,3]" or
// "XX + YY - 0.5 ZZ on [0,1]". Every string has one letter per support site.
PauliOperator parse_pauli_operator(std::string_view text);

struct TermDescription {
    std::string op;    // Pauli operator text
    std::string coef;  // coefficient expression in s = t / T
    std::string label;
};

struct HamiltonianDescription {
    int n_sites = 0;
    std::optional<int> locality;  // checked against the terms when given
    double total_time = 1.0;
    std::vector<TermDescription> terms;
    std::optional<std::vector<std::vector<int>>> groups;
};

HamiltonianDescription parse_hamiltonian_json(std::string_view text, const std::string& origin = "<string>");
HamiltonianDescription load_hamiltonian_file(const std::string& path);

// Coefficients are parsed against `total_time`, so the same description can
// be built at several T.
TimeDependentHamiltonian build_hamiltonian(const HamiltonianDescription& desc, std::optional<double> total_time = std::nullopt,
                                           int max_derivative_order = 8);

struct HamiltonianSource {
    std::string builtin;  // empty when loaded from a file
    std::string file;     // resolved path
    std::map<std::string, double> params;
};

struct Scenario {
    std::string name;
    HamiltonianSource hamiltonian;
    int sigma = 1;
    double eps = 0.1;
    std::vector<std::string> kinds{"generalized"};
    std::vector<int> p;
    std::vector<long> r;
    std::vector<double> T;
    bool solve = false;  // add a row at the solver's Trotter number
    std::optional<std::uint64_t> seed;
    // parity-instance only
    std::vector<int> n_bits;
    int sparsity = 2;
    std::vector<std::string> schedules;
};

struct BenchConfig {
    int version = 1;
    std::vector<Scenario> scenarios;
};

// Relative file references resolve against `base_dir`. Errors are
// ConfigParse naming the line (syntax) or the field path (content).
BenchConfig parse_config(std::string_view text, const std::string& base_dir = ".", const std::string& origin = "<string>");
BenchConfig load_config(const std::string& path);

// Builds a scenario's Hamiltonian at total time T. Not valid for the
// parity instance.
TimeDependentHamiltonian scenario_hamiltonian(const Scenario& sc, double T);

}  // namespace lowtrot
