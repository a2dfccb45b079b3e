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
#include <string>
#include <vector>

#include "lowtrot/hamiltonian.hpp"

namespace lowtrot {

// Open XXZ chain with a static Z field folded into the bonds and a cosine
// driven transverse field:
//   bond i:  J_i (XX + YY + anisotropy ZZ) + field_z (w_i Z_i + w_{i+1} Z_{i+1})
//   site i:  h_i (1 + drive_depth cos(omega t)) X_i
// w splits each site's field between the bonds touching it. J_i and h_i are
// fixed inhomogeneous profiles, or drawn in [0.75, 1.25] times the base value
// when `seed` is set.
struct DrivenChainParams {
    int n_sites = 4;
    double total_time = 1.0;
    double coupling = 1.0;
    double anisotropy = 0.5;
    double field_z = 0.3;
    double field_x = 0.5;
    double drive_depth = 0.5;
    double omega = 1.0;  // angular frequency in units of 1/t
    std::optional<std::uint64_t> seed;
};

TimeDependentHamiltonian driven_heisenberg_chain(const DrivenChainParams& p, int max_derivative_order = 8);

// H(t) = -cos(pi t / 2T) X - sin(pi t / 2T) Z.
TimeDependentHamiltonian adiabatic_single_spin(double total_time, int max_derivative_order = 8);

// H(s) = (1 - s) sum_i (-X_i) + s (sum_i -Z_i Z_{i+1} - field_z sum_i Z_i).
struct IsingParams {
    int n_sites = 4;
    double total_time = 10.0;
    double field_z = 0.5;
};

TimeDependentHamiltonian linear_interpolation_ising(const IsingParams& p, int max_derivative_order = 8);

// Term list of the driven chain, for tests that rebuild it with other options.
std::vector<TermSpec> driven_chain_terms(const DrivenChainParams& p);

}  // namespace lowtrot
