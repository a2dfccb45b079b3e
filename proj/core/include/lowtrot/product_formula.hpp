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

#include <ostream>
#include <string>
#include <vector>

#include "lowtrot/hamiltonian.hpp"
#include "lowtrot/spectral.hpp"

namespace lowtrot {

enum class FormulaKind { Generalized, Standard };

std::string kind_name(FormulaKind kind);
FormulaKind parse_kind(const std::string& name);

// Entry j evolves group `group` over [t + beta * delta, t + (beta + alpha) * delta].
// alpha may be negative inside higher-order recursions.
struct ScheduleEntry {
    int group = 0;
    double alpha = 0.0;
    double beta = 0.0;
};

struct PFSchedule {
    int p = 1;
    int num_groups = 1;
    FormulaKind kind = FormulaKind::Generalized;
    std::vector<ScheduleEntry> entries;  // entries[0] is applied first

    int q() const { return static_cast<int>(entries.size()); }
    // Adjacent entries of one group over contiguous intervals joined.
    std::vector<ScheduleEntry> merged() const;
};

// Orders 1, 2, 4 and 6. Order 1 is a single forward sweep, order 2 the
// palindromic half-step sweep, and each higher even order the five-segment
// recursion with segment lengths u, u, 1 - 4u, u, u where
// u = 1 / (4 - 4^(1/(p-1))).
PFSchedule build_schedule(int p, int num_groups, FormulaKind kind);

double recursion_constant(int p);

// Number of exponentials of the unmerged schedule: num_groups for p = 1,
// 2 * 5^(p/2 - 1) * num_groups for even p.
int schedule_length(int p, int num_groups);

// Generalized kind: every term gets exp(-i h_X * integral of f_X over its
// subinterval). Standard kind: the group is frozen at the midpoint of each
// entry's own subinterval.
Matrix step(const TimeDependentHamiltonian& h, const PFSchedule& s, double t, double delta);

// Same formula mapped onto [t_start, t_end]; t_end < t_start runs it backwards.
Matrix step_between(const TimeDependentHamiltonian& h, const PFSchedule& s, double t_start, double t_end);

// block <- step * block, without forming the full step operator.
void apply_step(const TimeDependentHamiltonian& h, const PFSchedule& s, double t_start, double t_end, Matrix& block);

// r equal steps over [0, T].
Matrix evolve(const TimeDependentHamiltonian& h, const PFSchedule& s, long r);
Matrix evolve_block(const TimeDependentHamiltonian& h, const PFSchedule& s, long r, const Matrix& initial);

struct MeasuredError {
    double full = 0.0;        // ||U - V||
    double low_energy = 0.0;  // ||(U - V) Pi_sigma(0)||
};

MeasuredError measured_error(const TimeDependentHamiltonian& h, const PFSchedule& s, long r, int sigma,
                             ExactPropagator* prop = nullptr);

// Low-energy error only; evolves the sigma lowest eigenvectors of H(0).
double measured_low_energy_error(const TimeDependentHamiltonian& h, const PFSchedule& s, long r, int sigma,
                                 const Matrix& exact);

void write_schedule_csv(std::ostream& os, const PFSchedule& s, bool merged = false);

}  // namespace lowtrot
