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

#include <optional>
#include <ostream>
#include <string>

#include "lowtrot/hamiltonian.hpp"
#include "lowtrot/spectral.hpp"

namespace lowtrot {

struct BoundInputs {
    int N = 1;
    int k = 1;
    int p = 1;
    int Gamma = 1;
    int q = 1;
    double g = 1.0;
    double Delta = 0.0;  // low-energy cutoff, max over t of E_sigma(t)
    double T = 1.0;
    double eps = 1e-2;
    int sigma = 1;
    // Spectral-flow data of the scaled-time profile.
    double gap_min = 0.0;
    double dH = 0.0;
    double d2H = 0.0;
};

// Collects the inputs from a Hamiltonian: g from strength_params(h, p), q of
// the unmerged schedule, and gap / derivative maxima of `profile`.
BoundInputs bound_inputs(const TimeDependentHamiltonian& h, int p, int sigma, double eps, const GapProfile& profile);

// The same problem viewed in the whole Hilbert space: Delta = gN (which
// bounds ||H(t)||) and no leakage.
BoundInputs full_space_inputs(const BoundInputs& in);
bool is_full_space(const BoundInputs& in);

struct DeltaPrime {
    double log_term = 0.0;  // ln(6 N r / (k eps)), clamped at 0
    double Delta_prime = 0.0;
    int p0 = 0;
};

// Delta' = Delta + 2gk ln(6Nr/(k eps)) and p0 = max(ceil(ln(...)) - 1, p).
DeltaPrime delta_prime_and_p0(int N, int k, double g, long r, double eps, double Delta, int p);

// Taylor remainder 3 (2 q (p0+1) k g delta)^(p0+1) N / (2k).
double remainder_bound(int N, int k, double g, int q, int p0, double delta);

// Smallness condition 2 q (p0+1) k g delta <= 1 / (2e).
bool smallness_holds(const BoundInputs& in, long r);
long smallest_admissible_r(const BoundInputs& in);

enum class SmallStepPolicy {
    Raise,         // increase r until the smallness condition holds
    EvaluateAsIs,  // evaluate the expression at r and flag the condition
};

struct ShortTimeBound {
    long r_requested = 0;
    long r = 0;
    double delta = 0.0;
    DeltaPrime dp;
    bool smallness_ok = false;  // at r_requested
    double per_step = 0.0;      // eps/(2r) + 3 (k p0 g)^p Delta' (2 q delta)^(p+1)
    double step_sum = 0.0;      // r * 3 (k p0 g)^p Delta' (2 q delta)^(p+1)
    double slack = 0.0;         // eps / 2
    double sum = 0.0;           // r * per_step
    // Diagnostics: the two pieces the eps/2 slack stands for, evaluated.
    double high_energy_actual = 0.0;  // r * (3/2) N/k exp(-lambda (Delta' - Delta))
    double remainder_actual = 0.0;    // r * remainder_bound
};

ShortTimeBound short_time_bound(const BoundInputs& in, long r, SmallStepPolicy policy = SmallStepPolicy::Raise);

struct JansenBound {
    double integral_form = 0.0;
    double uniform_form = 0.0;
};

// (1/T)[sigma ||H'(0)||/gamma(0)^2 + sigma ||H'(1)||/gamma(1)^2
//       + int_0^1 (sigma ||H''||/gamma^2 + 7 sigma^1.5 ||H'||^2/gamma^3) ds]
// with composite Simpson on the profile grid, and the uniform form
// (1/T)(2 sigma H'/gamma^2 + 7 sigma^1.5 H'^2/gamma^3 + sigma H''/gamma^2).
JansenBound jansen_leakage_bound(const GapProfile& profile, int sigma, double T);

double uniform_leakage_factor(int sigma, double gap, double dH, double d2H);

enum class Regime { StepDominated, LeakageDominated, Adiabatic };
std::string regime_name(Regime r);

enum class SolveMode { General, Adiabatic };

struct BoundReport {
    BoundInputs inputs;
    long r_requested = 0;
    long r = 0;
    double delta = 0.0;
    double Delta_prime = 0.0;
    int p0 = 0;
    bool smallness_ok = false;
    double short_time_sum = 0.0;  // step-error sum
    double leakage_sum = 0.0;     // zero when dropped in the adiabatic regime
    double leakage_dropped = 0.0; // value of the dropped leakage term
    double remainder_term = 0.0;  // eps / 2
    double total = 0.0;
    Regime regime = Regime::StepDominated;
};

// Long-time bound at Trotter number r. The leakage part is
//   c_step (2k(p+1))^p (sum_j Gamma^(p+1-j) g^j N) (T/r)^p (1 + ln r) L
// with L the uniform leakage factor and c_step = 3 (q/Gamma)^(p+1) p/(p+1)
// the prefactor of the per-step full-space error.
BoundReport long_time_bound(const BoundInputs& in, long r, SolveMode mode = SolveMode::General,
                            SmallStepPolicy policy = SmallStepPolicy::EvaluateAsIs, double adiabatic_constant = 1.0);

// True when T >= c (gN/Delta) (sigma H'/gamma^2 + sigma^1.5 H'^2/gamma^3 + sigma H''/gamma^2).
bool adiabatic_regime(const BoundInputs& in, double c = 1.0);

// Smallest admissible r with total <= eps: doubling, then bisection. Throws
// NoSolution above 2^30.
BoundReport solve_trotter_number(const BoundInputs& in, SolveMode mode = SolveMode::General, double adiabatic_constant = 1.0);

void write_bound_report_csv_header(std::ostream& os);
void write_bound_report_csv_row(std::ostream& os, const BoundReport& rep);

enum class InteractionClass { Geometric, PowerLaw };

struct GClass {
    std::string label;  // O(1), O(N^(1-alpha/D)), O(log N)
    std::optional<double> exact;
};

GClass g_for_class(InteractionClass cls, double alpha = 0.0, int D = 1, const TimeDependentHamiltonian* instance = nullptr);

}  // namespace lowtrot
