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
#include <vector>

#include "lowtrot/coefficient.hpp"
#include "lowtrot/linalg.hpp"
#include "lowtrot/spectral.hpp"

namespace lowtrot {

// Parity oracle walk. Vertices |i, j, l> with layer i in [0, N], parity
// register j in {0, 1} and copy index l in [0, d'). Layer i-1 connects to
// layer i with j -> j xor x_i through a complete bipartite block of weight
// sqrt(i (N - i + 1)) / N, so every vertex has at most 2 d' <= d neighbours.
// The uniform superposition over l spans an invariant subspace; on it the
// walk is the 2(N + 1) dimensional reduced matrix with entries
// d' sqrt(i (N - i + 1)) / N.
struct ParityInstance {
    std::vector<int> x;
    int d = 2;
    int d_prime = 1;
    double total_time = 1.0;
    CoefficientFn max_norm;  // ||H(t)||_max on [0, T]
    Matrix reduced;          // H~ restricted to the invariant subspace, index 2 i + j
    double tilde_max_norm = 1.0;  // max entry of the full H~

    int n_bits() const { return static_cast<int>(x.size()); }
    int parity() const;
    static int index(int i, int j) { return 2 * i + j; }

    // H(t) = ||H(t)||_max H~ / ||H~||_max on the reduced space.
    Matrix reduced_at(double t) const;
    double integral() const;  // int_0^T ||H||_max dt
};

// Throws InvalidSparsity when d < 2, InvalidArgument for an empty x, bits
// other than 0/1, T <= 0 or a schedule that is negative somewhere on [0, T].
ParityInstance build_parity(std::vector<int> x, int d, CoefficientFn max_norm, double T);

// Full |i, j, l> matrix of H~; only for N <= 4 and d' <= 3.
Matrix full_parity_matrix(const ParityInstance& inst);

// | sin(d' int ||H||_max / (N ||H~||_max)) |^N
double predicted_amplitude(const ParityInstance& inst);

struct AmplitudeCheck {
    double measured = 0.0;    // |<N, p(x)| V |0, 0>|
    double predicted = 0.0;
    double orthogonal = 0.0;  // |<N, p(x) xor 1| V |0, 0>|
};

AmplitudeCheck amplitude_check(const ParityInstance& inst, const PropagatorOptions& opts = {});

struct ConfinementCheck {
    double outside_probability = 0.0;  // weight outside the uniform-l span
    double measured = 0.0;             // amplitude at |N, p(x), *> in the full space
    double tilde_max_norm = 0.0;       // max entry of the full matrix
};

ConfinementCheck confinement_check(const ParityInstance& inst, const PropagatorOptions& opts = {});

// || V(T, 0) - exp(-i (int ||H||_max) H~ / ||H~||_max) || on the reduced space.
double commuting_reduction_error(const ParityInstance& inst, const PropagatorOptions& opts = {});

struct RequiredN {
    long n = 0;
    double integral_term = 0.0;  // c1 d' int ||H||_max
    double log_term = 0.0;       // c2 ln(1/eps) / max(ln ln(1/eps), 1)
    double lower_bound = 0.0;    // d int ||H||_max + ln(1/eps) / max(ln ln(1/eps), 1)
};

// Smallest N of the form ceil(max(integral_term, log_term)). The constants
// stand in for the Theta of the construction.
RequiredN required_N(int d, double integral_max_norm, double eps, double c1 = 1.0, double c2 = 1.0);

void write_parity_csv_header(std::ostream& os);
void write_parity_csv_row(std::ostream& os, const ParityInstance& inst, const AmplitudeCheck& check);

}  // namespace lowtrot
