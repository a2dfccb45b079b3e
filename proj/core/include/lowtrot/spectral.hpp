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

#include <functional>
#include <map>
#include <mutex>
#include <ostream>
#include <utility>
#include <vector>

#include "lowtrot/hamiltonian.hpp"
#include "lowtrot/linalg.hpp"

namespace lowtrot {

using MatrixFunction = std::function<Matrix(double)>;

struct SpectralSnapshot {
    double t = 0.0;
    int sigma = 0;
    RealVector eigenvalues;  // ascending, full spectrum
    Matrix low_vectors;      // dim x sigma
    Matrix projector;        // onto the sigma lowest eigenvectors
    double gap = 0.0;        // E_{sigma+1} - E_sigma, +inf when sigma == dim
    double delta = 0.0;      // E_sigma (the sigma-th lowest eigenvalue)
    bool collapsed = false;  // gap below the floor
};

inline constexpr double kGapFloor = 1e-8;

// Throws GapCollapse when the gap is below `gap_floor` unless
// `throw_on_collapse` is false, in which case `collapsed` is set.
SpectralSnapshot snapshot(const Matrix& h, double t, int sigma, double gap_floor = kGapFloor, bool throw_on_collapse = true);
SpectralSnapshot snapshot(const TimeDependentHamiltonian& h, double t, int sigma, double gap_floor = kGapFloor,
                          bool throw_on_collapse = true);

struct PropagatorOptions {
    double tol = 1e-11;
    long max_steps = 1L << 22;
};

// Time-ordered exponential of -i H(t) by fourth-order Magnus steps on the two
// Gauss-Legendre nodes of each substep. The substep count doubles until two
// successive results agree to `tol` in spectral norm; the finer one is
// returned. Stagnation at the rounding floor (no halving of the difference
// while below 1e3 * tol) also ends the refinement. Every step is unitary.
Matrix exact_evolve(const MatrixFunction& h, double t0, double t1, const PropagatorOptions& opts = {}, long* steps_used = nullptr);
Matrix exact_evolve(const TimeDependentHamiltonian& h, double t0, double t1, const PropagatorOptions& opts = {});

// Caches V(t1, t0) by interval. Safe to share between threads.
class ExactPropagator {
public:
    ExactPropagator(MatrixFunction h, PropagatorOptions opts = {});
    ExactPropagator(const TimeDependentHamiltonian& h, PropagatorOptions opts = {});

    Matrix evolve(double t0, double t1);
    std::size_t cache_size() const;

private:
    MatrixFunction h_;
    PropagatorOptions opts_;
    mutable std::mutex mu_;
    std::map<std::pair<double, double>, Matrix> cache_;
};

// ||(I - Pi(t)) V(t, 0) Pi(0)|| with Pi the sigma-lowest spectral projector.
double leakage(const TimeDependentHamiltonian& h, int sigma, double t, ExactPropagator* prop = nullptr);

struct GapProfileRow {
    double t = 0.0;
    double gap = 0.0;
    double delta = 0.0;
    // Derivatives with respect to s = t / T. The reported norm is the
    // half-width of the spectrum, min_c ||dH/ds - c I||: identity components
    // only add a global phase, so leakage bounds may use it in place of the
    // plain norm. The plain spectral norms are kept alongside.
    double dH = 0.0;
    double d2H = 0.0;
    double dH_plain = 0.0;
    double d2H_plain = 0.0;
};

struct GapProfile {
    int sigma = 0;
    double total_time = 0.0;
    std::vector<GapProfileRow> rows;
    double gap_min = 0.0;
    double delta_max = 0.0;
    double dH_max = 0.0;
    double d2H_max = 0.0;
};

GapProfile gap_profile(const TimeDependentHamiltonian& h, int sigma, int grid_points = 201);

void write_gap_profile_csv(std::ostream& os, const GapProfile& profile);

// Half-width of the spectrum of a Hermitian matrix.
double spectral_half_width(const Matrix& h);

}  // namespace lowtrot
