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

#include "lowtrot/models.hpp"

#include <numbers>
#include <random>

#include "lowtrot/error.hpp"

namespace lowtrot {

std::vector<TermSpec> driven_chain_terms(const DrivenChainParams& p) {
    if (p.n_sites < 2) throw Error(Errc::InvalidArgument, "driven chain needs at least 2 sites");
    const int n = p.n_sites;
    std::vector<double> bond(static_cast<std::size_t>(n - 1));
    std::vector<double> site(static_cast<std::size_t>(n));
    if (p.seed) {
        std::mt19937_64 rng(*p.seed);
        std::uniform_real_distribution<double> u(0.75, 1.25);
        for (auto& b : bond) b = p.coupling * u(rng);
        for (auto& s : site) s = p.field_x * u(rng);
    } else {
        for (int i = 0; i + 1 < n; ++i) bond[static_cast<std::size_t>(i)] = p.coupling * (1.0 + 0.1 * i);
        for (int i = 0; i < n; ++i) site[static_cast<std::size_t>(i)] = p.field_x * (1.0 - 0.05 * i);
    }

    const Matrix xx = pauli_string("XX");
    const Matrix yy = pauli_string("YY");
    const Matrix zz = pauli_string("ZZ");
    const Matrix zi = pauli_string("ZI");
    const Matrix iz = pauli_string("IZ");
    auto weight = [&](int s) { return (s == 0 || s == n - 1) ? 1.0 : 0.5; };

    std::vector<TermSpec> terms;
    for (int i = 0; i + 1 < n; ++i) {
        Matrix op = bond[static_cast<std::size_t>(i)] * (xx + yy + p.anisotropy * zz) + p.field_z * (weight(i) * zi + weight(i + 1) * iz);
        terms.push_back({{i, i + 1}, op, CoefficientFn::constant(1.0), "bond" + std::to_string(i)});
    }
    const CoefficientFn drive = CoefficientFn::constant(1.0) + p.drive_depth * CoefficientFn::cos_lin(p.omega * p.total_time, 0.0, p.total_time);
    for (int i = 0; i < n; ++i)
        terms.push_back({{i}, site[static_cast<std::size_t>(i)] * pauli_string("X"), drive, "x" + std::to_string(i)});
    return terms;
}

TimeDependentHamiltonian driven_heisenberg_chain(const DrivenChainParams& p, int max_derivative_order) {
    ChainOptions opts;
    opts.total_time = p.total_time;
    opts.max_derivative_order = max_derivative_order;
    return build_chain(p.n_sites, driven_chain_terms(p), opts);
}

TimeDependentHamiltonian adiabatic_single_spin(double total_time, int max_derivative_order) {
    const double a = std::numbers::pi / 2.0;
    std::vector<TermSpec> terms;
    terms.push_back({{0}, -pauli_string("X"), CoefficientFn::cos_lin(a, 0.0, total_time), "x"});
    terms.push_back({{0}, -pauli_string("Z"), CoefficientFn::sin_lin(a, 0.0, total_time), "z"});
    ChainOptions opts;
    opts.total_time = total_time;
    opts.max_derivative_order = max_derivative_order;
    return build_chain(1, std::move(terms), opts);
}

TimeDependentHamiltonian linear_interpolation_ising(const IsingParams& p, int max_derivative_order) {
    if (p.n_sites < 2) throw Error(Errc::InvalidArgument, "Ising chain needs at least 2 sites");
    const CoefficientFn down = CoefficientFn::poly_in_s({1.0, -1.0}, p.total_time);
    const CoefficientFn up = CoefficientFn::poly_in_s({0.0, 1.0}, p.total_time);
    std::vector<TermSpec> terms;
    for (int i = 0; i < p.n_sites; ++i) terms.push_back({{i}, -pauli_string("X"), down, "x" + std::to_string(i)});
    for (int i = 0; i + 1 < p.n_sites; ++i) terms.push_back({{i, i + 1}, -pauli_string("ZZ"), up, "zz" + std::to_string(i)});
    if (p.field_z != 0.0)
        for (int i = 0; i < p.n_sites; ++i) terms.push_back({{i}, -p.field_z * pauli_string("Z"), up, "z" + std::to_string(i)});
    ChainOptions opts;
    opts.total_time = p.total_time;
    opts.max_derivative_order = max_derivative_order;
    return build_chain(p.n_sites, std::move(terms), opts);
}

}  // namespace lowtrot
