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

#include "lowtrot/product_formula.hpp"

#include <cmath>
#include <iomanip>

#include "lowtrot/error.hpp"

namespace lowtrot {

std::string kind_name(FormulaKind kind) { return kind == FormulaKind::Generalized ? "generalized" : "standard"; }

FormulaKind parse_kind(const std::string& name) {
    if (name == "generalized") return FormulaKind::Generalized;
    if (name == "standard") return FormulaKind::Standard;
    throw Error(Errc::InvalidArgument, "unknown formula kind '" + name + "'");
}

double recursion_constant(int p) {
    return 1.0 / (4.0 - std::pow(4.0, 1.0 / (p - 1)));
}

int schedule_length(int p, int num_groups) {
    if (p == 1) return num_groups;
    int n = 2 * num_groups;
    for (int k = 2; k < p; k += 2) n *= 5;
    return n;
}

std::vector<ScheduleEntry> PFSchedule::merged() const {
    std::vector<ScheduleEntry> out;
    for (const auto& e : entries) {
        if (!out.empty()) {
            auto& last = out.back();
            if (last.group == e.group && std::abs(last.beta + last.alpha - e.beta) <= 1e-14) {
                last.alpha += e.alpha;
                continue;
            }
        }
        out.push_back(e);
    }
    return out;
}

namespace {

std::vector<ScheduleEntry> entries_for(int p, int num_groups) {
    std::vector<ScheduleEntry> out;
    if (p == 1) {
        for (int g = 0; g < num_groups; ++g) out.push_back({g, 1.0, 0.0});
        return out;
    }
    if (p == 2) {
        for (int g = 0; g < num_groups; ++g) out.push_back({g, 0.5, 0.0});
        for (int g = num_groups - 1; g >= 0; --g) out.push_back({g, 0.5, 0.5});
        return out;
    }
    const auto inner = entries_for(p - 2, num_groups);
    const double u = recursion_constant(p);
    const double cuts[6] = {0.0, u, 2.0 * u, 1.0 - 2.0 * u, 1.0 - u, 1.0};
    for (int seg = 0; seg < 5; ++seg) {
        const double a = cuts[seg];
        const double len = cuts[seg + 1] - cuts[seg];
        for (const auto& e : inner) out.push_back({e.group, e.alpha * len, a + e.beta * len});
    }
    return out;
}

}  // namespace

PFSchedule build_schedule(int p, int num_groups, FormulaKind kind) {
    if (p != 1 && p != 2 && p != 4 && p != 6) throw Error(Errc::UnsupportedOrder, "order " + std::to_string(p) + " (supported: 1, 2, 4, 6)");
    if (num_groups < 1) throw Error(Errc::InvalidArgument, "need at least one group");
    PFSchedule s;
    s.p = p;
    s.num_groups = num_groups;
    s.kind = kind;
    s.entries = entries_for(p, num_groups);
    return s;
}

void apply_step(const TimeDependentHamiltonian& h, const PFSchedule& s, double t_start, double t_end, Matrix& block) {
    if (s.num_groups != h.num_groups())
        throw Error(Errc::ScheduleGroupMismatch,
                    "schedule has " + std::to_string(s.num_groups) + " groups, Hamiltonian " + std::to_string(h.num_groups()));
    h.check_time(t_start);
    h.check_time(t_end);
    const double delta = t_end - t_start;
    const bool generalized = s.kind == FormulaKind::Generalized;
    const std::vector<ScheduleEntry> merged_entries = generalized ? s.merged() : std::vector<ScheduleEntry>{};
    const std::vector<ScheduleEntry>& entries = generalized ? merged_entries : s.entries;
    const auto& terms = h.terms();
    for (const auto& e : entries) {
        const double a = t_start + e.beta * delta;
        const double b = t_start + (e.beta + e.alpha) * delta;
        const double mid = 0.5 * (a + b);
        for (int idx : h.groups()[static_cast<std::size_t>(e.group)]) {
            const LocalTerm& term = terms[static_cast<std::size_t>(idx)];
            const double theta = generalized ? term.coef.integral(a, b) : term.coef.value(mid) * (b - a);
            if (theta == 0.0) continue;
            h.action(idx).apply_left(exp_minus_i(term.eig, theta), block);
        }
    }
}

Matrix step_between(const TimeDependentHamiltonian& h, const PFSchedule& s, double t_start, double t_end) {
    Matrix m = Matrix::Identity(h.dim(), h.dim());
    apply_step(h, s, t_start, t_end, m);
    return m;
}

Matrix step(const TimeDependentHamiltonian& h, const PFSchedule& s, double t, double delta) {
    if (!(delta > 0.0)) throw Error(Errc::InvalidArgument, "step length must be positive");
    return step_between(h, s, t, t + delta);
}

Matrix evolve_block(const TimeDependentHamiltonian& h, const PFSchedule& s, long r, const Matrix& initial) {
    if (r < 1) throw Error(Errc::InvalidArgument, "Trotter number must be positive");
    const double T = h.total_time();
    Matrix m = initial;
    for (long i = 0; i < r; ++i) {
        const double t0 = T * static_cast<double>(i) / static_cast<double>(r);
        const double t1 = i + 1 == r ? T : T * static_cast<double>(i + 1) / static_cast<double>(r);
        apply_step(h, s, t0, t1, m);
    }
    return m;
}

Matrix evolve(const TimeDependentHamiltonian& h, const PFSchedule& s, long r) {
    return evolve_block(h, s, r, Matrix::Identity(h.dim(), h.dim()));
}

MeasuredError measured_error(const TimeDependentHamiltonian& h, const PFSchedule& s, long r, int sigma, ExactPropagator* prop) {
    const Matrix v = prop ? prop->evolve(0.0, h.total_time()) : exact_evolve(h, 0.0, h.total_time());
    const Matrix u = evolve(h, s, r);
    const SpectralSnapshot s0 = snapshot(h, 0.0, sigma);
    const Matrix diff = u - v;
    return {spectral_norm(diff), spectral_norm(diff * s0.low_vectors)};
}

double measured_low_energy_error(const TimeDependentHamiltonian& h, const PFSchedule& s, long r, int sigma, const Matrix& exact) {
    const SpectralSnapshot s0 = snapshot(h, 0.0, sigma);
    const Matrix u = evolve_block(h, s, r, s0.low_vectors);
    return spectral_norm(u - exact * s0.low_vectors);
}

void write_schedule_csv(std::ostream& os, const PFSchedule& s, bool merged) {
    const auto entries = merged ? s.merged() : s.entries;
    os << "# lowtrot schedule v1 p=" << s.p << " groups=" << s.num_groups << " kind=" << kind_name(s.kind)
       << " q=" << entries.size() << (merged ? " merged" : "") << "\n";
    os << "j,gamma_j,alpha_j,beta_j\n";
    os << std::scientific << std::setprecision(17);
    for (std::size_t j = 0; j < entries.size(); ++j)
        os << j + 1 << ',' << entries[j].group + 1 << ',' << entries[j].alpha << ',' << entries[j].beta << "\n";
}

}  // namespace lowtrot
