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

// Acceptance suite. One PASS/FAIL line per criterion; the exit code is 1 when
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "lowtrot/bench.hpp"
#include "lowtrot/bounds.hpp"
#include "lowtrot/commutator.hpp"
#include "lowtrot/error.hpp"
#include "lowtrot/hard_instance.hpp"
#include "lowtrot/io.hpp"
#include "lowtrot/models.hpp"
#include "lowtrot/product_formula.hpp"
#include "lowtrot/spectral.hpp"
#include "oracles.hpp"

namespace {

using namespace lowtrot;

constexpr FormulaKind kBoth[] = {FormulaKind::Generalized, FormulaKind::Standard};

struct Outcome {
    bool pass = true;
    std::string detail;

    void note(const std::string& s) {
        if (!detail.empty()) detail += "; ";
        detail += s;
    }
    void require(bool ok, const std::string& s) {
        if (!ok) pass = false;
        note(s + (ok ? "" : " [X]"));
    }
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// 1. Step error slopes on the driven 4-site chain.
Outcome order_conditions() {
    Outcome o;
    DrivenChainParams cp;
    cp.n_sites = 4;
    const auto h = driven_heisenberg_chain(cp);
    for (int p : {1, 2, 4})
        for (auto kind : kBoth) {
            const auto s = build_schedule(p, h.num_groups(), kind);
            std::vector<double> d, e;
            for (long r : {8L, 16L, 32L, 64L, 128L}) {
                const double delta = h.total_time() / static_cast<double>(r);
                d.push_back(delta);
                e.push_back(spectral_norm(step(h, s, 0.0, delta) - exact_evolve(h, 0.0, delta)));
            }
            const double slope = fit_loglog(d, e).slope;
            const double tol = p == 1 ? 0.25 : 0.35;
            o.require(std::abs(slope - (p + 1)) <= tol, kind_name(kind) + " p=" + std::to_string(p) + " slope=" + num(slope));
        }
    return o;
}

// 2. Every sweep point of the shipped config under its bounds.
Outcome bound_dominance(const BenchConfig& cfg) {
    Outcome o;
    RunOptions opts;
    opts.timing = false;
    const RunResult res = run_config(cfg, opts);
    o.require(res.violations == 0, "violations=" + std::to_string(res.violations));
    o.require(res.failures == 0, "failures=" + std::to_string(res.failures));
    o.note("rows=" + std::to_string(res.rows.size() + res.parity_rows.size()));
    for (const auto& line : res.summary)
        if (line.rfind("failure", 0) == 0) o.note(line);
    return o;
}

// 3. Low-energy error well below the full error on a ferromagnetic 6-site chain.
Outcome low_energy_improvement() {
    Outcome o;
    DrivenChainParams cp;
    cp.n_sites = 6;
    cp.total_time = 0.002;
    cp.coupling = -1.0;
    cp.anisotropy = 1.5;
    cp.field_z = -0.5;
    cp.field_x = 0.3;
    const auto h = driven_heisenberg_chain(cp);
    const int sigma = 4;
    const int p = 2;
    const auto prof = gap_profile(h, sigma);
    const BoundInputs in = bound_inputs(h, p, sigma, 0.5, prof);
    o.require(in.Delta <= 0.2 * in.g * in.N, "Delta=" + num(in.Delta) + " 0.2gN=" + num(0.2 * in.g * in.N));
    const long r = solve_trotter_number(in).r;
    const auto s = build_schedule(p, h.num_groups(), FormulaKind::Generalized);
    const MeasuredError m = measured_error(h, s, r, sigma);
    const double ratio = m.low_energy / m.full;
    o.require(ratio <= 0.5, "r=" + std::to_string(r) + " lowE=" + num(m.low_energy) + " full=" + num(m.full) + " ratio=" + num(ratio));
    return o;
}

// 4. Adiabatic single-spin leakage against T.
Outcome adiabatic_leakage() {
    Outcome o;
    std::vector<double> Ts, leaks;
    for (double T : {10.0, 20.0, 40.0, 80.0}) {
        const auto h = adiabatic_single_spin(T);
        const double leak = leakage(h, 1, T);
        const double jansen = jansen_leakage_bound(gap_profile(h, 1), 1, T).integral_form;
        Ts.push_back(T);
        leaks.push_back(leak);
        o.require(leak <= jansen, "T=" + num(T) + " leak=" + num(leak) + " jansen=" + num(jansen));
    }
    const double slope = fit_loglog(Ts, leaks).slope;
    o.require(slope >= -1.3 && slope <= -0.7, "slope=" + num(slope));
    return o;
}

// 5. Residual coefficients on the 3-site chain.
Outcome residual_coefficients_check() {
    Outcome o;
    DrivenChainParams cp;
    cp.n_sites = 3;
    const auto h = driven_heisenberg_chain(cp);
    const double T = h.total_time();
    PropagatorOptions popts;
    popts.tol = 1e-14;
    for (int p : {1, 2}) {
        const auto s = build_schedule(p, h.num_groups(), FormulaKind::Generalized);
        const BoundInputs in = bound_inputs(h, p, 1, 0.1, gap_profile(h, 1));
        const auto A = residual_coefficients(h, s, p);
        const double cutoff = 1e-8 * s.q() * in.g * in.N;
        for (int n = 0; n < p; ++n) {
            const double a = spectral_norm(A[static_cast<std::size_t>(n)]);
            o.require(a <= cutoff, "p=" + std::to_string(p) + " ||A_" + std::to_string(n) + "||=" + num(a));
        }
        std::vector<double> f;
        for (double div : {256.0, 512.0, 1024.0}) {
            const double delta = T / div;
            f.push_back(spectral_norm(step(h, s, 0.0, delta) - exact_evolve(h, 0.0, delta, popts)) / std::pow(delta, p + 1));
        }
        // Two Richardson levels for halving steps.
        const double r1 = 2 * f[1] - f[0];
        const double r2 = 2 * f[2] - f[1];
        const double extrap = (4 * r2 - r1) / 3;
        const double target = spectral_norm(A[static_cast<std::size_t>(p)]) / (p + 1);
        o.require(std::abs(extrap - target) <= 0.2 * target, "p=" + std::to_string(p) + " extrapolated=" + num(extrap) + " ||A_p||/(p+1)=" + num(target));
    }
    return o;
}

// 6. Operator leakage and projected commutator inequalities on random chains.
Outcome projection_lemmas() {
    Outcome o;
    std::mt19937_64 rng(20261014);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int leak_viol = 0, comm_viol = 0, comm_checked = 0;
    double worst_leak = 0.0;
    for (int inst = 0; inst < 100; ++inst) {
        DrivenChainParams cp;
        cp.n_sites = 4;
        cp.seed = rng();
        cp.total_time = 0.5 + 2.0 * unit(rng);
        const auto h = driven_heisenberg_chain(cp);
        const double t = cp.total_time * unit(rng);

        const bool two_site = unit(rng) < 0.5;
        const int site = static_cast<int>(unit(rng) * (two_site ? 3 : 4));
        std::vector<int> support{site};
        if (two_site) support.push_back(site + 1);
        const Matrix a_local = oracle::random_hermitian(rng, 1 << support.size(), 0.5 + 1.5 * unit(rng));
        const Matrix A = oracle::embed(a_local, support, 4);

        const RealVector ev = hermitian_eig(h.evaluate(t)).values;
        const double spread = ev(ev.size() - 1) - ev(0);
        const double lo = ev(0) + spread * unit(rng);
        const double hi = lo + spread * unit(rng);
        const auto lc = leak_operator_check(h, t, A, lo, hi);
        if (lc.measured > lc.bound) ++leak_viol;
        if (lc.bound > 0.0) worst_leak = std::max(worst_leak, lc.measured / lc.bound);

        const int depth = 1 + static_cast<int>(unit(rng) * 3);
        for (int sigma = 1 + static_cast<int>(unit(rng) * 8); sigma < 16; ++sigma) {
            try {
                const auto pc = projected_commutator_norms(h, t, sigma, depth);
                // Frustration-free ground energies of zero come back as roundoff.
                if (pc.projected > pc.projected_bound + 1e-12) ++comm_viol;
                if (pc.unprojected > pc.unprojected_bound + 1e-12) ++comm_viol;
                ++comm_checked;
                break;
            } catch (const Error& e) {
                if (e.code() != Errc::GapCollapse) throw;
            }
        }
    }
    o.require(leak_viol == 0, "LeakOp violations=" + std::to_string(leak_viol) + " worst measured/bound=" + num(worst_leak));
    o.require(comm_viol == 0 && comm_checked == 100,
              "projected commutator violations=" + std::to_string(comm_viol) + " checked=" + std::to_string(comm_checked));
    return o;
}

// 7. Parity hard instance.
Outcome parity_instance() {
    Outcome o;
    std::mt19937_64 rng(7);
    const double T = 3.0;
    const CoefficientFn schedules[] = {parse_coefficient("1", T), parse_coefficient("0.8 + 0.5*cos(0.7*pi*s)", T)};
    double worst_amp = 0.0, worst_orth = 0.0;
    for (int n = 1; n <= 10; ++n)
        for (const auto& sched : schedules) {
            std::vector<int> x;
            for (int i = 0; i < n; ++i) x.push_back(static_cast<int>(rng() & 1U));
            const auto inst = build_parity(x, 4, sched, T);
            const auto c = amplitude_check(inst);
            worst_amp = std::max(worst_amp, std::abs(c.measured - c.predicted));
            worst_orth = std::max(worst_orth, c.orthogonal);
        }
    o.require(worst_amp <= 1e-8, "max |measured - predicted|=" + num(worst_amp));
    o.require(worst_orth <= 1e-10, "max orthogonal=" + num(worst_orth));
    return o;
}

// 8. Constant coefficients reproduce the time-independent formulas.
Outcome time_independent() {
    Outcome o;
    DrivenChainParams cp;
    cp.n_sites = 4;
    cp.drive_depth = 0.0;
    const auto h = driven_heisenberg_chain(cp);
    std::vector<Matrix> groups;
    for (int g = 0; g < h.num_groups(); ++g) groups.push_back(h.evaluate_group(g, 0.0));
    const long r = 5;
    double worst = 0.0;
    for (int p : {1, 2, 4, 6}) {
        const Matrix one = oracle::suzuki(groups, p, h.total_time() / static_cast<double>(r));
        Matrix ref = Matrix::Identity(h.dim(), h.dim());
        for (long i = 0; i < r; ++i) ref = one * ref;
        for (auto kind : kBoth) worst = std::max(worst, spectral_norm(evolve(h, build_schedule(p, h.num_groups(), kind), r) - ref));
    }
    o.require(worst <= 1e-12, "max ||U_p - Suzuki||=" + num(worst));
    double leak = 0.0;
    for (int p : {1, 2, 4}) {
        const BoundInputs in = bound_inputs(h, p, 2, 0.1, gap_profile(h, 2));
        for (long rr : {10L, 1000L, 100000L}) leak = std::max(leak, long_time_bound(in, rr).leakage_sum);
    }
    o.require(leak == 0.0, "leakage term=" + num(leak));
    return o;
}

// 9. Solver end to end.
Outcome solver(const BenchConfig& cfg) {
    Outcome o;
    int scenarios = 0;
    for (const auto& sc : cfg.scenarios) {
        if (!sc.solve) continue;
        ++scenarios;
        for (double T : sc.T) {
            const auto h = scenario_hamiltonian(sc, T);
            const auto prof = gap_profile(h, sc.sigma);
            for (int p : sc.p) {
                BoundInputs in = bound_inputs(h, p, sc.sigma, sc.eps, prof);
                const long r1 = solve_trotter_number(in).r;
                const auto s = build_schedule(p, h.num_groups(), FormulaKind::Generalized);
                const double err = measured_error(h, s, r1, sc.sigma).low_energy;
                const std::string tag = sc.name + " p=" + std::to_string(p);
                o.require(err <= sc.eps, tag + " r=" + std::to_string(r1) + " measured=" + num(err));
                in.eps = sc.eps / std::pow(2.0, p);
                const long r2 = solve_trotter_number(in).r;
                const double ratio = static_cast<double>(r2) / static_cast<double>(r1);
                o.require(ratio >= 1.5 && ratio <= 2.5, tag + " r(eps/2^p)/r(eps)=" + num(ratio));
            }
        }
    }
    o.require(scenarios > 0, "solve scenarios=" + std::to_string(scenarios));
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    std::string config_path;
    std::vector<int> only;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--config") == 0 && i + 1 < argc) {
            config_path = argv[++i];
        } else if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
            only.push_back(std::stoi(argv[++i]));
        } else {
            std::fprintf(stderr, "usage: %s --config <default.json> [--only <criterion>]...\n", argv[0]);
            return 2;
        }
    }
    if (config_path.empty()) {
        std::fprintf(stderr, "missing --config\n");
        return 2;
    }

    BenchConfig cfg;
    try {
        cfg = load_config(config_path);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    }

    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"order conditions", order_conditions},
        {"bound dominance", [&] { return bound_dominance(cfg); }},
        {"low-energy improvement", low_energy_improvement},
        {"adiabatic leakage scaling", adiabatic_leakage},
        {"residual coefficients", residual_coefficients_check},
        {"projection inequalities", projection_lemmas},
        {"parity hard instance", parity_instance},
        {"time-independent degeneration", time_independent},
        {"trotter-number solver", [&] { return solver(cfg); }},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.note(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %d %s (%.1fs): %s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first, secs, o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    return failed == 0 ? 0 : 1;
}
