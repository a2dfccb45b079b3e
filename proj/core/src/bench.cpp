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

#include "lowtrot/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <locale>
#include <map>
#include <random>
#include <sstream>
#include <thread>
#include <tuple>

#include "lowtrot/bounds.hpp"
#include "lowtrot/commutator.hpp"
#include "lowtrot/error.hpp"
#include "lowtrot/hard_instance.hpp"
#include "lowtrot/product_formula.hpp"
#include "lowtrot/spectral.hpp"

namespace lowtrot {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr long kMaxMeasuredR = 1L << 21;

std::string fmt(double v) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::scientific << std::setprecision(10) << v;
    return os.str();
}

struct Task {
    const Scenario* sc = nullptr;
    int scenario_index = 0;
    double T = 1.0;
    int n_bits = 0;  // parity tasks
};

struct TaskResult {
    std::vector<ResultRow> rows;
    std::vector<ParityRow> parity_rows;
    std::vector<std::string> failures;
};

void run_parity_task(const Task& task, const RunOptions&, TaskResult& out) {
    const Scenario& sc = *task.sc;
    std::mt19937_64 rng(sc.seed.value_or(0) + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(task.n_bits));
    std::vector<int> x(static_cast<std::size_t>(task.n_bits));
    for (auto& b : x) b = static_cast<int>(rng() & 1U);
    for (const auto& sched : sc.schedules) {
        const ParityInstance inst = build_parity(x, sc.sparsity, parse_coefficient(sched, task.T), task.T);
        const AmplitudeCheck c = amplitude_check(inst);
        ParityRow row;
        row.scenario = sc.name;
        row.n_bits = task.n_bits;
        row.d = sc.sparsity;
        row.schedule = sched;
        row.integral = inst.integral();
        row.predicted = c.predicted;
        row.measured = c.measured;
        row.orthogonal = c.orthogonal;
        row.pass = std::abs(c.measured - c.predicted) <= 1e-8 && c.orthogonal <= 1e-10;
        out.parity_rows.push_back(row);
    }
}

void run_chain_task(const Task& task, const RunOptions& opts, TaskResult& out) {
    const Scenario& sc = *task.sc;
    const double T = task.T;
    const TimeDependentHamiltonian h = scenario_hamiltonian(sc, T);
    if (sc.sigma > h.dim()) throw Error(Errc::InvalidArgument, "sigma exceeds the Hilbert space dimension");
    const bool full_space = sc.sigma == h.dim();
    const GapProfile prof = gap_profile(h, sc.sigma);
    PropagatorOptions popts;
    popts.tol = opts.tol;
    ExactPropagator prop(h, popts);
    const Matrix v = prop.evolve(0.0, T);
    const SpectralSnapshot s0 = snapshot(h, 0.0, sc.sigma);
    const Matrix v_low = v * s0.low_vectors;
    const double leak = full_space ? 0.0 : leakage(h, sc.sigma, T, &prop);
    const double jansen = full_space ? 0.0 : jansen_leakage_bound(prof, sc.sigma, T).integral_form;

    for (int p : sc.p) {
        const double alpha = alpha_com(h, p, 0.0);
        const BoundInputs in = bound_inputs(h, p, sc.sigma, sc.eps, prof);
        const BoundInputs fin = full_space_inputs(in);
        for (const auto& kind_name_str : sc.kinds) {
            const PFSchedule sched = build_schedule(p, h.num_groups(), parse_kind(kind_name_str));
            std::vector<std::pair<long, std::string>> points;
            for (long r : sc.r) points.emplace_back(r, "sweep");
            if (sc.solve) {
                const long rs = solve_trotter_number(in).r;
                if (rs > kMaxMeasuredR) {
                    out.failures.push_back("solver Trotter number " + std::to_string(rs) + " too large to measure (T=" + fmt(T) +
                                           ", p=" + std::to_string(p) + ")");
                } else {
                    points.emplace_back(rs, "solve");
                }
            }
            for (const auto& [r, point] : points) {
                const auto start = std::chrono::steady_clock::now();
                ResultRow row;
                row.scenario = sc.name;
                row.kind = kind_name_str;
                row.p = p;
                row.r = r;
                row.delta = T / static_cast<double>(r);
                row.T = T;
                row.sigma = sc.sigma;
                row.point = point;
                const bool form_full = static_cast<double>(h.dim()) * static_cast<double>(r) <= opts.full_error_budget;
                if (form_full) {
                    const Matrix u = evolve(h, sched, r);
                    row.full_error = spectral_norm(u - v);
                    row.lowE_error = spectral_norm(u * s0.low_vectors - v_low);
                } else {
                    row.full_error = kNaN;
                    row.lowE_error = spectral_norm(evolve_block(h, sched, r, s0.low_vectors) - v_low);
                }
                row.leakage_measured = leak;
                row.leakage_bound = jansen;
                row.long_time_bound = long_time_bound(fin, r).total;
                row.lowE_bound = long_time_bound(in, r).total;
                row.alpha_com = alpha;
                row.smallness_ok = smallness_holds(in, r);
                bool pass = row.lowE_error <= row.lowE_bound;
                if (form_full) pass = pass && row.full_error <= row.long_time_bound && row.lowE_error <= row.full_error + 1e-12;
                if (!full_space) pass = pass && leak <= jansen;
                if (point == "solve") pass = pass && row.lowE_error <= sc.eps;
                row.pass = pass;
                if (opts.timing) row.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                out.rows.push_back(row);
            }
        }
    }
}

void add_slope(std::vector<std::string>& summary, const std::string& prefix, const std::vector<ResultRow>& rows, const std::string& x,
               const std::string& y) {
    try {
        const SlopeFit f = fit_slope(rows, x, y);
        summary.push_back(prefix + " x=" + x + " y=" + y + " slope=" + fmt(f.slope) + " intercept=" + fmt(f.intercept) +
                          " r2=" + fmt(f.r2));
    } catch (const Error& e) {
        summary.push_back(prefix + " x=" + x + " y=" + y + " skipped=" + std::string(errc_name(e.code())));
    }
}

}  // namespace

SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw Error(Errc::InvalidArgument, "x and y differ in length");
    if (x.size() < 3) throw Error(Errc::InsufficientData, "need at least 3 points, got " + std::to_string(x.size()));
    const std::size_t n = x.size();
    double sx = 0.0, sy = 0.0;
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw Error(Errc::NonPositiveValue, "log-log fit needs positive values");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
        sx += lx[i];
        sy += ly[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    if (sxx == 0.0) throw Error(Errc::InsufficientData, "all x values coincide");
    SlopeFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return f;
}

double row_field(const ResultRow& row, const std::string& field) {
    static const std::map<std::string, std::function<double(const ResultRow&)>> fields = {
        {"r", [](const ResultRow& r) { return static_cast<double>(r.r); }},
        {"delta", [](const ResultRow& r) { return r.delta; }},
        {"T", [](const ResultRow& r) { return r.T; }},
        {"sigma", [](const ResultRow& r) { return static_cast<double>(r.sigma); }},
        {"p", [](const ResultRow& r) { return static_cast<double>(r.p); }},
        {"full_error", [](const ResultRow& r) { return r.full_error; }},
        {"lowE_error", [](const ResultRow& r) { return r.lowE_error; }},
        {"leakage_measured", [](const ResultRow& r) { return r.leakage_measured; }},
        {"leakage_bound", [](const ResultRow& r) { return r.leakage_bound; }},
        {"long_time_bound", [](const ResultRow& r) { return r.long_time_bound; }},
        {"lowE_bound", [](const ResultRow& r) { return r.lowE_bound; }},
        {"alpha_com", [](const ResultRow& r) { return r.alpha_com; }},
        {"runtime_seconds", [](const ResultRow& r) { return r.runtime_seconds; }},
    };
    const auto it = fields.find(field);
    if (it == fields.end()) throw Error(Errc::InvalidArgument, "unknown field '" + field + "'");
    return it->second(row);
}

SlopeFit fit_slope(const std::vector<ResultRow>& rows, const std::string& x_field, const std::string& y_field) {
    std::vector<double> x, y;
    for (const auto& r : rows) {
        x.push_back(row_field(r, x_field));
        y.push_back(row_field(r, y_field));
    }
    return fit_loglog(x, y);
}

RunResult run_config(const BenchConfig& cfg, const RunOptions& opts) {
    std::vector<Scenario> scenarios;
    for (const auto& sc : cfg.scenarios) {
        if (!opts.scenario_filter.empty() && sc.name.find(opts.scenario_filter) == std::string::npos) continue;
        Scenario copy = sc;
        if (opts.seed) copy.seed = *opts.seed;
        scenarios.push_back(std::move(copy));
    }

    std::vector<Task> tasks;
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
        const Scenario& sc = scenarios[i];
        if (sc.hamiltonian.builtin == "parity-instance") {
            const std::vector<double> times = sc.T.empty() ? std::vector<double>{1.0} : sc.T;
            for (double T : times)
                for (int n : sc.n_bits) tasks.push_back({&sc, static_cast<int>(i), T, n});
        } else {
            for (double T : sc.T) tasks.push_back({&sc, static_cast<int>(i), T, 0});
        }
    }

    std::vector<TaskResult> results(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t t = next++; t < tasks.size(); t = next++) {
            const Task& task = tasks[t];
            try {
                if (task.sc->hamiltonian.builtin == "parity-instance")
                    run_parity_task(task, opts, results[t]);
                else
                    run_chain_task(task, opts, results[t]);
            } catch (const std::exception& e) {
                results[t].failures.push_back(e.what());
            }
        }
    };
    const int jobs = std::max(1, std::min<int>(opts.jobs, static_cast<int>(std::max<std::size_t>(tasks.size(), 1))));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    RunResult out;
    std::vector<int> scenario_violations(scenarios.size(), 0);
    std::vector<int> scenario_rows(scenarios.size(), 0);
    std::vector<std::vector<std::string>> scenario_failures(scenarios.size());
    for (std::size_t t = 0; t < tasks.size(); ++t) {
        const int si = tasks[t].scenario_index;
        for (const auto& row : results[t].rows) {
            out.rows.push_back(row);
            ++scenario_rows[static_cast<std::size_t>(si)];
            if (!row.pass) ++scenario_violations[static_cast<std::size_t>(si)];
        }
        for (const auto& row : results[t].parity_rows) {
            out.parity_rows.push_back(row);
            ++scenario_rows[static_cast<std::size_t>(si)];
            if (!row.pass) ++scenario_violations[static_cast<std::size_t>(si)];
        }
        for (const auto& f : results[t].failures) scenario_failures[static_cast<std::size_t>(si)].push_back(f);
    }

    for (std::size_t i = 0; i < scenarios.size(); ++i) {
        const Scenario& sc = scenarios[i];
        std::vector<ResultRow> mine;
        for (const auto& r : out.rows)
            if (r.scenario == sc.name) mine.push_back(r);

        // Error against r for each (T, kind, p).
        std::map<std::tuple<double, std::string, int>, std::vector<ResultRow>> by_series;
        for (const auto& r : mine)
            if (r.point == "sweep") by_series[{r.T, r.kind, r.p}].push_back(r);
        for (const auto& [key, rows] : by_series) {
            if (rows.size() < 3) continue;
            const std::string prefix = "slope scenario=" + sc.name + " kind=" + std::get<1>(key) + " p=" + std::to_string(std::get<2>(key)) +
                                       " T=" + fmt(std::get<0>(key));
            add_slope(out.summary, prefix, rows, "r", "full_error");
            add_slope(out.summary, prefix, rows, "r", "lowE_error");
        }
        // Leakage against T, one value per T.
        std::map<double, ResultRow> by_T;
        for (const auto& r : mine) by_T.emplace(r.T, r);
        if (by_T.size() >= 3) {
            std::vector<ResultRow> rows;
            for (const auto& [_, r] : by_T) rows.push_back(r);
            if (rows.front().leakage_bound > 0.0) add_slope(out.summary, "slope scenario=" + sc.name, rows, "T", "leakage_measured");
        }
        for (const auto& f : scenario_failures[i]) out.summary.push_back("failure scenario=" + sc.name + " error=" + f);
        const int v = scenario_violations[i];
        const bool failed = !scenario_failures[i].empty();
        if (scenario_rows[i] == 0 && !failed) continue;
        out.summary.push_back("dominance scenario=" + sc.name + " rows=" + std::to_string(scenario_rows[i]) +
                              " violations=" + std::to_string(v) + " verdict=" + (v == 0 && !failed ? "PASS" : "FAIL"));
        out.violations += v;
        if (failed) ++out.failures;
    }
    return out;
}

void write_results_csv(std::ostream& os, const RunResult& result) {
    os << "# lowtrot bench v1\n";
    os << "scenario,kind,p,r,delta,T,sigma,full_error,lowE_error,leakage_measured,leakage_bound,long_time_bound,lowE_bound,"
          "alpha_com,smallness_ok,point,verdict,runtime_seconds\n";
    for (const auto& r : result.rows) {
        os << r.scenario << ',' << r.kind << ',' << r.p << ',' << r.r << ',' << fmt(r.delta) << ',' << fmt(r.T) << ',' << r.sigma << ','
           << fmt(r.full_error) << ',' << fmt(r.lowE_error) << ',' << fmt(r.leakage_measured) << ',' << fmt(r.leakage_bound) << ','
           << fmt(r.long_time_bound) << ',' << fmt(r.lowE_bound) << ',' << fmt(r.alpha_com) << ',' << (r.smallness_ok ? 1 : 0) << ','
           << r.point << ',' << (r.pass ? "PASS" : "FAIL") << ',' << fmt(r.runtime_seconds) << "\n";
    }
    for (const auto& line : result.summary) os << "# " << line << "\n";
}

void write_parity_csv(std::ostream& os, const RunResult& result) {
    os << "# lowtrot parity v1\n";
    os << "scenario,schedule,N_bits,d,integral,predicted,measured,orthogonal,verdict\n";
    for (const auto& r : result.parity_rows) {
        os << r.scenario << ",\"" << r.schedule << "\"," << r.n_bits << ',' << r.d << ',' << fmt(r.integral) << ',' << fmt(r.predicted)
           << ',' << fmt(r.measured) << ',' << fmt(r.orthogonal) << ',' << (r.pass ? "PASS" : "FAIL") << "\n";
    }
}

int run(const std::string& config_path, const std::string& output_path, const RunOptions& opts) {
    const BenchConfig cfg = load_config(config_path);
    const RunResult result = run_config(cfg, opts);
    {
        std::ofstream out(output_path, std::ios::binary);
        if (!out) throw Error(Errc::InvalidArgument, "cannot write '" + output_path + "'");
        write_results_csv(out, result);
    }
    if (!result.parity_rows.empty()) {
        std::ofstream out(output_path + ".parity.csv", std::ios::binary);
        if (!out) throw Error(Errc::InvalidArgument, "cannot write '" + output_path + ".parity.csv'");
        write_parity_csv(out, result);
    }
    return result.exit_code();
}

}  // namespace lowtrot
