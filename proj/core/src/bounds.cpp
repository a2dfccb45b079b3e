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

#include "lowtrot/bounds.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>

#include "lowtrot/commutator.hpp"
#include "lowtrot/error.hpp"
#include "lowtrot/product_formula.hpp"

namespace lowtrot {

namespace {

constexpr long kMaxTrotterNumber = 1L << 30;

}  // namespace

BoundInputs bound_inputs(const TimeDependentHamiltonian& h, int p, int sigma, double eps, const GapProfile& profile) {
    if (!(eps > 0.0 && eps < 1.0)) throw Error(Errc::InvalidArgument, "eps must lie in (0, 1)");
    if (profile.sigma != sigma) throw Error(Errc::InvalidArgument, "profile was computed for a different sigma");
    BoundInputs in;
    in.N = h.n_sites();
    in.k = h.locality();
    in.p = p;
    in.Gamma = h.num_groups();
    in.q = schedule_length(p, in.Gamma);
    in.g = strength_params(h, p).g;
    in.Delta = profile.delta_max;
    in.T = h.total_time();
    in.eps = eps;
    in.sigma = sigma;
    in.gap_min = profile.gap_min;
    in.dH = profile.dH_max;
    in.d2H = profile.d2H_max;
    return in;
}

BoundInputs full_space_inputs(const BoundInputs& in) {
    BoundInputs out = in;
    out.Delta = in.g * in.N;
    out.sigma = 1 << in.N;
    out.gap_min = std::numeric_limits<double>::infinity();
    out.dH = 0.0;
    out.d2H = 0.0;
    return out;
}

bool is_full_space(const BoundInputs& in) { return std::isinf(in.gap_min); }

DeltaPrime delta_prime_and_p0(int N, int k, double g, long r, double eps, double Delta, int p) {
    DeltaPrime dp;
    const double arg = 6.0 * N * static_cast<double>(r) / (k * eps);
    dp.log_term = std::log(std::max(arg, 1.0));
    dp.Delta_prime = Delta + 2.0 * g * k * dp.log_term;
    dp.p0 = std::max(static_cast<int>(std::ceil(dp.log_term)) - 1, p);
    return dp;
}

double remainder_bound(int N, int k, double g, int q, int p0, double delta) {
    return 3.0 * std::pow(2.0 * q * (p0 + 1) * k * g * delta, p0 + 1) * N / (2.0 * k);
}

bool smallness_holds(const BoundInputs& in, long r) {
    const DeltaPrime dp = delta_prime_and_p0(in.N, in.k, in.g, r, in.eps, in.Delta, in.p);
    const double delta = in.T / static_cast<double>(r);
    return 2.0 * in.q * (dp.p0 + 1) * in.k * in.g * delta <= 1.0 / (2.0 * std::numbers::e);
}

long smallest_admissible_r(const BoundInputs& in) {
    long hi = 1;
    long lo = 0;
    while (!smallness_holds(in, hi)) {
        lo = hi;
        hi *= 2;
        if (hi > kMaxTrotterNumber) throw Error(Errc::NoSolution, "smallness condition unreachable below 2^30");
    }
    while (hi - lo > 1) {
        const long mid = lo + (hi - lo) / 2;
        if (smallness_holds(in, mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

ShortTimeBound short_time_bound(const BoundInputs& in, long r, SmallStepPolicy policy) {
    if (r < 1) throw Error(Errc::InvalidArgument, "Trotter number must be positive");
    ShortTimeBound st;
    st.r_requested = r;
    st.smallness_ok = smallness_holds(in, r);
    st.r = r;
    if (!st.smallness_ok && policy == SmallStepPolicy::Raise) {
        st.r = std::max(r, smallest_admissible_r(in));
        while (!smallness_holds(in, st.r)) ++st.r;
    }
    const double rr = static_cast<double>(st.r);
    st.delta = in.T / rr;
    st.dp = delta_prime_and_p0(in.N, in.k, in.g, st.r, in.eps, in.Delta, in.p);
    const double step_term =
        3.0 * std::pow(in.k * st.dp.p0 * in.g, in.p) * st.dp.Delta_prime * std::pow(2.0 * in.q * st.delta, in.p + 1);
    st.per_step = in.eps / (2.0 * rr) + step_term;
    st.step_sum = rr * step_term;
    st.slack = in.eps / 2.0;
    st.sum = rr * st.per_step;
    const double lambda = 1.0 / (2.0 * in.g * in.k);
    st.high_energy_actual = rr * 1.5 * in.N / in.k * std::exp(-lambda * (st.dp.Delta_prime - in.Delta));
    st.remainder_actual = rr * remainder_bound(in.N, in.k, in.g, in.q, st.dp.p0, st.delta);
    return st;
}

double uniform_leakage_factor(int sigma, double gap, double dH, double d2H) {
    if (std::isinf(gap)) return 0.0;
    const double s = sigma;
    return 2.0 * s * dH / (gap * gap) + 7.0 * s * std::sqrt(s) * dH * dH / (gap * gap * gap) + s * d2H / (gap * gap);
}

JansenBound jansen_leakage_bound(const GapProfile& profile, int sigma, double T) {
    JansenBound jb;
    const auto& rows = profile.rows;
    if (rows.size() < 2) throw Error(Errc::InvalidArgument, "profile too short");
    if (std::isinf(rows.front().gap)) return jb;
    const double s = sigma;
    auto integrand = [&](const GapProfileRow& r) {
        return s * r.d2H / (r.gap * r.gap) + 7.0 * s * std::sqrt(s) * r.dH * r.dH / (r.gap * r.gap * r.gap);
    };
    const std::size_t intervals = rows.size() - 1;
    const double h = 1.0 / static_cast<double>(intervals);
    double integral = 0.0;
    std::size_t simpson_end = intervals;
    if (intervals % 2 == 1) simpson_end = intervals >= 3 ? intervals - 3 : 0;
    for (std::size_t i = 0; i + 2 <= simpson_end; i += 2)
        integral += h / 3.0 * (integrand(rows[i]) + 4.0 * integrand(rows[i + 1]) + integrand(rows[i + 2]));
    if (intervals % 2 == 1) {
        if (intervals >= 3) {
            const std::size_t i = intervals - 3;
            integral += 3.0 * h / 8.0 *
                        (integrand(rows[i]) + 3.0 * integrand(rows[i + 1]) + 3.0 * integrand(rows[i + 2]) + integrand(rows[i + 3]));
        } else {
            integral += 0.5 * h * (integrand(rows[0]) + integrand(rows[1]));
        }
    }
    const auto& a = rows.front();
    const auto& b = rows.back();
    jb.integral_form = (s * a.dH / (a.gap * a.gap) + s * b.dH / (b.gap * b.gap) + integral) / T;
    jb.uniform_form = uniform_leakage_factor(sigma, profile.gap_min, profile.dH_max, profile.d2H_max) / T;
    return jb;
}

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::StepDominated: return "step-dominated";
        case Regime::LeakageDominated: return "leakage-dominated";
        case Regime::Adiabatic: return "adiabatic";
    }
    return "?";
}

bool adiabatic_regime(const BoundInputs& in, double c) {
    if (is_full_space(in) || !(in.Delta > 0.0)) return false;
    const double s = in.sigma;
    const double gam = in.gap_min;
    const double factor = s * in.dH / (gam * gam) + s * std::sqrt(s) * in.dH * in.dH / (gam * gam * gam) + s * in.d2H / (gam * gam);
    return in.T >= c * (in.g * in.N / in.Delta) * factor;
}

BoundReport long_time_bound(const BoundInputs& in, long r, SolveMode mode, SmallStepPolicy policy, double adiabatic_constant) {
    const ShortTimeBound st = short_time_bound(in, r, policy);
    BoundReport rep;
    rep.inputs = in;
    rep.r_requested = st.r_requested;
    rep.r = st.r;
    rep.delta = st.delta;
    rep.Delta_prime = st.dp.Delta_prime;
    rep.p0 = st.dp.p0;
    rep.smallness_ok = smallness_holds(in, st.r);
    rep.short_time_sum = st.step_sum;
    rep.remainder_term = st.slack;

    double leak = 0.0;
    const double factor = uniform_leakage_factor(in.sigma, in.gap_min, in.dH, in.d2H);
    if (factor > 0.0) {
        const double rr = static_cast<double>(st.r);
        const double c_step = 3.0 * std::pow(static_cast<double>(in.q) / in.Gamma, in.p + 1) * in.p / (in.p + 1.0);
        leak = c_step * alpha_com_bound(in.N, in.k, in.p, in.g, in.Gamma) * std::pow(in.T / rr, in.p) * (1.0 + std::log(rr)) * factor;
    }
    if (mode == SolveMode::Adiabatic && adiabatic_regime(in, adiabatic_constant)) {
        rep.regime = Regime::Adiabatic;
        rep.leakage_dropped = leak;
        rep.leakage_sum = 0.0;
    } else {
        rep.regime = rep.short_time_sum >= leak ? Regime::StepDominated : Regime::LeakageDominated;
        rep.leakage_sum = leak;
    }
    rep.total = rep.short_time_sum + rep.leakage_sum + rep.remainder_term;
    return rep;
}

BoundReport solve_trotter_number(const BoundInputs& in, SolveMode mode, double adiabatic_constant) {
    auto feasible = [&](long r) {
        return smallness_holds(in, r) &&
               long_time_bound(in, r, mode, SmallStepPolicy::EvaluateAsIs, adiabatic_constant).total <= in.eps;
    };
    long hi = smallest_admissible_r(in);
    long lo = hi - 1;
    while (!feasible(hi)) {
        lo = hi;
        if (hi > kMaxTrotterNumber / 2) throw Error(Errc::NoSolution, "no Trotter number below 2^30 meets eps");
        hi *= 2;
    }
    while (hi - lo > 1) {
        const long mid = lo + (hi - lo) / 2;
        if (feasible(mid))
            hi = mid;
        else
            lo = mid;
    }
    return long_time_bound(in, hi, mode, SmallStepPolicy::EvaluateAsIs, adiabatic_constant);
}

void write_bound_report_csv_header(std::ostream& os) {
    os << "N,k,p,Gamma,q,g,Delta,T,eps,sigma,gap_min,dH,d2H,r_requested,r,delta,Delta_prime,p0,smallness_ok,"
          "short_time_sum,leakage_sum,leakage_dropped,remainder_term,total,regime\n";
}

void write_bound_report_csv_row(std::ostream& os, const BoundReport& rep) {
    const auto& in = rep.inputs;
    os << std::scientific << std::setprecision(10);
    os << in.N << ',' << in.k << ',' << in.p << ',' << in.Gamma << ',' << in.q << ',' << in.g << ',' << in.Delta << ',' << in.T << ','
       << in.eps << ',' << in.sigma << ',' << in.gap_min << ',' << in.dH << ',' << in.d2H << ',' << rep.r_requested << ',' << rep.r
       << ',' << rep.delta << ',' << rep.Delta_prime << ',' << rep.p0 << ',' << (rep.smallness_ok ? 1 : 0) << ','
       << rep.short_time_sum << ',' << rep.leakage_sum << ',' << rep.leakage_dropped << ',' << rep.remainder_term << ','
       << rep.total << ',' << regime_name(rep.regime) << "\n";
}

GClass g_for_class(InteractionClass cls, double alpha, int D, const TimeDependentHamiltonian* instance) {
    GClass out;
    if (cls == InteractionClass::Geometric) {
        out.label = "O(1)";
    } else {
        if (D < 1) throw Error(Errc::InvalidArgument, "dimension must be positive");
        if (alpha < D)
            out.label = "O(N^(1-alpha/D))";
        else if (alpha == D)
            out.label = "O(log N)";
        else
            out.label = "O(1)";
    }
    if (instance) out.exact = induced_one_norm(*instance);
    return out;
}

}  // namespace lowtrot
