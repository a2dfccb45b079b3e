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

#include "lowtrot/spectral.hpp"

#include <cmath>
#include <iomanip>
#include <limits>

#include <Eigen/Eigenvalues>

#include "lowtrot/error.hpp"

namespace lowtrot {

SpectralSnapshot snapshot(const Matrix& h, double t, int sigma, double gap_floor, bool throw_on_collapse) {
    const Eigen::Index dim = h.rows();
    if (sigma < 1 || sigma > dim) throw Error(Errc::InvalidArgument, "sigma must be in [1, dim]");
    HermitianEig eig = hermitian_eig(h);
    SpectralSnapshot snap;
    snap.t = t;
    snap.sigma = sigma;
    snap.eigenvalues = eig.values;
    snap.low_vectors = eig.vectors.leftCols(sigma);
    snap.projector = snap.low_vectors * snap.low_vectors.adjoint();
    snap.delta = eig.values(sigma - 1);
    snap.gap = sigma == dim ? std::numeric_limits<double>::infinity() : eig.values(sigma) - eig.values(sigma - 1);
    if (snap.gap < gap_floor) {
        snap.collapsed = true;
        if (throw_on_collapse)
            throw Error(Errc::GapCollapse, "gap " + std::to_string(snap.gap) + " at t = " + std::to_string(t) + " for sigma = " + std::to_string(sigma));
    }
    return snap;
}

SpectralSnapshot snapshot(const TimeDependentHamiltonian& h, double t, int sigma, double gap_floor, bool throw_on_collapse) {
    return snapshot(h.evaluate(t), t, sigma, gap_floor, throw_on_collapse);
}

double spectral_half_width(const Matrix& h) {
    if (h.size() == 0) return 0.0;
    Matrix sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return 0.5 * (ev(ev.size() - 1) - ev(0));
}

namespace {

Matrix magnus4_run(const MatrixFunction& h, double t0, double t1, long n) {
    static const double kC1 = 0.5 - std::sqrt(3.0) / 6.0;
    static const double kC2 = 0.5 + std::sqrt(3.0) / 6.0;
    static const double kK = std::sqrt(3.0) / 12.0;
    const double dt = (t1 - t0) / static_cast<double>(n);
    Matrix u;
    for (long k = 0; k < n; ++k) {
        const double a = t0 + dt * static_cast<double>(k);
        const Matrix h1 = h(a + kC1 * dt);
        const Matrix h2 = h(a + kC2 * dt);
        const Matrix x = (0.5 * dt) * (h1 + h2) - cplx(0.0, kK * dt * dt) * (h2 * h1 - h1 * h2);
        const Matrix step = exp_minus_i(x);
        if (k == 0)
            u = step;
        else
            u = step * u;
    }
    return u;
}

}  // namespace

Matrix exact_evolve(const MatrixFunction& h, double t0, double t1, const PropagatorOptions& opts, long* steps_used) {
    const Matrix hm = h(0.5 * (t0 + t1));
    const Eigen::Index dim = hm.rows();
    if (t0 == t1) {
        if (steps_used) *steps_used = 0;
        return Matrix::Identity(dim, dim);
    }
    const double span = std::abs(t1 - t0);
    long n = std::max(1L, static_cast<long>(std::ceil(spectral_half_width(hm) * span)));
    Matrix prev = magnus4_run(h, t0, t1, n);
    double prev_diff = std::numeric_limits<double>::infinity();
    for (;;) {
        const long n2 = 2 * n;
        if (n2 > opts.max_steps)
            throw Error(Errc::NoConvergence, "exact propagator needs more than " + std::to_string(opts.max_steps) + " steps");
        Matrix next = magnus4_run(h, t0, t1, n2);
        const double diff = spectral_norm(next - prev);
        const bool stalled = diff < 1e3 * opts.tol && diff > 0.5 * prev_diff;
        if (diff <= opts.tol || stalled) {
            if (steps_used) *steps_used = n2;
            return next;
        }
        prev = std::move(next);
        prev_diff = diff;
        n = n2;
    }
}

Matrix exact_evolve(const TimeDependentHamiltonian& h, double t0, double t1, const PropagatorOptions& opts) {
    h.check_time(t0);
    h.check_time(t1);
    return exact_evolve([&h](double t) { return h.evaluate(t); }, t0, t1, opts);
}

ExactPropagator::ExactPropagator(MatrixFunction h, PropagatorOptions opts) : h_(std::move(h)), opts_(opts) {}

ExactPropagator::ExactPropagator(const TimeDependentHamiltonian& h, PropagatorOptions opts)
    : h_([&h](double t) { return h.evaluate(t); }), opts_(opts) {}

Matrix ExactPropagator::evolve(double t0, double t1) {
    const auto key = std::make_pair(t0, t1);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    Matrix u = exact_evolve(h_, t0, t1, opts_);
    std::lock_guard<std::mutex> lock(mu_);
    return cache_.emplace(key, std::move(u)).first->second;
}

std::size_t ExactPropagator::cache_size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return cache_.size();
}

double leakage(const TimeDependentHamiltonian& h, int sigma, double t, ExactPropagator* prop) {
    const SpectralSnapshot s0 = snapshot(h, 0.0, sigma);
    const SpectralSnapshot st = snapshot(h, t, sigma);
    if (sigma == h.dim()) return 0.0;
    const Matrix v = prop ? prop->evolve(0.0, t) : exact_evolve(h, 0.0, t);
    const Matrix w = v * s0.low_vectors;
    const Matrix out = w - st.low_vectors * (st.low_vectors.adjoint() * w);
    return spectral_norm(out);
}

GapProfile gap_profile(const TimeDependentHamiltonian& h, int sigma, int grid_points) {
    if (grid_points < 2) throw Error(Errc::InvalidArgument, "gap profile needs at least 2 grid points");
    GapProfile prof;
    prof.sigma = sigma;
    prof.total_time = h.total_time();
    const double T = h.total_time();
    prof.gap_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid_points; ++i) {
        const double t = T * i / (grid_points - 1);
        const SpectralSnapshot snap = snapshot(h, t, sigma);
        const Matrix d1 = T * h.derivative_operator(t, 1);
        const Matrix d2 = (T * T) * h.derivative_operator(t, 2);
        GapProfileRow row;
        row.t = t;
        row.gap = snap.gap;
        row.delta = snap.delta;
        row.dH = spectral_half_width(d1);
        row.d2H = spectral_half_width(d2);
        row.dH_plain = normal_norm(d1);
        row.d2H_plain = normal_norm(d2);
        prof.gap_min = std::min(prof.gap_min, row.gap);
        prof.delta_max = std::max(prof.delta_max, row.delta);
        prof.dH_max = std::max(prof.dH_max, row.dH);
        prof.d2H_max = std::max(prof.d2H_max, row.d2H);
        prof.rows.push_back(row);
    }
    return prof;
}

void write_gap_profile_csv(std::ostream& os, const GapProfile& profile) {
    os << "# lowtrot gap-profile v1 sigma=" << profile.sigma << " T=" << std::scientific << std::setprecision(10)
       << profile.total_time << "\n";
    os << "t,s,gap,delta,dH_ds,d2H_ds2,dH_ds_plain,d2H_ds2_plain\n";
    for (const auto& r : profile.rows) {
        os << r.t << ',' << r.t / profile.total_time << ',' << r.gap << ',' << r.delta << ',' << r.dH << ',' << r.d2H << ','
           << r.dH_plain << ',' << r.d2H_plain << "\n";
    }
    os << "# min_gap=" << profile.gap_min << " max_delta=" << profile.delta_max << " max_dH_ds=" << profile.dH_max
       << " max_d2H_ds2=" << profile.d2H_max << "\n";
}

}  // namespace lowtrot
