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

#include "lowtrot/hard_instance.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>

#include "lowtrot/error.hpp"

namespace lowtrot {

namespace {

double layer_weight(int i, int n) { return std::sqrt(static_cast<double>(i) * (n - i + 1)) / n; }

constexpr int kMaxReducedDim = 2048;

}  // namespace

int ParityInstance::parity() const {
    int p = 0;
    for (int b : x) p ^= b;
    return p;
}

Matrix ParityInstance::reduced_at(double t) const {
    return (max_norm.value(t) / tilde_max_norm) * reduced;
}

double ParityInstance::integral() const { return max_norm.integral(0.0, total_time); }

ParityInstance build_parity(std::vector<int> x, int d, CoefficientFn max_norm, double T) {
    if (d < 2) throw Error(Errc::InvalidSparsity, "sparsity must be at least 2, got " + std::to_string(d));
    if (x.empty()) throw Error(Errc::InvalidArgument, "bit string is empty");
    if (!(T > 0.0)) throw Error(Errc::InvalidArgument, "total time must be positive");
    for (int b : x)
        if (b != 0 && b != 1) throw Error(Errc::InvalidArgument, "bits must be 0 or 1");
    for (int i = 0; i <= 1000; ++i) {
        const double t = T * i / 1000.0;
        if (max_norm.value(t) < -1e-12) throw Error(Errc::InvalidArgument, "max-norm schedule is negative at t = " + std::to_string(t));
    }

    ParityInstance inst;
    inst.x = std::move(x);
    inst.d = d;
    inst.d_prime = d / 2;
    inst.total_time = T;
    inst.max_norm = std::move(max_norm);
    const int n = inst.n_bits();
    const int dim = 2 * (n + 1);
    if (dim > kMaxReducedDim) throw Error(Errc::InvalidArgument, "reduced dimension above 2048");
    inst.reduced = Matrix::Zero(dim, dim);
    inst.tilde_max_norm = 0.0;
    for (int i = 1; i <= n; ++i) {
        const double w = layer_weight(i, n);
        inst.tilde_max_norm = std::max(inst.tilde_max_norm, w);
        const int xi = inst.x[static_cast<std::size_t>(i - 1)];
        for (int j = 0; j < 2; ++j) {
            const int a = ParityInstance::index(i - 1, j);
            const int b = ParityInstance::index(i, j ^ xi);
            inst.reduced(a, b) = inst.d_prime * w;
            inst.reduced(b, a) = inst.d_prime * w;
        }
    }
    return inst;
}

Matrix full_parity_matrix(const ParityInstance& inst) {
    const int n = inst.n_bits();
    const int dp = inst.d_prime;
    if (n > 4 || dp > 3) throw Error(Errc::InvalidArgument, "full construction limited to N <= 4 and d' <= 3");
    const int dim = 2 * (n + 1) * dp;
    Matrix m = Matrix::Zero(dim, dim);
    for (int i = 1; i <= n; ++i) {
        const double w = layer_weight(i, n);
        const int xi = inst.x[static_cast<std::size_t>(i - 1)];
        for (int j = 0; j < 2; ++j)
            for (int l = 0; l < dp; ++l)
                for (int l2 = 0; l2 < dp; ++l2) {
                    const int a = ParityInstance::index(i - 1, j) * dp + l;
                    const int b = ParityInstance::index(i, j ^ xi) * dp + l2;
                    m(a, b) = w;
                    m(b, a) = w;
                }
    }
    return m;
}

double predicted_amplitude(const ParityInstance& inst) {
    const int n = inst.n_bits();
    const double phi = inst.d_prime * inst.integral() / (n * inst.tilde_max_norm);
    return std::pow(std::abs(std::sin(phi)), n);
}

AmplitudeCheck amplitude_check(const ParityInstance& inst, const PropagatorOptions& opts) {
    const int n = inst.n_bits();
    const Matrix v = exact_evolve([&](double t) { return inst.reduced_at(t); }, 0.0, inst.total_time, opts);
    const int src = ParityInstance::index(0, 0);
    AmplitudeCheck c;
    c.measured = std::abs(v(ParityInstance::index(n, inst.parity()), src));
    c.orthogonal = std::abs(v(ParityInstance::index(n, inst.parity() ^ 1), src));
    c.predicted = predicted_amplitude(inst);
    return c;
}

ConfinementCheck confinement_check(const ParityInstance& inst, const PropagatorOptions& opts) {
    const int n = inst.n_bits();
    const int dp = inst.d_prime;
    const Matrix full = full_parity_matrix(inst);
    const Matrix v =
        exact_evolve([&](double t) -> Matrix { return (inst.max_norm.value(t) / inst.tilde_max_norm) * full; }, 0.0, inst.total_time, opts);
    const double norm = 1.0 / std::sqrt(static_cast<double>(dp));
    Vector psi0 = Vector::Zero(full.rows());
    for (int l = 0; l < dp; ++l) psi0(ParityInstance::index(0, 0) * dp + l) = norm;
    const Vector psi = v * psi0;

    ConfinementCheck c;
    double inside = 0.0;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j < 2; ++j) {
            cplx amp = 0.0;
            for (int l = 0; l < dp; ++l) amp += norm * psi(ParityInstance::index(i, j) * dp + l);
            inside += std::norm(amp);
            if (i == n && j == inst.parity()) c.measured = std::abs(amp);
        }
    c.outside_probability = std::max(0.0, psi.squaredNorm() - inside);
    c.tilde_max_norm = full.cwiseAbs().maxCoeff();
    return c;
}

double commuting_reduction_error(const ParityInstance& inst, const PropagatorOptions& opts) {
    const Matrix v = exact_evolve([&](double t) { return inst.reduced_at(t); }, 0.0, inst.total_time, opts);
    const Matrix closed = exp_minus_i(Matrix((inst.integral() / inst.tilde_max_norm) * inst.reduced));
    return spectral_norm(v - closed);
}

RequiredN required_N(int d, double integral_max_norm, double eps, double c1, double c2) {
    if (!(eps > 0.0 && eps < 1.0)) throw Error(Errc::InvalidArgument, "eps must lie in (0, 1)");
    const double inv_log = std::log(1.0 / eps);
    const double ratio = inv_log / std::max(std::log(inv_log), 1.0);
    RequiredN out;
    out.integral_term = c1 * (d / 2) * integral_max_norm;
    out.log_term = c2 * ratio;
    out.n = static_cast<long>(std::ceil(std::max(out.integral_term, out.log_term)));
    out.lower_bound = d * integral_max_norm + ratio;
    return out;
}

void write_parity_csv_header(std::ostream& os) { os << "N_bits,d,integral,predicted,measured,orthogonal\n"; }

void write_parity_csv_row(std::ostream& os, const ParityInstance& inst, const AmplitudeCheck& check) {
    os << std::scientific << std::setprecision(10);
    os << inst.n_bits() << ',' << inst.d << ',' << inst.integral() << ',' << check.predicted << ',' << check.measured << ','
       << check.orthogonal << "\n";
}

}  // namespace lowtrot
