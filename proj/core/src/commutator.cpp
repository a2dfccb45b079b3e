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

#include "lowtrot/commutator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "lowtrot/error.hpp"
#include "lowtrot/spectral.hpp"

namespace lowtrot {

namespace {

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

bool exactly_zero(const OperatorJet& x) {
    for (const auto& m : x.d)
        if (!m.isZero(0.0)) return false;
    return true;
}

}  // namespace

OperatorJet jet_commutator(const OperatorJet& h, const OperatorJet& x) {
    const int order = std::min(h.order(), x.order());
    OperatorJet out;
    out.d.reserve(static_cast<std::size_t>(order) + 1);
    for (int m = 0; m <= order; ++m) {
        Matrix acc = Matrix::Zero(x.d[0].rows(), x.d[0].cols());
        for (int k = 0; k <= m; ++k) {
            const Matrix& hk = h.d[static_cast<std::size_t>(k)];
            const Matrix& xm = x.d[static_cast<std::size_t>(m - k)];
            acc += binom(m, k) * (hk * xm - xm * hk);
        }
        out.d.push_back(std::move(acc));
    }
    return out;
}

OperatorJet jet_derivative(const OperatorJet& x) {
    if (x.order() < 1) throw Error(Errc::OrderTooHigh, "jet has no derivative left");
    OperatorJet out;
    out.d.assign(x.d.begin() + 1, x.d.end());
    return out;
}

OperatorJet jet_scaled(const OperatorJet& x, cplx c) {
    OperatorJet out = x;
    for (auto& m : out.d) m *= c;
    return out;
}

OperatorJet jet_sum(const OperatorJet& a, const OperatorJet& b) {
    const int order = std::min(a.order(), b.order());
    OperatorJet out;
    for (int m = 0; m <= order; ++m) out.d.push_back(a.d[static_cast<std::size_t>(m)] + b.d[static_cast<std::size_t>(m)]);
    return out;
}

OperatorFn OperatorFn::group(const TimeDependentHamiltonian& h, int gamma) {
    OperatorFn f(h.dim());
    for (int i : h.groups()[static_cast<std::size_t>(gamma)])
        f.add(h.terms()[static_cast<std::size_t>(i)].coef, Matrix(h.embedded(i)));
    return f;
}

OperatorFn OperatorFn::full(const TimeDependentHamiltonian& h) {
    OperatorFn f(h.dim());
    for (std::size_t i = 0; i < h.terms().size(); ++i) f.add(h.terms()[i].coef, Matrix(h.embedded(static_cast<int>(i))));
    return f;
}

void OperatorFn::add(CoefficientFn coef, Matrix op) {
    if (dim_ == 0) dim_ = op.rows();
    if (coef.is_zero() || op.isZero(0.0)) return;
    terms_.push_back({std::move(coef), std::move(op)});
}

Matrix OperatorFn::evaluate(double t) const {
    Matrix out = Matrix::Zero(dim_, dim_);
    for (const auto& term : terms_) out += term.coef.value(t) * term.op;
    return out;
}

OperatorJet OperatorFn::jet(double t, int order) const {
    OperatorJet out;
    out.d.assign(static_cast<std::size_t>(order) + 1, Matrix::Zero(dim_, dim_));
    std::vector<double> c(static_cast<std::size_t>(order) + 1);
    for (const auto& term : terms_) {
        term.coef.jet(t, c);
        for (int m = 0; m <= order; ++m) out.d[static_cast<std::size_t>(m)] += c[static_cast<std::size_t>(m)] * term.op;
    }
    return out;
}

OperatorFn OperatorFn::commutator_with(const OperatorFn& x) const {
    OperatorFn out(dim_);
    for (const auto& a : terms_)
        for (const auto& b : x.terms_) {
            Matrix c = a.op * b.op - b.op * a.op;
            if (c.cwiseAbs().maxCoeff() <= 1e-14 * std::max(1.0, a.op.cwiseAbs().maxCoeff() * b.op.cwiseAbs().maxCoeff())) continue;
            out.add(a.coef * b.coef, std::move(c));
        }
    return out;
}

OperatorFn OperatorFn::time_derivative() const {
    OperatorFn out(dim_);
    for (const auto& a : terms_) out.add(a.coef.derivative(), a.op);
    return out;
}

OperatorFn OperatorFn::scaled(cplx c) const {
    OperatorFn out(dim_);
    for (const auto& a : terms_) out.add(a.coef, c * a.op);
    return out;
}

OperatorFn OperatorFn::operator+(const OperatorFn& other) const {
    OperatorFn out = *this;
    if (out.dim_ == 0) out.dim_ = other.dim_;
    for (const auto& a : other.terms_) out.terms_.push_back(a);
    return out;
}

double alpha_com(const TimeDependentHamiltonian& h, int p, double t, bool barred) {
    if (p < 0) throw Error(Errc::InvalidArgument, "order must be non-negative");
    if (p > h.max_derivative_order()) throw Error(Errc::OrderTooHigh, "alpha_com depth above derivative cap");
    h.check_time(t);
    const int G = h.num_groups();
    const double count = std::pow(G + 1.0, p) * G;
    if (count > kAlphaComBudget) throw Error(Errc::TermBudgetExceeded, "alpha_com needs " + std::to_string(count) + " summands");
    std::vector<OperatorJet> jets;
    for (int g = 0; g < G; ++g) jets.push_back(OperatorFn::group(h, g).jet(t, p));
    const double dscale = barred ? G : 2.0 * G;
    double total = 0.0;
    std::function<void(int, const OperatorJet&)> dfs = [&](int depth, const OperatorJet& x) {
        if (depth == p) {
            total += normal_norm(x.value());
            return;
        }
        if (exactly_zero(x)) return;
        for (int c = 0; c <= G; ++c) {
            if (c < G)
                dfs(depth + 1, jet_commutator(jets[static_cast<std::size_t>(c)], x));
            else
                dfs(depth + 1, jet_scaled(jet_derivative(x), dscale));
        }
    };
    for (int g0 = 0; g0 < G; ++g0) dfs(0, jets[static_cast<std::size_t>(g0)]);
    return total;
}

double alpha_com_bound(int N, int k, int p, double g, int Gamma) {
    double sum = 0.0;
    for (int j = 1; j <= p + 1; ++j) sum += std::pow(static_cast<double>(Gamma), p + 1 - j) * std::pow(g, j) * N;
    return std::pow(2.0 * k * (p + 1), p) * sum;
}

namespace {

struct ResidualSlots {
    // 1-based: weight[j'] and group[j'] (group used for odd slots only).
    std::vector<double> weight;
    std::vector<int> group;
    std::vector<int> nonzero_prefix;  // nonzero_prefix[L] = nonzero weights in 1..L
};

ResidualSlots residual_slots(const PFSchedule& s) {
    const int q = s.q();
    const int J = 2 * q - 1;
    ResidualSlots slots;
    slots.weight.assign(static_cast<std::size_t>(J) + 1, 0.0);
    slots.group.assign(static_cast<std::size_t>(J) + 1, -1);
    for (int j = 1; j <= q; ++j) {
        const auto& e = s.entries[static_cast<std::size_t>(j - 1)];
        slots.weight[static_cast<std::size_t>(2 * j - 1)] = e.alpha;
        slots.group[static_cast<std::size_t>(2 * j - 1)] = e.group;
        if (j < q) {
            const auto& nx = s.entries[static_cast<std::size_t>(j)];
            double w = nx.beta - e.beta - e.alpha;
            if (std::abs(w) < 1e-14) w = 0.0;
            slots.weight[static_cast<std::size_t>(2 * j)] = w;
        }
    }
    slots.nonzero_prefix.assign(static_cast<std::size_t>(J) + 1, 0);
    for (int L = 1; L <= J; ++L)
        slots.nonzero_prefix[static_cast<std::size_t>(L)] =
            slots.nonzero_prefix[static_cast<std::size_t>(L - 1)] + (slots.weight[static_cast<std::size_t>(L)] != 0.0 ? 1 : 0);
    return slots;
}

double compositions(int n, int parts) {
    if (parts == 0) return n == 0 ? 1.0 : 0.0;
    return std::exp(std::lgamma(n + parts) - std::lgamma(n + 1.0) - std::lgamma(static_cast<double>(parts)));
}

}  // namespace

double residual_term_count(const PFSchedule& s, int n_max) {
    const ResidualSlots slots = residual_slots(s);
    const int q = s.q();
    const int J = 2 * q - 1;
    double total = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        total += s.num_groups * compositions(n, slots.nonzero_prefix[static_cast<std::size_t>(J)]);
        for (int j = 1; j <= q; ++j) {
            total += compositions(n, slots.nonzero_prefix[static_cast<std::size_t>(2 * j - 1)]);
            total += compositions(n, slots.nonzero_prefix[static_cast<std::size_t>(2 * j - 2)]);
        }
    }
    return total;
}

std::vector<Matrix> residual_coefficients(const TimeDependentHamiltonian& h, const PFSchedule& s, int n_max, double t0, double budget) {
    if (s.kind != FormulaKind::Generalized) throw Error(Errc::InvalidArgument, "residual coefficients describe the generalized formula");
    if (s.num_groups != h.num_groups()) throw Error(Errc::ScheduleGroupMismatch, "schedule and Hamiltonian group counts differ");
    if (n_max < 0) throw Error(Errc::InvalidArgument, "order must be non-negative");
    if (n_max > h.max_derivative_order()) throw Error(Errc::OrderTooHigh, "residual order above derivative cap");
    const double count = residual_term_count(s, n_max);
    if (count > budget) throw Error(Errc::TermBudgetExceeded, "residual expansion needs " + std::to_string(count) + " summands");

    const ResidualSlots slots = residual_slots(s);
    const int q = s.q();
    const int J = 2 * q - 1;
    std::vector<OperatorJet> hj;
    for (int g = 0; g < s.num_groups; ++g) hj.push_back(OperatorFn::group(h, g).jet(t0, n_max));
    const long dim = h.dim();

    auto apply_slot = [&](int slot, const OperatorJet& x) {
        OperatorJet dt = jet_scaled(jet_derivative(x), kI);
        if (slot % 2 == 1) dt = jet_sum(jet_commutator(hj[static_cast<std::size_t>(slots.group[static_cast<std::size_t>(slot)])], x), dt);
        return jet_scaled(dt, slots.weight[static_cast<std::size_t>(slot)]);
    };

    // Sum over compositions of n into slots 1..L of prod (w D)^{n_j} / n_j! x,
    // slot L innermost.
    auto series = [&](int L, int n, const OperatorJet& x) {
        Matrix acc = Matrix::Zero(dim, dim);
        std::function<void(int, int, const OperatorJet&, double)> rec = [&](int level, int remaining, const OperatorJet& cur, double weight) {
            if (remaining > 0 && slots.nonzero_prefix[static_cast<std::size_t>(level)] == 0) return;
            if (level == 0) {
                acc += weight * cur.value();
                return;
            }
            rec(level - 1, remaining, cur, weight);
            if (slots.weight[static_cast<std::size_t>(level)] == 0.0) return;
            OperatorJet y = cur;
            double fact = 1.0;
            for (int a = 1; a <= remaining; ++a) {
                y = apply_slot(level, y);
                fact *= a;
                rec(level - 1, remaining - a, y, weight / fact);
            }
        };
        rec(L, n, x, 1.0);
        return acc;
    };

    std::vector<Matrix> out;
    cplx in = 1.0;
    for (int n = 0; n <= n_max; ++n) {
        Matrix a = Matrix::Zero(dim, dim);
        for (int g = 0; g < s.num_groups; ++g) a += series(J, n, hj[static_cast<std::size_t>(g)]);
        for (int j = 1; j <= q; ++j) {
            const auto& e = s.entries[static_cast<std::size_t>(j - 1)];
            const auto& x = hj[static_cast<std::size_t>(e.group)];
            a -= (e.beta + e.alpha) * series(2 * j - 1, n, x);
            if (e.beta != 0.0) a += e.beta * series(2 * j - 2, n, x);
        }
        out.push_back(in * a);
        in *= kI;
    }
    return out;
}

ProjectedCommutatorNorms projected_commutator_norms(const TimeDependentHamiltonian& h, double t, int sigma, int depth) {
    if (depth < 1) throw Error(Errc::InvalidArgument, "depth must be at least 1");
    const auto& terms = h.terms();
    const double tuples = std::pow(static_cast<double>(terms.size()), depth);
    if (tuples > kAlphaComBudget) throw Error(Errc::TermBudgetExceeded, "too many term tuples");
    const SpectralSnapshot snap = snapshot(h, t, sigma);
    const StrengthParams sp = strength_params(h, 0);
    std::vector<Matrix> local;
    for (std::size_t i = 0; i < terms.size(); ++i) local.push_back(terms[i].coef.value(t) * Matrix(h.embedded(static_cast<int>(i))));

    ProjectedCommutatorNorms res;
    res.depth = depth;
    res.delta = snap.delta;
    res.g = sp.g;
    const Matrix& L = snap.low_vectors;
    std::function<void(int, const Matrix&)> dfs = [&](int level, const Matrix& c) {
        if (level == depth) {
            ++res.tuples;
            res.projected += spectral_norm(L.adjoint() * c * L);
            res.unprojected += normal_norm(c);
            return;
        }
        if (c.isZero(0.0)) {
            res.tuples += static_cast<long>(std::pow(static_cast<double>(terms.size()), depth - level));
            return;
        }
        for (const auto& m : local) dfs(level + 1, m * c - c * m);
    };
    for (const auto& m : local) dfs(1, m);

    double fact = 1.0;
    for (int i = 2; i < depth; ++i) fact *= i;
    const double pref = fact * std::pow(2.0 * h.locality() * sp.g, depth - 1);
    // H(t) is positive semi-definite, so a negative E_sigma is rounding.
    const double delta = std::max(snap.delta, 0.0);
    res.projected_bound = depth == 1 ? static_cast<double>(terms.size()) * delta : pref * delta;
    res.unprojected_bound = pref * sp.g * h.n_sites();
    return res;
}

LeakOperatorCheck leak_operator_check(const TimeDependentHamiltonian& h, double t, const Matrix& A, double lo, double hi) {
    if (A.rows() != h.dim() || A.cols() != h.dim()) throw Error(Errc::InvalidArgument, "operator dimension mismatch");
    const HermitianEig eig = hermitian_eig(h.evaluate(t));
    const StrengthParams sp = strength_params(h, 0);
    LeakOperatorCheck res;
    res.lambda = sp.lambda;
    std::vector<Eigen::Index> low, high;
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
        if (eig.values(i) <= lo) low.push_back(i);
        if (eig.values(i) > hi) high.push_back(i);
    }
    if (!low.empty() && !high.empty()) {
        const Matrix b = eig.vectors.adjoint() * A * eig.vectors;
        Matrix block(static_cast<Eigen::Index>(high.size()), static_cast<Eigen::Index>(low.size()));
        for (std::size_t r = 0; r < high.size(); ++r)
            for (std::size_t c = 0; c < low.size(); ++c) block(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = b(high[r], low[c]);
        res.measured = spectral_norm(block);
    }
    for (std::size_t i = 0; i < h.terms().size(); ++i) {
        const double f = h.terms()[i].coef.value(t);
        const Matrix m = f * Matrix(h.embedded(static_cast<int>(i)));
        if (spectral_norm(m * A - A * m) > 1e-12) res.R_A += std::abs(f) * h.terms()[i].norm;
    }
    res.bound = spectral_norm(A) * std::exp(-res.lambda * (hi - lo - 2.0 * res.R_A));
    return res;
}

}  // namespace lowtrot
