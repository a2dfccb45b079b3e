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

#include "lowtrot/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "lowtrot/error.hpp"

namespace lowtrot {

namespace {

constexpr int kMaxSites = 12;

std::string term_name(const TermSpec& t, std::size_t index) {
    return t.label.empty() ? "term " + std::to_string(index) : "term '" + t.label + "'";
}

void add_scaled(Matrix& dst, const SparseMatrix& s, cplx c) {
    for (int k = 0; k < s.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(s, k); it; ++it) dst(it.row(), it.col()) += c * it.value();
}

SparseMatrix sparse_embed(const LocalAction& act, const Matrix& op) {
    std::vector<Eigen::Triplet<cplx>> trip;
    const int ld = act.local_dim();
    trip.reserve(static_cast<std::size_t>(act.blocks()) * ld * ld);
    for (int b = 0; b < act.blocks(); ++b)
        for (int a = 0; a < ld; ++a)
            for (int c = 0; c < ld; ++c)
                if (op(a, c) != cplx(0.0)) trip.emplace_back(act.index(b, a), act.index(b, c), op(a, c));
    SparseMatrix s(act.full_dim(), act.full_dim());
    s.setFromTriplets(trip.begin(), trip.end());
    return s;
}

}  // namespace

double local_commutator_norm(const std::vector<int>& sa, const Matrix& a, const std::vector<int>& sb, const Matrix& b) {
    std::vector<int> uni;
    std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(uni));
    if (uni.size() == sa.size() + sb.size()) return 0.0;  // disjoint supports
    auto positions = [&](const std::vector<int>& s) {
        std::vector<int> pos;
        for (int site : s) pos.push_back(static_cast<int>(std::lower_bound(uni.begin(), uni.end(), site) - uni.begin()));
        return pos;
    };
    const int n = static_cast<int>(uni.size());
    const auto pa = positions(sa);
    const auto pb = positions(sb);
    const Matrix ea = embed(a, pa, n);
    const Matrix eb = embed(b, pb, n);
    return spectral_norm(commutator(ea, eb));
}

std::vector<std::vector<int>> greedy_groups(const std::vector<LocalTerm>& terms) {
    const std::size_t n = terms.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return terms[x].support < terms[y].support;
    });
    std::vector<int> color(n, -1);
    for (std::size_t idx : order) {
        std::set<int> taken;
        for (std::size_t other = 0; other < n; ++other) {
            if (color[other] < 0 || other == idx) continue;
            const double scale = std::max(1.0, terms[idx].norm * terms[other].norm);
            if (local_commutator_norm(terms[idx].support, terms[idx].op, terms[other].support, terms[other].op) > 1e-12 * scale)
                taken.insert(color[other]);
        }
        int c = 0;
        while (taken.count(c)) ++c;
        color[idx] = c;
    }
    const int ncolors = n == 0 ? 0 : *std::max_element(color.begin(), color.end()) + 1;
    std::vector<std::vector<int>> groups(static_cast<std::size_t>(ncolors));
    for (std::size_t i = 0; i < n; ++i) groups[static_cast<std::size_t>(color[i])].push_back(static_cast<int>(i));
    return groups;
}

TimeDependentHamiltonian build_chain(int n_sites, std::vector<TermSpec> specs, const ChainOptions& opts) {
    if (n_sites < 1 || n_sites > kMaxSites)
        throw Error(Errc::InvalidArgument, "site count must be in [1, " + std::to_string(kMaxSites) + "]");
    if (specs.empty()) throw Error(Errc::EmptyHamiltonian, "no terms");
    if (!(opts.total_time > 0.0)) throw Error(Errc::InvalidArgument, "total time must be positive");

    TimeDependentHamiltonian h;
    h.n_sites_ = n_sites;
    h.total_time_ = opts.total_time;
    h.max_order_ = opts.max_derivative_order;

    const double T = opts.total_time;
    for (std::size_t idx = 0; idx < specs.size(); ++idx) {
        TermSpec& spec = specs[idx];
        const std::string name = term_name(spec, idx);
        if (spec.support.empty()) throw Error(Errc::SupportOutOfRange, name + " has empty support");
        for (int s : spec.support)
            if (s < 0 || s >= n_sites) throw Error(Errc::SupportOutOfRange, name + " touches site " + std::to_string(s));
        std::set<int> uniq(spec.support.begin(), spec.support.end());
        if (uniq.size() != spec.support.size()) throw Error(Errc::SupportOutOfRange, name + " repeats a site");
        const Eigen::Index d = Eigen::Index(1) << spec.support.size();
        if (spec.op.rows() != d || spec.op.cols() != d)
            throw Error(Errc::InvalidArgument, name + " operator is not 2^|support| square");
        const double scale = std::max(1.0, spec.op.cwiseAbs().maxCoeff());
        if (!is_hermitian(spec.op, 1e-10 * scale)) throw Error(Errc::NonHermitianTerm, name);

        LocalTerm term;
        std::vector<int> perm(spec.support.size());
        std::iota(perm.begin(), perm.end(), 0);
        std::sort(perm.begin(), perm.end(), [&](int x, int y) { return spec.support[static_cast<std::size_t>(x)] < spec.support[static_cast<std::size_t>(y)]; });
        for (int j : perm) term.support.push_back(spec.support[static_cast<std::size_t>(j)]);
        term.op = permute_factors(spec.op, perm);
        term.op = 0.5 * (term.op + term.op.adjoint()).eval();
        term.coef = spec.coef;
        term.label = spec.label;

        double vmin = 0.0, vmax = 0.0;
        for (int i = 0; i < kCoefficientGrid; ++i) {
            const double v = term.coef.value(T * i / (kCoefficientGrid - 1));
            vmin = std::min(vmin, v);
            vmax = std::max(vmax, v);
        }
        const double tol = 1e-12 * std::max(1.0, std::max(-vmin, vmax));
        if (vmin < -tol && vmax > tol) throw Error(Errc::SignChangingCoefficient, name);
        if (vmin < -tol) {
            term.coef = -term.coef;
            term.op = -term.op;
            term.negated = true;
        }
        HermitianEig eig = hermitian_eig(term.op);
        if (eig.values(0) < 0.0) {
            term.shift = -eig.values(0);
            term.op += term.shift * Matrix::Identity(d, d);
            eig = hermitian_eig(term.op);
        }
        term.eig = std::move(eig);
        term.norm = std::max(0.0, term.eig.values(term.eig.values.size() - 1));
        h.locality_ = std::max(h.locality_, static_cast<int>(term.support.size()));
        h.terms_.push_back(std::move(term));
    }

    if (opts.groups) {
        std::vector<int> seen(h.terms_.size(), 0);
        for (const auto& g : *opts.groups) {
            if (g.empty()) throw Error(Errc::InvalidArgument, "empty group in explicit grouping");
            for (int i : g) {
                if (i < 0 || i >= static_cast<int>(h.terms_.size())) throw Error(Errc::InvalidArgument, "group refers to unknown term");
                ++seen[static_cast<std::size_t>(i)];
            }
        }
        for (std::size_t i = 0; i < seen.size(); ++i)
            if (seen[i] != 1) throw Error(Errc::InvalidArgument, "term " + std::to_string(i) + " must appear in exactly one group");
        for (const auto& g : *opts.groups)
            for (std::size_t a = 0; a < g.size(); ++a)
                for (std::size_t b = a + 1; b < g.size(); ++b) {
                    const auto& x = h.terms_[static_cast<std::size_t>(g[a])];
                    const auto& y = h.terms_[static_cast<std::size_t>(g[b])];
                    if (local_commutator_norm(x.support, x.op, y.support, y.op) > 1e-10 * std::max(1.0, x.norm * y.norm))
                        throw Error(Errc::InvalidArgument, "explicit group mixes non-commuting terms " + std::to_string(g[a]) + " and " + std::to_string(g[b]));
                }
        h.groups_ = *opts.groups;
    } else {
        h.groups_ = greedy_groups(h.terms_);
    }
    h.group_of_.assign(h.terms_.size(), -1);
    for (std::size_t g = 0; g < h.groups_.size(); ++g)
        for (int i : h.groups_[g]) h.group_of_[static_cast<std::size_t>(i)] = static_cast<int>(g);

    for (const auto& term : h.terms_) {
        h.actions_.emplace_back(term.support, n_sites);
        h.embedded_.push_back(sparse_embed(h.actions_.back(), term.op));
    }
    return h;
}

void TimeDependentHamiltonian::check_time(double t) const {
    const double slack = 1e-12 * total_time_;
    if (!(t >= -slack && t <= total_time_ + slack))
        throw Error(Errc::TimeOutOfRange, "t = " + std::to_string(t) + " outside [0, " + std::to_string(total_time_) + "]");
}

Matrix TimeDependentHamiltonian::evaluate(double t) const {
    check_time(t);
    Matrix out = Matrix::Zero(dim(), dim());
    for (std::size_t i = 0; i < terms_.size(); ++i) add_scaled(out, embedded_[i], terms_[i].coef.value(t));
    return out;
}

Matrix TimeDependentHamiltonian::evaluate_group(int gamma, double t) const {
    check_time(t);
    if (gamma < 0 || gamma >= num_groups()) throw Error(Errc::InvalidArgument, "group index out of range");
    Matrix out = Matrix::Zero(dim(), dim());
    for (int i : groups_[static_cast<std::size_t>(gamma)])
        add_scaled(out, embedded_[static_cast<std::size_t>(i)], terms_[static_cast<std::size_t>(i)].coef.value(t));
    return out;
}

Matrix TimeDependentHamiltonian::derivative_operator(double t, int m) const {
    check_time(t);
    if (m < 0) throw Error(Errc::InvalidArgument, "negative derivative order");
    if (m > max_order_) throw Error(Errc::OrderTooHigh, "derivative order " + std::to_string(m) + " above cap " + std::to_string(max_order_));
    Matrix out = Matrix::Zero(dim(), dim());
    for (std::size_t i = 0; i < terms_.size(); ++i) add_scaled(out, embedded_[i], terms_[i].coef.derivative_value(t, m));
    return out;
}

Matrix TimeDependentHamiltonian::group_derivative(int gamma, double t, int m) const {
    check_time(t);
    if (gamma < 0 || gamma >= num_groups()) throw Error(Errc::InvalidArgument, "group index out of range");
    if (m > max_order_) throw Error(Errc::OrderTooHigh, "derivative order " + std::to_string(m) + " above cap " + std::to_string(max_order_));
    Matrix out = Matrix::Zero(dim(), dim());
    for (int i : groups_[static_cast<std::size_t>(gamma)])
        add_scaled(out, embedded_[static_cast<std::size_t>(i)], terms_[static_cast<std::size_t>(i)].coef.derivative_value(t, m));
    return out;
}

double induced_one_norm(const TimeDependentHamiltonian& h) {
    std::vector<double> per_site(static_cast<std::size_t>(h.n_sites()), 0.0);
    for (const auto& term : h.terms())
        for (int s : term.support) per_site[static_cast<std::size_t>(s)] += term.norm;
    return *std::max_element(per_site.begin(), per_site.end());
}

StrengthParams strength_params(const TimeDependentHamiltonian& h, int p) {
    if (p < 0) throw Error(Errc::InvalidArgument, "order must be non-negative");
    if (p + 2 > h.max_derivative_order())
        throw Error(Errc::OrderTooHigh, "order " + std::to_string(p) + " needs derivatives up to " + std::to_string(p + 2));
    StrengthParams sp;
    sp.p = p;
    sp.k = h.locality();
    std::vector<double> jet(static_cast<std::size_t>(p) + 3);
    const double T = h.total_time();
    for (const auto& term : h.terms()) {
        for (int i = 0; i < kCoefficientGrid; ++i) {
            term.coef.jet(T * i / (kCoefficientGrid - 1), jet);
            for (std::size_t n = 0; n < jet.size(); ++n) {
                if (!std::isfinite(jet[n]))
                    throw Error(Errc::InvalidArgument, "coefficient derivative of order " + std::to_string(n) + " is not finite");
                if (n <= static_cast<std::size_t>(p)) sp.F = std::max(sp.F, std::abs(jet[n]));
            }
        }
    }
    sp.induced_one_norm = induced_one_norm(h);
    sp.g = sp.F * sp.induced_one_norm;
    if (!(sp.g > 0.0)) throw Error(Errc::EmptyHamiltonian, "all terms vanish on [0, T]");
    sp.lambda = 1.0 / (2.0 * sp.g * sp.k);
    return sp;
}

}  // namespace lowtrot
