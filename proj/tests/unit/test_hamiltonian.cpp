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

#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "lowtrot/error.hpp"
#include "lowtrot/hamiltonian.hpp"
#include "lowtrot/models.hpp"
#include "oracles.hpp"

namespace lowtrot {
namespace {

using std::numbers::pi;

Matrix heisenberg() { return oracle::pauli_string("XX") + oracle::pauli_string("YY") + oracle::pauli_string("ZZ"); }

Matrix zz_projector() { return 0.5 * (oracle::pauli_string("II") + oracle::pauli_string("ZZ")); }

std::vector<TermSpec> nn_chain(int n, const Matrix& op, CoefficientFn coef = CoefficientFn::constant(1.0)) {
    std::vector<TermSpec> terms;
    for (int i = 0; i + 1 < n; ++i) terms.push_back({{i, i + 1}, op, coef, "b" + std::to_string(i)});
    return terms;
}

Errc code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return Errc::InvalidArgument;
}

TEST(BuildChain, NearestNeighbourSplitsOddEven) {
    const auto h = build_chain(4, nn_chain(4, heisenberg()), {});
    ASSERT_EQ(h.num_groups(), 2);
    EXPECT_EQ(h.groups()[0], (std::vector<int>{0, 2}));
    EXPECT_EQ(h.groups()[1], (std::vector<int>{1}));
    EXPECT_EQ(h.locality(), 2);
}

TEST(BuildChain, SingleTermHasOneGroup) {
    for (int n : {1, 3, 6}) {
        const auto h = build_chain(n, {{{0}, oracle::pauli('X'), CoefficientFn::constant(1.0), ""}}, {});
        EXPECT_EQ(h.num_groups(), 1);
    }
}

// Independent greedy coloring in term order sorted by support.
int reference_colors(const std::vector<TermSpec>& terms, int n) {
    std::vector<Matrix> full;
    for (const auto& t : terms) full.push_back(oracle::embed(t.op, t.support, n));
    std::vector<int> order(terms.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return terms[a].support < terms[b].support; });
    std::vector<int> color(terms.size(), -1);
    int used = 0;
    for (int i : order) {
        std::set<int> taken;
        for (std::size_t j = 0; j < terms.size(); ++j)
            if (color[j] >= 0 && oracle::norm(full[i] * full[j] - full[j] * full[i]) > 1e-10) taken.insert(color[j]);
        int c = 0;
        while (taken.count(c)) ++c;
        color[i] = c;
        used = std::max(used, c + 1);
    }
    return used;
}

TEST(BuildChain, NextNearestGroupsCommute) {
    const int n = 6;
    auto terms = nn_chain(n, heisenberg());
    for (int i = 0; i + 2 < n; ++i) terms.push_back({{i, i + 2}, 0.5 * heisenberg(), CoefficientFn::constant(1.0), ""});
    const auto h = build_chain(n, terms, {});
    EXPECT_EQ(h.num_groups(), reference_colors(terms, n));
    for (const auto& g : h.groups())
        for (int a : g)
            for (int b : g) {
                const Matrix ea = oracle::embed(terms[a].op, terms[a].support, n);
                const Matrix eb = oracle::embed(terms[b].op, terms[b].support, n);
                EXPECT_LT(oracle::norm(ea * eb - eb * ea), 1e-10);
            }
}

TEST(BuildChain, ExplicitGroupsValidated) {
    ChainOptions opts;
    opts.groups = std::vector<std::vector<int>>{{0, 1}, {2}};
    EXPECT_EQ(code_of([&] { build_chain(4, nn_chain(4, heisenberg()), opts); }), Errc::InvalidArgument);
    opts.groups = std::vector<std::vector<int>>{{0}, {1}};
    EXPECT_EQ(code_of([&] { build_chain(4, nn_chain(4, heisenberg()), opts); }), Errc::InvalidArgument);
    opts.groups = std::vector<std::vector<int>>{{1}, {0, 2}};
    const auto h = build_chain(4, nn_chain(4, heisenberg()), opts);
    EXPECT_EQ(h.groups()[0], std::vector<int>{1});
}

TEST(BuildChain, Errors) {
    Matrix bad = oracle::pauli('X');
    bad(0, 1) = 2.0;
    EXPECT_EQ(code_of([&] { build_chain(2, {{{0}, bad, CoefficientFn::constant(1.0), ""}}, {}); }), Errc::NonHermitianTerm);
    EXPECT_EQ(code_of([&] { build_chain(2, {{{0, 2}, heisenberg(), CoefficientFn::constant(1.0), ""}}, {}); }),
              Errc::SupportOutOfRange);
    EXPECT_EQ(code_of([&] { build_chain(3, {{{1, 1}, heisenberg(), CoefficientFn::constant(1.0), ""}}, {}); }),
              Errc::SupportOutOfRange);
    ChainOptions opts;
    opts.total_time = 2.0;
    EXPECT_EQ(code_of([&] { build_chain(1, {{{0}, oracle::pauli('Z'), CoefficientFn::cos_lin(pi, 0.0, 2.0), ""}}, opts); }),
              Errc::SignChangingCoefficient);
    EXPECT_EQ(code_of([&] { build_chain(2, {}, {}); }), Errc::EmptyHamiltonian);
    EXPECT_EQ(code_of([&] { build_chain(1, {{{0}, heisenberg(), CoefficientFn::constant(1.0), ""}}, {}); }),
              Errc::InvalidArgument);
}

TEST(BuildChain, NegativeCoefficientNormalised) {
    ChainOptions opts;
    opts.total_time = 1.0;
    const auto h = build_chain(1, {{{0}, oracle::pauli('X'), CoefficientFn::constant(-2.0), ""}}, opts);
    const auto& t = h.terms().front();
    EXPECT_TRUE(t.negated);
    EXPECT_GT(t.coef.value(0.5), 0.0);
    // -2 X shifted: 2 (I - X) after normalisation, which is 2 (I + (-X)).
    const Matrix expect = 2.0 * (oracle::pauli('I') - oracle::pauli('X'));
    EXPECT_LT((h.evaluate(0.5) - expect).norm(), 1e-14);
}

TEST(StrengthParams, UniformChainHasGTwo) {
    const auto h = build_chain(5, nn_chain(5, zz_projector()), {});
    const auto sp = strength_params(h, 2);
    EXPECT_DOUBLE_EQ(sp.F, 1.0);
    EXPECT_NEAR(sp.induced_one_norm, 2.0, 1e-14);
    EXPECT_NEAR(sp.g, 2.0, 1e-14);
    EXPECT_DOUBLE_EQ(sp.g, sp.F * sp.induced_one_norm);
    EXPECT_DOUBLE_EQ(sp.lambda * 2.0 * sp.g * sp.k, 1.0);
}

TEST(StrengthParams, SingleTerm) {
    const double J = 1.7;
    const Matrix op = J * 0.5 * (oracle::pauli('I') + oracle::pauli('Z'));
    const auto h = build_chain(3, {{{1}, op, CoefficientFn::constant(1.0), ""}}, {});
    const auto sp = strength_params(h, 1);
    EXPECT_NEAR(sp.g, J, 1e-14);
    EXPECT_NEAR(sp.lambda, 1.0 / (2.0 * J * 1), 1e-14);
}

TEST(StrengthParams, CosineDerivativeMaxima) {
    for (double T : {1.0, 2.0}) {
        ChainOptions opts;
        opts.total_time = T;
        const auto h = build_chain(1, {{{0}, 0.5 * (oracle::pauli('I') + oracle::pauli('Z')), CoefficientFn::cos_lin(pi / 2, 0.0, T), ""}}, opts);
        for (int p : {0, 1, 2, 4}) {
            double expect = 1.0;
            for (int n = 1; n <= p; ++n) expect = std::max(expect, std::pow(pi / (2 * T), n));
            EXPECT_NEAR(strength_params(h, p).F, expect, 1e-12) << "T=" << T << " p=" << p;
        }
        if (T >= pi / 2) EXPECT_DOUBLE_EQ(strength_params(h, 4).F, 1.0);
    }
}

TEST(StrengthParams, OrderCapAndEmpty) {
    const auto h = build_chain(2, nn_chain(2, zz_projector()), {});
    EXPECT_EQ(code_of([&] { strength_params(h, 7); }), Errc::OrderTooHigh);
    const auto z = build_chain(2, nn_chain(2, zz_projector(), CoefficientFn()), {});
    EXPECT_EQ(code_of([&] { strength_params(z, 1); }), Errc::EmptyHamiltonian);
}

TEST(Evaluate, ZeroCoefficientsGiveZero) {
    ChainOptions opts;
    opts.total_time = 3.0;
    const auto h = build_chain(3, nn_chain(3, heisenberg(), CoefficientFn::sin_lin(1.0, 0.0, 3.0)), opts);
    EXPECT_LT(h.evaluate(0.0).norm(), 1e-15);
}

TEST(Evaluate, AdiabaticSpinEndsAtShiftedMinusZ) {
    const double T = 7.0;
    const auto h = adiabatic_single_spin(T);
    const Matrix expect = oracle::pauli('I') - oracle::pauli('Z');
    EXPECT_LT((h.evaluate(T) - expect).norm(), 1e-15);
    EXPECT_LT((h.evaluate(0.0) - (oracle::pauli('I') - oracle::pauli('X'))).norm(), 1e-15);
}

TEST(Evaluate, RandomThreeSiteAgainstTensorOracle) {
    std::mt19937_64 rng(2026);
    const int n = 3;
    const double T = 1.5;
    const std::vector<std::vector<int>> supports{{0}, {2}, {0, 1}, {2, 1}, {2, 0, 1}};
    std::vector<TermSpec> terms;
    for (std::size_t i = 0; i < supports.size(); ++i) {
        const Matrix op = oracle::random_hermitian(rng, 1L << supports[i].size());
        const auto coef = CoefficientFn::constant(0.5 + i) + 0.3 * CoefficientFn::cos_lin(2.0 + i, 0.1 * i, T);
        terms.push_back({supports[i], op, coef, ""});
    }
    ChainOptions opts;
    opts.total_time = T;
    const auto h = build_chain(n, terms, opts);
    for (double t : {0.0, 0.4, 1.5}) {
        Matrix expect = Matrix::Zero(8, 8);
        for (const auto& term : terms) {
            const double shift = std::max(0.0, -oracle::min_eig(term.op));
            expect += term.coef.value(t) * (oracle::embed(term.op, term.support, n) + shift * Matrix::Identity(8, 8));
        }
        EXPECT_LT((h.evaluate(t) - expect).cwiseAbs().maxCoeff(), 1e-13);
    }
    EXPECT_EQ(code_of([&] { h.evaluate(T * 1.01); }), Errc::TimeOutOfRange);
    EXPECT_EQ(code_of([&] { h.evaluate(-0.1); }), Errc::TimeOutOfRange);
}

TEST(DerivativeOperator, ConstantCoefficientsVanish) {
    const auto h = build_chain(3, nn_chain(3, heisenberg()), {});
    EXPECT_LT(h.derivative_operator(0.3, 1).norm(), 1e-15);
}

TEST(DerivativeOperator, AdiabaticAtZero) {
    const double T = 3.0;
    const auto h = adiabatic_single_spin(T);
    // d/dt [cos(pi t/2T)(I - X) + sin(pi t/2T)(I - Z)] at t = 0.
    const Matrix expect = (pi / (2 * T)) * (oracle::pauli('I') - oracle::pauli('Z'));
    EXPECT_LT((h.derivative_operator(0.0, 1) - expect).norm(), 1e-14);
    EXPECT_NEAR(oracle::norm(h.derivative_operator(0.0, 1)), (pi / (2 * T)) * 2.0, 1e-14);
}

TEST(DerivativeOperator, FiniteDifference) {
    const auto h = driven_heisenberg_chain({});
    const double eps = 1e-4;
    for (double t : {0.2, 0.5, 0.8}) {
        for (int m = 1; m <= 3; ++m) {
            const Matrix exact = h.derivative_operator(t, m);
            const Matrix fd = (h.derivative_operator(t + eps, m - 1) - h.derivative_operator(t - eps, m - 1)) / (2 * eps);
            EXPECT_LT((exact - fd).norm(), 1e-6 * std::max(1.0, exact.norm())) << "t=" << t << " m=" << m;
        }
    }
    EXPECT_EQ(code_of([&] { h.derivative_operator(0.1, 9); }), Errc::OrderTooHigh);
}

TEST(DerivativeOperator, GroupsSumToWhole) {
    const auto h = driven_heisenberg_chain({});
    for (int m = 0; m <= 2; ++m) {
        Matrix sum = Matrix::Zero(h.dim(), h.dim());
        for (int g = 0; g < h.num_groups(); ++g) sum += h.group_derivative(g, 0.37, m);
        EXPECT_LT((sum - h.derivative_operator(0.37, m)).norm(), 1e-13);
    }
    Matrix sum = Matrix::Zero(h.dim(), h.dim());
    for (int g = 0; g < h.num_groups(); ++g) sum += h.evaluate_group(g, 0.37);
    EXPECT_LT((sum - h.evaluate(0.37)).norm(), 1e-13);
}

// Properties over the shipped builtins.
class BuiltinProperty : public ::testing::TestWithParam<int> {
protected:
    TimeDependentHamiltonian make() const {
        switch (GetParam()) {
            case 0: return driven_heisenberg_chain({});
            case 1: {
                DrivenChainParams p;
                p.seed = 99;
                p.n_sites = 5;
                return driven_heisenberg_chain(p);
            }
            case 2: return linear_interpolation_ising({});
            default: return adiabatic_single_spin(4.0);
        }
    }
};

TEST_P(BuiltinProperty, PositiveSemiDefiniteOnGrid) {
    const auto h = make();
    for (int i = 0; i <= 100; ++i) {
        const double t = h.total_time() * i / 100.0;
        EXPECT_TRUE(is_hermitian(h.evaluate(t), 1e-12));
        EXPECT_GE(oracle::min_eig(h.evaluate(t)), -1e-10) << "t=" << t;
    }
}

TEST_P(BuiltinProperty, GroupsCommuteAcrossTimes) {
    const auto h = make();
    for (int g = 0; g < h.num_groups(); ++g) {
        std::vector<Matrix> hs;
        for (int i = 0; i <= 100; ++i) hs.push_back(h.evaluate_group(g, h.total_time() * i / 100.0));
        double worst = 0.0;
        for (const auto& a : hs)
            for (const auto& b : hs) worst = std::max(worst, (a * b - b * a).cwiseAbs().maxCoeff());
        EXPECT_LE(worst, 1e-10 / h.dim()) << "group " << g;
    }
}

INSTANTIATE_TEST_SUITE_P(Models, BuiltinProperty, ::testing::Values(0, 1, 2, 3));

TEST(StrengthParams, AddingTermNeverDecreasesInducedNorm) {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> site(0, 3);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<TermSpec> terms;
        double last = 0.0;
        for (int k = 0; k < 6; ++k) {
            int a = site(rng), b = site(rng);
            std::vector<int> sup = a == b ? std::vector<int>{a} : std::vector<int>{a, b};
            terms.push_back({sup, oracle::random_hermitian(rng, 1L << sup.size()), CoefficientFn::constant(1.0), ""});
            const double now = induced_one_norm(build_chain(4, terms, {}));
            EXPECT_GE(now, last);
            last = now;
        }
    }
}

TEST(Models, DrivenChainShape) {
    const auto h = driven_heisenberg_chain({});
    EXPECT_EQ(h.n_sites(), 4);
    EXPECT_EQ(h.num_groups(), 3);
    EXPECT_EQ(h.terms().size(), 7u);
    DrivenChainParams p;
    p.n_sites = 1;
    EXPECT_THROW(driven_heisenberg_chain(p), Error);
    DrivenChainParams a, b;
    a.seed = 4;
    b.seed = 4;
    EXPECT_LT((driven_heisenberg_chain(a).evaluate(0.3) - driven_heisenberg_chain(b).evaluate(0.3)).norm(), 1e-15);
}

}  // namespace
}  // namespace lowtrot
