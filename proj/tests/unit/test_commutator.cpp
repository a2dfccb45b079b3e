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
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "lowtrot/commutator.hpp"
#include "lowtrot/error.hpp"
#include "lowtrot/models.hpp"
#include "lowtrot/product_formula.hpp"
#include "lowtrot/spectral.hpp"
#include "oracles.hpp"

namespace lowtrot {
namespace {

// Group operators and their first derivatives rebuilt from the term data.
struct GroupOracle {
    std::vector<Matrix> value, deriv;
};

GroupOracle group_oracle(const TimeDependentHamiltonian& h, double t) {
    GroupOracle o;
    const long dim = h.dim();
    for (const auto& g : h.groups()) {
        Matrix v = Matrix::Zero(dim, dim), d = Matrix::Zero(dim, dim);
        for (int i : g) {
            const auto& term = h.terms()[static_cast<std::size_t>(i)];
            const Matrix full = oracle::embed(term.op, term.support, h.n_sites());
            v += term.coef.value(t) * full;
            d += term.coef.derivative_value(t, 1) * full;
        }
        o.value.push_back(v);
        o.deriv.push_back(d);
    }
    return o;
}

TimeDependentHamiltonian static_two_group_chain() {
    std::vector<TermSpec> terms;
    const Matrix hb = oracle::pauli_string("XX") + oracle::pauli_string("YY") + 0.5 * oracle::pauli_string("ZZ");
    for (int i = 0; i < 3; ++i) terms.push_back({{i, i + 1}, (1.0 + 0.2 * i) * hb, CoefficientFn::constant(1.0), ""});
    return build_chain(4, terms, {});
}

TEST(OperatorFn, AlgebraMatchesMatrices) {
    const auto h = driven_heisenberg_chain({});
    const auto a = OperatorFn::group(h, 0);
    const auto b = OperatorFn::group(h, 2);
    const double t = 0.4;
    EXPECT_LT((a.evaluate(t) - h.evaluate_group(0, t)).norm(), 1e-13);
    EXPECT_LT((OperatorFn::full(h).evaluate(t) - h.evaluate(t)).norm(), 1e-13);
    const Matrix ea = a.evaluate(t), eb = b.evaluate(t);
    EXPECT_LT((a.commutator_with(b).evaluate(t) - (ea * eb - eb * ea)).norm(), 1e-12);
    EXPECT_LT((b.time_derivative().evaluate(t) - h.group_derivative(2, t, 1)).norm(), 1e-13);
    EXPECT_LT(((a + b).scaled(kI).evaluate(t) - kI * (ea + eb)).norm(), 1e-13);
    const auto jet = b.jet(t, 2);
    EXPECT_EQ(jet.order(), 2);
    EXPECT_LT((jet.d[2] - h.group_derivative(2, t, 2)).norm(), 1e-13);
}

TEST(OperatorJet, CommutatorObeysLeibniz) {
    const auto h = driven_heisenberg_chain({});
    const double t = 0.25;
    const auto a = OperatorFn::group(h, 0), b = OperatorFn::group(h, 2);
    const auto c = jet_commutator(a.jet(t, 2), b.jet(t, 2));
    const auto ref = a.commutator_with(b);
    EXPECT_LT((c.value() - ref.evaluate(t)).norm(), 1e-12);
    EXPECT_LT((c.d[1] - ref.time_derivative().evaluate(t)).norm(), 1e-12);
    EXPECT_LT((jet_derivative(c).value() - c.d[1]).norm(), 0.0 + 1e-15);
    EXPECT_THROW(jet_derivative(jet_derivative(jet_derivative(c))), Error);
}

TEST(AlphaCom, FirstOrderBruteForce) {
    const auto h = driven_heisenberg_chain({});
    const int G = h.num_groups();
    for (double t : {0.0, 0.3, 1.0}) {
        const auto o = group_oracle(h, t);
        double ref = 0.0, ref_bar = 0.0;
        for (int g0 = 0; g0 < G; ++g0) {
            for (int g1 = 0; g1 < G; ++g1) {
                const double c = oracle::norm(o.value[g1] * o.value[g0] - o.value[g0] * o.value[g1]);
                ref += c;
                ref_bar += c;
            }
            ref += 2.0 * G * oracle::norm(o.deriv[g0]);
            ref_bar += G * oracle::norm(o.deriv[g0]);
        }
        EXPECT_NEAR(alpha_com(h, 1, t), ref, 1e-9);
        EXPECT_NEAR(alpha_com(h, 1, t, true), ref_bar, 1e-9);
    }
}

TEST(AlphaCom, TimeIndependentReducesToCommutators) {
    const auto h = static_two_group_chain();
    ASSERT_EQ(h.num_groups(), 2);
    const auto o = group_oracle(h, 0.0);
    const double c = oracle::norm(o.value[0] * o.value[1] - o.value[1] * o.value[0]);
    EXPECT_NEAR(alpha_com(h, 1, 0.5), 2.0 * c, 1e-10);
    const auto single = build_chain(2, {{{0, 1}, oracle::pauli_string("XX"), CoefficientFn::constant(1.0), ""}}, {});
    EXPECT_EQ(alpha_com(single, 1, 0.0), 0.0);
    EXPECT_EQ(alpha_com(single, 3, 0.0), 0.0);
}

TEST(AlphaCom, DepthZeroIsGroupNorms) {
    const auto h = driven_heisenberg_chain({});
    const auto o = group_oracle(h, 0.6);
    double ref = 0.0;
    for (const auto& m : o.value) ref += oracle::norm(m);
    EXPECT_NEAR(alpha_com(h, 0, 0.6), ref, 1e-10);
}

TEST(AlphaComBound, ClosedForm) {
    EXPECT_DOUBLE_EQ(alpha_com_bound(4, 2, 1, 2.0, 2), 256.0);
    EXPECT_DOUBLE_EQ(alpha_com_bound(5, 3, 0, 1.5, 2), 1.5 * 5);
    // (2 k (p + 1))^p sum_j Gamma^(p+1-j) g^j N
    const int N = 6, k = 2, p = 2, G = 3;
    const double g = 1.3;
    const double ref = std::pow(2.0 * k * 3, 2) * (G * G * g + G * g * g + g * g * g) * N;
    EXPECT_NEAR(alpha_com_bound(N, k, p, g, G), ref, 1e-10 * ref);
}

TEST(AlphaComBound, DominatesMeasured) {
    std::vector<TimeDependentHamiltonian> hs{driven_heisenberg_chain({}), linear_interpolation_ising({}), adiabatic_single_spin(3.0)};
    for (const auto& h : hs)
        for (int p : {1, 2, 4}) {
            const auto sp = strength_params(h, p);
            const double bound = alpha_com_bound(h.n_sites(), h.locality(), p, sp.g, h.num_groups());
            for (int i = 0; i <= 10; ++i) EXPECT_LE(alpha_com(h, p, h.total_time() * i / 10.0), bound);
        }
}

TEST(AlphaCom, Budget) {
    std::mt19937_64 rng(1);
    std::vector<TermSpec> terms;
    for (int i = 0; i < 10; ++i) terms.push_back({{0}, oracle::random_hermitian(rng, 2), CoefficientFn::constant(1.0), ""});
    const auto h = build_chain(1, terms, {});
    ASSERT_EQ(h.num_groups(), 10);
    try {
        alpha_com(h, 5, 0.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::TermBudgetExceeded);
    }
    EXPECT_THROW(alpha_com(h, 9, 0.0), Error);
}

TEST(Residual, FirstOrderGenerator) {
    const auto h = static_two_group_chain();
    const auto A = residual_coefficients(h, build_schedule(1, 2, FormulaKind::Generalized), 1);
    const auto o = group_oracle(h, 0.0);
    const Matrix ref = -kI * (o.value[0] * o.value[1] - o.value[1] * o.value[0]);
    EXPECT_LT(oracle::norm(A[0]), 1e-12);
    EXPECT_LT(oracle::norm(A[1] - ref), 1e-10);
}

TEST(Residual, OrderConditionCancelsLowTerms) {
    const auto h = driven_heisenberg_chain({});
    for (int p : {1, 2}) {
        const auto s = build_schedule(p, h.num_groups(), FormulaKind::Generalized);
        const double scale = s.q() * strength_params(h, p).g * h.n_sites();
        const auto A = residual_coefficients(h, s, p);
        for (int n = 0; n < p; ++n) EXPECT_LE(oracle::norm(A[n]), 1e-8 * scale) << "p=" << p << " n=" << n;
        EXPECT_GT(oracle::norm(A[p]), 1e-6);
    }
}

TEST(Residual, SingleGroupHasNoResidual) {
    const double T = 1.0;
    std::vector<TermSpec> terms{
        {{0}, oracle::pauli('Z'), CoefficientFn::constant(1.0) + CoefficientFn::cos_lin(2.0, 0.0, T), ""},
        {{0, 1}, oracle::pauli_string("ZZ"), CoefficientFn::poly_in_s({0.5, 1.0}, T), ""},
    };
    const auto h = build_chain(2, terms, {});
    ASSERT_EQ(h.num_groups(), 1);
    const auto A = residual_coefficients(h, build_schedule(2, 1, FormulaKind::Generalized), 4, 0.2);
    for (const auto& a : A) EXPECT_LT(oracle::norm(a), 1e-10);
}

TEST(Residual, LeadingTermMatchesStepError) {
    // Time-independent first order: ||U - V|| / delta^2 -> ||A_1|| / 2.
    const auto h = static_two_group_chain();
    const auto s = build_schedule(1, 2, FormulaKind::Generalized);
    const double a1 = oracle::norm(residual_coefficients(h, s, 1)[1]);
    const double delta = 1e-3;
    const double ratio = oracle::norm(step(h, s, 0.0, delta) - exact_evolve(h, 0.0, delta)) / (delta * delta);
    EXPECT_NEAR(ratio, a1 / 2, 5e-3 * a1);
}

TEST(Residual, Errors) {
    const auto h = driven_heisenberg_chain({});
    const auto std2 = build_schedule(2, 3, FormulaKind::Standard);
    EXPECT_THROW(residual_coefficients(h, std2, 2), Error);
    try {
        residual_coefficients(h, build_schedule(2, 2, FormulaKind::Generalized), 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::ScheduleGroupMismatch);
    }
    const auto s = build_schedule(2, 3, FormulaKind::Generalized);
    try {
        residual_coefficients(h, s, 9);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::OrderTooHigh);
    }
    try {
        residual_coefficients(h, s, 3, 0.0, 10.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::TermBudgetExceeded);
    }
    EXPECT_GT(residual_term_count(s, 3), 10.0);
}

// Independent snapshot for the projected-norm oracles.
Matrix low_projector(const Matrix& h, int sigma) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    const Matrix v = es.eigenvectors().leftCols(sigma);
    return v * v.adjoint();
}

TEST(ProjectedNorms, DepthTwoDoubleLoop) {
    const auto h = driven_heisenberg_chain({});
    const double t = 0.3;
    const int sigma = 2;
    const Matrix P = low_projector(h.evaluate(t), sigma);
    std::vector<Matrix> local;
    for (const auto& term : h.terms()) local.push_back(term.coef.value(t) * oracle::embed(term.op, term.support, 4));
    double proj = 0.0, unproj = 0.0;
    for (const auto& a : local)
        for (const auto& b : local) {
            const Matrix c = b * a - a * b;
            proj += oracle::norm(P * c * P);
            unproj += oracle::norm(c);
        }
    const auto got = projected_commutator_norms(h, t, sigma, 2);
    EXPECT_NEAR(got.projected, proj, 1e-10);
    EXPECT_NEAR(got.unprojected, unproj, 1e-10);
    EXPECT_EQ(got.tuples, 49);
}

TEST(ProjectedNorms, DepthOne) {
    const auto h = driven_heisenberg_chain({});
    const double t = 0.7;
    const Matrix P = low_projector(h.evaluate(t), 3);
    double proj = 0.0, unproj = 0.0;
    for (const auto& term : h.terms()) {
        const Matrix m = term.coef.value(t) * oracle::embed(term.op, term.support, 4);
        proj += oracle::norm(P * m * P);
        unproj += oracle::norm(m);
    }
    const auto got = projected_commutator_norms(h, t, 3, 1);
    EXPECT_NEAR(got.projected, proj, 1e-10);
    EXPECT_NEAR(got.unprojected, unproj, 1e-10);
    EXPECT_LE(got.projected, h.terms().size() * got.delta);
}

TEST(ProjectedNorms, BoundsHold) {
    const std::vector<TimeDependentHamiltonian> hs{driven_heisenberg_chain({}), linear_interpolation_ising({})};
    for (const auto& h : hs)
        for (int depth : {1, 2, 3})
            for (double s : {0.0, 0.5, 1.0}) {
                // The Ising ramp starts with a degenerate first excited level.
                const int sigma = &h == &hs[0] ? 2 : 1;
                const auto got = projected_commutator_norms(h, s * h.total_time(), sigma, depth);
                EXPECT_LE(got.projected, got.unprojected + 1e-12);
                // Frustration-free ground states give an exact zero on both sides.
                EXPECT_LE(got.projected, got.projected_bound + 1e-12);
                EXPECT_LE(got.unprojected, got.unprojected_bound);
            }
    EXPECT_THROW(projected_commutator_norms(hs[0], 0.0, 2, 0), Error);
    EXPECT_THROW(projected_commutator_norms(hs[0], 0.0, 2, 8), Error);
}

TEST(LeakOperator, IdentityDoesNotLeak) {
    const auto h = driven_heisenberg_chain({});
    const auto r = leak_operator_check(h, 0.2, Matrix::Identity(16, 16), 1.0, 3.0);
    EXPECT_EQ(r.R_A, 0.0);
    EXPECT_LT(r.measured, 1e-12);
}

TEST(LeakOperator, SingleSitePauli) {
    const auto h = driven_heisenberg_chain({});
    const Matrix A = oracle::embed(oracle::pauli('Z'), {0}, 4);
    const auto sp = strength_params(h, 0);
    // Terms touching site 0 that do not commute with Z: bond 0 and the x0 field.
    double R = 0.0;
    for (const auto& term : h.terms()) {
        const Matrix m = term.coef.value(0.5) * oracle::embed(term.op, term.support, 4);
        if (oracle::norm(m * A - A * m) > 1e-12) R += std::abs(term.coef.value(0.5)) * term.norm;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(h.evaluate(0.5));
    const double lo = es.eigenvalues()(3);
    for (double gap : {0.0, 1.0, 2 * R + 2.0, 2 * R + 10.0}) {
        const auto r = leak_operator_check(h, 0.5, A, lo, lo + gap);
        EXPECT_NEAR(r.R_A, R, 1e-12);
        EXPECT_NEAR(r.lambda, sp.lambda, 1e-15);
        EXPECT_LE(r.measured, r.bound);
        if (gap == 0.0) EXPECT_GE(r.bound, oracle::norm(A));
    }
    EXPECT_THROW(leak_operator_check(h, 0.5, Matrix::Identity(4, 4), 0.0, 1.0), Error);
}

}  // namespace
}  // namespace lowtrot
