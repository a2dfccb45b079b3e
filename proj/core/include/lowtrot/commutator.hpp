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

#pragma once

#include <vector>

#include "lowtrot/coefficient.hpp"
#include "lowtrot/hamiltonian.hpp"
#include "lowtrot/linalg.hpp"
#include "lowtrot/product_formula.hpp"

namespace lowtrot {

// Value and derivatives d[0..order] of an operator-valued function at one time.
struct OperatorJet {
    std::vector<Matrix> d;

    int order() const { return static_cast<int>(d.size()) - 1; }
    const Matrix& value() const { return d.front(); }
};

// [h, x] with the Leibniz rule; the order is the smaller of the two.
OperatorJet jet_commutator(const OperatorJet& h, const OperatorJet& x);
OperatorJet jet_derivative(const OperatorJet& x);  // order drops by one
OperatorJet jet_scaled(const OperatorJet& x, cplx c);
OperatorJet jet_sum(const OperatorJet& a, const OperatorJet& b);  // order is the smaller

// Finite sum of (scalar coefficient function) x (constant matrix), closed
// under commutators and time derivatives.
class OperatorFn {
public:
    struct Term {
        CoefficientFn coef;
        Matrix op;
    };

    OperatorFn() = default;
    explicit OperatorFn(long dim) : dim_(dim) {}

    static OperatorFn group(const TimeDependentHamiltonian& h, int gamma);
    static OperatorFn full(const TimeDependentHamiltonian& h);

    long dim() const { return dim_; }
    const std::vector<Term>& terms() const { return terms_; }
    void add(CoefficientFn coef, Matrix op);

    Matrix evaluate(double t) const;
    OperatorJet jet(double t, int order) const;

    OperatorFn commutator_with(const OperatorFn& x) const;  // [*this, x]
    OperatorFn time_derivative() const;
    OperatorFn scaled(cplx c) const;
    OperatorFn operator+(const OperatorFn& other) const;

private:
    long dim_ = 0;
    std::vector<Term> terms_;
};

inline constexpr double kAlphaComBudget = 1e6;
inline constexpr double kResidualBudget = 1e7;

// Sum over gamma_1..gamma_p in [Gamma + 1] and gamma_0 in [Gamma] of
// ||D_gamma_1 ... D_gamma_p H_gamma_0(t)||, with D_gamma = ad_{H_gamma} for
// gamma <= Gamma and D_{Gamma+1} = c d/dt, c = 2 Gamma (or Gamma when
// `barred`). Throws TermBudgetExceeded above 1e6 summands.
double alpha_com(const TimeDependentHamiltonian& h, int p, double t, bool barred = false);

// (2 k (p+1))^p * sum_{j=1}^{p+1} Gamma^(p+1-j) g^j N.
double alpha_com_bound(int N, int k, int p, double g, int Gamma);

// Coefficients A_0..A_{n_max} of the expansion of the generalized formula's
// residual around the step start t0, computed in the original space: the
// operators acting on H_gamma are D_{2j-1} = ad_{H_gamma_j} + i d/dt and
// D_{2j} = i d/dt with weights alpha~_{2j-1} = alpha_j and
// alpha~_{2j} = beta_{j+1} - beta_j - alpha_j. Compositions are enumerated
// lexicographically, skipping slots with zero weight.
std::vector<Matrix> residual_coefficients(const TimeDependentHamiltonian& h, const PFSchedule& s, int n_max, double t0 = 0.0,
                                          double budget = kResidualBudget);

// Number of summands residual_coefficients would visit.
double residual_term_count(const PFSchedule& s, int n_max);

struct ProjectedCommutatorNorms {
    int depth = 0;
    double projected = 0.0;     // sum ||Pi [h_Xj, ... [h_X2, h_X1]] Pi||
    double unprojected = 0.0;   // sum ||[h_Xj, ... [h_X2, h_X1]]||
    double projected_bound = 0.0;
    double unprojected_bound = 0.0;
    double delta = 0.0;         // E_sigma(t) = ||Pi H(t) Pi||
    double g = 0.0;
    long tuples = 0;
};

// Terms are f_X(t) h_X and Pi is the sigma-lowest projector of H(t). For
// depth j >= 2 the bounds are (j-1)! (2kg)^(j-1) E_sigma and
// (j-1)! (2kg)^(j-1) gN. For j = 1 every ||Pi h_X Pi|| is at most
// ||Pi H Pi|| since all terms are positive semidefinite, so the projected
// bound is (term count) * E_sigma. g comes from strength_params(h, 0).
ProjectedCommutatorNorms projected_commutator_norms(const TimeDependentHamiltonian& h, double t, int sigma, int depth);

struct LeakOperatorCheck {
    double measured = 0.0;  // ||Pi_{>hi} A Pi_{<=lo}||
    double bound = 0.0;     // ||A|| exp(-lambda (hi - lo - 2 R_A))
    double R_A = 0.0;       // summed ||f_X h_X|| over terms not commuting with A
    double lambda = 0.0;
};

// Spectral projectors of H(t); lambda = 1 / (2 g k) from strength_params(h, 0).
LeakOperatorCheck leak_operator_check(const TimeDependentHamiltonian& h, double t, const Matrix& A, double lo, double hi);

}  // namespace lowtrot
