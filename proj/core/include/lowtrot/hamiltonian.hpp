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

#include <optional>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "lowtrot/coefficient.hpp"
#include "lowtrot/linalg.hpp"

namespace lowtrot {

using SparseMatrix = Eigen::SparseMatrix<cplx>;

// Input description of one term f(t) h acting on `support`. The operator's
// first tensor factor acts on support[0]; supports need not be sorted.
struct TermSpec {
    std::vector<int> support;
    Matrix op;
    CoefficientFn coef;
    std::string label;
};

// A normalized term: sorted support, positive semidefinite operator and a
// coefficient that is non-negative on [0, T].
struct LocalTerm {
    std::vector<int> support;
    Matrix op;
    CoefficientFn coef;
    std::string label;
    double shift = 0.0;     // op = (original, possibly negated) + shift * I
    bool negated = false;   // coefficient and operator were both negated
    double norm = 0.0;      // spectral norm of op
    HermitianEig eig;       // of op
};

struct ChainOptions {
    double total_time = 1.0;
    // Highest derivative order derivative_operator will serve. Products up to
    // order 6 need p + 2 = 8.
    int max_derivative_order = 8;
    // Explicit grouping by term index. Greedy coloring when absent.
    std::optional<std::vector<std::vector<int>>> groups;
};

class TimeDependentHamiltonian {
public:
    int n_sites() const { return n_sites_; }
    long dim() const { return 1L << n_sites_; }
    int locality() const { return locality_; }
    double total_time() const { return total_time_; }
    int max_derivative_order() const { return max_order_; }

    const std::vector<LocalTerm>& terms() const { return terms_; }
    const std::vector<std::vector<int>>& groups() const { return groups_; }
    int num_groups() const { return static_cast<int>(groups_.size()); }
    int group_of(int term) const { return group_of_[static_cast<std::size_t>(term)]; }

    const SparseMatrix& embedded(int term) const { return embedded_[static_cast<std::size_t>(term)]; }
    const LocalAction& action(int term) const { return actions_[static_cast<std::size_t>(term)]; }

    Matrix evaluate(double t) const;
    Matrix evaluate_group(int gamma, double t) const;
    // m-th time derivative of H(t).
    Matrix derivative_operator(double t, int m) const;
    Matrix group_derivative(int gamma, double t, int m) const;

    void check_time(double t) const;

private:
    friend TimeDependentHamiltonian build_chain(int, std::vector<TermSpec>, const ChainOptions&);

    int n_sites_ = 0;
    int locality_ = 0;
    double total_time_ = 1.0;
    int max_order_ = 8;
    std::vector<LocalTerm> terms_;
    std::vector<std::vector<int>> groups_;
    std::vector<int> group_of_;
    std::vector<SparseMatrix> embedded_;
    std::vector<LocalAction> actions_;
};

// Validates, normalizes signs, shifts every term to be positive semidefinite
// and partitions the terms into mutually commuting groups.
TimeDependentHamiltonian build_chain(int n_sites, std::vector<TermSpec> terms, const ChainOptions& opts);

// Greedy coloring of the graph whose edges join terms with overlapping
// supports that fail to commute. Terms are visited by (first site, support,
// index).
std::vector<std::vector<int>> greedy_groups(const std::vector<LocalTerm>& terms);

// Commutator norm of two local terms computed on the union of their supports.
double local_commutator_norm(const std::vector<int>& sa, const Matrix& a, const std::vector<int>& sb, const Matrix& b);

struct StrengthParams {
    int p = 0;
    int k = 0;
    double F = 0.0;                 // max |f^(n)| over n <= p, terms, time grid
    double induced_one_norm = 0.0;  // max over sites of summed ||h_X||
    double g = 0.0;                 // F * induced_one_norm
    double lambda = 0.0;            // 1 / (2 g k)
};

// Coefficients are sampled on 1001 uniform points of [0, T] (endpoints
// included). Throws OrderTooHigh when p + 2 exceeds the Hamiltonian's
// derivative cap and InvalidArgument when a derivative up to p + 2 is not
// finite on the grid.
StrengthParams strength_params(const TimeDependentHamiltonian& h, int p);

double induced_one_norm(const TimeDependentHamiltonian& h);

inline constexpr int kCoefficientGrid = 1001;

}  // namespace lowtrot
