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

#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace lowtrot {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};

// Largest singular value. Dense SVD up to 1024 rows/cols, power iteration above.
double spectral_norm(const Matrix& m);

// Spectral norm of a Hermitian or anti-Hermitian matrix from its eigenvalues.
double normal_norm(const Matrix& m);

Matrix commutator(const Matrix& a, const Matrix& b);

bool is_hermitian(const Matrix& m, double tol = 1e-10);

struct HermitianEig {
    RealVector values;  // ascending
    Matrix vectors;     // columns
};

HermitianEig hermitian_eig(const Matrix& h);

// exp(-i theta h) from a precomputed eigendecomposition of h.
Matrix exp_minus_i(const HermitianEig& eig, double theta);

// exp(-i h) for Hermitian h.
Matrix exp_minus_i(const Matrix& h);

// Tensor product of single-qubit Paulis; the first letter acts on the most
// significant qubit. Letters are I, X, Y, Z.
Matrix pauli_string(std::string_view letters);

// Reorders the tensor factors of a 2^k x 2^k operator. Factor j of the result
// is factor perm[j] of the input.
Matrix permute_factors(const Matrix& op, std::span<const int> perm);

// Site s of an n-site register is bit (n - 1 - s) of the basis index, so site 0
// is the leftmost tensor factor.
Matrix embed(const Matrix& op, std::span<const int> support, int n_sites);

// Index table for applying a local operator to the rows of a full matrix
// without forming the embedded operator.
class LocalAction {
public:
    LocalAction() = default;
    LocalAction(std::span<const int> support, int n_sites);

    // m <- embed(op) * m
    void apply_left(const Matrix& op, Matrix& m) const;

    int local_dim() const { return local_dim_; }
    int full_dim() const { return full_dim_; }
    int blocks() const { return local_dim_ == 0 ? 0 : full_dim_ / local_dim_; }
    // Full-register index of local basis state a within block b.
    int index(int b, int a) const { return table_[static_cast<std::size_t>(b * local_dim_ + a)]; }

private:
    int local_dim_ = 0;
    int full_dim_ = 0;
    std::vector<int> table_;  // block-major: table_[b * local_dim_ + a]
};

}  // namespace lowtrot
