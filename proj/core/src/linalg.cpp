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

#include "lowtrot/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "lowtrot/error.hpp"

namespace lowtrot {

namespace {

constexpr Eigen::Index kDenseSvdLimit = 1024;

double power_iteration_norm(const Matrix& m) {
    Vector v = Vector::Ones(m.cols()) / std::sqrt(static_cast<double>(m.cols()));
    double est = 0.0;
    for (int it = 0; it < 2000; ++it) {
        Vector w = m.adjoint() * (m * v);
        double nw = w.norm();
        if (nw == 0.0) return 0.0;
        v = w / nw;
        double next = std::sqrt(nw);
        if (std::abs(next - est) <= 1e-14 * next) return next;
        est = next;
    }
    return est;
}

}  // namespace

double spectral_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    if (m.rows() > kDenseSvdLimit || m.cols() > kDenseSvdLimit) return power_iteration_norm(m);
    if (m.rows() <= 16 && m.cols() <= 16) {
        Eigen::JacobiSVD<Matrix> svd(m);
        return svd.singularValues()(0);
    }
    Eigen::BDCSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

double normal_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    // Anti-Hermitian input becomes Hermitian after multiplying by i.
    const bool anti = (m + m.adjoint()).cwiseAbs().maxCoeff() <= (m - m.adjoint()).cwiseAbs().maxCoeff();
    Matrix h = anti ? Matrix(kI * m) : m;
    h = 0.5 * (h + h.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

bool is_hermitian(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

HermitianEig hermitian_eig(const Matrix& h) {
    Matrix sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
    if (es.info() != Eigen::Success) throw Error(Errc::NoConvergence, "Hermitian eigensolver failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

Matrix exp_minus_i(const HermitianEig& eig, double theta) {
    const Eigen::Index d = eig.values.size();
    Vector phases(d);
    for (Eigen::Index i = 0; i < d; ++i) phases(i) = std::exp(cplx(0.0, -theta * eig.values(i)));
    return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

Matrix exp_minus_i(const Matrix& h) { return exp_minus_i(hermitian_eig(h), 1.0); }

Matrix pauli_string(std::string_view letters) {
    Matrix out = Matrix::Identity(1, 1);
    for (char c : letters) {
        Matrix p(2, 2);
        switch (c) {
            case 'I': p << 1, 0, 0, 1; break;
            case 'X': p << 0, 1, 1, 0; break;
            case 'Y': p << 0, cplx(0, -1), cplx(0, 1), 0; break;
            case 'Z': p << 1, 0, 0, -1; break;
            default: throw Error(Errc::InvalidArgument, std::string("unknown Pauli letter '") + c + "'");
        }
        Matrix next(out.rows() * 2, out.cols() * 2);
        for (Eigen::Index i = 0; i < out.rows(); ++i)
            for (Eigen::Index j = 0; j < out.cols(); ++j) next.block(2 * i, 2 * j, 2, 2) = out(i, j) * p;
        out = std::move(next);
    }
    return out;
}

Matrix permute_factors(const Matrix& op, std::span<const int> perm) {
    const int k = static_cast<int>(perm.size());
    const Eigen::Index d = Eigen::Index(1) << k;
    if (op.rows() != d || op.cols() != d) throw Error(Errc::InvalidArgument, "operator size does not match factor count");
    std::vector<Eigen::Index> map(static_cast<std::size_t>(d));
    for (Eigen::Index x = 0; x < d; ++x) {
        Eigen::Index y = 0;
        for (int j = 0; j < k; ++j) {
            if ((x >> (k - 1 - j)) & 1) y |= Eigen::Index(1) << (k - 1 - perm[static_cast<std::size_t>(j)]);
        }
        map[static_cast<std::size_t>(x)] = y;
    }
    Matrix out(d, d);
    for (Eigen::Index r = 0; r < d; ++r)
        for (Eigen::Index c = 0; c < d; ++c)
            out(r, c) = op(map[static_cast<std::size_t>(r)], map[static_cast<std::size_t>(c)]);
    return out;
}

LocalAction::LocalAction(std::span<const int> support, int n_sites) {
    const int k = static_cast<int>(support.size());
    if (k > 6) throw Error(Errc::InvalidArgument, "local operators act on at most 6 sites");
    local_dim_ = 1 << k;
    full_dim_ = 1 << n_sites;
    std::vector<int> bitpos(static_cast<std::size_t>(k));
    int outside_mask = full_dim_ - 1;
    for (int j = 0; j < k; ++j) {
        bitpos[static_cast<std::size_t>(j)] = n_sites - 1 - support[static_cast<std::size_t>(j)];
        outside_mask &= ~(1 << bitpos[static_cast<std::size_t>(j)]);
    }
    table_.assign(static_cast<std::size_t>(full_dim_), 0);
    int block = 0;
    // Enumerate the outside configurations in increasing order, then fill
    // every local index for each of them.
    for (int rest = 0; rest < full_dim_; ++rest) {
        if ((rest & ~outside_mask) != 0) continue;
        for (int a = 0; a < local_dim_; ++a) {
            int idx = rest;
            for (int j = 0; j < k; ++j)
                if ((a >> (k - 1 - j)) & 1) idx |= 1 << bitpos[static_cast<std::size_t>(j)];
            table_[static_cast<std::size_t>(block * local_dim_ + a)] = idx;
        }
        ++block;
    }
}

void LocalAction::apply_left(const Matrix& op, Matrix& m) const {
    const int ld = local_dim_;
    const int blocks = full_dim_ / ld;
    cplx in[64];
    const cplx* o = op.data();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        cplx* col = m.data() + c * m.rows();
        for (int b = 0; b < blocks; ++b) {
            const int* idx = table_.data() + b * ld;
            for (int a = 0; a < ld; ++a) in[a] = col[idx[a]];
            for (int r = 0; r < ld; ++r) {
                cplx acc = 0.0;
                for (int a = 0; a < ld; ++a) acc += o[a * ld + r] * in[a];
                col[idx[r]] = acc;
            }
        }
    }
}

Matrix embed(const Matrix& op, std::span<const int> support, int n_sites) {
    LocalAction act(support, n_sites);
    Matrix out = Matrix::Identity(act.full_dim(), act.full_dim());
    act.apply_left(op, out);
    return out;
}

}  // namespace lowtrot
