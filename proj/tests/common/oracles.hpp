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

// Reference implementations used by the tests. Nothing here calls into the
// library; every routine is written from the textbook definition.

#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Mat pauli(char c) {
    Mat m = Mat::Zero(2, 2);
    switch (c) {
        case 'I': m << 1, 0, 0, 1; break;
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, cplx(0, -1), cplx(0, 1), 0; break;
        case 'Z': m << 1, 0, 0, -1; break;
        default: throw std::invalid_argument("pauli letter");
    }
    return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline Mat pauli_string(const std::string& s) {
    Mat m = Mat::Identity(1, 1);
    for (char c : s) m = kron(m, pauli(c));
    return m;
}

// Site 0 is the most significant bit, and support[0] the most significant
// bit of the local index.
inline Mat embed(const Mat& op, const std::vector<int>& support, int n) {
    const long dim = 1L << n;
    Mat out = Mat::Zero(dim, dim);
    const int k = static_cast<int>(support.size());
    long mask = 0;
    for (int s : support) mask |= 1L << (n - 1 - s);
    auto local = [&](long idx) {
        long l = 0;
        for (int a = 0; a < k; ++a) l = (l << 1) | ((idx >> (n - 1 - support[a])) & 1L);
        return l;
    };
    for (long i = 0; i < dim; ++i)
        for (long j = 0; j < dim; ++j)
            if ((i & ~mask) == (j & ~mask)) out(i, j) = op(local(i), local(j));
    return out;
}

inline double norm(const Mat& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues()(0);
}

inline Mat expm_minus_i(const Mat& h, double t) {
    Mat a = cplx(0, -t) * h;
    return a.exp();
}

inline Mat random_hermitian(std::mt19937_64& rng, long dim, double scale = 1.0) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Mat a(dim, dim);
    for (long i = 0; i < dim; ++i)
        for (long j = 0; j < dim; ++j) a(i, j) = cplx(nd(rng), nd(rng));
    return 0.5 * scale * (a + a.adjoint());
}

inline double min_eig(const Mat& h) {
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    return es.eigenvalues()(0);
}

// Time-independent Suzuki formulas on fixed group matrices, groups applied
// in index order first.
inline Mat suzuki(const std::vector<Mat>& groups, int p, double dt) {
    const long dim = groups.front().rows();
    if (p == 1) {
        Mat u = Mat::Identity(dim, dim);
        for (const auto& g : groups) u = expm_minus_i(g, dt) * u;
        return u;
    }
    if (p == 2) {
        Mat u = Mat::Identity(dim, dim);
        for (const auto& g : groups) u = expm_minus_i(g, dt / 2) * u;
        for (auto it = groups.rbegin(); it != groups.rend(); ++it) u = expm_minus_i(*it, dt / 2) * u;
        return u;
    }
    const double u = 1.0 / (4.0 - std::pow(4.0, 1.0 / (p - 1)));
    const Mat a = suzuki(groups, p - 2, u * dt);
    const Mat b = suzuki(groups, p - 2, (1.0 - 4.0 * u) * dt);
    return a * a * b * a * a;
}

}  // namespace oracle
