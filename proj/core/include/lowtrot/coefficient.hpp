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

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lowtrot {

namespace detail {
struct CoefNode;
}

// Scalar function of physical time t. Atoms are written in the scaled time
// s = t / T, where T is fixed per atom:
//   constant(c)           c
//   poly_in_s(c, T)       sum_i c[i] s^i
//   cos_lin(a, b, T)      cos(a s + b)
//   sin_lin(a, b, T)      sin(a s + b)
// Sums, products and scalar multiples of these are closed under derivation.
// All derivatives are with respect to t.
class CoefficientFn {
public:
    CoefficientFn();  // identically zero

    static CoefficientFn constant(double c);
    static CoefficientFn poly_in_s(std::vector<double> coeffs, double T);
    static CoefficientFn cos_lin(double a, double b, double T);
    static CoefficientFn sin_lin(double a, double b, double T);

    double value(double t) const;
    double derivative_value(double t, int m) const;
    // out[n] = n-th derivative at t for n = 0..out.size()-1.
    void jet(double t, std::span<double> out) const;

    CoefficientFn derivative(int m = 1) const;

    // Closed form for sums of atoms; 32-point Gauss-Legendre with adaptive
    // bisection (tolerance 1e-12) for anything containing a non-polynomial product.
    double integral(double t1, double t2) const;

    // Coefficients in powers of t when the function is a polynomial.
    std::optional<std::vector<double>> polynomial_in_t() const;

    bool is_zero() const;
    bool is_constant() const;
    std::string to_string() const;

    CoefficientFn operator-() const;
    friend CoefficientFn operator+(const CoefficientFn& a, const CoefficientFn& b);
    friend CoefficientFn operator-(const CoefficientFn& a, const CoefficientFn& b);
    friend CoefficientFn operator*(const CoefficientFn& a, const CoefficientFn& b);
    friend CoefficientFn operator*(double c, const CoefficientFn& a);
    friend CoefficientFn operator*(const CoefficientFn& a, double c) { return c * a; }

private:
    explicit CoefficientFn(std::shared_ptr<const detail::CoefNode> node);
    std::shared_ptr<const detail::CoefNode> node_;
};

// Parses a coefficient expression in the scaled time variable s; see README
// for the grammar. Throws Error(ConfigParse) with the column of the problem.
CoefficientFn parse_coefficient(std::string_view text, double T);

// Adaptive Gauss-Legendre integration of an arbitrary callable.
double gauss_legendre_integral(const std::function<double(double)>& f, double a, double b, double tol = 1e-12);

}  // namespace lowtrot
