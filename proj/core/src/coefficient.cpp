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

#include "lowtrot/coefficient.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lowtrot/error.hpp"

namespace lowtrot {

namespace detail {

enum class Kind { Constant, Poly, Cos, Sin, Sum, Product, Scale };

struct CoefNode {
    Kind kind = Kind::Constant;
    double c = 0.0;  // Constant value or Scale factor
    double a = 0.0;
    double b = 0.0;
    double T = 1.0;
    std::vector<double> coeffs;
    std::vector<std::shared_ptr<const CoefNode>> kids;
};

}  // namespace detail

using detail::CoefNode;
using detail::Kind;
using NodePtr = std::shared_ptr<const CoefNode>;

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

NodePtr make_constant(double c) {
    auto n = std::make_shared<CoefNode>();
    n->kind = Kind::Constant;
    n->c = c;
    return n;
}

bool node_is_constant(const NodePtr& n) { return n->kind == Kind::Constant; }
bool node_is_zero(const NodePtr& n) { return n->kind == Kind::Constant && n->c == 0.0; }

NodePtr make_scale(double c, const NodePtr& x) {
    if (c == 0.0 || node_is_zero(x)) return make_constant(0.0);
    if (c == 1.0) return x;
    if (node_is_constant(x)) return make_constant(c * x->c);
    if (x->kind == Kind::Scale) return make_scale(c * x->c, x->kids[0]);
    auto n = std::make_shared<CoefNode>();
    n->kind = Kind::Scale;
    n->c = c;
    n->kids = {x};
    return n;
}

NodePtr make_sum(const NodePtr& x, const NodePtr& y) {
    if (node_is_zero(x)) return y;
    if (node_is_zero(y)) return x;
    if (node_is_constant(x) && node_is_constant(y)) return make_constant(x->c + y->c);
    auto n = std::make_shared<CoefNode>();
    n->kind = Kind::Sum;
    auto add = [&](const NodePtr& k) {
        if (k->kind == Kind::Sum)
            n->kids.insert(n->kids.end(), k->kids.begin(), k->kids.end());
        else
            n->kids.push_back(k);
    };
    add(x);
    add(y);
    return n;
}

NodePtr make_product(const NodePtr& x, const NodePtr& y) {
    if (node_is_zero(x) || node_is_zero(y)) return make_constant(0.0);
    if (node_is_constant(x)) return make_scale(x->c, y);
    if (node_is_constant(y)) return make_scale(y->c, x);
    auto n = std::make_shared<CoefNode>();
    n->kind = Kind::Product;
    n->kids = {x, y};
    return n;
}

double eval(const CoefNode& n, double t) {
    switch (n.kind) {
        case Kind::Constant: return n.c;
        case Kind::Poly: {
            const double s = t / n.T;
            double acc = 0.0;
            for (auto it = n.coeffs.rbegin(); it != n.coeffs.rend(); ++it) acc = acc * s + *it;
            return acc;
        }
        case Kind::Cos: return std::cos(n.a * t / n.T + n.b);
        case Kind::Sin: return std::sin(n.a * t / n.T + n.b);
        case Kind::Sum: {
            double acc = 0.0;
            for (const auto& k : n.kids) acc += eval(*k, t);
            return acc;
        }
        case Kind::Product: return eval(*n.kids[0], t) * eval(*n.kids[1], t);
        case Kind::Scale: return n.c * eval(*n.kids[0], t);
    }
    return 0.0;
}

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

void node_jet(const CoefNode& n, double t, std::span<double> out) {
    const int order = static_cast<int>(out.size()) - 1;
    switch (n.kind) {
        case Kind::Constant:
            for (auto& v : out) v = 0.0;
            out[0] = n.c;
            return;
        case Kind::Poly: {
            const double s = t / n.T;
            std::vector<double> c = n.coeffs;
            double scale = 1.0;
            for (int m = 0; m <= order; ++m) {
                double acc = 0.0;
                for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * s + *it;
                out[static_cast<std::size_t>(m)] = acc * scale;
                // differentiate in s, then account for ds/dt = 1/T
                std::vector<double> d;
                for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * static_cast<double>(i));
                c = std::move(d);
                scale /= n.T;
            }
            return;
        }
        case Kind::Cos:
        case Kind::Sin: {
            const double phase = n.a * t / n.T + n.b;
            const double w = n.a / n.T;
            double wm = 1.0;
            for (int m = 0; m <= order; ++m) {
                const double arg = phase + m * kHalfPi;
                out[static_cast<std::size_t>(m)] = wm * (n.kind == Kind::Cos ? std::cos(arg) : std::sin(arg));
                wm *= w;
            }
            return;
        }
        case Kind::Sum: {
            std::vector<double> tmp(out.size());
            for (auto& v : out) v = 0.0;
            for (const auto& k : n.kids) {
                node_jet(*k, t, tmp);
                for (std::size_t i = 0; i < out.size(); ++i) out[i] += tmp[i];
            }
            return;
        }
        case Kind::Product: {
            std::vector<double> f(out.size()), g(out.size());
            node_jet(*n.kids[0], t, f);
            node_jet(*n.kids[1], t, g);
            for (int m = 0; m <= order; ++m) {
                double acc = 0.0;
                for (int k = 0; k <= m; ++k)
                    acc += binomial(m, k) * f[static_cast<std::size_t>(k)] * g[static_cast<std::size_t>(m - k)];
                out[static_cast<std::size_t>(m)] = acc;
            }
            return;
        }
        case Kind::Scale:
            node_jet(*n.kids[0], t, out);
            for (auto& v : out) v *= n.c;
            return;
    }
}

NodePtr node_derivative(const NodePtr& n) {
    switch (n->kind) {
        case Kind::Constant: return make_constant(0.0);
        case Kind::Poly: {
            if (n->coeffs.size() <= 1) return make_constant(0.0);
            auto d = std::make_shared<CoefNode>();
            d->kind = Kind::Poly;
            d->T = n->T;
            for (std::size_t i = 1; i < n->coeffs.size(); ++i)
                d->coeffs.push_back(n->coeffs[i] * static_cast<double>(i) / n->T);
            return d;
        }
        case Kind::Cos:
        case Kind::Sin: {
            if (n->a == 0.0) return make_constant(0.0);
            auto d = std::make_shared<CoefNode>(*n);
            d->b = n->b + kHalfPi;
            return make_scale(n->a / n->T, d);
        }
        case Kind::Sum: {
            NodePtr acc = make_constant(0.0);
            for (const auto& k : n->kids) acc = make_sum(acc, node_derivative(k));
            return acc;
        }
        case Kind::Product: {
            const auto& f = n->kids[0];
            const auto& g = n->kids[1];
            return make_sum(make_product(node_derivative(f), g), make_product(f, node_derivative(g)));
        }
        case Kind::Scale: return make_scale(n->c, node_derivative(n->kids[0]));
    }
    return make_constant(0.0);
}

using Poly = std::vector<double>;

std::optional<Poly> node_polynomial(const CoefNode& n) {
    switch (n.kind) {
        case Kind::Constant: return Poly{n.c};
        case Kind::Poly: {
            Poly p(n.coeffs.size());
            double scale = 1.0;
            for (std::size_t i = 0; i < n.coeffs.size(); ++i) {
                p[i] = n.coeffs[i] * scale;
                scale /= n.T;
            }
            return p;
        }
        case Kind::Cos:
            if (n.a == 0.0) return Poly{std::cos(n.b)};
            return std::nullopt;
        case Kind::Sin:
            if (n.a == 0.0) return Poly{std::sin(n.b)};
            return std::nullopt;
        case Kind::Sum: {
            Poly acc;
            for (const auto& k : n.kids) {
                auto p = node_polynomial(*k);
                if (!p) return std::nullopt;
                if (p->size() > acc.size()) acc.resize(p->size(), 0.0);
                for (std::size_t i = 0; i < p->size(); ++i) acc[i] += (*p)[i];
            }
            return acc;
        }
        case Kind::Product: {
            auto f = node_polynomial(*n.kids[0]);
            if (!f) return std::nullopt;
            auto g = node_polynomial(*n.kids[1]);
            if (!g) return std::nullopt;
            Poly acc(f->size() + g->size() - 1, 0.0);
            for (std::size_t i = 0; i < f->size(); ++i)
                for (std::size_t j = 0; j < g->size(); ++j) acc[i + j] += (*f)[i] * (*g)[j];
            return acc;
        }
        case Kind::Scale: {
            auto p = node_polynomial(*n.kids[0]);
            if (!p) return std::nullopt;
            for (auto& v : *p) v *= n.c;
            return p;
        }
    }
    return std::nullopt;
}

double poly_integral(const Poly& p, double t1, double t2) {
    double acc = 0.0;
    for (std::size_t i = p.size(); i-- > 0;) {
        const double k = static_cast<double>(i + 1);
        acc += p[i] * (std::pow(t2, k) - std::pow(t1, k)) / k;
    }
    return acc;
}

struct GaussLegendre32 {
    static constexpr int kN = 32;
    std::array<double, kN> x{};
    std::array<double, kN> w{};

    GaussLegendre32() {
        for (int i = 0; i < kN; ++i) {
            double z = std::cos(std::numbers::pi * (i + 0.75) / (kN + 0.5));
            double dp = 1.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = z;
                for (int k = 2; k <= kN; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = kN * (z * p1 - p0) / (z * z - 1.0);
                const double dz = p1 / dp;
                z -= dz;
                if (std::abs(dz) < 1e-16) break;
            }
            x[static_cast<std::size_t>(i)] = z;
            w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * dp * dp);
        }
    }

    double apply(const std::function<double(double)>& f, double a, double b) const {
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        double acc = 0.0;
        for (int i = 0; i < kN; ++i) acc += w[static_cast<std::size_t>(i)] * f(mid + half * x[static_cast<std::size_t>(i)]);
        return acc * half;
    }
};

const GaussLegendre32& gl32() {
    static const GaussLegendre32 rule;
    return rule;
}

double adaptive(const std::function<double(double)>& f, double a, double b, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double left = gl32().apply(f, a, m);
    const double right = gl32().apply(f, m, b);
    const double refined = left + right;
    if (depth >= 40 || std::abs(refined - whole) <= std::max(tol, tol * std::abs(refined))) return refined;
    return adaptive(f, a, m, left, 0.5 * tol, depth + 1) + adaptive(f, m, b, right, 0.5 * tol, depth + 1);
}

double node_integral(const NodePtr& n, double t1, double t2) {
    switch (n->kind) {
        case Kind::Constant: return n->c * (t2 - t1);
        case Kind::Poly: return poly_integral(*node_polynomial(*n), t1, t2);
        case Kind::Cos:
            if (n->a == 0.0) return std::cos(n->b) * (t2 - t1);
            return n->T / n->a * (std::sin(n->a * t2 / n->T + n->b) - std::sin(n->a * t1 / n->T + n->b));
        case Kind::Sin:
            if (n->a == 0.0) return std::sin(n->b) * (t2 - t1);
            return -n->T / n->a * (std::cos(n->a * t2 / n->T + n->b) - std::cos(n->a * t1 / n->T + n->b));
        case Kind::Sum: {
            double acc = 0.0;
            for (const auto& k : n->kids) acc += node_integral(k, t1, t2);
            return acc;
        }
        case Kind::Scale: return n->c * node_integral(n->kids[0], t1, t2);
        case Kind::Product: {
            if (auto p = node_polynomial(*n)) return poly_integral(*p, t1, t2);
            const CoefNode* raw = n.get();
            return gauss_legendre_integral([raw](double t) { return eval(*raw, t); }, t1, t2);
        }
    }
    return 0.0;
}

std::string fmt_num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string node_string(const CoefNode& n) {
    switch (n.kind) {
        case Kind::Constant: return fmt_num(n.c);
        case Kind::Poly: {
            std::string s = "poly(";
            for (std::size_t i = 0; i < n.coeffs.size(); ++i) s += (i ? "," : "") + fmt_num(n.coeffs[i]);
            return s + ")";
        }
        case Kind::Cos: return "cos(" + fmt_num(n.a) + "*s+" + fmt_num(n.b) + ")";
        case Kind::Sin: return "sin(" + fmt_num(n.a) + "*s+" + fmt_num(n.b) + ")";
        case Kind::Sum: {
            std::string s = "(";
            for (std::size_t i = 0; i < n.kids.size(); ++i) s += (i ? "+" : "") + node_string(*n.kids[i]);
            return s + ")";
        }
        case Kind::Product: return node_string(*n.kids[0]) + "*" + node_string(*n.kids[1]);
        case Kind::Scale: return fmt_num(n.c) + "*" + node_string(*n.kids[0]);
    }
    return "?";
}

}  // namespace

double gauss_legendre_integral(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    const double whole = gl32().apply(f, a, b);
    return adaptive(f, a, b, whole, tol, 0);
}

CoefficientFn::CoefficientFn() : node_(make_constant(0.0)) {}
CoefficientFn::CoefficientFn(std::shared_ptr<const CoefNode> node) : node_(std::move(node)) {}

CoefficientFn CoefficientFn::constant(double c) { return CoefficientFn(make_constant(c)); }

CoefficientFn CoefficientFn::poly_in_s(std::vector<double> coeffs, double T) {
    if (!(T > 0.0)) throw Error(Errc::InvalidArgument, "total time must be positive");
    while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();
    if (coeffs.empty()) return constant(0.0);
    if (coeffs.size() == 1) return constant(coeffs[0]);
    auto n = std::make_shared<CoefNode>();
    n->kind = Kind::Poly;
    n->T = T;
    n->coeffs = std::move(coeffs);
    return CoefficientFn(n);
}

CoefficientFn CoefficientFn::cos_lin(double a, double b, double T) {
    if (!(T > 0.0)) throw Error(Errc::InvalidArgument, "total time must be positive");
    auto n = std::make_shared<CoefNode>();
    n->kind = Kind::Cos;
    n->a = a;
    n->b = b;
    n->T = T;
    return CoefficientFn(n);
}

CoefficientFn CoefficientFn::sin_lin(double a, double b, double T) {
    if (!(T > 0.0)) throw Error(Errc::InvalidArgument, "total time must be positive");
    auto n = std::make_shared<CoefNode>();
    n->kind = Kind::Sin;
    n->a = a;
    n->b = b;
    n->T = T;
    return CoefficientFn(n);
}

double CoefficientFn::value(double t) const { return eval(*node_, t); }

double CoefficientFn::derivative_value(double t, int m) const {
    if (m < 0) throw Error(Errc::InvalidArgument, "negative derivative order");
    std::vector<double> out(static_cast<std::size_t>(m) + 1);
    node_jet(*node_, t, out);
    return out.back();
}

void CoefficientFn::jet(double t, std::span<double> out) const {
    if (out.empty()) return;
    node_jet(*node_, t, out);
}

CoefficientFn CoefficientFn::derivative(int m) const {
    NodePtr n = node_;
    for (int i = 0; i < m; ++i) n = node_derivative(n);
    return CoefficientFn(n);
}

double CoefficientFn::integral(double t1, double t2) const { return node_integral(node_, t1, t2); }

std::optional<std::vector<double>> CoefficientFn::polynomial_in_t() const { return node_polynomial(*node_); }

bool CoefficientFn::is_zero() const { return node_is_zero(node_); }
bool CoefficientFn::is_constant() const { return node_is_constant(node_); }
std::string CoefficientFn::to_string() const { return node_string(*node_); }

CoefficientFn CoefficientFn::operator-() const { return CoefficientFn(make_scale(-1.0, node_)); }
CoefficientFn operator+(const CoefficientFn& a, const CoefficientFn& b) { return CoefficientFn(make_sum(a.node_, b.node_)); }
CoefficientFn operator-(const CoefficientFn& a, const CoefficientFn& b) { return a + (-b); }
CoefficientFn operator*(const CoefficientFn& a, const CoefficientFn& b) { return CoefficientFn(make_product(a.node_, b.node_)); }
CoefficientFn operator*(double c, const CoefficientFn& a) { return CoefficientFn(make_scale(c, a.node_)); }

// ---- expression parser -------------------------------------------------------

namespace {

class Parser {
public:
    Parser(std::string_view text, double T) : text_(text), T_(T) {}

    CoefficientFn parse() {
        CoefficientFn f = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(Errc::ConfigParse, "coefficient '" + std::string(text_) + "' column " + std::to_string(pos_ + 1) + ": " + msg);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    CoefficientFn expr() {
        CoefficientFn acc = term();
        for (;;) {
            if (accept('+'))
                acc = acc + term();
            else if (accept('-'))
                acc = acc - term();
            else
                return acc;
        }
    }

    CoefficientFn term() {
        CoefficientFn acc = unary();
        for (;;) {
            if (accept('*')) {
                acc = acc * unary();
            } else if (accept('/')) {
                const std::size_t at = pos_;
                CoefficientFn d = unary();
                if (!d.is_constant() || d.value(0.0) == 0.0) {
                    pos_ = at;
                    fail("divisor must be a nonzero constant");
                }
                acc = (1.0 / d.value(0.0)) * acc;
            } else {
                return acc;
            }
        }
    }

    CoefficientFn unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    CoefficientFn power() {
        CoefficientFn base = primary();
        if (accept('^')) {
            skip_ws();
            const double e = number();
            if (e < 0 || e != std::floor(e) || e > 64) fail("exponent must be a small non-negative integer");
            CoefficientFn acc = CoefficientFn::constant(1.0);
            for (int i = 0; i < static_cast<int>(e); ++i) acc = acc * base;
            return acc;
        }
        return base;
    }

    double number() {
        skip_ws();
        char* end = nullptr;
        const std::string tmp(text_.substr(pos_));
        const double v = std::strtod(tmp.c_str(), &end);
        const std::size_t used = static_cast<std::size_t>(end - tmp.c_str());
        if (used == 0) fail("expected a number");
        pos_ += used;
        return v;
    }

    std::string identifier() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    CoefficientFn trig(bool is_cos) {
        expect('(');
        const std::size_t at = pos_;
        CoefficientFn arg = expr();
        expect(')');
        auto p = arg.polynomial_in_t();
        if (!p || p->size() > 2) {
            pos_ = at;
            fail("trigonometric argument must be affine in s");
        }
        const double b = p->empty() ? 0.0 : (*p)[0];
        const double a = p->size() > 1 ? (*p)[1] * T_ : 0.0;
        return is_cos ? CoefficientFn::cos_lin(a, b, T_) : CoefficientFn::sin_lin(a, b, T_);
    }

    CoefficientFn primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            CoefficientFn inner = expr();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return CoefficientFn::constant(number());
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t at = pos_;
            const std::string id = identifier();
            if (id == "s") return CoefficientFn::poly_in_s({0.0, 1.0}, T_);
            if (id == "pi") return CoefficientFn::constant(std::numbers::pi);
            if (id == "cos") return trig(true);
            if (id == "sin") return trig(false);
            if (id == "poly") {
                expect('(');
                std::vector<double> coeffs;
                do {
                    CoefficientFn v = expr();
                    if (!v.is_constant()) fail("poly() takes constant coefficients");
                    coeffs.push_back(v.value(0.0));
                } while (accept(','));
                expect(')');
                return CoefficientFn::poly_in_s(std::move(coeffs), T_);
            }
            pos_ = at;
            fail("unknown identifier '" + id + "'");
        }
        fail(std::string("unexpected '") + c + "'");
    }

    std::string_view text_;
    double T_;
    std::size_t pos_ = 0;
};

}  // namespace

CoefficientFn parse_coefficient(std::string_view text, double T) {
    if (!(T > 0.0)) throw Error(Errc::InvalidArgument, "total time must be positive");
    return Parser(text, T).parse();
}

}  // namespace lowtrot
