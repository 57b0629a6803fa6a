#include "cmc/rational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cmc {

namespace {
constexpr double kTrimEps = 1e-14;
}

void Poly::trim() {
    double scale = max_abs_coeff();
    if (scale == 0.0) {
        c.clear();
        return;
    }
    while (!c.empty() && std::abs(c.back()) <= kTrimEps * scale) c.pop_back();
}

double Poly::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& v : c) m = std::max(m, std::abs(v));
    return m;
}

Poly Poly::monomial(complex coef, int power) {
    std::vector<complex> c(power + 1, complex{0.0});
    c[power] = coef;
    return Poly(std::move(c));
}

Poly Poly::from_roots(const std::vector<std::pair<complex, int>>& roots, complex scale) {
    Poly p = Poly::constant(scale);
    for (const auto& [root, mult] : roots) {
        if (mult < 1) throw PreconditionViolation("from_roots requires multiplicities >= 1");
        const Poly lin({-root, complex{1.0}});
        for (int i = 0; i < mult; ++i) p = p * lin;
    }
    return p;
}

complex Poly::eval(complex z) const {
    complex acc{};
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

Poly Poly::derivative() const {
    if (c.size() <= 1) return {};
    std::vector<complex> d(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * double(i);
    return Poly(std::move(d));
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<complex> r(std::max(c.size(), o.c.size()), complex{});
    for (size_t i = 0; i < c.size(); ++i) r[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r[i] += o.c[i];
    return Poly(std::move(r));
}

Poly Poly::operator-(const Poly& o) const { return *this + o * complex{-1.0}; }

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<complex> r(c.size() + o.c.size() - 1, complex{});
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = 0; j < o.c.size(); ++j) r[i + j] += c[i] * o.c[j];
    return Poly(std::move(r));
}

Poly Poly::operator*(complex s) const {
    Poly r = *this;
    for (auto& v : r.c) v *= s;
    r.trim();
    return r;
}

std::vector<complex> Poly::taylor_at(complex z0) const {
    // Repeated synthetic division: after k rounds the remainders are the
    // Taylor coefficients of order 0..k.
    std::vector<complex> work = c;
    for (size_t k = 0; k + 1 < work.size(); ++k) {
        for (size_t i = work.size() - 1; i-- > k;) {
            work[i] += z0 * work[i + 1];
        }
    }
    return work;
}

int Poly::zero_order_at(complex z0, double rel_eps) const {
    if (is_zero()) return std::numeric_limits<int>::max();
    const auto taylor = taylor_at(z0);
    double scale = 0.0;
    for (const auto& t : taylor) scale = std::max(scale, std::abs(t));
    for (size_t i = 0; i < taylor.size(); ++i) {
        if (std::abs(taylor[i]) > rel_eps * scale) return static_cast<int>(i);
    }
    return static_cast<int>(taylor.size());
}

std::vector<complex> Poly::roots() const {
    if (degree() < 1) return {};
    // Normalize to monic.
    std::vector<complex> a(c.begin(), c.end());
    const complex lead = a.back();
    for (auto& v : a) v /= lead;
    const int n = degree();

    // Durand-Kerner with a spiral of start points.
    std::vector<complex> r(n);
    double radius = 0.0;
    for (int i = 0; i < n; ++i) radius = std::max(radius, std::pow(std::abs(a[i]), 1.0 / (n - i)));
    radius = std::max(radius, 0.5);
    for (int i = 0; i < n; ++i) {
        r[i] = radius * std::polar(1.0, 2.0 * M_PI * i / n + 0.5);
    }
    Poly monic{std::vector<complex>(a)};
    for (int iter = 0; iter < 500; ++iter) {
        double moved = 0.0;
        for (int i = 0; i < n; ++i) {
            complex denom{1.0};
            for (int j = 0; j < n; ++j) {
                if (j != i) denom *= (r[i] - r[j]);
            }
            const complex delta = monic.eval(r[i]) / denom;
            r[i] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-13 * std::max(1.0, radius)) break;
    }
    // Newton polish (helps simple roots; multiple roots stay as clusters).
    const Poly d = monic.derivative();
    for (auto& root : r) {
        for (int it = 0; it < 3; ++it) {
            const complex dv = d.eval(root);
            if (std::abs(dv) < 1e-12) break;
            root -= monic.eval(root) / dv;
        }
    }
    return r;
}

std::optional<Poly> Poly::deflated(complex root, double rel_eps) const {
    if (c.size() < 2) return std::nullopt;
    std::vector<complex> q(c.size() - 1);
    complex carry = c.back();
    for (size_t i = c.size() - 1; i-- > 0;) {
        q[i] = carry;
        carry = c[i] + root * carry;
    }
    if (std::abs(carry) > rel_eps * max_abs_coeff()) return std::nullopt;
    return Poly(std::move(q));
}

RationalFn::RationalFn(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw PreconditionViolation("rational function with zero denominator");
    reduce();
}

void RationalFn::reduce() {
    if (num.is_zero() || den.degree() < 1) return;
    for (const complex& root : den.roots()) {
        while (den.degree() >= 1) {
            auto dn = num.deflated(root);
            auto dd = den.deflated(root);
            if (!dn || !dd) break;
            num = std::move(*dn);
            den = std::move(*dd);
            if (num.is_zero()) return;
        }
    }
}

RationalFn RationalFn::from_factors(std::vector<std::pair<complex, int>> factor_list,
                                    complex scale) {
    // Merge repeated roots and drop zero multiplicities.
    std::vector<std::pair<complex, int>> merged;
    for (const auto& [root, mult] : factor_list) {
        bool found = false;
        for (auto& m : merged) {
            if (std::abs(m.first - root) < 1e-12) {
                m.second += mult;
                found = true;
                break;
            }
        }
        if (!found && mult != 0) merged.push_back({root, mult});
    }
    std::erase_if(merged, [](const auto& m) { return m.second == 0; });

    std::vector<std::pair<complex, int>> num_roots, den_roots;
    for (const auto& [root, mult] : merged) {
        if (mult > 0) {
            num_roots.push_back({root, mult});
        } else {
            den_roots.push_back({root, -mult});
        }
    }
    RationalFn f(Poly::from_roots(num_roots, scale), Poly::from_roots(den_roots, 1.0));
    f.factors = std::move(merged);
    f.factor_scale = scale;
    return f;
}

complex RationalFn::eval(complex z) const {
    if (factors) {
        complex acc = factor_scale;
        for (const auto& [root, mult] : *factors) acc *= std::pow(z - root, mult);
        return acc;
    }
    return num.eval(z) / den.eval(z);
}

RationalFn RationalFn::derivative() const {
    return RationalFn(num.derivative() * den - num * den.derivative(), den * den);
}

RationalFn RationalFn::reciprocal() const {
    if (num.is_zero()) throw PreconditionViolation("reciprocal of zero rational function");
    RationalFn f(den, num);
    if (factors) {
        f.factors = *factors;
        for (auto& m : *f.factors) m.second = -m.second;
        f.factor_scale = complex{1.0} / factor_scale;
    }
    return f;
}

RationalFn RationalFn::operator*(const RationalFn& o) const {
    RationalFn f(num * o.num, den * o.den);
    if (factors && o.factors) {
        auto merged = *factors;
        merged.insert(merged.end(), o.factors->begin(), o.factors->end());
        f = RationalFn::from_factors(std::move(merged), factor_scale * o.factor_scale);
    }
    return f;
}

RationalFn RationalFn::operator+(const RationalFn& o) const {
    return RationalFn(num * o.den + o.num * den, den * o.den);
}

RationalFn RationalFn::operator-(const RationalFn& o) const {
    return RationalFn(num * o.den - o.num * den, den * o.den);
}

RationalFn RationalFn::operator*(complex s) const {
    RationalFn f(num * s, den);
    if (factors) {
        f.factors = factors;
        f.factor_scale = factor_scale * s;
    }
    return f;
}

int RationalFn::order_at(complex z0) const {
    if (factors) {
        for (const auto& [root, mult] : *factors) {
            if (std::abs(root - z0) < 1e-12) return mult;
        }
        return 0;
    }
    return num.zero_order_at(z0) - den.zero_order_at(z0);
}

complex RationalFn::residue_at(complex z0) const {
    const auto nt = num.taylor_at(z0);
    const auto dt = den.taylor_at(z0);
    const int nord = num.zero_order_at(z0);
    const int dord = den.zero_order_at(z0);
    const int pole_order = dord - nord;
    if (pole_order <= 0) return complex{0.0};

    // Laurent expansion: f = (z-z0)^{-pole_order} * (N~ / D~) with N~, D~ regular,
    // D~(z0) != 0. The residue is the (pole_order - 1)-th series coefficient of N~/D~.
    const int want = pole_order - 1;
    std::vector<complex> a(want + 1, complex{});
    std::vector<complex> b(want + 1, complex{});
    for (int i = 0; i <= want; ++i) {
        if (nord + i < static_cast<int>(nt.size())) a[i] = nt[nord + i];
        if (dord + i < static_cast<int>(dt.size())) b[i] = dt[dord + i];
    }
    std::vector<complex> q(want + 1, complex{});
    for (int k = 0; k <= want; ++k) {
        complex acc = a[k];
        for (int j = 1; j <= k; ++j) acc -= b[j] * q[k - j];
        q[k] = acc / b[0];
    }
    return q[want];
}

std::vector<complex> RationalFn::den_roots() const {
    if (factors) {
        std::vector<complex> r;
        for (const auto& [root, mult] : *factors) {
            if (mult < 0) r.push_back(root);
        }
        return r;
    }
    return den.roots();
}

std::vector<complex> RationalFn::num_roots() const {
    if (factors) {
        std::vector<complex> r;
        for (const auto& [root, mult] : *factors) {
            if (mult > 0) r.push_back(root);
        }
        return r;
    }
    return num.roots();
}

}  // namespace cmc
