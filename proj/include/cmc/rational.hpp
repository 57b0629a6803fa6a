#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cmc/errors.hpp"
#include "cmc/vec3.hpp"

namespace cmc {

// Complex polynomial, coefficients in ascending powers. An empty coefficient
// vector is the zero polynomial.
struct Poly {
    std::vector<complex> c;

    Poly() = default;
    explicit Poly(std::vector<complex> coeffs) : c(std::move(coeffs)) { trim(); }
    static Poly constant(complex v) { return Poly({v}); }
    static Poly monomial(complex coef, int power);
    // scale * prod (z - root_i)^mult_i with all mult_i >= 1
    static Poly from_roots(const std::vector<std::pair<complex, int>>& roots, complex scale);

    int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c.empty(); }

    complex eval(complex z) const;
    Poly derivative() const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(complex s) const;

    // Taylor coefficients about z0 (same degree, exact shift via Horner).
    std::vector<complex> taylor_at(complex z0) const;

    // Order of vanishing at z0 (0 if p(z0) != 0); relative threshold.
    int zero_order_at(complex z0, double rel_eps = 1e-9) const;

    // All roots, via Durand-Kerner with Newton polishing.
    std::vector<complex> roots() const;

    // Synthetic division by (z - root); nullopt when the remainder is not
    // negligible (root is not a root of this polynomial).
    std::optional<Poly> deflated(complex root, double rel_eps = 1e-9) const;

    void trim();
    double max_abs_coeff() const;
};

// Rational function num/den with an optional exact factored form
// scale * prod (z - root_i)^mult_i (negative multiplicities in the denominator).
struct RationalFn {
    Poly num = Poly::constant(1.0);
    Poly den = Poly::constant(1.0);
    std::optional<std::vector<std::pair<complex, int>>> factors;
    complex factor_scale = 1.0;

    RationalFn() = default;
    RationalFn(Poly n, Poly d);
    static RationalFn from_factors(std::vector<std::pair<complex, int>> factors, complex scale);
    static RationalFn constant(complex v) { return RationalFn(Poly::constant(v), Poly::constant(1.0)); }

    complex eval(complex z) const;
    RationalFn derivative() const;
    RationalFn reciprocal() const;
    RationalFn operator*(const RationalFn& o) const;
    RationalFn operator+(const RationalFn& o) const;
    RationalFn operator-(const RationalFn& o) const;
    RationalFn operator*(complex s) const;

    // Order at z0: zeros > 0, poles < 0. Uses factors when available.
    int order_at(complex z0) const;

    // Residue at z0, by Laurent expansion (power-series division of the
    // deflated numerator and denominator Taylor series). Exact for exact data.
    complex residue_at(complex z0) const;

    // Candidate singular/vanishing points: denominator and numerator roots.
    std::vector<complex> den_roots() const;
    std::vector<complex> num_roots() const;

private:
    // Cancel roots shared by numerator and denominator (removable points).
    void reduce();
};

}  // namespace cmc
