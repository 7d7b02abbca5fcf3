#pragma once

#include <vector>

namespace pfargeo {

/// Polynomial in one real variable, constant term first.
struct Polynomial1D {
    std::vector<double> coeffs;  // c0 + c1*x + c2*x^2 + ...

    Polynomial1D() = default;
    explicit Polynomial1D(std::vector<double> c) : coeffs(std::move(c)) {}

    bool operator==(const Polynomial1D&) const = default;
};

/// Horner evaluation.
double poly_eval(const Polynomial1D& p, double x);

/// Formal derivative; the derivative of a constant is [0].
Polynomial1D poly_derivative(const Polynomial1D& p);

/// Polynomial in two variables: c[i][j] * x^i * y^j.
struct Poly2D {
    std::vector<std::vector<double>> coeffs;

    bool operator==(const Poly2D&) const = default;
};

double poly2d_eval(const Poly2D& p, double x, double y);

}  // namespace pfargeo
