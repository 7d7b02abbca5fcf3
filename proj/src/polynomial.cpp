#include "pfargeo/polynomial.hpp"

namespace pfargeo {

double poly_eval(const Polynomial1D& p, double x) {
    double acc = 0.0;
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

Polynomial1D poly_derivative(const Polynomial1D& p) {
    if (p.coeffs.size() <= 1) {
        return Polynomial1D{{0.0}};
    }
    std::vector<double> d(p.coeffs.size() - 1);
    for (std::size_t i = 1; i < p.coeffs.size(); ++i) {
        d[i - 1] = static_cast<double>(i) * p.coeffs[i];
    }
    return Polynomial1D{std::move(d)};
}

double poly2d_eval(const Poly2D& p, double x, double y) {
    double acc = 0.0;
    double xi = 1.0;
    for (const auto& row : p.coeffs) {
        double inner = 0.0;
        for (auto it = row.rbegin(); it != row.rend(); ++it) {
            inner = inner * y + *it;
        }
        acc += xi * inner;
        xi *= x;
    }
    return acc;
}

}  // namespace pfargeo
