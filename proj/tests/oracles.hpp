// Test-only reference computations, kept independent of the library's own
// numerics: plain adaptive Simpson quadrature and density integrands built
// straight from the textbook formulas.
#pragma once

#include <cmath>
#include <functional>

namespace oracles {

inline double simpson(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    return (b - a) / 6.0 * (f(a) + 4.0 * f(c) + f(b));
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol, double whole, int depth) {
    const double c = 0.5 * (a + b);
    const double left = simpson(f, a, c);
    const double right = simpson(f, c, b);
    if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, c, 0.5 * tol, left, depth - 1) +
           adaptive_simpson(f, c, b, 0.5 * tol, right, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12) {
    // Split into a few panels first so narrow features are not missed.
    const int panels = 64;
    double total = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double x0 = a + (b - a) * i / panels;
        const double x1 = a + (b - a) * (i + 1) / panels;
        total += adaptive_simpson(f, x0, x1, tol / panels, simpson(f, x0, x1), 60);
    }
    return total;
}

// Chi-square upper tail by direct integration of the density from s outward.
inline double chi2_tail_by_quadrature(double s, int dof) {
    const double a = 0.5 * dof;
    auto pdf = [a](double x) {
        return std::exp((a - 1.0) * std::log(x) - 0.5 * x - std::lgamma(a) - a * std::log(2.0));
    };
    if (s <= 0.0) return 1.0;
    // Density is negligible past max(8 dof, s + 400).
    const double upper = std::max(8.0 * dof + 400.0, s + 400.0);
    return integrate(pdf, s, upper, 1e-13);
}

}  // namespace oracles
