#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace airstat {

struct SimplexResult {
    std::vector<double> x;
    double fmin = 0.0;
    int iterations = 0;
};

// Nelder-Mead downhill simplex with the standard coefficients
// (reflection 1, expansion 2, contraction 0.5, shrink 0.5).
// Fully deterministic; the initial simplex is x0 plus one per-coordinate step.
inline SimplexResult nelder_mead_minimize(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& x0, const std::vector<double>& steps,
    int max_iterations, double f_tolerance = 1e-14) {
    const std::size_t n = x0.size();
    std::vector<std::vector<double>> verts(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) verts[i + 1][i] += steps[i];

    auto safe_eval = [&f](const std::vector<double>& x) {
        const double v = f(x);
        return std::isfinite(v) ? v : 1e300;
    };

    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i <= n; ++i) fv[i] = safe_eval(verts[i]);

    std::vector<std::size_t> order(n + 1);
    int iter = 0;
    for (; iter < max_iterations; ++iter) {
        for (std::size_t i = 0; i <= n; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&fv](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const std::size_t best = order[0];
        const std::size_t second_worst = order[n - 1];
        const std::size_t worst = order[n];

        if (std::fabs(fv[worst] - fv[best]) <= f_tolerance * (1.0 + std::fabs(fv[best])))
            break;

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < n; ++j) centroid[j] += verts[i][j];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        auto blend = [&centroid, n](const std::vector<double>& away, double coeff) {
            std::vector<double> p(n);
            for (std::size_t j = 0; j < n; ++j)
                p[j] = centroid[j] + coeff * (centroid[j] - away[j]);
            return p;
        };

        const std::vector<double> reflected = blend(verts[worst], 1.0);
        const double fr = safe_eval(reflected);

        if (fr < fv[best]) {
            const std::vector<double> expanded = blend(verts[worst], 2.0);
            const double fe = safe_eval(expanded);
            if (fe < fr) {
                verts[worst] = expanded;
                fv[worst] = fe;
            } else {
                verts[worst] = reflected;
                fv[worst] = fr;
            }
        } else if (fr < fv[second_worst]) {
            verts[worst] = reflected;
            fv[worst] = fr;
        } else {
            const bool outside = fr < fv[worst];
            const std::vector<double> contracted =
                blend(verts[worst], outside ? 0.5 : -0.5);
            const double fc = safe_eval(contracted);
            if (fc < std::min(fr, fv[worst])) {
                verts[worst] = contracted;
                fv[worst] = fc;
            } else {
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (std::size_t j = 0; j < n; ++j)
                        verts[i][j] = verts[best][j] + 0.5 * (verts[i][j] - verts[best][j]);
                    fv[i] = safe_eval(verts[i]);
                }
            }
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (fv[i] < fv[best]) best = i;
    return SimplexResult{verts[best], fv[best], iter};
}

}  // namespace airstat
