#pragma once

// Derivative-free simplex descent (Nelder-Mead) for the low-dimensional
// least-squares objectives of the S-curve fitter.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace entrans {

class NonFiniteObjective : public std::runtime_error {
public:
    NonFiniteObjective() : std::runtime_error("objective is non-finite at the start point") {}
};

struct NelderMeadOptions {
    double tol_x{1e-12};   // simplex diameter
    double tol_f{1e-24};   // spread of vertex values
    int max_iter{20000};
};

struct NelderMeadResult {
    std::vector<double> x;
    double value{0.0};
    int iterations{0};
    bool converged{false};
};

/// Standard Nelder-Mead with reflection/expansion/contraction/shrink
/// (coefficients 1, 2, 0.5, 0.5). Never returns a point whose objective
/// exceeds the start value.
inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                                    const std::vector<double>& start,
                                    const NelderMeadOptions& opts = {}) {
    const std::size_t n = start.size();
    if (n < 1) throw std::invalid_argument("nelder_mead: dimension must be >= 1");

    const double f0 = objective(start);
    if (!std::isfinite(f0)) throw NonFiniteObjective();

    // Initial simplex: perturb each coordinate by 5% (0.00025 when zero).
    std::vector<std::vector<double>> simplex(n + 1, start);
    std::vector<double> values(n + 1);
    values[0] = f0;
    for (std::size_t i = 0; i < n; ++i) {
        double step = 0.05 * std::abs(start[i]);
        if (step == 0.0) step = 0.00025;
        simplex[i + 1][i] += step;
        values[i + 1] = objective(simplex[i + 1]);
        if (!std::isfinite(values[i + 1])) values[i + 1] = std::numeric_limits<double>::max();
    }

    std::vector<std::size_t> order(n + 1);
    NelderMeadResult result;
    int iter = 0;
    for (; iter < opts.max_iter; ++iter) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[n - 1];

        // Termination: simplex size and value spread.
        double diameter = 0.0;
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                diameter = std::max(diameter, std::abs(simplex[i][k] - simplex[best][k]));
        if (diameter < opts.tol_x || values[worst] - values[best] < opts.tol_f) {
            result.converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k];
        }
        for (auto& c : centroid) c /= static_cast<double>(n);

        auto along = [&](double coeff) {
            std::vector<double> x(n);
            for (std::size_t k = 0; k < n; ++k)
                x[k] = centroid[k] + coeff * (centroid[k] - simplex[worst][k]);
            return x;
        };
        auto safe_eval = [&](const std::vector<double>& x) {
            const double v = objective(x);
            return std::isfinite(v) ? v : std::numeric_limits<double>::max();
        };

        auto reflected = along(1.0);
        const double fr = safe_eval(reflected);
        if (fr < values[best]) {
            auto expanded = along(2.0);
            const double fe = safe_eval(expanded);
            if (fe < fr) {
                simplex[worst] = std::move(expanded);
                values[worst] = fe;
            } else {
                simplex[worst] = std::move(reflected);
                values[worst] = fr;
            }
        } else if (fr < values[second_worst]) {
            simplex[worst] = std::move(reflected);
            values[worst] = fr;
        } else {
            const bool outside = fr < values[worst];
            auto contracted = along(outside ? 0.5 : -0.5);
            const double fc = safe_eval(contracted);
            if (fc < std::min(fr, values[worst])) {
                simplex[worst] = std::move(contracted);
                values[worst] = fc;
            } else {
                // Shrink toward the best vertex.
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (std::size_t k = 0; k < n; ++k)
                        simplex[i][k] = simplex[best][k] + 0.5 * (simplex[i][k] - simplex[best][k]);
                    values[i] = safe_eval(simplex[i]);
                }
            }
        }
    }

    const std::size_t best = static_cast<std::size_t>(
        std::min_element(values.begin(), values.end()) - values.begin());
    result.x = simplex[best];
    result.value = values[best];
    result.iterations = std::max(iter, 1);
    if (result.value > f0) {  // never worse than the start
        result.x = start;
        result.value = f0;
    }
    return result;
}

}  // namespace entrans
