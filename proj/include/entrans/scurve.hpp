#pragma once

// Diffusion-curve family (logistic, higher-order logistic, Gompertz, Bass)
// with closed-form evaluation and least-squares fitting via Nelder-Mead.

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "entrans/nelder_mead.hpp"

namespace entrans::scurve {

enum class Kind { Logistic, LogisticHo, Gompertz, Bass };

inline const char* kind_name(Kind k) {
    switch (k) {
        case Kind::Logistic: return "logistic";
        case Kind::LogisticHo: return "logistic-ho";
        case Kind::Gompertz: return "gompertz";
        case Kind::Bass: return "bass";
    }
    return "?";
}

inline std::optional<Kind> kind_from_name(const std::string& name) {
    if (name == "logistic") return Kind::Logistic;
    if (name == "logistic-ho") return Kind::LogisticHo;
    if (name == "gompertz") return Kind::Gompertz;
    if (name == "bass") return Kind::Bass;
    return std::nullopt;
}

inline std::size_t param_count(Kind k) {
    switch (k) {
        case Kind::Logistic: return 3;   // alpha, beta, t0
        case Kind::LogisticHo: return 4; // alpha, beta, gamma, t0
        case Kind::Gompertz: return 2;   // a, b
        case Kind::Bass: return 2;       // p, q
    }
    return 0;
}

/// A family member with its ordered parameter vector.
/// logistic:    f(t) = 1 / (1 + exp(-alpha*(t-t0) - beta)), alpha > 0
/// logistic-ho: f(t) = 1 / (1 + exp(-alpha*exp(-gamma*(t-t0)) - beta))
///              (the double-exponential form taken verbatim; alpha and gamma
///              are sign-unconstrained, see valid_params)
/// gompertz:    f(t) = exp(-a*exp(-b*t)), a > 0, b > 0
/// bass:        F(t) = (1 - exp(-(p+q)t)) / (1 + (q/p)*exp(-(p+q)t)), p > 0, q >= 0
struct Model {
    Kind kind{Kind::Logistic};
    std::vector<double> params;
};

inline bool valid_params(Kind kind, const std::vector<double>& p) {
    if (p.size() != param_count(kind)) return false;
    for (double v : p)
        if (!std::isfinite(v)) return false;
    switch (kind) {
        case Kind::Logistic:
            return p[0] > 0.0;
        case Kind::LogisticHo:
            // alpha and gamma may take either sign: with both positive the
            // verbatim form is monotone decreasing and could fit neither
            // rising share data nor nest the plain logistic (which needs
            // alpha*gamma < 0 in the gamma->0 limit).
            return p[0] != 0.0;
        case Kind::Gompertz:
            return p[0] > 0.0 && p[1] > 0.0;
        case Kind::Bass:
            return p[0] > 0.0 && p[1] >= 0.0;
    }
    return false;
}

inline double evaluate(const Model& m, double t) {
    if (!valid_params(m.kind, m.params))
        throw std::domain_error(std::string("invalid parameters for ") + kind_name(m.kind));
    switch (m.kind) {
        case Kind::Logistic: {
            const double alpha = m.params[0], beta = m.params[1], t0 = m.params[2];
            return 1.0 / (1.0 + std::exp(-alpha * (t - t0) - beta));
        }
        case Kind::LogisticHo: {
            const double alpha = m.params[0], beta = m.params[1];
            const double gamma = m.params[2], t0 = m.params[3];
            return 1.0 / (1.0 + std::exp(-alpha * std::exp(-gamma * (t - t0)) - beta));
        }
        case Kind::Gompertz: {
            const double a = m.params[0], b = m.params[1];
            return std::exp(-a * std::exp(-b * t));
        }
        case Kind::Bass: {
            const double p = m.params[0], q = m.params[1];
            const double e = std::exp(-(p + q) * t);
            return (1.0 - e) / (1.0 + q / p * e);
        }
    }
    return 0.0;
}

/// (year, share) observations; years strictly increasing, shares in [0,1].
struct SeriesData {
    std::vector<std::pair<double, double>> points;
    std::string label;
};

inline constexpr std::size_t kMinFitPoints = 4;

class InsufficientData : public std::runtime_error {
public:
    explicit InsufficientData(std::size_t n)
        : std::runtime_error("series has " + std::to_string(n) + " points, need at least " +
                             std::to_string(kMinFitPoints)) {}
};

class FitDegenerate : public std::runtime_error {
public:
    FitDegenerate() : std::runtime_error("series is constant; r_squared is undefined") {}
};

struct Fit {
    Model model;
    double rmse{0.0};
    double r_squared{0.0};
    int iterations{0};
    bool converged{false};
};

namespace detail {

// Gompertz and Bass are evaluated on series-relative time (t = year minus
// first year) so that the Bass origin F(0)=0 aligns with the earliest
// observation and the Gompertz exponent stays in range for calendar years.
inline double fit_time(Kind kind, double year, double first_year) {
    return (kind == Kind::Gompertz || kind == Kind::Bass) ? year - first_year : year;
}

inline void check_series(const SeriesData& s) {
    if (s.points.size() < kMinFitPoints) throw InsufficientData(s.points.size());
    for (std::size_t i = 0; i < s.points.size(); ++i) {
        if (!(s.points[i].second >= 0.0 && s.points[i].second <= 1.0))
            throw std::domain_error("series share out of [0,1] at index " + std::to_string(i));
        if (i > 0 && !(s.points[i].first > s.points[i - 1].first))
            throw std::domain_error("series years not strictly increasing at index " +
                                    std::to_string(i));
    }
}

inline double mean_squared_error(Kind kind, const std::vector<double>& params,
                                 const SeriesData& s) {
    // Invalid parameter regions are penalized with a large finite barrier so
    // the simplex method needs no constraint handling.
    if (!valid_params(kind, params)) return 1e12;
    const double first = s.points.front().first;
    double acc = 0.0;
    for (const auto& [year, share] : s.points) {
        const double f = evaluate({kind, params}, fit_time(kind, year, first));
        if (!std::isfinite(f)) return 1e12;
        const double r = f - share;
        acc += r * r;
    }
    return acc / static_cast<double>(s.points.size());
}

}  // namespace detail

/// Heuristic initialization. Logistic family: t0 at the interpolated 0.5
/// crossing (midpoint year when the series never crosses), alpha = 4x the
/// steepest observed slope (the logistic slope at its midpoint is alpha/4),
/// beta = 0. Gompertz: b from the same slope scale (peak slope ~ b/e at
/// t = ln(a)/b), a positioned so the inflection sits at the crossing year.
/// Bass: p+q from the slope scale with a small innovation share p.
inline std::vector<double> default_start(Kind kind, const SeriesData& series) {
    detail::check_series(series);
    const auto& pts = series.points;
    const double first = pts.front().first;
    const double last = pts.back().first;

    // Interpolated year where the share crosses 0.5; midpoint year fallback.
    double t_half = 0.5 * (first + last);
    bool found = false;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const auto [y0, s0] = pts[i];
        const auto [y1, s1] = pts[i + 1];
        if ((s0 <= 0.5 && s1 >= 0.5) || (s0 >= 0.5 && s1 <= 0.5)) {
            t_half = (s1 == s0) ? y0 : y0 + (0.5 - s0) / (s1 - s0) * (y1 - y0);
            found = true;
            break;
        }
    }
    if (!found && pts.front().second == 0.5) t_half = first;

    double max_slope = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double slope = std::abs((pts[i + 1].second - pts[i].second) /
                                      (pts[i + 1].first - pts[i].first));
        max_slope = std::max(max_slope, slope);
    }
    if (max_slope == 0.0) max_slope = 1.0 / std::max(1.0, last - first);
    const double rate = 4.0 * max_slope;

    switch (kind) {
        case Kind::Logistic:
            return {rate, 0.0, t_half};
        case Kind::LogisticHo:
            // Gentle double-exponential start near the same midpoint/steepness.
            return {-rate * (last - first), rate * (last - first) * 0.5,
                    1.0 / std::max(1.0, last - first), t_half};
        case Kind::Gompertz: {
            const double b = std::exp(1.0) * max_slope;
            const double a = std::exp(b * std::max(1.0, t_half - first));
            return {a, b};
        }
        case Kind::Bass: {
            const double pq = rate;
            return {0.05 * pq, 0.95 * pq};
        }
    }
    return {};
}

namespace detail {

inline Fit finish_fit(Kind kind, const SeriesData& s, const NelderMeadResult& best) {
    Fit fit;
    fit.model = {kind, best.x};
    fit.rmse = std::sqrt(best.value);
    fit.iterations = best.iterations;
    fit.converged = best.converged;
    double mean = 0.0;
    for (const auto& pt : s.points) mean += pt.second;
    mean /= static_cast<double>(s.points.size());
    double ss_tot = 0.0;
    for (const auto& pt : s.points) ss_tot += (pt.second - mean) * (pt.second - mean);
    fit.r_squared = 1.0 - best.value * static_cast<double>(s.points.size()) / ss_tot;
    return fit;
}

}  // namespace detail

/// Least-squares fit of one family member. Multi-start (the heuristic start
/// plus 5 deterministically jittered copies; the caller-provided start, when
/// given, replaces the heuristic one); the best objective wins, earliest
/// start index breaking ties.
inline Fit fit(Kind kind, const SeriesData& series,
               std::optional<std::vector<double>> start = std::nullopt,
               const NelderMeadOptions& opts = {}) {
    detail::check_series(series);
    if (param_count(kind) > series.points.size() - 1)
        throw InsufficientData(series.points.size());

    const double first_share = series.points.front().second;
    bool constant = true;
    for (const auto& pt : series.points)
        if (pt.second != first_share) { constant = false; break; }
    if (constant) throw FitDegenerate();

    std::vector<double> base = start ? *start : default_start(kind, series);
    if (base.size() != param_count(kind))
        throw std::invalid_argument("start vector has wrong dimension for " +
                                    std::string(kind_name(kind)));

    auto objective = [&](const std::vector<double>& p) {
        return detail::mean_squared_error(kind, p, series);
    };

    std::vector<std::vector<double>> starts{base};
    std::mt19937_64 rng(0x5ca1ab1eULL);  // fixed seed: fits are deterministic
    std::uniform_real_distribution<double> jitter(-0.3, 0.3);
    for (int i = 0; i < 5; ++i) {
        auto s = base;
        for (auto& v : s) v = (v == 0.0) ? jitter(rng) : v * (1.0 + jitter(rng));
        starts.push_back(std::move(s));
    }

    std::optional<NelderMeadResult> best;
    for (const auto& s : starts) {
        if (!std::isfinite(objective(s)) || objective(s) >= 1e12) continue;
        auto r = nelder_mead(objective, s, opts);
        if (!best || r.value < best->value) best = std::move(r);
    }
    if (!best) throw NonFiniteObjective();
    return detail::finish_fit(kind, series, *best);
}

/// Higher-order logistic fit warm-started from a plain logistic fit: the
/// gamma-degenerate embedding gamma = -eps, alpha = -a/gamma, beta = b - alpha
/// reproduces the logistic exponent a*(t-t0)+b to first order in eps.
inline Fit fit_ho_nested(const SeriesData& series, const Fit& logistic_fit,
                         const NelderMeadOptions& opts = {}) {
    const double a = logistic_fit.model.params[0];
    const double b = logistic_fit.model.params[1];
    const double t0 = logistic_fit.model.params[2];
    const double eps = 1e-9;
    const double alpha = a / eps;
    std::vector<double> start{alpha, b - alpha, -eps, t0};
    auto objective = [&](const std::vector<double>& p) {
        return detail::mean_squared_error(Kind::LogisticHo, p, series);
    };
    auto r = nelder_mead(objective, start, opts);
    return detail::finish_fit(Kind::LogisticHo, series, r);
}

}  // namespace entrans::scurve
