#pragma once

// Declarative description of one simulation experiment: horizon, initial
// conditions, demand growth, fossil phase-down, renewable cost decline and
// the elasticity path. Scenarios are immutable after validation.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "entrans/ces.hpp"

namespace entrans {

enum class ElasticityKind { Constant, LinearDecay, ExponentialDecay };

/// Path of the substitution parameter rho over the horizon. Every produced
/// rho(t) must stay above -1. The decay kinds are non-increasing in t.
struct ElasticityPath {
    ElasticityKind kind{ElasticityKind::Constant};
    double rho_start{0.0};
    double rho_end{0.0};
    double decay_rate{0.0};  // exponential kind only

    static ElasticityPath constant(double rho) {
        return {ElasticityKind::Constant, rho, rho, 0.0};
    }
    static ElasticityPath constant_sigma(double sigma) {
        return constant(1.0 / sigma - 1.0);
    }
};

/// rho at year t for a horizon of T years.
inline double rho_at(const ElasticityPath& path, double t, double horizon) {
    double rho = 0.0;
    switch (path.kind) {
        case ElasticityKind::Constant:
            rho = path.rho_start;
            break;
        case ElasticityKind::LinearDecay:
            rho = path.rho_start + (path.rho_end - path.rho_start) * t / horizon;
            break;
        case ElasticityKind::ExponentialDecay:
            rho = path.rho_end +
                  (path.rho_start - path.rho_end) * std::exp(-path.decay_rate * t);
            break;
    }
    if (!(rho > -1.0))
        throw std::domain_error("ElasticityPath: rho(t) = " + std::to_string(rho) +
                                " at t=" + std::to_string(t) + " is not > -1");
    return rho;
}

enum class ScheduleKind { Linear, Exponential };

/// Exogenous fossil phase-down. final_share_fraction is the fraction of the
/// initial fossil quantity remaining at the final year.
struct PhaseDownSchedule {
    ScheduleKind kind{ScheduleKind::Linear};
    double final_share_fraction{0.51};
};

/// F(t) for an initial quantity f0 over a horizon of T years.
inline double fossil_at(const PhaseDownSchedule& sched, double f0, double t,
                        double horizon) {
    double f = 0.0;
    switch (sched.kind) {
        case ScheduleKind::Linear:
            f = f0 * (1.0 - (1.0 - sched.final_share_fraction) * t / horizon);
            break;
        case ScheduleKind::Exponential:
            f = f0 * std::pow(sched.final_share_fraction, t / horizon);
            break;
    }
    if (!(f > 0.0))
        throw std::domain_error("PhaseDownSchedule: F(t) = " + std::to_string(f) +
                                " at t=" + std::to_string(t) + " is not positive");
    return f;
}

enum class InitMode { ShareCalibrated, DirectShare };

struct Scenario {
    std::string label{"default"};
    int years{85};
    double alpha{0.85};
    ElasticityPath sigma_path{ElasticityPath::constant_sigma(1.5)};
    double demand_growth_rate{0.0};
    PhaseDownSchedule fossil_schedule{};
    double re_cost_decline{0.0};
    double fossil_unit_cost{1.0};
    double re_initial_cost{1.0};
    double y0{1.0};
    InitMode init_mode{InitMode::ShareCalibrated};
};

/// Checks every type invariant plus t=0 cross-field feasibility.
/// Returns a list of human-readable violations; empty means valid.
inline std::vector<std::string> validate(const Scenario& sc) {
    std::vector<std::string> bad;
    if (sc.years < 1) bad.push_back("years: horizon must be >= 1");
    if (!(sc.alpha > 0.0 && sc.alpha < 1.0))
        bad.push_back("alpha: initial share must lie in (0,1)");
    if (sc.demand_growth_rate < 0.0)
        bad.push_back("demand_growth_rate: must be >= 0");
    if (!(sc.re_cost_decline >= 0.0 && sc.re_cost_decline < 1.0))
        bad.push_back("re_cost_decline: must lie in [0,1)");
    if (!(sc.fossil_unit_cost > 0.0))
        bad.push_back("fossil_unit_cost: must be > 0");
    if (!(sc.re_initial_cost > 0.0))
        bad.push_back("re_initial_cost: must be > 0");
    if (!(sc.y0 > 0.0)) bad.push_back("y0: initial output must be > 0");
    if (!(sc.fossil_schedule.final_share_fraction > 0.0 &&
          sc.fossil_schedule.final_share_fraction < 1.0))
        bad.push_back("fossil_schedule: final_share_fraction must lie in (0,1)");
    if (sc.sigma_path.kind == ElasticityKind::ExponentialDecay &&
        !(sc.sigma_path.decay_rate > 0.0))
        bad.push_back("ElasticityPath: exponential decay_rate must be > 0");

    if (sc.years >= 1) {
        for (int t = 0; t <= sc.years; ++t) {
            double rho;
            switch (sc.sigma_path.kind) {
                case ElasticityKind::Constant:
                    rho = sc.sigma_path.rho_start;
                    break;
                case ElasticityKind::LinearDecay:
                    rho = sc.sigma_path.rho_start +
                          (sc.sigma_path.rho_end - sc.sigma_path.rho_start) *
                              static_cast<double>(t) / sc.years;
                    break;
                case ElasticityKind::ExponentialDecay:
                    rho = sc.sigma_path.rho_end +
                          (sc.sigma_path.rho_start - sc.sigma_path.rho_end) *
                              std::exp(-sc.sigma_path.decay_rate * t);
                    break;
            }
            if (!(rho > -1.0)) {
                bad.push_back("ElasticityPath: rho(" + std::to_string(t) + ") = " +
                              std::to_string(rho) + " is not > -1");
                break;
            }
        }
    }

    // The t=0 state must be computable before a run is attempted.
    if (bad.empty()) {
        try {
            const double rho0 = rho_at(sc.sigma_path, 0.0, sc.years);
            ces::FactorPoint init;
            double y_init = sc.y0;
            if (sc.init_mode == InitMode::ShareCalibrated) {
                init = ces::calibrate_initial(sc.alpha, rho0, sc.y0);
            } else {
                init = {sc.alpha * sc.y0, (1.0 - sc.alpha) * sc.y0};
                y_init = ces::ces_output({sc.alpha, rho0}, init);
            }
            ces::invert_renewable({sc.alpha, rho0}, y_init, init.fossil);
        } catch (const std::exception& e) {
            bad.push_back(std::string("initial state infeasible: ") + e.what());
        }
    }
    return bad;
}

}  // namespace entrans
