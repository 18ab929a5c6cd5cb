#pragma once

// Year-by-year execution of the exogenous phase-down procedure: fix the
// fossil path, solve the isoquant for the renewable quantity, price the
// fossil input off the first-order condition and report the carbon tax as
// the price differential against the constant fossil unit cost.

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "entrans/ces.hpp"
#include "entrans/scenario.hpp"

namespace entrans {

struct TrajectoryRow {
    int t{0};
    double rho{0.0};
    double F{0.0};
    double R{0.0};
    double Y{0.0};
    double share_F{0.0};
    double p_R{0.0};
    double p_F{0.0};
    double carbon_tax{0.0};
    double re_multiple{0.0};
};

struct TrajectoryTable {
    Scenario scenario;
    std::vector<TrajectoryRow> rows;  // t = 0..T, no gaps
};

/// Raised when the isoquant inversion fails mid-run. Carries the offending
/// year and the rows computed up to it for diagnosis.
class SimulationInfeasible : public std::runtime_error {
public:
    SimulationInfeasible(int year, std::string detail, std::vector<TrajectoryRow> partial)
        : std::runtime_error("simulation infeasible at year " + std::to_string(year) +
                             ": " + detail),
          year_(year), partial_(std::move(partial)) {}

    int year() const { return year_; }
    const std::vector<TrajectoryRow>& partial_rows() const { return partial_; }

private:
    int year_;
    std::vector<TrajectoryRow> partial_;
};

class ScenarioInvalid : public std::runtime_error {
public:
    explicit ScenarioInvalid(const std::vector<std::string>& violations)
        : std::runtime_error(join(violations)), violations_(violations) {}

    const std::vector<std::string>& violations() const { return violations_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string s = "invalid scenario:";
        for (const auto& item : v) s += "\n  - " + item;
        return s;
    }
    std::vector<std::string> violations_;
};

/// Runs one scenario. Negative carbon taxes in early years are reported as
/// computed, not clamped.
inline TrajectoryTable simulate(const Scenario& sc) {
    if (auto violations = validate(sc); !violations.empty())
        throw ScenarioInvalid(violations);

    const double T = sc.years;
    const double rho0 = rho_at(sc.sigma_path, 0.0, T);

    ces::FactorPoint init;
    double y_init = sc.y0;
    if (sc.init_mode == InitMode::ShareCalibrated) {
        init = ces::calibrate_initial(sc.alpha, rho0, sc.y0);
    } else {
        init = {sc.alpha * sc.y0, (1.0 - sc.alpha) * sc.y0};
        y_init = ces::ces_output({sc.alpha, rho0}, init);
    }

    TrajectoryTable table{sc, {}};
    table.rows.reserve(sc.years + 1);
    double r0 = 0.0;
    for (int t = 0; t <= sc.years; ++t) {
        TrajectoryRow row;
        row.t = t;
        try {
            row.rho = rho_at(sc.sigma_path, t, T);
            row.Y = y_init * std::pow(1.0 + sc.demand_growth_rate, t);
            row.F = fossil_at(sc.fossil_schedule, init.fossil, t, T);
            const ces::CesParams params{sc.alpha, row.rho};
            row.R = ces::invert_renewable(params, row.Y, row.F);
            row.share_F = row.F / (row.F + row.R);
            row.p_R = sc.re_initial_cost * std::pow(1.0 - sc.re_cost_decline, t);
            row.p_F = row.p_R * ces::relative_price(params, {row.F, row.R});
            row.carbon_tax = row.p_F - sc.fossil_unit_cost;
        } catch (const std::exception& e) {
            throw SimulationInfeasible(t, e.what(), std::move(table.rows));
        }
        if (t == 0) r0 = row.R;
        row.re_multiple = row.R / r0;
        table.rows.push_back(row);
    }
    return table;
}

/// Argmax year and value of the carbon tax series; earliest year wins ties.
/// Empty only for an empty table.
inline std::optional<std::pair<int, double>> tax_peak(const TrajectoryTable& table) {
    if (table.rows.empty()) return std::nullopt;
    const TrajectoryRow* best = &table.rows.front();
    for (const auto& row : table.rows)
        if (row.carbon_tax > best->carbon_tax) best = &row;
    return std::make_pair(best->t, best->carbon_tax);
}

// ---------------------------------------------------------------------------
// Parameter sweeps

/// Swept fields and their value lists. Recognized fields: "alpha", "sigma"
/// (installs a constant elasticity path), "zeta" (re_cost_decline) and
/// "gamma" (demand_growth_rate).
struct SweepGrid {
    std::map<std::string, std::vector<double>> values;
};

struct SweepPoint {
    std::map<std::string, double> overrides;  // field -> value, all grid fields
    Scenario scenario;
    std::optional<TrajectoryTable> table;  // absent on failure
    std::string error;                     // set when table is absent
};

inline Scenario apply_overrides(Scenario sc, const std::map<std::string, double>& ov) {
    for (const auto& [field, value] : ov) {
        if (field == "alpha") {
            sc.alpha = value;
        } else if (field == "sigma") {
            sc.sigma_path = ElasticityPath::constant_sigma(value);
        } else if (field == "zeta") {
            sc.re_cost_decline = value;
        } else if (field == "gamma") {
            sc.demand_growth_rate = value;
        } else {
            throw std::invalid_argument("unknown sweep field: " + field);
        }
    }
    return sc;
}

/// One table per Cartesian grid point, ordered lexicographically over the
/// sorted field names with values in their given order. Per-point failures
/// are collected, not rethrown. Points may be evaluated on up to `jobs`
/// worker threads; the result order does not depend on the job count.
inline std::vector<SweepPoint> simulate_sweep(const Scenario& base, const SweepGrid& grid,
                                              int jobs = 1) {
    std::vector<std::pair<std::string, std::vector<double>>> fields(grid.values.begin(),
                                                                    grid.values.end());
    std::size_t total = 1;
    for (const auto& [name, vals] : fields) {
        if (vals.empty()) throw std::invalid_argument("sweep field " + name + " has no values");
        total *= vals.size();
    }
    std::vector<SweepPoint> points(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rem = idx;
        std::map<std::string, double> ov;
        for (auto it = fields.rbegin(); it != fields.rend(); ++it) {
            ov[it->first] = it->second[rem % it->second.size()];
            rem /= it->second.size();
        }
        points[idx].overrides = ov;
        points[idx].scenario = apply_overrides(base, ov);
    }

    auto run_point = [](SweepPoint& pt) {
        try {
            pt.table = simulate(pt.scenario);
        } catch (const std::exception& e) {
            pt.error = e.what();
        }
    };
    const int workers = std::clamp<int>(jobs, 1, static_cast<int>(total));
    if (workers <= 1) {
        for (auto& pt : points) run_point(pt);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1))
                    run_point(points[i]);
            });
        for (auto& th : pool) th.join();
    }
    return points;
}

}  // namespace entrans
