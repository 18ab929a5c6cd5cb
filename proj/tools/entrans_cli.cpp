// Command-line front end: simulate, sweep, fit and reproduce.
//
// Exit codes: 0 success, 2 validation error, 3 infeasible simulation,
// 4 I/O error. All diagnostics go to standard error.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "entrans/io.hpp"
#include "entrans/reproduce.hpp"
#include "entrans/scurve.hpp"
#include "entrans/trajectory.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitIo = 4;

namespace fs = std::filesystem;
using entrans::io::json;

int cmd_simulate(const std::string& scenario_path, const std::string& out_dir,
                 bool clamp_negative_tax, bool svg) {
    const entrans::Scenario sc = entrans::io::load_scenario(scenario_path);
    entrans::TrajectoryTable table = entrans::simulate(sc);
    if (clamp_negative_tax)
        for (auto& row : table.rows) row.carbon_tax = std::max(row.carbon_tax, 0.0);

    fs::create_directories(out_dir);
    entrans::io::write_trajectory(table, fs::path(out_dir) / (sc.label + ".csv"));
    if (svg) entrans::io::write_svg(table, fs::path(out_dir) / (sc.label + ".svg"));

    const auto peak = entrans::tax_peak(table);
    const auto& last = table.rows.back();
    const json summary{{"label", sc.label},
                       {"peak_tax_year", peak->first},
                       {"peak_tax", peak->second},
                       {"final_share_F", last.share_F},
                       {"final_re_multiple", last.re_multiple}};
    entrans::io::detail::write_file(fs::path(out_dir) / (sc.label + "_summary.json"),
                                    summary.dump(2) + "\n");
    return kExitOk;
}

entrans::SweepGrid load_grid(const std::string& path) {
    json j;
    try {
        j = json::parse(entrans::io::detail::read_file(path));
    } catch (const json::parse_error& e) {
        throw entrans::io::ParseError(path + ": " + e.what());
    }
    entrans::SweepGrid grid;
    for (const auto& [key, values] : j.items()) {
        if (key != "alpha" && key != "sigma" && key != "zeta" && key != "gamma")
            throw entrans::io::ParseError(path + ": unknown sweep field \"" + key + "\"");
        if (!values.is_array() || values.empty())
            throw entrans::io::ParseError(path + ": field \"" + key +
                                          "\" must be a non-empty array");
        grid.values[key] = values.get<std::vector<double>>();
    }
    if (grid.values.empty()) throw entrans::io::ParseError(path + ": empty grid");
    return grid;
}

int cmd_sweep(const std::string& scenario_path, const std::string& grid_path,
              const std::string& out_dir, int jobs) {
    const entrans::Scenario base = entrans::io::load_scenario(scenario_path);
    const entrans::SweepGrid grid = load_grid(grid_path);
    const auto points = entrans::simulate_sweep(base, grid, jobs);

    fs::create_directories(out_dir);
    int failures = 0;
    for (const auto& pt : points) {
        if (!pt.table) {
            ++failures;
            std::cerr << "sweep point failed:";
            for (const auto& [k, v] : pt.overrides)
                std::cerr << " " << k << "=" << entrans::io::format_number(v);
            std::cerr << ": " << pt.error << "\n";
            continue;
        }
        entrans::io::write_trajectory(
            *pt.table,
            fs::path(out_dir) / entrans::reproduce::detail::point_filename(base.label, pt));
    }
    entrans::io::detail::write_file(
        fs::path(out_dir) / (base.label + "_sweep_summary.csv"),
        entrans::reproduce::detail::sweep_summary_csv(points));
    if (failures == static_cast<int>(points.size())) return kExitInfeasible;
    return kExitOk;
}

int cmd_fit(const std::string& series_path, std::vector<std::string> model_names,
            const std::string& out_path) {
    const auto series = entrans::io::load_series(series_path);
    if (model_names.empty())
        model_names = {"logistic", "logistic-ho", "gompertz", "bass"};

    std::vector<entrans::scurve::Fit> fits;
    std::optional<entrans::scurve::Fit> logistic_fit;
    for (const auto& name : model_names) {
        const auto kind = entrans::scurve::kind_from_name(name);
        if (!kind) {
            std::cerr << "unknown model kind \"" << name << "\"\n";
            return kExitValidation;
        }
        if (*kind == entrans::scurve::Kind::LogisticHo) {
            // Warm-start the higher-order form from the plain logistic fit.
            if (!logistic_fit)
                logistic_fit = entrans::scurve::fit(entrans::scurve::Kind::Logistic, series);
            auto nested = entrans::scurve::fit_ho_nested(series, *logistic_fit);
            auto cold = entrans::scurve::fit(*kind, series);
            fits.push_back(nested.rmse <= cold.rmse ? nested : cold);
        } else {
            auto f = entrans::scurve::fit(*kind, series);
            if (*kind == entrans::scurve::Kind::Logistic) logistic_fit = f;
            fits.push_back(std::move(f));
        }
    }
    entrans::io::write_fit_report(fits, out_path);
    return kExitOk;
}

int cmd_reproduce(const std::string& figure, const std::string& out_dir, int jobs) {
    const auto files = entrans::reproduce::reproduce_figure(figure, out_dir, jobs);
    for (const auto& f : files) std::cout << f << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CES energy-substitution simulator and S-curve fitting toolkit"};
    app.require_subcommand(1);

    std::string scenario_path, grid_path, series_path, out_path, figure;
    std::vector<std::string> model_names;
    bool clamp_negative_tax = false, svg = false;
    int jobs = 1;

    auto* sim = app.add_subcommand("simulate", "Run one scenario and write its trajectory");
    sim->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    sim->add_option("--out", out_path, "Output directory")->required();
    sim->add_flag("--clamp-negative-tax", clamp_negative_tax,
                  "Clamp negative carbon taxes to zero in the output");
    sim->add_flag("--svg", svg, "Also emit an SVG chart");

    auto* sweep = app.add_subcommand("sweep", "Run a Cartesian parameter sweep");
    sweep->add_option("--scenario", scenario_path, "Base scenario JSON file")->required();
    sweep->add_option("--grid", grid_path, "Grid JSON file (field -> value list)")->required();
    sweep->add_option("--out", out_path, "Output directory")->required();
    sweep->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

    auto* fit = app.add_subcommand("fit", "Fit S-curve models to a share series");
    fit->add_option("--series", series_path, "Series CSV (year,share)")->required();
    fit->add_option("--model", model_names,
                    "Model kind (repeatable): logistic, logistic-ho, gompertz, bass");
    fit->add_option("--out", out_path, "Fit report JSON file")->required();

    auto* rep = app.add_subcommand("reproduce", "Emit a default figure-style dataset");
    rep->add_option("--figure", figure, "One of: 1, 2, 6, 7, claims")->required();
    rep->add_option("--out", out_path, "Output directory")->required();
    rep->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed())
            return cmd_simulate(scenario_path, out_path, clamp_negative_tax, svg);
        if (sweep->parsed()) return cmd_sweep(scenario_path, grid_path, out_path, jobs);
        if (fit->parsed()) return cmd_fit(series_path, model_names, out_path);
        if (rep->parsed()) return cmd_reproduce(figure, out_path, jobs);
    } catch (const entrans::io::FileError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const entrans::SimulationInfeasible& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const entrans::ces::InfeasibleIsoquant& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}
