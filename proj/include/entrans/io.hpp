#pragma once

// File contracts: JSON scenario documents, trajectory/series CSV and fit
// reports. Writers are deterministic (fixed key order, fixed number
// formatting) so outputs can be golden-file tested byte for byte.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "entrans/scenario.hpp"
#include "entrans/scurve.hpp"
#include "entrans/trajectory.hpp"

namespace entrans::io {

/// A file could not be opened, read or written.
class FileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A document was readable but malformed or violates a type invariant.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using json = nlohmann::ordered_json;

/// 12 significant digits; the precision of every numeric CSV field.
inline std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace detail {

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot open " + path.string() + " for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FileError("cannot open " + path.string() + " for writing");
    out << content;
    if (!out) throw FileError("failed writing " + path.string());
}

inline void reject_unknown_keys(const json& j, const std::vector<std::string>& known,
                                const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const auto& k : known)
            if (key == k) { ok = true; break; }
        if (!ok) throw ParseError("unknown key \"" + key + "\" in " + where);
    }
}

inline double require_sigma(double sigma, const std::string& key) {
    if (!(sigma > 0.0))
        throw ParseError(key + ": sigma must be > 0, got " + std::to_string(sigma));
    return 1.0 / sigma - 1.0;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Scenario documents (JSON)

inline Scenario scenario_from_json(const json& j) {
    detail::reject_unknown_keys(
        j,
        {"label", "years", "alpha", "sigma_path", "demand_growth_rate", "fossil_schedule",
         "re_cost_decline", "fossil_unit_cost", "re_initial_cost", "y0", "init_mode"},
        "scenario");
    Scenario sc;
    try {
        if (j.contains("label")) sc.label = j.at("label").get<std::string>();
        if (j.contains("years")) sc.years = j.at("years").get<int>();
        if (j.contains("alpha")) sc.alpha = j.at("alpha").get<double>();
        if (j.contains("demand_growth_rate"))
            sc.demand_growth_rate = j.at("demand_growth_rate").get<double>();
        if (j.contains("re_cost_decline"))
            sc.re_cost_decline = j.at("re_cost_decline").get<double>();
        if (j.contains("fossil_unit_cost"))
            sc.fossil_unit_cost = j.at("fossil_unit_cost").get<double>();
        if (j.contains("re_initial_cost"))
            sc.re_initial_cost = j.at("re_initial_cost").get<double>();
        if (j.contains("y0")) sc.y0 = j.at("y0").get<double>();

        if (j.contains("sigma_path")) {
            const auto& sp = j.at("sigma_path");
            detail::reject_unknown_keys(sp, {"kind", "sigma_start", "sigma_end", "decay_rate"},
                                        "sigma_path");
            const auto kind = sp.at("kind").get<std::string>();
            const double sigma_start = sp.value("sigma_start", 1.5);
            if (kind == "constant") {
                sc.sigma_path = ElasticityPath::constant_sigma(sigma_start);
            } else if (kind == "linear-decay" || kind == "exponential-decay") {
                ElasticityPath path;
                path.kind = (kind == "linear-decay") ? ElasticityKind::LinearDecay
                                                     : ElasticityKind::ExponentialDecay;
                path.rho_start = detail::require_sigma(sigma_start, "sigma_start");
                path.rho_end = detail::require_sigma(sp.value("sigma_end", sigma_start),
                                                     "sigma_end");
                path.decay_rate = sp.value("decay_rate", 0.0);
                sc.sigma_path = path;
            } else {
                throw ParseError("sigma_path.kind must be constant, linear-decay or "
                                 "exponential-decay, got \"" + kind + "\"");
            }
        }
        if (j.contains("fossil_schedule")) {
            const auto& fs = j.at("fossil_schedule");
            detail::reject_unknown_keys(fs, {"kind", "final_share_fraction"}, "fossil_schedule");
            const auto kind = fs.at("kind").get<std::string>();
            if (kind == "linear") {
                sc.fossil_schedule.kind = ScheduleKind::Linear;
            } else if (kind == "exponential") {
                sc.fossil_schedule.kind = ScheduleKind::Exponential;
            } else {
                throw ParseError("fossil_schedule.kind must be linear or exponential, got \"" +
                                 kind + "\"");
            }
            if (fs.contains("final_share_fraction"))
                sc.fossil_schedule.final_share_fraction =
                    fs.at("final_share_fraction").get<double>();
        }
        if (j.contains("init_mode")) {
            const auto mode = j.at("init_mode").get<std::string>();
            if (mode == "share-calibrated") {
                sc.init_mode = InitMode::ShareCalibrated;
            } else if (mode == "direct-share") {
                sc.init_mode = InitMode::DirectShare;
            } else {
                throw ParseError("init_mode must be share-calibrated or direct-share, got \"" +
                                 mode + "\"");
            }
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("scenario document: ") + e.what());
    }
    return sc;
}

inline json scenario_to_json(const Scenario& sc) {
    json sp;
    switch (sc.sigma_path.kind) {
        case ElasticityKind::Constant:
            sp = {{"kind", "constant"},
                  {"sigma_start", 1.0 / (1.0 + sc.sigma_path.rho_start)}};
            break;
        case ElasticityKind::LinearDecay:
            sp = {{"kind", "linear-decay"},
                  {"sigma_start", 1.0 / (1.0 + sc.sigma_path.rho_start)},
                  {"sigma_end", 1.0 / (1.0 + sc.sigma_path.rho_end)}};
            break;
        case ElasticityKind::ExponentialDecay:
            sp = {{"kind", "exponential-decay"},
                  {"sigma_start", 1.0 / (1.0 + sc.sigma_path.rho_start)},
                  {"sigma_end", 1.0 / (1.0 + sc.sigma_path.rho_end)},
                  {"decay_rate", sc.sigma_path.decay_rate}};
            break;
    }
    return json{
        {"label", sc.label},
        {"years", sc.years},
        {"alpha", sc.alpha},
        {"sigma_path", sp},
        {"demand_growth_rate", sc.demand_growth_rate},
        {"fossil_schedule",
         {{"kind", sc.fossil_schedule.kind == ScheduleKind::Linear ? "linear" : "exponential"},
          {"final_share_fraction", sc.fossil_schedule.final_share_fraction}}},
        {"re_cost_decline", sc.re_cost_decline},
        {"fossil_unit_cost", sc.fossil_unit_cost},
        {"re_initial_cost", sc.re_initial_cost},
        {"y0", sc.y0},
        {"init_mode",
         sc.init_mode == InitMode::ShareCalibrated ? "share-calibrated" : "direct-share"}};
}

inline Scenario load_scenario(const std::filesystem::path& path) {
    const std::string text = detail::read_file(path);
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    Scenario sc = scenario_from_json(j);
    if (auto violations = validate(sc); !violations.empty()) {
        std::string msg = path.string() + ": scenario invalid:";
        for (const auto& v : violations) msg += "\n  - " + v;
        throw ParseError(msg);
    }
    return sc;
}

inline void write_scenario(const Scenario& sc, const std::filesystem::path& path) {
    detail::write_file(path, scenario_to_json(sc).dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Trajectory tables (CSV)

inline constexpr const char* kTrajectoryHeader =
    "t,rho,F,R,Y,share_F,p_R,p_F,carbon_tax,re_multiple";

inline std::string trajectory_to_csv(const TrajectoryTable& table) {
    std::string out = kTrajectoryHeader;
    out += '\n';
    for (const auto& r : table.rows) {
        out += std::to_string(r.t);
        for (double v : {r.rho, r.F, r.R, r.Y, r.share_F, r.p_R, r.p_F, r.carbon_tax,
                         r.re_multiple}) {
            out += ',';
            out += format_number(v);
        }
        out += '\n';
    }
    return out;
}

inline void write_trajectory(const TrajectoryTable& table, const std::filesystem::path& path) {
    detail::write_file(path, trajectory_to_csv(table));
}

/// Reads rows back to printed precision. The scenario is not stored in the
/// CSV; the returned table carries a default-constructed one.
inline TrajectoryTable load_trajectory(const std::filesystem::path& path) {
    std::istringstream in(detail::read_file(path));
    std::string line;
    if (!std::getline(in, line) || line != kTrajectoryHeader)
        throw ParseError(path.string() + ":1: bad trajectory header");
    TrajectoryTable table;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        TrajectoryRow r;
        double fields[9];
        std::istringstream ls(line);
        std::string cell;
        if (!std::getline(ls, cell, ','))
            throw ParseError(path.string() + ":" + std::to_string(lineno) + ": missing t");
        r.t = std::stoi(cell);
        for (int i = 0; i < 9; ++i) {
            if (!std::getline(ls, cell, ','))
                throw ParseError(path.string() + ":" + std::to_string(lineno) +
                                 ": expected 10 fields");
            fields[i] = std::stod(cell);
        }
        r.rho = fields[0]; r.F = fields[1]; r.R = fields[2]; r.Y = fields[3];
        r.share_F = fields[4]; r.p_R = fields[5]; r.p_F = fields[6];
        r.carbon_tax = fields[7]; r.re_multiple = fields[8];
        if (!table.rows.empty() && r.t != table.rows.back().t + 1)
            throw ParseError(path.string() + ":" + std::to_string(lineno) +
                             ": years not contiguous");
        table.rows.push_back(r);
    }
    return table;
}

// ---------------------------------------------------------------------------
// Share series (CSV)

inline scurve::SeriesData load_series(const std::filesystem::path& path) {
    std::istringstream in(detail::read_file(path));
    std::string line;
    if (!std::getline(in, line) || line != "year,share")
        throw ParseError(path.string() + ":1: expected header \"year,share\"");
    scurve::SeriesData series;
    series.label = path.stem().string();
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ParseError(path.string() + ":" + std::to_string(lineno) +
                             ": expected \"year,share\" row");
        double year, share;
        try {
            year = std::stod(line.substr(0, comma));
            share = std::stod(line.substr(comma + 1));
        } catch (const std::exception&) {
            throw ParseError(path.string() + ":" + std::to_string(lineno) +
                             ": non-numeric field");
        }
        if (!(share >= 0.0 && share <= 1.0))
            throw ParseError(path.string() + ":" + std::to_string(lineno) + ": share " +
                             format_number(share) + " out of [0,1]");
        if (!series.points.empty()) {
            if (year == series.points.back().first)
                throw ParseError(path.string() + ":" + std::to_string(lineno) +
                                 ": duplicate year " + format_number(year));
            if (year < series.points.back().first)
                throw ParseError(path.string() + ":" + std::to_string(lineno) +
                                 ": rows not sorted by year");
        }
        series.points.emplace_back(year, share);
    }
    return series;
}

inline void write_series(const scurve::SeriesData& series, const std::filesystem::path& path) {
    std::string out = "year,share\n";
    for (const auto& [year, share] : series.points)
        out += format_number(year) + "," + format_number(share) + "\n";
    detail::write_file(path, out);
}

// ---------------------------------------------------------------------------
// Fit reports (JSON)

inline json fit_to_json(const scurve::Fit& fit) {
    return json{{"model", scurve::kind_name(fit.model.kind)},
                {"params", fit.model.params},
                {"rmse", fit.rmse},
                {"r_squared", fit.r_squared},
                {"iterations", fit.iterations},
                {"converged", fit.converged}};
}

/// Writes the fits ranked by ascending rmse (stable for ties).
inline void write_fit_report(std::vector<scurve::Fit> fits, const std::filesystem::path& path) {
    std::stable_sort(fits.begin(), fits.end(),
                     [](const scurve::Fit& a, const scurve::Fit& b) { return a.rmse < b.rmse; });
    json arr = json::array();
    for (const auto& f : fits) arr.push_back(fit_to_json(f));
    detail::write_file(path, json{{"fits", arr}}.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Presentation plumbing: polyline chart of carbon_tax and share_F over t.

inline void write_svg(const TrajectoryTable& table, const std::filesystem::path& path) {
    const int width = 800, height = 400, margin = 40;
    double tax_min = 0.0, tax_max = 0.0;
    for (const auto& r : table.rows) {
        tax_min = std::min(tax_min, r.carbon_tax);
        tax_max = std::max(tax_max, r.carbon_tax);
    }
    if (tax_max == tax_min) tax_max = tax_min + 1.0;
    const double T = table.rows.empty() ? 1.0 : table.rows.back().t;

    auto x_of = [&](double t) { return margin + t / T * (width - 2 * margin); };
    auto polyline = [&](auto value_of, double lo, double hi, const char* color) {
        std::string pts;
        for (const auto& r : table.rows) {
            const double y = height - margin -
                             (value_of(r) - lo) / (hi - lo) * (height - 2 * margin);
            pts += format_number(x_of(r.t)) + "," + format_number(y) + " ";
        }
        return "<polyline fill=\"none\" stroke=\"" + std::string(color) +
               "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
    };

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                      std::to_string(width) + "\" height=\"" + std::to_string(height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += polyline([](const TrajectoryRow& r) { return r.carbon_tax; }, tax_min, tax_max,
                    "#c0392b");
    svg += polyline([](const TrajectoryRow& r) { return r.share_F; }, 0.0, 1.0, "#2980b9");
    svg += "<text x=\"" + std::to_string(margin) + "\" y=\"20\" font-size=\"12\">" +
           table.scenario.label + ": carbon_tax (red), share_F (blue)</text>\n";
    svg += "</svg>\n";
    detail::write_file(path, svg);
}

}  // namespace entrans::io
