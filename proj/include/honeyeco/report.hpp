#pragma once

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "honeyeco/econ.hpp"
#include "honeyeco/errors.hpp"
#include "honeyeco/sim.hpp"

namespace honeyeco {

/// Fixed 6-decimal formatting used in every CSV and summary line; infinities
/// print as "inf" so absent break-evens stay visible in numeric columns.
inline std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

struct CurveRow {
    std::int64_t tick = 0;
    money cost = 0.0;
    money utility = 0.0;
    money profit = 0.0;
};

/// Cost/utility/profit sampled at every integer tick 0..horizon_ticks.
inline std::vector<CurveRow> curve_rows(const ScenarioParams& p) {
    validate_params(p);
    std::vector<CurveRow> rows;
    rows.reserve(static_cast<std::size_t>(p.horizon_ticks) + 1);
    for (std::int64_t tick = 0; tick <= p.horizon_ticks; ++tick) {
        const double t = static_cast<double>(tick);
        rows.push_back({tick, cost_at(p, t), utility_at(p, t), profit_at(p, t)});
    }
    return rows;
}

namespace detail {
inline void check_stream(const std::ostream& out, const char* what) {
    if (!out) throw io_error(std::string("write failed while emitting ") + what);
}
} // namespace detail

/// Writes `t,cost,utility,profit` rows for ticks 0..horizon_ticks inclusive,
/// LF line endings, money at 6 decimals. Returns the data row count
/// (horizon_ticks + 1).
inline std::size_t emit_curves_csv(const ScenarioParams& p, std::ostream& out) {
    const auto rows = curve_rows(p);
    out << "t,cost,utility,profit\n";
    for (const auto& row : rows)
        out << row.tick << ',' << fixed6(row.cost) << ',' << fixed6(row.utility) << ','
            << fixed6(row.profit) << '\n';
    detail::check_stream(out, "curves CSV");
    return rows.size();
}

/// Writes `M,profit_at_horizon,break_even_t` rows; the break-even column reads
/// "inf" when no break-even exists. Returns the data row count.
inline std::size_t emit_sweep_csv(std::span<const SweepRow> rows, std::ostream& out) {
    if (rows.empty()) throw validation_error("sweep output requires at least one row");
    out << "M,profit_at_horizon,break_even_t\n";
    for (const auto& row : rows)
        out << fixed6(row.maintenance) << ',' << fixed6(row.profit_at_horizon) << ','
            << fixed6(row.break_even.break_even_tick) << '\n';
    detail::check_stream(out, "sweep CSV");
    return rows.size();
}

enum class ReportFormat { csv, json };

/// Serializes a Monte Carlo summary. CSV is one `key,value` row per statistic;
/// JSON is a single object with the same keys in the same, stable order.
/// Identical summaries always produce byte-identical output.
inline void emit_sim_report(const McSummary& s, std::ostream& out, ReportFormat format) {
    const std::string mode = s.mode == SimMode::faithful ? "faithful" : "extended";
    if (format == ReportFormat::csv) {
        out << "mode," << mode << '\n';
        out << "trials," << s.trials << '\n';
        out << "mean_utility," << fixed6(s.mean_utility) << '\n';
        out << "var_utility," << fixed6(s.var_utility) << '\n';
        out << "mean_total_cost," << fixed6(s.mean_total_cost) << '\n';
        out << "var_total_cost," << fixed6(s.var_total_cost) << '\n';
        out << "mean_profit," << fixed6(s.mean_profit) << '\n';
        out << "var_profit," << fixed6(s.var_profit) << '\n';
        out << "mean_startup_cost," << fixed6(s.mean_startup_cost) << '\n';
        out << "mean_maintenance_cost," << fixed6(s.mean_maintenance_cost) << '\n';
        out << "mean_variable_cost," << fixed6(s.mean_variable_cost) << '\n';
        out << "mean_repair_cost," << fixed6(s.mean_repair_cost) << '\n';
        out << "mean_liability_cost," << fixed6(s.mean_liability_cost) << '\n';
        out << "mean_attacks," << fixed6(s.attacks_per_trial.mean) << '\n';
        out << "min_attacks," << s.attacks_per_trial.min << '\n';
        out << "max_attacks," << s.attacks_per_trial.max << '\n';
        out << "total_attacks," << s.total_attacks << '\n';
        out << "knew_in_advance_attacks," << s.knew_in_advance_attacks << '\n';
        out << "detected_attacks," << s.detected_attacks << '\n';
        out << "never_detected_attacks," << s.never_detected_attacks << '\n';
        for (const auto& [duration, count] : s.detection_time_histogram)
            out << "detection_time_hist_" << duration << ',' << count << '\n';
    } else {
        nlohmann::ordered_json j;
        j["mode"] = mode;
        j["trials"] = s.trials;
        j["mean_utility"] = s.mean_utility;
        j["var_utility"] = s.var_utility;
        j["mean_total_cost"] = s.mean_total_cost;
        j["var_total_cost"] = s.var_total_cost;
        j["mean_profit"] = s.mean_profit;
        j["var_profit"] = s.var_profit;
        j["mean_startup_cost"] = s.mean_startup_cost;
        j["mean_maintenance_cost"] = s.mean_maintenance_cost;
        j["mean_variable_cost"] = s.mean_variable_cost;
        j["mean_repair_cost"] = s.mean_repair_cost;
        j["mean_liability_cost"] = s.mean_liability_cost;
        j["mean_attacks"] = s.attacks_per_trial.mean;
        j["min_attacks"] = s.attacks_per_trial.min;
        j["max_attacks"] = s.attacks_per_trial.max;
        j["total_attacks"] = s.total_attacks;
        j["knew_in_advance_attacks"] = s.knew_in_advance_attacks;
        j["detected_attacks"] = s.detected_attacks;
        j["never_detected_attacks"] = s.never_detected_attacks;
        nlohmann::ordered_json hist = nlohmann::ordered_json::object();
        for (const auto& [duration, count] : s.detection_time_histogram)
            hist[std::to_string(duration)] = count;
        j["detection_time_histogram"] = std::move(hist);
        out << j.dump(2) << '\n';
    }
    detail::check_stream(out, "simulation report");
}

} // namespace honeyeco
