#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "honeyeco/errors.hpp"

namespace honeyeco {

using money = double;

/// Constants of the analytic deployment model. Cost grows linearly,
///     cost(t) = startup_cost + maintenance_per_tick * t
/// and utility grows with the information value scaled by the ratio of
/// maintenance spend to the attack-likelihood factor,
///     utility(t) = info_value_per_tick * t * maintenance_per_tick / attack_likelihood_factor.
/// Ticks are dimensionless time units; deployment happens at tick 0 and attack
/// pressure is assumed present from tick 0 on.
struct ScenarioParams {
    money startup_cost = 0.0;
    money maintenance_per_tick = 1.0;      // must stay strictly positive
    money info_value_per_tick = 0.0;       // value per tick of qualified-attack observation
    money attack_likelihood_factor = 1.0;  // relates maintenance spend to qualified-attack likelihood
    std::int64_t horizon_ticks = 0;        // analysis horizon for sweeps and reports

    bool operator==(const ScenarioParams&) const = default;
};

/// Checks every invariant and reports all violations at once, by field name.
inline ScenarioParams validate_params(const ScenarioParams& p) {
    std::vector<std::string> issues;
    if (!(p.startup_cost >= 0.0))
        issues.push_back("startup_cost must be >= 0 (got " + std::to_string(p.startup_cost) + ")");
    if (!(p.maintenance_per_tick > 0.0))
        issues.push_back("maintenance_per_tick must be > 0 (got " +
                         std::to_string(p.maintenance_per_tick) +
                         "): the model requires a strictly positive per-tick maintenance spend");
    if (!(p.info_value_per_tick >= 0.0))
        issues.push_back("info_value_per_tick must be >= 0 (got " +
                         std::to_string(p.info_value_per_tick) + ")");
    if (!(p.attack_likelihood_factor > 0.0))
        issues.push_back("attack_likelihood_factor must be > 0 (got " +
                         std::to_string(p.attack_likelihood_factor) + ")");
    if (p.horizon_ticks < 0)
        issues.push_back("horizon_ticks must be >= 0 (got " + std::to_string(p.horizon_ticks) + ")");
    if (!issues.empty()) throw validation_error(std::move(issues));
    return p;
}

namespace detail {
inline void require_nonnegative_tick(double t, const char* where) {
    if (!(t >= 0.0))
        throw validation_error(std::string(where) + ": tick must be >= 0 (got " +
                               std::to_string(t) + ")");
}
} // namespace detail

inline money cost_at(const ScenarioParams& p, double t) {
    detail::require_nonnegative_tick(t, "cost_at");
    return p.startup_cost + p.maintenance_per_tick * t;
}

/// Literal analytic utility: no clamping even when maintenance exceeds the
/// attack-likelihood factor (where the probabilistic reading of the ratio
/// breaks down; the simulator's faithful mode clamps, and the CLI warns).
inline money utility_at(const ScenarioParams& p, double t) {
    detail::require_nonnegative_tick(t, "utility_at");
    return p.info_value_per_tick * t * p.maintenance_per_tick / p.attack_likelihood_factor;
}

inline money profit_at(const ScenarioParams& p, double t) {
    detail::require_nonnegative_tick(t, "profit_at");
    return utility_at(p, t) - cost_at(p, t);
}

/// Smallest tick where utility catches up with cost. A crossing exists iff
/// info_value_per_tick > attack_likelihood_factor; utility only touches cost
/// (never supersedes it) otherwise. break_even_tick is +inf when absent, which
/// also serializes naturally in CSV output.
struct BreakEvenResult {
    bool exists = false;
    double break_even_tick = std::numeric_limits<double>::infinity();

    bool operator==(const BreakEvenResult&) const = default;
};

inline BreakEvenResult break_even_time(const ScenarioParams& p) {
    if (!(p.info_value_per_tick > p.attack_likelihood_factor)) return {};
    const double denom =
        p.maintenance_per_tick * (p.info_value_per_tick - p.attack_likelihood_factor);
    return {true, p.startup_cost * p.attack_likelihood_factor / denom};
}

/// Numeric cross-check route for break_even_time: expands a bracket by
/// doubling, then bisects profit_at. Uses only profit evaluations, never the
/// closed form, so the two routes stay independent.
inline BreakEvenResult break_even_time_bisection(const ScenarioParams& p) {
    const double slope = profit_at(p, 1.0) - profit_at(p, 0.0);
    if (!(slope > 0.0)) return {};
    double lo = 0.0;
    if (profit_at(p, lo) >= 0.0) return {true, 0.0};
    double hi = 1.0;
    for (int i = 0; i < 200 && profit_at(p, hi) < 0.0; ++i) {
        lo = hi;
        hi *= 2.0;
    }
    for (int i = 0; i < 500 && (hi - lo) > 1e-12 * std::max(1.0, lo); ++i) {
        const double mid = 0.5 * (lo + hi);
        if (profit_at(p, mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return {true, 0.5 * (lo + hi)};
}

struct SweepRow {
    money maintenance = 0.0;
    money profit_at_horizon = 0.0;
    BreakEvenResult break_even;

    bool operator==(const SweepRow&) const = default;
};

/// Evaluates profit at the horizon for `steps` equally spaced maintenance
/// values, endpoints included. Each row carries the break-even result for that
/// maintenance level.
inline std::vector<SweepRow> sweep_maintenance(const ScenarioParams& p, money m_min, money m_max,
                                               std::int64_t steps) {
    validate_params(p);
    std::vector<std::string> issues;
    if (!(m_min > 0.0)) issues.push_back("sweep range: m_min must be > 0 (got " + std::to_string(m_min) + ")");
    if (m_min > m_max) issues.push_back("sweep range: m_min must be <= m_max");
    if (steps < 2) issues.push_back("sweep range: steps must be >= 2 (got " + std::to_string(steps) + ")");
    if (!issues.empty()) throw validation_error(std::move(issues));

    std::vector<SweepRow> rows;
    rows.reserve(static_cast<std::size_t>(steps));
    const double horizon = static_cast<double>(p.horizon_ticks);
    for (std::int64_t i = 0; i < steps; ++i) {
        ScenarioParams q = p;
        q.maintenance_per_tick =
            m_min + static_cast<double>(i) * (m_max - m_min) / static_cast<double>(steps - 1);
        rows.push_back({q.maintenance_per_tick, profit_at(q, horizon), break_even_time(q)});
    }
    return rows;
}

struct OptimalMaintenance {
    money maintenance = 0.0;
    money profit = 0.0;
};

/// Grid argmax of profit at the horizon. The literal model is linear in the
/// maintenance spend, so the optimum sits on a boundary of the grid; ties go
/// to the smallest (cheapest) maintenance value.
inline OptimalMaintenance optimal_maintenance(const ScenarioParams& p, money m_min, money m_max,
                                              std::int64_t steps) {
    const auto rows = sweep_maintenance(p, m_min, m_max, steps);
    const SweepRow* best = &rows.front();
    for (const auto& row : rows)
        if (row.profit_at_horizon > best->profit_at_horizon) best = &row;
    return {best->maintenance, best->profit_at_horizon};
}

/// One calibration point: a maintenance level and the observed per-tick rate
/// of qualified attacks at that level.
struct RateObservation {
    money maintenance = 0.0;
    double qualified_attack_rate = 0.0;
};

/// Calibrates the attack-likelihood factor from observed qualified-attack
/// rates under the model rate = maintenance / factor. Least-squares fit
/// through the origin:
///     factor = sum(maintenance^2) / sum(maintenance * rate).
/// Exact whenever the observations lie on a common ray.
inline money estimate_attack_likelihood_factor(std::span<const RateObservation> observations) {
    if (observations.empty())
        throw validation_error("calibration requires at least one observation");
    double sum_m2 = 0.0;
    double sum_mr = 0.0;
    std::vector<std::string> issues;
    for (std::size_t i = 0; i < observations.size(); ++i) {
        const auto& o = observations[i];
        if (!(o.maintenance > 0.0))
            issues.push_back("observation " + std::to_string(i) + ": maintenance must be > 0 (got " +
                             std::to_string(o.maintenance) + ")");
        if (!(o.qualified_attack_rate >= 0.0))
            issues.push_back("observation " + std::to_string(i) + ": rate must be >= 0 (got " +
                             std::to_string(o.qualified_attack_rate) + ")");
        sum_m2 += o.maintenance * o.maintenance;
        sum_mr += o.maintenance * o.qualified_attack_rate;
    }
    if (!issues.empty()) throw validation_error(std::move(issues));
    if (!(sum_mr > 0.0))
        throw validation_error("calibration requires at least one observation with rate > 0");
    return sum_m2 / sum_mr;
}

} // namespace honeyeco
