#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "honeyeco/econ.hpp"
#include "honeyeco/errors.hpp"
#include "honeyeco/rng.hpp"

namespace honeyeco {

/// faithful: a single superimposed qualified-attack pressure whose expected
/// utility equals the analytic curve; per tick the only draw is one Bernoulli
/// with probability min(1, maintenance_per_tick / attack_likelihood_factor),
/// paying info_value_per_tick on success, with maintenance and startup the
/// only costs.
///
/// extended: explicit attack objects with privilege escalation, detection
/// hazard, and variable/repair/liability costs.
enum class SimMode { faithful, extended };

/// Deterministic scripted attack start, processed before the random arrival
/// draw on its tick. Used for hand-traceable runs and tests.
struct ForcedArrival {
    std::int64_t tick = 1;  // >= 1
    bool qualified = true;

    bool operator==(const ForcedArrival&) const = default;
};

struct SimConfig {
    SimMode mode = SimMode::faithful;
    std::uint64_t seed = 0;
    std::int64_t horizon_ticks = 0;
    ScenarioParams scenario;

    // Extended-mode dynamics. Faithful mode reads only mode, seed,
    // horizon_ticks, scenario and trials.
    double arrival_prob = 0.0;         // chance a new attack starts each tick
    double qualified_fraction = 0.0;   // chance a new attack is qualified
    double escalation_prob = 0.0;      // chance of gaining one privilege level per tick
    std::int64_t max_privilege = 1;    // level at which detection is certain
    double base_detection_hazard = 0.0;
    double hazard_privilege_gain = 0.0;  // hazard multiplier per privilege level
    double deception_factor = 0.0;       // how maintenance spend suppresses detection
    double oob_knowledge_prob = 0.0;     // attacker knew the nature of the net beforehand
    money variable_cost_per_attack_tick = 0.0;
    money repair_cost = 0.0;     // charged once, at detection
    double liability_prob = 0.0; // per active attack tick
    money liability_cost = 0.0;
    std::uint64_t trials = 1;

    std::vector<ForcedArrival> forced_arrivals;

    bool operator==(const SimConfig&) const = default;
};

inline SimConfig validate_config(const SimConfig& c) {
    std::vector<std::string> issues;
    try {
        validate_params(c.scenario);
    } catch (const validation_error& e) {
        for (const auto& issue : e.issues()) issues.push_back("scenario: " + issue);
    }
    auto check_prob = [&issues](double v, const char* name) {
        if (!(v >= 0.0 && v <= 1.0))
            issues.push_back(std::string(name) + " must be in [0, 1] (got " + std::to_string(v) + ")");
    };
    auto check_nonneg = [&issues](double v, const char* name) {
        if (!(v >= 0.0))
            issues.push_back(std::string(name) + " must be >= 0 (got " + std::to_string(v) + ")");
    };
    check_prob(c.arrival_prob, "arrival_prob");
    check_prob(c.qualified_fraction, "qualified_fraction");
    check_prob(c.escalation_prob, "escalation_prob");
    check_prob(c.base_detection_hazard, "base_detection_hazard");
    check_prob(c.oob_knowledge_prob, "oob_knowledge_prob");
    check_prob(c.liability_prob, "liability_prob");
    check_nonneg(c.hazard_privilege_gain, "hazard_privilege_gain");
    check_nonneg(c.deception_factor, "deception_factor");
    check_nonneg(c.variable_cost_per_attack_tick, "variable_cost_per_attack_tick");
    check_nonneg(c.repair_cost, "repair_cost");
    check_nonneg(c.liability_cost, "liability_cost");
    if (c.max_privilege < 1)
        issues.push_back("max_privilege must be >= 1 (got " + std::to_string(c.max_privilege) + ")");
    if (c.horizon_ticks < 0)
        issues.push_back("horizon_ticks must be >= 0 (got " + std::to_string(c.horizon_ticks) + ")");
    if (c.trials < 1) issues.push_back("trials must be >= 1");
    for (std::size_t i = 0; i < c.forced_arrivals.size(); ++i)
        if (c.forced_arrivals[i].tick < 1)
            issues.push_back("forced_arrivals[" + std::to_string(i) + "].tick must be >= 1");
    if (!issues.empty()) throw validation_error(std::move(issues));
    return c;
}

/// Per-tick detection hazard at a given privilege level: certain at
/// max_privilege, otherwise
///   min(1, base_detection_hazard * (1 + hazard_privilege_gain * level)
///            / (1 + deception_factor * maintenance_per_tick)).
/// Nondecreasing in the privilege level, nonincreasing in maintenance spend.
inline double detection_hazard(const SimConfig& c, std::int64_t privilege) {
    if (privilege >= c.max_privilege) return 1.0;
    const double raw = c.base_detection_hazard *
                       (1.0 + c.hazard_privilege_gain * static_cast<double>(privilege)) /
                       (1.0 + c.deception_factor * c.scenario.maintenance_per_tick);
    return std::min(1.0, raw);
}

/// One attack's lifecycle. Attacks with out-of-band knowledge never engage:
/// they knew before starting, recorded as detection_tick = attack_start - 1,
/// and contribute no activity, information or cost. detection_tick is empty
/// when the attack outlives the horizon undetected.
struct AttackRecord {
    std::int64_t attack_start = 0;
    std::optional<std::int64_t> detection_tick;
    bool qualified = false;
    bool knew_in_advance = false;
    std::vector<std::int64_t> privilege_trace;  // level at the end of each active tick
    money info_gained = 0.0;
    money variable_costs = 0.0;
    money repair_cost = 0.0;
    money liability_costs = 0.0;

    bool operator==(const AttackRecord&) const = default;

    /// Number of ticks the attack was active (between start and detection,
    /// both inclusive; through the horizon when never detected).
    std::size_t active_ticks() const noexcept { return privilege_trace.size(); }
};

struct LedgerRow {
    std::int64_t tick = 0;
    money maintenance_cost = 0.0;
    money variable_cost = 0.0;
    money repair_cost = 0.0;
    money liability_cost = 0.0;
    money info_value = 0.0;

    bool operator==(const LedgerRow&) const = default;
};

/// Cost/utility accounting for one trial. Deployment books the startup cost
/// at tick 0; operation ticks run 1..horizon_ticks, one row each. Cumulative
/// totals are the column sums of the rows (plus startup on the cost side).
struct Ledger {
    money startup_cost = 0.0;
    std::vector<LedgerRow> rows;
    money maintenance_total = 0.0;
    money variable_total = 0.0;
    money repair_total = 0.0;
    money liability_total = 0.0;
    money info_total = 0.0;

    bool operator==(const Ledger&) const = default;

    money total_cost() const noexcept {
        return startup_cost + maintenance_total + variable_total + repair_total + liability_total;
    }
    money total_utility() const noexcept { return info_total; }
    money profit() const noexcept { return total_utility() - total_cost(); }
};

struct TrialResult {
    Ledger ledger;
    std::vector<AttackRecord> attacks;

    bool operator==(const TrialResult&) const = default;
};

/// Runs one trial, deterministic given (config.seed, trial_index): the trial's
/// splitmix64 stream starts at splitmix64(seed + trial_index) and every draw
/// comes from it in a fixed order.
///
/// Extended-mode tick loop, per tick in this exact order:
///   1. arrivals - scripted forced arrivals for this tick (no draws), then one
///      Bernoulli(arrival_prob) draw; on arrival, one qualified draw and one
///      out-of-band-knowledge draw (in that order);
///   2. accrual, per active attack in arrival order - info (if qualified) and
///      variable cost, then one liability Bernoulli draw;
///   3. escalation, per active attack in arrival order - one Bernoulli draw,
///      +1 privilege on success while below max_privilege;
///   4. detection, per active attack in arrival order - the end-of-tick
///      privilege level is appended to the trace, then one draw against
///      detection_hazard(); on detection the repair cost is charged and the
///      attack deactivates, so no activity is ever recorded after it.
/// Maintenance accrues every operation tick regardless of attacks.
///
/// Faithful mode instead draws one Bernoulli per tick with probability
/// min(1, maintenance_per_tick / attack_likelihood_factor), accruing
/// info_value_per_tick on success; only maintenance and startup costs arise
/// and no attack records are produced.
inline TrialResult run_trial(const SimConfig& c, std::uint64_t trial_index) {
    validate_config(c);
    SplitMix64 rng = SplitMix64::for_trial(c.seed, trial_index);

    TrialResult result;
    Ledger& ledger = result.ledger;
    ledger.startup_cost = c.scenario.startup_cost;
    ledger.rows.reserve(static_cast<std::size_t>(c.horizon_ticks));

    const money maintenance = c.scenario.maintenance_per_tick;
    const money info_value = c.scenario.info_value_per_tick;

    if (c.mode == SimMode::faithful) {
        const double info_prob =
            std::min(1.0, maintenance / c.scenario.attack_likelihood_factor);
        for (std::int64_t tick = 1; tick <= c.horizon_ticks; ++tick) {
            LedgerRow row{tick, maintenance, 0.0, 0.0, 0.0, 0.0};
            if (rng.bernoulli(info_prob)) row.info_value = info_value;
            ledger.maintenance_total += row.maintenance_cost;
            ledger.info_total += row.info_value;
            ledger.rows.push_back(row);
        }
        return result;
    }

    struct ActiveAttack {
        std::size_t record_index;
        std::int64_t privilege = 0;
    };
    std::vector<ActiveAttack> active;

    for (std::int64_t tick = 1; tick <= c.horizon_ticks; ++tick) {
        LedgerRow row{tick, maintenance, 0.0, 0.0, 0.0, 0.0};

        // phase 1: arrivals
        for (const auto& forced : c.forced_arrivals) {
            if (forced.tick != tick) continue;
            AttackRecord rec;
            rec.attack_start = tick;
            rec.qualified = forced.qualified;
            result.attacks.push_back(rec);
            active.push_back({result.attacks.size() - 1, 0});
        }
        if (rng.bernoulli(c.arrival_prob)) {
            AttackRecord rec;
            rec.attack_start = tick;
            rec.qualified = rng.bernoulli(c.qualified_fraction);
            rec.knew_in_advance = rng.bernoulli(c.oob_knowledge_prob);
            if (rec.knew_in_advance) {
                rec.detection_tick = tick - 1;
                result.attacks.push_back(rec);
            } else {
                result.attacks.push_back(rec);
                active.push_back({result.attacks.size() - 1, 0});
            }
        }

        // phase 2: accrual
        for (const auto& a : active) {
            AttackRecord& rec = result.attacks[a.record_index];
            if (rec.qualified) {
                rec.info_gained += info_value;
                row.info_value += info_value;
            }
            rec.variable_costs += c.variable_cost_per_attack_tick;
            row.variable_cost += c.variable_cost_per_attack_tick;
            if (rng.bernoulli(c.liability_prob)) {
                rec.liability_costs += c.liability_cost;
                row.liability_cost += c.liability_cost;
            }
        }

        // phase 3: escalation
        for (auto& a : active) {
            const bool escalate = rng.bernoulli(c.escalation_prob);
            if (escalate && a.privilege < c.max_privilege) ++a.privilege;
        }

        // phase 4: detection
        std::vector<ActiveAttack> survivors;
        survivors.reserve(active.size());
        for (const auto& a : active) {
            AttackRecord& rec = result.attacks[a.record_index];
            rec.privilege_trace.push_back(a.privilege);
            if (rng.bernoulli(detection_hazard(c, a.privilege))) {
                rec.detection_tick = tick;
                rec.repair_cost += c.repair_cost;
                row.repair_cost += c.repair_cost;
            } else {
                survivors.push_back(a);
            }
        }
        active = std::move(survivors);

        ledger.maintenance_total += row.maintenance_cost;
        ledger.variable_total += row.variable_cost;
        ledger.repair_total += row.repair_cost;
        ledger.liability_total += row.liability_cost;
        ledger.info_total += row.info_value;
        ledger.rows.push_back(row);
    }

    return result;
}

struct AttackCountStats {
    double mean = 0.0;
    std::uint64_t min = 0;
    std::uint64_t max = 0;

    bool operator==(const AttackCountStats&) const = default;
};

/// Aggregate over independent trials. Bit-identical for identical
/// (config, seed) no matter how trials are scheduled: every trial stream
/// depends only on (seed, trial_index) and reduction runs in trial order.
struct McSummary {
    SimMode mode = SimMode::faithful;
    std::uint64_t trials = 0;

    double mean_utility = 0.0, var_utility = 0.0;
    double mean_total_cost = 0.0, var_total_cost = 0.0;
    double mean_profit = 0.0, var_profit = 0.0;

    double mean_startup_cost = 0.0;
    double mean_maintenance_cost = 0.0;
    double mean_variable_cost = 0.0;
    double mean_repair_cost = 0.0;
    double mean_liability_cost = 0.0;

    AttackCountStats attacks_per_trial;
    std::uint64_t total_attacks = 0;
    std::uint64_t knew_in_advance_attacks = 0;
    std::uint64_t detected_attacks = 0;        // engaged attacks detected in-horizon
    std::uint64_t never_detected_attacks = 0;  // engaged attacks outliving the horizon

    /// active-tick duration of detected engaged attacks -> occurrence count
    std::map<std::int64_t, std::uint64_t> detection_time_histogram;

    bool operator==(const McSummary&) const = default;
};

namespace detail {

struct PerTrial {
    double utility = 0.0;
    double total_cost = 0.0;
    double maintenance = 0.0;
    double variable = 0.0;
    double repair = 0.0;
    double liability = 0.0;
    std::uint64_t attacks = 0;
    std::uint64_t knew_in_advance = 0;
    std::uint64_t never_detected = 0;
    std::vector<std::int64_t> detected_durations;
};

inline PerTrial summarize_trial(const SimConfig& c, std::uint64_t trial_index) {
    const TrialResult trial = run_trial(c, trial_index);
    PerTrial out;
    out.utility = trial.ledger.total_utility();
    out.total_cost = trial.ledger.total_cost();
    out.maintenance = trial.ledger.maintenance_total;
    out.variable = trial.ledger.variable_total;
    out.repair = trial.ledger.repair_total;
    out.liability = trial.ledger.liability_total;
    out.attacks = trial.attacks.size();
    for (const auto& rec : trial.attacks) {
        if (rec.knew_in_advance) {
            ++out.knew_in_advance;
        } else if (rec.detection_tick) {
            out.detected_durations.push_back(
                static_cast<std::int64_t>(rec.active_ticks()));
        } else {
            ++out.never_detected;
        }
    }
    return out;
}

// Welford accumulator; updates must arrive in a fixed order for bit-stable results.
struct MeanVar {
    double mean = 0.0;
    double m2 = 0.0;
    std::uint64_t n = 0;

    void add(double x) {
        ++n;
        const double delta = x - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (x - mean);
    }
    double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
};

} // namespace detail

/// threads = 0 picks the hardware concurrency. Any thread count yields the
/// same summary.
inline McSummary run_monte_carlo(const SimConfig& c, unsigned threads = 1) {
    validate_config(c);
    const std::uint64_t trials = c.trials;
    std::vector<detail::PerTrial> per_trial(trials);

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(
        std::min<std::uint64_t>(threads, trials));

    if (threads <= 1) {
        for (std::uint64_t i = 0; i < trials; ++i) per_trial[i] = detail::summarize_trial(c, i);
    } else {
        std::vector<std::thread> workers;
        workers.reserve(threads);
        const std::uint64_t chunk = (trials + threads - 1) / threads;
        for (unsigned w = 0; w < threads; ++w) {
            const std::uint64_t begin = static_cast<std::uint64_t>(w) * chunk;
            const std::uint64_t end = std::min(trials, begin + chunk);
            if (begin >= end) break;
            workers.emplace_back([&c, &per_trial, begin, end] {
                for (std::uint64_t i = begin; i < end; ++i)
                    per_trial[i] = detail::summarize_trial(c, i);
            });
        }
        for (auto& worker : workers) worker.join();
    }

    McSummary s;
    s.mode = c.mode;
    s.trials = trials;
    detail::MeanVar utility, cost, profit;
    double maintenance_sum = 0.0, variable_sum = 0.0, repair_sum = 0.0, liability_sum = 0.0;
    std::uint64_t min_attacks = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t max_attacks = 0;
    double attacks_sum = 0.0;
    for (const auto& t : per_trial) {
        utility.add(t.utility);
        cost.add(t.total_cost);
        profit.add(t.utility - t.total_cost);
        maintenance_sum += t.maintenance;
        variable_sum += t.variable;
        repair_sum += t.repair;
        liability_sum += t.liability;
        attacks_sum += static_cast<double>(t.attacks);
        min_attacks = std::min(min_attacks, t.attacks);
        max_attacks = std::max(max_attacks, t.attacks);
        s.total_attacks += t.attacks;
        s.knew_in_advance_attacks += t.knew_in_advance;
        s.never_detected_attacks += t.never_detected;
        for (const auto duration : t.detected_durations) {
            ++s.detection_time_histogram[duration];
            ++s.detected_attacks;
        }
    }
    const double n = static_cast<double>(trials);
    s.mean_utility = utility.mean;
    s.var_utility = utility.variance();
    s.mean_total_cost = cost.mean;
    s.var_total_cost = cost.variance();
    s.mean_profit = profit.mean;
    s.var_profit = profit.variance();
    s.mean_startup_cost = c.scenario.startup_cost;
    s.mean_maintenance_cost = maintenance_sum / n;
    s.mean_variable_cost = variable_sum / n;
    s.mean_repair_cost = repair_sum / n;
    s.mean_liability_cost = liability_sum / n;
    s.attacks_per_trial = {attacks_sum / n, min_attacks == std::numeric_limits<std::uint64_t>::max() ? 0 : min_attacks, max_attacks};
    return s;
}

/// Exact expectation of faithful-mode utility:
///     info_value_per_tick * horizon_ticks
///         * min(1, maintenance_per_tick / attack_likelihood_factor).
/// The Monte Carlo oracle; rejects extended-mode configs, for which no closed
/// form is maintained.
inline money expected_utility_closed_form(const SimConfig& c) {
    validate_config(c);
    if (c.mode != SimMode::faithful)
        throw validation_error(
            "expected_utility_closed_form only covers faithful mode; no closed form "
            "is maintained for extended mode");
    const double info_prob =
        std::min(1.0, c.scenario.maintenance_per_tick / c.scenario.attack_likelihood_factor);
    return c.scenario.info_value_per_tick * static_cast<double>(c.horizon_ticks) * info_prob;
}

/// Monte Carlo estimate of how long engaged attacks stay active before
/// detection. Durations count active ticks (start through detection,
/// inclusive). Attacks never detected within the horizon are reported through
/// the survival fraction instead of the mean. All statistics are empty when
/// no attack engaged at all, which is distinct from a zero value.
struct DetectionTimeStats {
    std::uint64_t attacks_engaged = 0;
    std::uint64_t detected = 0;
    std::optional<double> mean_active_ticks;
    std::optional<double> std_error;  // absent when fewer than two detections
    std::optional<double> survival_fraction;

    bool no_attacks_observed() const noexcept { return attacks_engaged == 0; }
};

inline DetectionTimeStats mean_detection_time(const SimConfig& c) {
    validate_config(c);
    if (c.mode != SimMode::extended)
        throw validation_error("mean_detection_time requires an extended-mode config");

    DetectionTimeStats stats;
    detail::MeanVar durations;
    for (std::uint64_t i = 0; i < c.trials; ++i) {
        const auto per_trial = detail::summarize_trial(c, i);
        stats.attacks_engaged +=
            per_trial.attacks - per_trial.knew_in_advance;
        for (const auto d : per_trial.detected_durations) durations.add(static_cast<double>(d));
    }
    stats.detected = durations.n;
    if (stats.attacks_engaged == 0) return stats;
    stats.survival_fraction =
        static_cast<double>(stats.attacks_engaged - stats.detected) /
        static_cast<double>(stats.attacks_engaged);
    if (stats.detected > 0) stats.mean_active_ticks = durations.mean;
    if (stats.detected > 1)
        stats.std_error = std::sqrt(durations.variance() / static_cast<double>(stats.detected));
    return stats;
}

} // namespace honeyeco
