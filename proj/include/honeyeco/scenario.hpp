#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "honeyeco/decoy.hpp"
#include "honeyeco/econ.hpp"
#include "honeyeco/errors.hpp"
#include "honeyeco/sim.hpp"

namespace honeyeco {

/// On-disk scenario document. The "scenario" block is required and carries the
/// analytic model constants; "simulation" and "decoy" are optional. Parsing is
/// strict: unknown keys are rejected so a typo in an economic parameter cannot
/// silently fall back to a default. simulation.scenario always mirrors the
/// top-level scenario block; the simulation block may override horizon_ticks.
struct ScenarioFile {
    ScenarioParams scenario;
    std::optional<SimConfig> simulation;
    std::optional<DecoyConfig> decoy;

    bool operator==(const ScenarioFile&) const = default;
};

namespace detail {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

inline void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                                const std::string& where) {
    for (const auto& [key, value] : obj.items())
        if (!allowed.contains(key))
            throw validation_error(where + ": unknown key \"" + key + "\"");
}

inline const json& require_object(const json& j, const std::string& where) {
    if (!j.is_object()) throw validation_error(where + ": expected an object");
    return j;
}

inline double get_number(const json& obj, const std::string& where, const std::string& key) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw validation_error(where + ": missing key \"" + key + "\"");
    if (!it->is_number()) throw validation_error(where + "." + key + ": expected a number");
    return it->get<double>();
}

inline double get_number_or(const json& obj, const std::string& where, const std::string& key,
                            double fallback) {
    if (!obj.contains(key)) return fallback;
    return get_number(obj, where, key);
}

inline std::int64_t get_integer(const json& obj, const std::string& where, const std::string& key) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw validation_error(where + ": missing key \"" + key + "\"");
    if (!it->is_number_integer())
        throw validation_error(where + "." + key + ": expected an integer");
    return it->get<std::int64_t>();
}

inline std::int64_t get_integer_or(const json& obj, const std::string& where,
                                   const std::string& key, std::int64_t fallback) {
    if (!obj.contains(key)) return fallback;
    return get_integer(obj, where, key);
}

inline std::uint64_t get_unsigned_or(const json& obj, const std::string& where,
                                     const std::string& key, std::uint64_t fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& j = obj.at(key);
    if (!j.is_number_unsigned())
        throw validation_error(where + "." + key + ": expected a nonnegative integer");
    return j.get<std::uint64_t>();
}

inline bool get_bool_or(const json& obj, const std::string& where, const std::string& key,
                        bool fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& j = obj.at(key);
    if (!j.is_boolean()) throw validation_error(where + "." + key + ": expected a boolean");
    return j.get<bool>();
}

inline ScenarioParams parse_scenario_params(const json& j) {
    require_object(j, "scenario");
    reject_unknown_keys(j, {"startup_cost", "maintenance_per_tick", "info_value_per_tick",
                            "attack_likelihood_factor", "horizon_ticks"},
                        "scenario");
    ScenarioParams p;
    p.startup_cost = get_number(j, "scenario", "startup_cost");
    p.maintenance_per_tick = get_number(j, "scenario", "maintenance_per_tick");
    p.info_value_per_tick = get_number(j, "scenario", "info_value_per_tick");
    p.attack_likelihood_factor = get_number(j, "scenario", "attack_likelihood_factor");
    p.horizon_ticks = get_integer(j, "scenario", "horizon_ticks");
    return p;
}

inline SimMode parse_mode(const json& obj, const std::string& where, SimMode fallback) {
    if (!obj.contains("mode")) return fallback;
    const auto& j = obj.at("mode");
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "faithful") return SimMode::faithful;
        if (s == "extended") return SimMode::extended;
    }
    throw validation_error(where + ".mode: expected \"faithful\" or \"extended\"");
}

inline SimConfig parse_sim_config(const json& j, const ScenarioParams& scenario) {
    require_object(j, "simulation");
    reject_unknown_keys(j,
                        {"mode", "seed", "trials", "horizon_ticks", "arrival_prob",
                         "qualified_fraction", "escalation_prob", "max_privilege",
                         "base_detection_hazard", "hazard_privilege_gain", "deception_factor",
                         "oob_knowledge_prob", "variable_cost_per_attack_tick", "repair_cost",
                         "liability_prob", "liability_cost", "forced_arrivals"},
                        "simulation");
    SimConfig c;
    c.scenario = scenario;
    c.mode = parse_mode(j, "simulation", SimMode::faithful);
    c.seed = get_unsigned_or(j, "simulation", "seed", 0);
    c.trials = get_unsigned_or(j, "simulation", "trials", 1);
    c.horizon_ticks = get_integer_or(j, "simulation", "horizon_ticks", scenario.horizon_ticks);
    c.arrival_prob = get_number_or(j, "simulation", "arrival_prob", 0.0);
    c.qualified_fraction = get_number_or(j, "simulation", "qualified_fraction", 0.0);
    c.escalation_prob = get_number_or(j, "simulation", "escalation_prob", 0.0);
    c.max_privilege = get_integer_or(j, "simulation", "max_privilege", 1);
    c.base_detection_hazard = get_number_or(j, "simulation", "base_detection_hazard", 0.0);
    c.hazard_privilege_gain = get_number_or(j, "simulation", "hazard_privilege_gain", 0.0);
    c.deception_factor = get_number_or(j, "simulation", "deception_factor", 0.0);
    c.oob_knowledge_prob = get_number_or(j, "simulation", "oob_knowledge_prob", 0.0);
    c.variable_cost_per_attack_tick =
        get_number_or(j, "simulation", "variable_cost_per_attack_tick", 0.0);
    c.repair_cost = get_number_or(j, "simulation", "repair_cost", 0.0);
    c.liability_prob = get_number_or(j, "simulation", "liability_prob", 0.0);
    c.liability_cost = get_number_or(j, "simulation", "liability_cost", 0.0);
    if (j.contains("forced_arrivals")) {
        const auto& arr = j.at("forced_arrivals");
        if (!arr.is_array())
            throw validation_error("simulation.forced_arrivals: expected an array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string where = "simulation.forced_arrivals[" + std::to_string(i) + "]";
            require_object(arr[i], where);
            reject_unknown_keys(arr[i], {"tick", "qualified"}, where);
            ForcedArrival f;
            f.tick = get_integer(arr[i], where, "tick");
            f.qualified = get_bool_or(arr[i], where, "qualified", true);
            c.forced_arrivals.push_back(f);
        }
    }
    return c;
}

inline DecoyConfig parse_decoy_config(const json& j) {
    require_object(j, "decoy");
    reject_unknown_keys(j,
                        {"production_hosts", "honeypots", "honeypot_attractiveness",
                         "production_attractiveness", "sophistication"},
                        "decoy");
    DecoyConfig d;
    d.production_hosts = get_integer_or(j, "decoy", "production_hosts", 1);
    d.honeypots = get_integer_or(j, "decoy", "honeypots", 0);
    d.honeypot_attractiveness = get_number_or(j, "decoy", "honeypot_attractiveness", 1.0);
    d.production_attractiveness = get_number_or(j, "decoy", "production_attractiveness", 1.0);
    d.sophistication = get_number_or(j, "decoy", "sophistication", 0.0);
    return d;
}

} // namespace detail

/// Parses and validates a scenario document from JSON text.
inline ScenarioFile parse_scenario(const std::string& text) {
    detail::json doc;
    try {
        doc = detail::json::parse(text);
    } catch (const detail::json::parse_error& e) {
        throw validation_error(std::string("malformed scenario document: ") + e.what());
    }
    detail::require_object(doc, "document");
    detail::reject_unknown_keys(doc, {"scenario", "simulation", "decoy"}, "document");
    if (!doc.contains("scenario"))
        throw validation_error("document: missing required \"scenario\" block");

    ScenarioFile file;
    file.scenario = detail::parse_scenario_params(doc.at("scenario"));
    validate_params(file.scenario);
    if (doc.contains("simulation")) {
        file.simulation = detail::parse_sim_config(doc.at("simulation"), file.scenario);
        validate_config(*file.simulation);
    }
    if (doc.contains("decoy")) {
        file.decoy = detail::parse_decoy_config(doc.at("decoy"));
        validate_decoy(*file.decoy);
    }
    return file;
}

inline ScenarioFile load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open scenario file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw io_error("failed reading scenario file: " + path.string());
    try {
        return parse_scenario(buffer.str());
    } catch (const validation_error& e) {
        throw validation_error(path.string() + ": " + e.what());
    }
}

/// Serializes with a stable key order; doubles round-trip exactly, so a
/// serialized document reloads value-identical.
inline std::string serialize_scenario(const ScenarioFile& file) {
    detail::ordered_json doc;
    detail::ordered_json scenario;
    scenario["startup_cost"] = file.scenario.startup_cost;
    scenario["maintenance_per_tick"] = file.scenario.maintenance_per_tick;
    scenario["info_value_per_tick"] = file.scenario.info_value_per_tick;
    scenario["attack_likelihood_factor"] = file.scenario.attack_likelihood_factor;
    scenario["horizon_ticks"] = file.scenario.horizon_ticks;
    doc["scenario"] = std::move(scenario);
    if (file.simulation) {
        const SimConfig& c = *file.simulation;
        detail::ordered_json sim;
        sim["mode"] = c.mode == SimMode::faithful ? "faithful" : "extended";
        sim["seed"] = c.seed;
        sim["trials"] = c.trials;
        sim["horizon_ticks"] = c.horizon_ticks;
        sim["arrival_prob"] = c.arrival_prob;
        sim["qualified_fraction"] = c.qualified_fraction;
        sim["escalation_prob"] = c.escalation_prob;
        sim["max_privilege"] = c.max_privilege;
        sim["base_detection_hazard"] = c.base_detection_hazard;
        sim["hazard_privilege_gain"] = c.hazard_privilege_gain;
        sim["deception_factor"] = c.deception_factor;
        sim["oob_knowledge_prob"] = c.oob_knowledge_prob;
        sim["variable_cost_per_attack_tick"] = c.variable_cost_per_attack_tick;
        sim["repair_cost"] = c.repair_cost;
        sim["liability_prob"] = c.liability_prob;
        sim["liability_cost"] = c.liability_cost;
        if (!c.forced_arrivals.empty()) {
            detail::ordered_json arr = detail::ordered_json::array();
            for (const auto& f : c.forced_arrivals) {
                detail::ordered_json entry;
                entry["tick"] = f.tick;
                entry["qualified"] = f.qualified;
                arr.push_back(std::move(entry));
            }
            sim["forced_arrivals"] = std::move(arr);
        }
        doc["simulation"] = std::move(sim);
    }
    if (file.decoy) {
        const DecoyConfig& d = *file.decoy;
        detail::ordered_json decoy;
        decoy["production_hosts"] = d.production_hosts;
        decoy["honeypots"] = d.honeypots;
        decoy["honeypot_attractiveness"] = d.honeypot_attractiveness;
        decoy["production_attractiveness"] = d.production_attractiveness;
        decoy["sophistication"] = d.sophistication;
        doc["decoy"] = std::move(decoy);
    }
    return doc.dump(2) + "\n";
}

inline void save_scenario(const ScenarioFile& file, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open output file: " + path.string());
    out << serialize_scenario(file);
    if (!out) throw io_error("failed writing scenario file: " + path.string());
}

namespace detail {
inline double parse_csv_number(const std::string& field, const std::string& where) {
    if (field.empty()) throw validation_error(where + ": empty numeric field");
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (end != field.c_str() + field.size())
        throw validation_error(where + ": not a number: \"" + field + "\"");
    return v;
}
} // namespace detail

/// Parses calibration observations from CSV text with the exact header
/// `M,rate`, one `maintenance,qualified_attack_rate` pair per line.
inline std::vector<RateObservation> parse_observations_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw validation_error("observations CSV is empty; expected header \"M,rate\"");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "M,rate")
        throw validation_error("observations CSV must start with header \"M,rate\" (got \"" +
                               line + "\")");
    std::vector<RateObservation> observations;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        const std::string where = "observations line " + std::to_string(line_no);
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
            throw validation_error(where + ": expected exactly two fields \"M,rate\"");
        observations.push_back({detail::parse_csv_number(line.substr(0, comma), where),
                                detail::parse_csv_number(line.substr(comma + 1), where)});
    }
    return observations;
}

inline std::vector<RateObservation> load_observations(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open observations file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw io_error("failed reading observations file: " + path.string());
    return parse_observations_csv(buffer.str());
}

} // namespace honeyeco
