#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "honeyeco/errors.hpp"

namespace honeyeco {

/// Decoy layout: honeypots mixed into a pool of production hosts, with
/// per-host attractiveness weights as seen by a target-picking attacker.
/// sophistication ranges from 0 (fully deceived by honeypot dressing) to
/// 1 (sees through all of it).
struct DecoyConfig {
    std::int64_t production_hosts = 1;  // >= 1
    std::int64_t honeypots = 0;         // >= 0
    double honeypot_attractiveness = 1.0;
    double production_attractiveness = 1.0;
    double sophistication = 0.0;  // in [0, 1]

    bool operator==(const DecoyConfig&) const = default;
};

enum class AttackerModel { random, focused };

inline DecoyConfig validate_decoy(const DecoyConfig& d) {
    std::vector<std::string> issues;
    if (d.production_hosts < 1)
        issues.push_back("production_hosts must be >= 1 (got " + std::to_string(d.production_hosts) + ")");
    if (d.honeypots < 0)
        issues.push_back("honeypots must be >= 0 (got " + std::to_string(d.honeypots) + ")");
    if (!(d.honeypot_attractiveness >= 0.0))
        issues.push_back("honeypot_attractiveness must be >= 0 (got " +
                         std::to_string(d.honeypot_attractiveness) + ")");
    if (!(d.production_attractiveness >= 0.0))
        issues.push_back("production_attractiveness must be >= 0 (got " +
                         std::to_string(d.production_attractiveness) + ")");
    if (!(d.sophistication >= 0.0 && d.sophistication <= 1.0))
        issues.push_back("sophistication must be in [0, 1] (got " +
                         std::to_string(d.sophistication) + ")");
    if (!issues.empty()) throw validation_error(std::move(issues));
    return d;
}

/// Probability that an attacker lands on a honeypot instead of a production
/// host. A random attacker picks uniformly over the enlarged pool. A focused
/// attacker picks proportionally to perceived attractiveness, where deception
/// is discounted by sophistication: each honeypot is perceived at
/// honeypot_attractiveness * (1 - sophistication).
inline double decoy_hit_probability(const DecoyConfig& d, AttackerModel attacker) {
    validate_decoy(d);
    const double honeypots = static_cast<double>(d.honeypots);
    const double production = static_cast<double>(d.production_hosts);
    if (d.honeypots == 0) return 0.0;
    if (attacker == AttackerModel::random) return honeypots / (production + honeypots);

    const double perceived_honey = honeypots * d.honeypot_attractiveness * (1.0 - d.sophistication);
    const double perceived_prod = production * d.production_attractiveness;
    const double total = perceived_honey + perceived_prod;
    if (total <= 0.0) return 0.0;
    return perceived_honey / total;
}

/// Extra target-selection time caused by honeypots enlarging the search
/// space: base_delay * (1 + honeypots / (production + honeypots)). Equals
/// base_delay when there are no honeypots and is monotone in their count.
inline double target_selection_delay(const DecoyConfig& d, double base_delay) {
    validate_decoy(d);
    if (!(base_delay >= 0.0))
        throw validation_error("base_delay must be >= 0 (got " + std::to_string(base_delay) + ")");
    const double honeypots = static_cast<double>(d.honeypots);
    const double production = static_cast<double>(d.production_hosts);
    return base_delay * (1.0 + honeypots / (production + honeypots));
}

} // namespace honeyeco
