#include <catch2/catch.hpp>

#include "honeyeco/decoy.hpp"
#include "honeyeco/rng.hpp"

using namespace honeyeco;

namespace {

DecoyConfig layout(std::int64_t production, std::int64_t honeypots, double sophistication = 0.0,
                   double honey_attract = 1.0, double prod_attract = 1.0) {
    return {production, honeypots, honey_attract, prod_attract, sophistication};
}

} // namespace

TEST_CASE("random attackers hit honeypots in proportion to the pool", "[decoy]") {
    CHECK(decoy_hit_probability(layout(9, 1), AttackerModel::random) == 0.1);
    CHECK(decoy_hit_probability(layout(5, 0), AttackerModel::random) == 0.0);
    CHECK(decoy_hit_probability(layout(1, 1), AttackerModel::random) == 0.5);

    // exact uniform law over a grid
    for (std::int64_t production = 1; production <= 15; ++production) {
        for (std::int64_t honeypots = 0; honeypots <= 15; ++honeypots) {
            const double expected =
                honeypots == 0 ? 0.0
                               : static_cast<double>(honeypots) /
                                     static_cast<double>(production + honeypots);
            REQUIRE(decoy_hit_probability(layout(production, honeypots),
                                          AttackerModel::random) == expected);
        }
    }
}

TEST_CASE("focused attackers weigh perceived attractiveness", "[decoy]") {
    // one honeypot dressed twice as attractive, half seen through
    CHECK(decoy_hit_probability(layout(8, 1, 0.5, 2.0, 1.0), AttackerModel::focused) ==
          1.0 / 9.0);
    // full sophistication discounts all deception
    CHECK(decoy_hit_probability(layout(8, 1, 1.0, 2.0, 1.0), AttackerModel::focused) == 0.0);
    CHECK(decoy_hit_probability(layout(3, 7, 1.0, 5.0, 0.0), AttackerModel::focused) == 0.0);
    // production hosts with zero perceived value: the honeypot always wins
    CHECK(decoy_hit_probability(layout(4, 1, 0.0, 1.0, 0.0), AttackerModel::focused) == 1.0);
    // no honeypots, no hit
    CHECK(decoy_hit_probability(layout(4, 0, 0.0, 1.0, 1.0), AttackerModel::focused) == 0.0);
    // everything imperceptible counts as no deception at all
    CHECK(decoy_hit_probability(layout(4, 2, 0.0, 0.0, 0.0), AttackerModel::focused) == 0.0);
}

TEST_CASE("focused hit probability never rises with sophistication", "[decoy]") {
    SplitMix64 rng(606);
    for (int i = 0; i < 100; ++i) {
        DecoyConfig d = layout(1 + static_cast<std::int64_t>(rng.next() % 20),
                               1 + static_cast<std::int64_t>(rng.next() % 20), 0.0,
                               rng.next_unit() * 5.0, rng.next_unit() * 5.0);
        double previous = 1.0;
        for (int step = 0; step <= 10; ++step) {
            d.sophistication = static_cast<double>(step) / 10.0;
            const double probability = decoy_hit_probability(d, AttackerModel::focused);
            REQUIRE(probability <= previous + 1e-15);
            REQUIRE(probability >= 0.0);
            REQUIRE(probability <= 1.0);
            previous = probability;
        }
    }
}

TEST_CASE("decoy configuration is validated", "[decoy]") {
    CHECK_THROWS_AS(decoy_hit_probability(layout(0, 1), AttackerModel::random),
                    validation_error);
    CHECK_THROWS_AS(decoy_hit_probability(layout(5, -1), AttackerModel::random),
                    validation_error);
    CHECK_THROWS_AS(decoy_hit_probability(layout(5, 1, -0.1), AttackerModel::focused),
                    validation_error);
    CHECK_THROWS_AS(decoy_hit_probability(layout(5, 1, 1.5), AttackerModel::focused),
                    validation_error);
    CHECK_THROWS_AS(decoy_hit_probability(layout(5, 1, 0.5, -2.0), AttackerModel::focused),
                    validation_error);
    CHECK_THROWS_AS(decoy_hit_probability(layout(5, 1, 0.5, 1.0, -3.0), AttackerModel::focused),
                    validation_error);
}

TEST_CASE("target selection slows with the honeypot share", "[decoy]") {
    CHECK(target_selection_delay(layout(7, 0), 10.0) == 10.0);
    CHECK(target_selection_delay(layout(1, 1), 10.0) == 15.0);
    CHECK(target_selection_delay(layout(9, 1), 10.0) == 11.0);
    CHECK(target_selection_delay(layout(9, 1), 0.0) == 0.0);

    // monotone in the honeypot count
    double previous = 0.0;
    for (std::int64_t honeypots = 0; honeypots <= 30; ++honeypots) {
        const double delay = target_selection_delay(layout(10, honeypots), 10.0);
        REQUIRE(delay >= previous);
        previous = delay;
    }

    CHECK_THROWS_AS(target_selection_delay(layout(9, 1), -1.0), validation_error);
}
