#include <catch2/catch.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

fs::path test_dir() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() /
                 ("honeyeco_cli_tests_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

fs::path write_file(const std::string& name, const std::string& content) {
    const fs::path path = test_dir() / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

CliResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path out_path = test_dir() / ("stdout_" + std::to_string(counter) + ".txt");
    const fs::path err_path = test_dir() / ("stderr_" + std::to_string(counter) + ".txt");
    ++counter;

    const std::string cmd = std::string("\"") + HONEYECO_CLI_PATH + "\" " + args + " > \"" +
                            out_path.string() + "\" 2> \"" + err_path.string() + "\"";
    const int status = std::system(cmd.c_str());

    CliResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out_path);
    result.err = slurp(err_path);
    return result;
}

const char* kBaselineScenario = R"({
  "scenario": {
    "startup_cost": 1000,
    "maintenance_per_tick": 50,
    "info_value_per_tick": 200,
    "attack_likelihood_factor": 100,
    "horizon_ticks": 30
  }
})";

const char* kExtendedScenario = R"({
  "scenario": {
    "startup_cost": 100,
    "maintenance_per_tick": 10,
    "info_value_per_tick": 5,
    "attack_likelihood_factor": 50,
    "horizon_ticks": 25
  },
  "simulation": {
    "mode": "extended",
    "trials": 200,
    "seed": 7,
    "arrival_prob": 0.4,
    "qualified_fraction": 0.3,
    "escalation_prob": 0.25,
    "max_privilege": 3,
    "base_detection_hazard": 0.1,
    "hazard_privilege_gain": 1.0,
    "deception_factor": 0.05,
    "oob_knowledge_prob": 0.1,
    "variable_cost_per_attack_tick": 2.0,
    "repair_cost": 20.0,
    "liability_prob": 0.05,
    "liability_cost": 100.0
  }
})";

} // namespace

TEST_CASE("analyze reports the break-even summary", "[cli]") {
    const auto scenario = write_file("baseline.json", kBaselineScenario);
    const auto result = run_cli("analyze --scenario \"" + scenario.string() + "\"");
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("cost_at_horizon: 2500.000000\n") != std::string::npos);
    CHECK(result.out.find("utility_at_horizon: 3000.000000\n") != std::string::npos);
    CHECK(result.out.find("break_even_tick: 20.000000\n") != std::string::npos);
    CHECK(result.out.find("break_even_tick_bisection: 20.000000\n") != std::string::npos);
    CHECK(result.out.find("t,cost,utility,profit\n") != std::string::npos);
    CHECK(result.err.empty());
}

TEST_CASE("analyze writes the curve CSV to --out", "[cli]") {
    const auto scenario = write_file("baseline_out.json", kBaselineScenario);
    const fs::path csv = test_dir() / "curves.csv";
    const auto result = run_cli("analyze --scenario \"" + scenario.string() + "\" --out \"" +
                                csv.string() + "\"");
    CHECK(result.exit_code == 0);
    REQUIRE(fs::exists(csv));
    const std::string content = slurp(csv);
    CHECK(content.rfind("t,cost,utility,profit\n", 0) == 0);
    // header + ticks 0..30
    CHECK(std::count(content.begin(), content.end(), '\n') == 32);
    // the CSV does not leak into stdout when redirected to a file
    CHECK(result.out.find("t,cost,utility,profit") == std::string::npos);
}

TEST_CASE("analyze distinguishes I/O and validation failures", "[cli]") {
    const auto missing = run_cli("analyze --scenario /nonexistent/nowhere.json");
    CHECK(missing.exit_code == 2);
    CHECK(missing.err.rfind("error: ", 0) == 0);

    const auto invalid = write_file("invalid.json", R"({
  "scenario": {"startup_cost": 1000, "maintenance_per_tick": 0, "info_value_per_tick": 200,
               "attack_likelihood_factor": 100, "horizon_ticks": 30}
})");
    const fs::path untouched = test_dir() / "never_written.csv";
    const auto result = run_cli("analyze --scenario \"" + invalid.string() + "\" --out \"" +
                                untouched.string() + "\"");
    CHECK(result.exit_code == 1);
    CHECK(result.err.rfind("error: ", 0) == 0);
    CHECK(result.err.find("maintenance_per_tick") != std::string::npos);
    CHECK_FALSE(fs::exists(untouched));  // no partial output on validation failure
}

TEST_CASE("analyze warns when maintenance exceeds the likelihood factor", "[cli]") {
    const auto overdriven = write_file("overdriven.json", R"({
  "scenario": {"startup_cost": 1000, "maintenance_per_tick": 150, "info_value_per_tick": 200,
               "attack_likelihood_factor": 100, "horizon_ticks": 10}
})");
    const auto result = run_cli("analyze --scenario \"" + overdriven.string() + "\"");
    CHECK(result.exit_code == 0);
    CHECK(result.err.find("analytic utility exceeds its probabilistic interpretation") !=
          std::string::npos);
}

TEST_CASE("sweep emits the maintenance grid CSV", "[cli]") {
    const auto scenario = write_file("sweep.json", kBaselineScenario);
    const auto result =
        run_cli("sweep --scenario \"" + scenario.string() + "\" --from 10 --to 90 --steps 3");
    CHECK(result.exit_code == 0);
    CHECK(result.out ==
          "M,profit_at_horizon,break_even_t\n"
          "10.000000,-700.000000,100.000000\n"
          "50.000000,500.000000,20.000000\n"
          "90.000000,1700.000000,11.111111\n");

    const auto bad = run_cli("sweep --scenario \"" + scenario.string() +
                             "\" --from 0 --to 90 --steps 3");
    CHECK(bad.exit_code == 1);
    CHECK(bad.err.rfind("error: ", 0) == 0);
}

TEST_CASE("simulate is deterministic across repeats and thread counts", "[cli]") {
    const auto scenario = write_file("extended.json", kExtendedScenario);
    const std::string base =
        "simulate --scenario \"" + scenario.string() + "\" --seed 42 --trials 300";
    const auto first = run_cli(base + " --threads 1");
    const auto second = run_cli(base + " --threads 1");
    const auto parallel = run_cli(base + " --threads 4");
    CHECK(first.exit_code == 0);
    CHECK(first.out == second.out);
    CHECK(first.out == parallel.out);
    CHECK(first.out.find("mode,extended\n") == 0);
    CHECK(first.out.find("trials,300\n") != std::string::npos);
    CHECK(first.out.find("mean_utility,") != std::string::npos);
}

TEST_CASE("simulate takes mode/trials/seed from the file unless overridden", "[cli]") {
    const auto scenario = write_file("extended_defaults.json", kExtendedScenario);
    const auto result = run_cli("simulate --scenario \"" + scenario.string() + "\"");
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("mode,extended\n") == 0);
    CHECK(result.out.find("trials,200\n") != std::string::npos);

    const auto overridden =
        run_cli("simulate --scenario \"" + scenario.string() + "\" --mode faithful --trials 5");
    CHECK(overridden.exit_code == 0);
    CHECK(overridden.out.find("mode,faithful\n") == 0);
    CHECK(overridden.out.find("trials,5\n") != std::string::npos);

    // no simulation block at all: faithful single-trial defaults
    const auto bare = write_file("bare.json", kBaselineScenario);
    const auto defaults = run_cli("simulate --scenario \"" + bare.string() + "\"");
    CHECK(defaults.exit_code == 0);
    CHECK(defaults.out.find("mode,faithful\n") == 0);
    CHECK(defaults.out.find("trials,1\n") != std::string::npos);
}

TEST_CASE("simulate emits JSON when asked", "[cli]") {
    const auto scenario = write_file("extended_json.json", kExtendedScenario);
    const auto result = run_cli("simulate --scenario \"" + scenario.string() +
                                "\" --trials 50 --format json");
    CHECK(result.exit_code == 0);
    CHECK(result.out.rfind("{\n  \"mode\": \"extended\",", 0) == 0);
    CHECK(result.out.find("\"detection_time_histogram\"") != std::string::npos);
}

TEST_CASE("decoy prints the hit probability", "[cli]") {
    const auto uniform = run_cli("decoy --prod 9 --honey 1 --sophistication 0 --attacker random");
    CHECK(uniform.exit_code == 0);
    CHECK(uniform.out == "0.100000\n");

    const auto focused = run_cli("decoy --prod 8 --honey 1 --sophistication 0.5 "
                                 "--honey-attract 2 --attacker focused");
    CHECK(focused.exit_code == 0);
    CHECK(focused.out == "0.111111\n");

    const auto sophisticated =
        run_cli("decoy --prod 5 --honey 3 --sophistication 1 --attacker focused");
    CHECK(sophisticated.exit_code == 0);
    CHECK(sophisticated.out == "0.000000\n");

    const auto invalid = run_cli("decoy --prod 0 --honey 1 --sophistication 0");
    CHECK(invalid.exit_code == 1);
    CHECK(invalid.err.rfind("error: ", 0) == 0);
}

TEST_CASE("calibrate fits the likelihood factor from a rate CSV", "[cli]") {
    const auto obs = write_file("obs.csv", "M,rate\n10,0.2\n20,0.4\n");
    const auto result = run_cli("calibrate --observations \"" + obs.string() + "\"");
    CHECK(result.exit_code == 0);
    CHECK(result.out == "estimated_attack_likelihood_factor: 50.000000\n");

    const auto missing = run_cli("calibrate --observations /nonexistent/obs.csv");
    CHECK(missing.exit_code == 2);

    const auto bad_header = write_file("bad_obs.csv", "maintenance,rate\n10,0.2\n");
    const auto rejected = run_cli("calibrate --observations \"" + bad_header.string() + "\"");
    CHECK(rejected.exit_code == 1);
    CHECK(rejected.err.find("M,rate") != std::string::npos);
}

TEST_CASE("usage errors exit 1 with help on the diagnostic stream", "[cli]") {
    const auto unknown = run_cli("explode --now");
    CHECK(unknown.exit_code == 1);
    CHECK(unknown.err.rfind("error: ", 0) == 0);
    CHECK(unknown.err.find("Usage") != std::string::npos);

    const auto nothing = run_cli("");
    CHECK(nothing.exit_code == 1);

    const auto bad_flag = run_cli("decoy --prod 9 --honey 1 --sophistication 0 --sneaky");
    CHECK(bad_flag.exit_code == 1);

    const auto help = run_cli("--help");
    CHECK(help.exit_code == 0);
    CHECK(help.out.find("analyze") != std::string::npos);
}
