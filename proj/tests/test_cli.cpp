#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "fracmin/cli.hpp"
#include "fracmin/map_io.hpp"

namespace fm = fracmin;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Outcome {
    int status;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int status = fm::cli::run(args, out, err);
    return {status, out.str(), err.str()};
}

json invoke_json(std::vector<std::string> args, int expected_status = 0) {
    const Outcome o = invoke(std::move(args));
    EXPECT_EQ(o.status, expected_status) << o.err;
    return json::parse(o.out);
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "fracmin_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

bool check_passed(const json& j, const std::string& name) {
    for (const auto& c : j["checks"])
        if (c["name"] == name) return c["pass"].get<bool>();
    ADD_FAILURE() << "no check named " << name;
    return false;
}

} // namespace

TEST(Cli, IdentityEnergyAtQuadraticExponent) {
    const json j = invoke_json({"id-energy", "--p", "2"});
    EXPECT_EQ(j["command"], "id-energy");
    EXPECT_EQ(j["version"], fm::version_string);
    const double e = j["results"]["energy"].get<double>();
    EXPECT_LE(std::abs(e - 4.0 * std::numbers::pi * std::numbers::pi), 1e-9 * e);
    EXPECT_TRUE(check_passed(j, "equals_4pi2"));
    EXPECT_FALSE(j["checks"].empty());
}

TEST(Cli, IdentityEnergyWithDiscreteGrid) {
    const json j = invoke_json({"id-energy", "--p", "1.5", "--n", "128"});
    EXPECT_TRUE(j["results"].contains("discrete_energy"));
    EXPECT_EQ(j["parameters"]["p"].get<double>(), 1.5);
}

TEST(Cli, CriticalExponent) {
    const json j = invoke_json({"critical-p", "--tol", "1e-10"});
    EXPECT_NEAR(j["results"]["p_prime"].get<double>(), 1.13924, 5e-5);
    for (const auto& c : j["checks"]) EXPECT_TRUE(c["pass"].get<bool>()) << c["name"];
}

TEST(Cli, DerivativeAndScan) {
    const json d = invoke_json({"id-energy-derivative", "--p", "1.5"});
    EXPECT_LT(d["results"]["derivative"].get<double>(), 0.0);
    const json s = invoke_json({"monotonicity-scan", "--grid-size", "20"});
    EXPECT_EQ(s["tables"]["scan"]["rows"].size(), 20u);
    EXPECT_EQ(s["results"]["points"].get<int>(), 20);
}

TEST(Cli, MapFileCommands) {
    const fs::path path = scratch("map.csv");
    fm::write_map_csv(path.string(), fm::perturb(fm::power_map(64, 2), 0.2, 5));
    const json dg = invoke_json({"degree", "--map", path.string()});
    EXPECT_EQ(dg["results"]["degree"].get<int>(), 2);
    const json en = invoke_json({"energy", "--map", path.string(), "--p", "1.5"});
    EXPECT_GT(en["results"]["energy"].get<double>(), 0.0);
    EXPECT_FALSE(en["results"]["beyond_validated_range"].get<bool>());
}

TEST(Cli, MoebiusDumpRoundTrips) {
    const fs::path path = scratch("moebius.csv");
    const json j = invoke_json({"moebius", "--a-re", "0.2", "--n", "256", "--dump-map", path.string()});
    EXPECT_EQ(j["results"]["degree"].get<int>(), 1);
    const fm::GridMap u = fm::read_map_csv(path.string());
    EXPECT_EQ(u.size(), 256u);
    EXPECT_EQ(fm::degree(u), 1);
}

TEST(Cli, GradientCheck) {
    const json j = invoke_json({"gradient-check", "--p", "1.5", "--n", "32", "--samples", "2", "--seed", "4"});
    EXPECT_TRUE(check_passed(j, "gradient_matches_finite_differences"));
    EXPECT_EQ(j["seed"].get<std::uint64_t>(), 4u);
}

TEST(Cli, MinimizeSmallGridWithSideFiles) {
    const fs::path trace = scratch("trace.csv"), map = scratch("final.csv");
    const json j = invoke_json({"minimize", "--p", "2", "--degree", "1", "--n", "64", "--restarts", "1", "--trace",
                                trace.string(), "--dump-map", map.string()});
    EXPECT_TRUE(j["results"]["converged"].get<bool>());
    EXPECT_EQ(j["results"]["final_degree"].get<int>(), 1);
    std::ifstream t(trace);
    std::string header;
    std::getline(t, header);
    EXPECT_EQ(header, "iter,energy");
    EXPECT_EQ(fm::read_map_csv(map.string()).size(), 64u);
}

TEST(Cli, InequalitySuite) {
    const json j = invoke_json({"inequality-suite", "--samples", "200", "--seed", "12"});
    for (const auto& c : j["checks"]) EXPECT_TRUE(c["pass"].get<bool>()) << c["name"];
    EXPECT_EQ(j["seed"].get<std::uint64_t>(), 12u);
}

TEST(Cli, BbmCheckDefaultsToIdentity) {
    const json j = invoke_json({"bbm-check", "--p", "2"});
    EXPECT_TRUE(check_passed(j, "energy_above_degree_bound"));
    EXPECT_EQ(j["results"]["degree"].get<int>(), 1);
}

TEST(Cli, DeterministicOutput) {
    const std::vector<std::string> args{"inequality-suite", "--samples", "100", "--seed", "3"};
    EXPECT_EQ(invoke(args).out, invoke(args).out);
    const std::vector<std::string> g{"gradient-check", "--p", "1.3", "--n", "24", "--seed", "8"};
    EXPECT_EQ(invoke(g).out, invoke(g).out);
}

TEST(Cli, CsvOutputAndOutFile) {
    const Outcome o = invoke({"id-energy", "--p", "2", "--format", "csv"});
    EXPECT_EQ(o.status, 0);
    EXPECT_NE(o.out.find("energy,"), std::string::npos);
    EXPECT_NE(o.out.find("check:equals_4pi2,pass"), std::string::npos);
    const fs::path path = scratch("report.json");
    const Outcome f = invoke({"critical-p", "--out", path.string()});
    EXPECT_EQ(f.status, 0);
    EXPECT_TRUE(f.out.empty());
    std::ifstream in(path);
    const json j = json::parse(in);
    EXPECT_EQ(j["command"], "critical-p");
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(invoke({}).status, fm::cli::usage);
    EXPECT_EQ(invoke({"no-such-command"}).status, fm::cli::usage);
    EXPECT_EQ(invoke({"id-energy"}).status, fm::cli::usage);
    EXPECT_EQ(invoke({"id-energy", "--p", "2", "--format", "xml"}).status, fm::cli::usage);
    EXPECT_EQ(invoke({"id-energy", "--p", "0.5"}).status, fm::cli::domain);
    EXPECT_EQ(invoke({"critical-p", "--tol", "1"}).status, fm::cli::domain);
    EXPECT_EQ(invoke({"moebius", "--a-re", "1.2"}).status, fm::cli::domain);
    EXPECT_EQ(invoke({"degree", "--map", scratch("missing.csv").string()}).status, fm::cli::domain);
    EXPECT_EQ(invoke({"minimize", "--p", "1.5", "--degree", "2", "--n", "32", "--max-iters", "1", "--restarts",
                      "0", "--seed", "1", "--grad-tol", "1e-300"})
                  .status,
              fm::cli::no_convergence);
    // a genuine check failure: a concentrated Moebius trace on a coarse grid
    // is far from the sharp value
    EXPECT_EQ(invoke({"moebius", "--a-re", "0.95", "--n", "64"}).status, fm::cli::check_failed);
}
