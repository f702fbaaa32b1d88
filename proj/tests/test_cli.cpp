#include "cli.hpp"

#include <json.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using lane_emden::cli::run_cli;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "lane-emden");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("lane_emden_cli_test_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

json read_json(const fs::path& p) { return json::parse(slurp(p)); }

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream is(slurp(p));
    for (std::string line; std::getline(is, line);) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST(Cli, SolveRadialWritesProfile) {
    const auto dir = scratch_dir("solve");
    const auto r = run({"--out", dir.string(), "solve-radial", "--a", "1", "--b", "2", "--N", "2",
                        "--p", "3", "--m", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = read_csv(dir / "profile.csv");
    EXPECT_EQ(rows[0], (std::vector<std::string>{"r", "v", "dv"}));
    EXPECT_EQ(rows.size(), 2050u);
    const auto j = read_json(dir / "profile.json");
    EXPECT_EQ(j["m"], 2);
    EXPECT_EQ(j["zeros"].size(), 1u);
    EXPECT_EQ(j["zones"].size(), 2u);
    EXPECT_EQ(j["config"]["p"], 3.0);
    EXPECT_TRUE(fs::exists(dir / "plot" / "profile.dat"));
}

TEST(Cli, SingleZoneHasNoZeros) {
    const auto dir = scratch_dir("single");
    ASSERT_EQ(run({"--out", dir.string(), "solve-radial", "--m", "1"}).code, 0);
    EXPECT_TRUE(read_json(dir / "profile.json")["zeros"].empty());
}

TEST(Cli, InvalidExponentExitsTwo) {
    const auto r = run({"--out", scratch_dir("bad").string(), "solve-radial", "--p", "0.5"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("p must be > 1"), std::string::npos) << r.err;
}

TEST(Cli, ParseErrorsExitTwo) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"solve-radial", "--p", "abc"}).code, 2);
    EXPECT_EQ(run({"solve-radial", "--unknown"}).code, 2);
    EXPECT_EQ(run({"--config", "/nonexistent/file.json", "solve-radial"}).code, 2);
    EXPECT_EQ(run({"perturb", "--outer", "2:0.1"}).code, 2);
}

TEST(Cli, SafetyBoundViolationExitsTwo) {
    const auto dir = scratch_dir("bound");
    const auto cfg = dir.string() + ".json";
    std::ofstream(cfg) << R"({"p": 3, "m": 2, "t": 20, "outer": [[2, 0.1, 0]]})";
    const auto r = run({"--config", cfg, "--out", dir.string(), "perturb", "--n-r", "16", "--n-theta", "16"});
    EXPECT_EQ(r.code, 2) << r.err;
    EXPECT_NE(r.err.find("safety bound"), std::string::npos) << r.err;
}

// p = 1.05 sits on the (l = 2, j = 2) degeneracy of A(1, 2), so a k = 2 deformation
// has no nearby continuation branch and Newton fails.
TEST(Cli, NumericalFailureExitsThree) {
    const auto r = run({"--out", scratch_dir("numfail").string(), "perturb", "--p", "1.05", "--m", "2", "--t",
                        "0.01", "--outer", "2:0.1:0"});
    EXPECT_EQ(r.code, 3) << r.err;
    EXPECT_FALSE(r.err.empty());
}

TEST(Cli, FlagsOverrideConfig) {
    const auto dir = scratch_dir("config");
    const auto cfg = dir.string() + ".json";
    std::ofstream(cfg) << R"({"p": 2.0, "m": 3, "N": 3})";
    ASSERT_EQ(run({"--config", cfg, "--out", dir.string(), "solve-radial", "--p", "4"}).code, 0);
    const auto j = read_json(dir / "profile.json");
    EXPECT_EQ(j["p"], 4.0);
    EXPECT_EQ(j["m"], 3);
    EXPECT_EQ(j["N"], 3);
    EXPECT_EQ(j["config"]["m"], 3);
}

TEST(Cli, OutputDirectoryFromEnvironment) {
    const auto dir = scratch_dir("env");
    ::setenv("LANE_EMDEN_OUT", dir.string().c_str(), 1);
    const auto r = run({"solve-radial", "--m", "1"});
    ::unsetenv("LANE_EMDEN_OUT");
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(fs::exists(dir / "profile.csv"));
}

TEST(Cli, SpectrumIsDeterministicAcrossThreads) {
    const auto d1 = scratch_dir("spec1"), d4 = scratch_dir("spec4");
    const std::vector<std::string> args{"spectrum", "--m", "2", "--p-list", "1.5,2,3,5", "--L", "3"};
    auto a1 = args, a4 = args;
    a1.insert(a1.begin(), {"--out", d1.string(), "--threads", "1"});
    a4.insert(a4.begin(), {"--out", d4.string(), "--threads", "4"});
    ASSERT_EQ(run(a1).code, 0);
    ASSERT_EQ(run(a4).code, 0);
    for (const char* f : {"spectrum.csv", "eigenfunctions.csv"})
        EXPECT_EQ(slurp(d1 / f), slurp(d4 / f)) << f;
    const auto rows = read_csv(d1 / "spectrum.csv");
    EXPECT_EQ(rows.size(), 1u + 4 * 3);
    EXPECT_EQ(rows[1][1], "1");
}

TEST(Cli, MorseRespectsLowerBound) {
    const auto dir = scratch_dir("morse");
    ASSERT_EQ(run({"--out", dir.string(), "morse", "--p", "3", "--m", "2"}).code, 0);
    const auto rows = read_csv(dir / "morse.csv");
    EXPECT_EQ(rows[0], (std::vector<std::string>{"p", "morse_index", "J_1", "J_2"}));
    EXPECT_GE(std::stoi(rows[1][1]), 4);
}

TEST(Cli, ScanProducesMonotoneTable) {
    const auto dir = scratch_dir("scan");
    ASSERT_EQ(run({"--out", dir.string(), "--threads", "2", "scan-degeneracy", "--m", "1", "--p-min", "1.05",
                   "--p-max", "20", "--j-max", "3"})
                  .code,
              0);
    const auto rows = read_csv(dir / "degeneracies.csv");
    EXPECT_EQ(rows[0], (std::vector<std::string>{"k", "p_k", "l", "j", "target", "residual"}));
    ASSERT_GE(rows.size(), 3u);
    for (std::size_t i = 2; i < rows.size(); ++i) EXPECT_LT(std::stod(rows[i - 1][1]), std::stod(rows[i][1]));
    EXPECT_TRUE(fs::exists(dir / "plot" / "p_k.dat"));
    EXPECT_TRUE(fs::exists(dir / "nu_curves.csv"));
}

TEST(Cli, PerturbAtZeroMatchesRadial) {
    const auto dir = scratch_dir("perturb");
    const auto r = run({"--out", dir.string(), "perturb", "--p", "3", "--m", "2", "--t", "0", "--outer",
                        "2:0.1:0", "--n-r", "32", "--n-theta", "16"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = read_json(dir / "run.json");
    EXPECT_EQ(j["nodal_count"], 2);
    EXPECT_EQ(j["residual_norm"], 0.0);
    EXPECT_EQ(j["config"]["outer"][0][0], 2);
    const auto rows = read_csv(dir / "solution.csv");
    EXPECT_EQ(rows.size(), 1u + 33 * 16);

    const auto rad = scratch_dir("perturb_radial");
    ASSERT_EQ(run({"--out", rad.string(), "solve-radial", "--p", "3", "--m", "2"}).code, 0);
    const double sup = read_json(rad / "profile.json")["sup_norm"];
    double vmax = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) vmax = std::max(vmax, std::abs(std::stod(rows[i][2])));
    EXPECT_LE(vmax, sup * (1 + 1e-12));
    EXPECT_GT(vmax, 0.95 * sup);
}

TEST(Cli, AsymptoticsTables) {
    const auto dir = scratch_dir("asym");
    ASSERT_EQ(run({"--out", dir.string(), "asymptotics", "--m", "2"}).code, 0);
    const auto rows = read_csv(dir / "asymptotics.csv");
    EXPECT_EQ(rows[0], (std::vector<std::string>{"p", "supnorm_pow", "lambda_m", "err_profile", "nu_m"}));
    EXPECT_EQ(rows.size(), 4u);
    EXPECT_EQ(read_csv(dir / "large_p.csv").size(), 4u);
}
