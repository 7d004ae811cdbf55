#include "cable/commands.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace cable;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("cabletension_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int cli(const std::string& args) {
    const std::string cmd = std::string(CABLE_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

fs::path write_config(const fs::path& dir, const std::string& text) {
    const fs::path p = dir / "config.json";
    std::ofstream(p) << text;
    return p;
}

}  // namespace

TEST(Cli, SolveWritesSixDigitFrequencies) {
    const auto dir = scratch("solve");
    std::ostringstream out, err;
    CommandOptions o;
    o.out_dir = dir.string();
    ASSERT_EQ(run_command("solve", fixture::config_path("cable1.json"), o, out, err), kExitOk) << err.str();
    const std::string csv = slurp(dir / "frequencies.csv");
    EXPECT_EQ(csv.rfind("order,frequency_hz,residual\n", 0), 0u);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 8);
    EXPECT_EQ(csv.back(), '\n');
    EXPECT_NE(csv.find("\n1,0.42"), std::string::npos);
}

TEST(Cli, UnsolvableConfigExitsTwoAndNamesStage) {
    const auto dir = scratch("bad_tension");
    const auto cfg = write_config(dir, R"({"cable": {"m": 400, "L": 100, "theta_degrees": 30, "EI": 1e5, "EA": 1e8},
        "boundary": {"Kr1": 0, "Kr2": 0, "Ks1": "inf", "Ks2": "inf"}, "tension": {"H_m": 100}})");
    std::ostringstream out, err;
    CommandOptions o;
    o.out_dir = dir.string();
    EXPECT_EQ(run_command("solve", cfg.string(), o, out, err), kExitModel);
    EXPECT_NE(err.str().find("build_tension_field"), std::string::npos);
}

TEST(Cli, UsageErrorsExitOne) {
    EXPECT_EQ(cli("solve --config /nonexistent.json"), 1);
    EXPECT_EQ(cli("nosuchcommand"), 1);
    EXPECT_EQ(cli(""), 1);
    const auto dir = scratch("usage");
    const auto cfg = write_config(dir, R"({"cable": {"m": 1}})");
    EXPECT_EQ(cli("solve --config " + cfg.string() + " --out " + dir.string()), 1);
}

TEST(Cli, AllRepetitionsFailingExitsThree) {
    const auto dir = scratch("allfail");
    const auto cfg = write_config(dir, R"({"cable": {"m": 400, "L": 100, "theta_degrees": 30, "EI": 1e5, "EA": 1e8},
        "measured": [{"order": 1, "hz": 0.4}],
        "pso": {"population": 4, "t_max": 1},
        "search": {"intervals": {"H": [1, 2], "EI": [1e4, 1e5], "EA": [1e7, 1e8], "Kr1": [1, 2],
                                 "Kr2": [1, 2], "Ks1": [1, 2], "Ks2": [1, 2]}}})");
    EXPECT_EQ(cli("identify --quiet --config " + cfg.string() + " --out " + dir.string()), 3);
}

TEST(Cli, StaticVerticalCableHasZeroProfile) {
    const auto dir = scratch("static");
    const auto cfg = write_config(dir, R"({"cable": {"m": 400, "L": 100, "theta_degrees": 90, "EI": 1e5, "EA": 1e8},
        "boundary": {"Kr1": 2e5, "Kr2": 2e5, "Ks1": 5e5, "Ks2": 1e6}, "tension": {"H_m": 2.9e6}})");
    ASSERT_EQ(cli("static --config " + cfg.string() + " --out " + dir.string()), 0);
    std::istringstream csv(slurp(dir / "static_profile.csv"));
    std::string line;
    std::getline(csv, line);
    EXPECT_EQ(line, "x,y");
    int rows = 0;
    while (std::getline(csv, line)) {
        // cos(90°) is 6e-17 in floating point, not exactly zero
        EXPECT_LT(std::abs(std::stod(line.substr(line.find(',') + 1))), 1e-12) << line;
        ++rows;
    }
    EXPECT_EQ(rows, 101);
}

TEST(Cli, IdentifyTwiceIsByteIdentical) {
    const auto a = scratch("ident_a"), b = scratch("ident_b");
    const auto cfg = write_config(a, R"({"cable": {"m": 400, "L": 100, "theta_degrees": 30, "E": 1.5988e10,
        "A": 0.0078507, "I": 4.9535e-6},
        "measured": [{"order": 1, "hz": 0.4229}, {"order": 2, "hz": 0.8267}, {"order": 3, "hz": 1.2404}],
        "pso": {"population": 10, "t_max": 4, "seed": 5},
        "search": {"mode": "numerical"},
        "exact": {"H": 2903600, "EI": 79196.558, "EA": 125516991.6, "Kr1": 2e5, "Kr2": 2e5, "Ks1": 5e5, "Ks2": 1e6}})");
    const std::string base = "identify --quiet --repetitions 1 --config " + cfg.string();
    ASSERT_EQ(cli(base + " --out " + a.string()), 0);
    ASSERT_EQ(cli(base + " --out " + b.string()), 0);
    // identical apart from the embedded output directory
    auto doc = nlohmann::json::parse(slurp(a / "identification.json"));
    auto doc_b = nlohmann::json::parse(slurp(b / "identification.json"));
    doc["config"]["run"].erase("out_dir");
    doc_b["config"]["run"].erase("out_dir");
    EXPECT_EQ(doc.dump(), doc_b.dump());
    EXPECT_EQ(slurp(a / "boxplot.csv"), slurp(b / "boxplot.csv"));
    EXPECT_EQ(doc["seed"], 5);
    EXPECT_TRUE(doc.contains("version"));
    EXPECT_EQ(doc["config"]["pso"]["population"], 10);
    // a different seed changes the result
    ASSERT_EQ(cli(base + " --seed 6 --out " + b.string()), 0);
    EXPECT_NE(doc["runs"], nlohmann::json::parse(slurp(b / "identification.json"))["runs"]);
}

TEST(Cli, ResultDocumentReplaysFromItsEmbeddedConfig) {
    const auto a = scratch("replay_a"), b = scratch("replay_b");
    const auto cfg = write_config(a, R"({"cable": {"m": 400, "L": 100, "theta_degrees": 30, "EI": 79196.558,
        "EA": 125516991.6},
        "measured": [{"order": 1, "hz": 0.4229}, {"order": 2, "hz": 0.8267}],
        "pso": {"population": 8, "t_max": 3, "seed": 2},
        "search": {"mode": "numerical", "reference": {"H": 2903600, "EI": 79196.558, "EA": 125516991.6,
                   "Kr1": 2e5, "Kr2": 2e5, "Ks1": 5e5, "Ks2": 1e6}}})");
    ASSERT_EQ(cli("identify --quiet --config " + cfg.string() + " --out " + a.string()), 0);
    const auto doc = nlohmann::json::parse(slurp(a / "identification.json"));
    auto replay = doc["config"];
    replay["run"]["out_dir"] = b.string();
    const fs::path rc = b / "replay.json";
    std::ofstream(rc) << replay.dump();
    ASSERT_EQ(cli("identify --quiet --config " + rc.string()), 0);
    const auto doc2 = nlohmann::json::parse(slurp(b / "identification.json"));
    EXPECT_EQ(doc["runs"], doc2["runs"]);
}

TEST(Cli, ReferenceOnStrand1) {
    const auto dir = scratch("reference");
    ASSERT_EQ(cli("reference --quiet --config " + fixture::config_path("strand1.json") + " --out " + dir.string()), 0);
    const auto doc = nlohmann::json::parse(slurp(dir / "reference.json"));
    EXPECT_NEAR(doc["string_theory"]["H"].get<double>(), 190.31e3, 0.001 * 190.31e3);
    EXPECT_TRUE(doc["beam_known_EI"]["valid"].get<bool>());
}

TEST(Cli, SweepWritesGridAndIsolines) {
    const auto dir = scratch("sweep");
    const auto cfg = write_config(dir, R"({"cable": {"m": 400, "L": 100, "theta_degrees": 30, "EI": 79196.558,
        "EA": 125516991.6}, "tension": {"H_m": 2903600},
        "measured": [{"order": 1, "hz": 0.4229}, {"order": 2, "hz": 0.8267}],
        "sweep": {"scenario": "tied", "kr": {"lo_exp": 3, "hi_exp": 7, "points": 5},
                  "ks": {"lo_exp": 4, "hi_exp": 8, "points": 5}, "orders": [1, 2]}})");
    ASSERT_EQ(cli("sweep --quiet --config " + cfg.string() + " --out " + dir.string()), 0);
    const std::string grid = slurp(dir / "sweep_grid.csv");
    EXPECT_EQ(grid.rfind("Kr,Ks,order,frequency\n", 0), 0u);
    EXPECT_EQ(std::count(grid.begin(), grid.end(), '\n'), 1 + 2 * 6 * 6);
    EXPECT_EQ(slurp(dir / "isolines.csv").rfind("order,line,vertex,Kr,Ks\n", 0), 0u);
    const auto summary = nlohmann::json::parse(slurp(dir / "sweep_summary.json"));
    EXPECT_TRUE(summary.contains("diagnostic"));
}

TEST(Cli, VersionFlag) { EXPECT_EQ(cli("--version"), 0); }
