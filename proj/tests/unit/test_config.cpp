#include "cable/config.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace cable;
using nlohmann::json;

namespace {

json minimal() {
    return json::parse(R"({
        "cable": {"m": 400, "L": 100, "theta_degrees": 30, "EI": 1e5, "EA": 1e8},
        "boundary": {"Kr1": 2e5, "Kr2": "inf", "Ks1": 5e5, "Ks2": "inf"},
        "tension": {"H_m": 2.9e6}
    })");
}

std::string error_of(const json& doc) {
    try {
        parse_config(doc);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST(Config, RoundTripEveryShippedConfig) {
    for (const auto& entry : std::filesystem::directory_iterator(CABLE_CONFIG_DIR)) {
        if (entry.path().extension() != ".json") continue;
        const auto c = parse_config_file(entry.path().string());
        EXPECT_EQ(parse_config(to_json(c)), c) << entry.path();
        EXPECT_EQ(to_json(parse_config(to_json(c))), to_json(c)) << entry.path();
    }
}

TEST(Config, RoundTripWithOptionalBlocks) {
    json d = minimal();
    d["fixed"] = {{"EA", 1e8}};
    d["pso"] = {{"population", 20}, {"t_max", 5}, {"seed", 9}, {"parallel", false}, {"delta", 1e-6}};
    d["measured"] = json::array({{{"order", 1}, {"hz", 0.4}}, {{"order", 3}, {"hz", 1.2}}});
    d["search"] = {{"intervals",
                    {{"H", {1e6, 4e6}}, {"EI", {1e4, 1e6}}, {"EA", {1e7, 1e9}}, {"Kr1", {1, 10}},
                     {"Kr2", {1, 10}}, {"Ks1", {1, 10}}, {"Ks2", {1, 10}}}}};
    d["sweep"] = {{"scenario", "opposed"}, {"kr", {{"lo_exp", 1}, {"hi_exp", 5}, {"points", 5}}}};
    const auto c = parse_config(d);
    EXPECT_EQ(parse_config(to_json(c)), c);
    EXPECT_EQ(c.pso.execution, pso::Execution::serial);
    ASSERT_TRUE(c.pso.delta.has_value());
    EXPECT_EQ(c.measured->orders, (std::vector<int>{1, 3}));
    EXPECT_EQ(c.fixed[2], 1e8);
    EXPECT_EQ(c.sweep->scenario, Scenario::opposed);
}

TEST(Config, ThetaConvertedToRadians) {
    const auto c = parse_config(minimal());
    EXPECT_NEAR(c.known_cable().theta, std::numbers::pi / 6, 1e-15);
    EXPECT_NEAR(c.properties().theta, std::numbers::pi / 6, 1e-15);
}

TEST(Config, InfinityMeansRigid) {
    const auto c = parse_config(minimal());
    EXPECT_TRUE(is_rigid(c.boundary.Kr2));
    EXPECT_TRUE(is_rigid(c.boundary.Ks2));
    EXPECT_EQ(c.boundary.Kr1, 2e5);
    EXPECT_EQ(to_json(c)["boundary"]["Ks2"], "inf");
}

TEST(Config, SectionAndMergedStiffnessAreAmbiguous) {
    json d = minimal();
    d["cable"]["E"] = 2e11;
    d["cable"]["A"] = 0.01;
    d["cable"]["I"] = 1e-5;
    EXPECT_NE(error_of(d).find("not both"), std::string::npos);
}

TEST(Config, SectionPropertiesMultiply) {
    const auto c = fixture::numerical_cable(1);
    EXPECT_DOUBLE_EQ(c.cable.flexural_stiffness(), 1.5988e10 * 4.9535e-6);
    EXPECT_DOUBLE_EQ(c.cable.axial_stiffness(), 1.5988e10 * 0.0078507);
}

TEST(Config, UnknownFieldNamesItsPath) {
    json d = minimal();
    d["boundary"]["Kr3"] = 1.0;
    EXPECT_NE(error_of(d).find("boundary.Kr3"), std::string::npos);
    d = minimal();
    d["extra"] = 1;
    EXPECT_NE(error_of(d).find("extra"), std::string::npos);
}

TEST(Config, InvalidValuesRejected) {
    json d = minimal();
    d["cable"]["theta_degrees"] = 95;
    EXPECT_FALSE(error_of(d).empty());
    d = minimal();
    d["boundary"]["Kr1"] = -1;
    EXPECT_FALSE(error_of(d).empty());
    d = minimal();
    d["boundary"]["Ks1"] = "infinite";
    EXPECT_FALSE(error_of(d).empty());
    d = minimal();
    d["cable"].erase("m");
    EXPECT_NE(error_of(d).find("cable.m"), std::string::npos);
    EXPECT_THROW(parse_config_text("{not json"), ConfigError);
    EXPECT_THROW(parse_config_file("/nonexistent/config.json"), ConfigError);
}

TEST(Config, SearchSpaceFromShippedConfigs) {
    const auto c = fixture::numerical_cable(2);
    const auto s = c.search_space();
    EXPECT_DOUBLE_EQ(s.lower[0], 0.75 * 725900);
    const auto st = fixture::strand(2);
    const auto e = st.search_space();
    EXPECT_NEAR(e.lower[0], 0.5 * 154.40e3, 0.001 * 77.2e3);
    EXPECT_DOUBLE_EQ(e.upper[6], 1e8);
}

TEST(Config, MissingBlocksReportedOnDemand) {
    json d = minimal();
    d.erase("tension");
    const auto c = parse_config(d);
    EXPECT_THROW(c.require_H(), ConfigError);
    EXPECT_THROW(c.require_measured(), ConfigError);
    EXPECT_THROW(c.search_space(), ConfigError);
}
