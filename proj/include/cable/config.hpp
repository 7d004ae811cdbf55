#pragma once

#include "cable/identification.hpp"
#include "cable/sweep.hpp"

#include <json.hpp>

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cable {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CableBlock {
    double m = 0.0;
    double g = 9.8;
    double L = 0.0;
    double theta_degrees = 0.0;
    // Either E, A, I or EI, EA; never both.
    std::optional<double> E, A, I;
    std::optional<double> EI, EA;
    std::optional<std::vector<double>> EI_profile, EA_profile, m_profile;

    double flexural_stiffness() const;  // throws ConfigError if not given
    double axial_stiffness() const;

    bool operator==(const CableBlock&) const = default;
};

struct SearchBlock {
    // Exactly one of `mode` or `intervals`.
    std::optional<RangeMode> mode;
    std::optional<ParameterVector> reference;  // numerical mode
    std::optional<double> H_f, EI_cal, EA_cal;  // engineering mode; defaults from data
    std::optional<std::array<std::array<double, 2>, kParamCount>> intervals;

    bool operator==(const SearchBlock&) const = default;
};

struct SweepBlock {
    Scenario scenario = Scenario::tied;
    AxisSpec kr;
    AxisSpec ks;
    std::vector<int> orders = {1, 2, 3};

    bool operator==(const SweepBlock&) const = default;
};

struct RunBlock {
    int repetitions = 1;
    int modes = 7;
    std::string out_dir = "out";

    bool operator==(const RunBlock&) const = default;
};

struct RunConfig {
    CableBlock cable;
    int n = 99;
    BoundaryStiffness boundary;
    std::optional<double> H_m;
    std::optional<MeasuredFrequencies> measured;
    pso::PsoConfig pso;
    std::optional<SearchBlock> search;
    std::array<std::optional<double>, kParamCount> fixed{};
    std::optional<ParameterVector> exact;
    std::optional<SweepBlock> sweep;
    RunBlock run;

    bool operator==(const RunConfig&) const = default;

    KnownCable known_cable() const;
    CableProperties properties() const;  // honours per-node profiles
    Discretization discretization() const { return Discretization::uniform(cable.L, n); }
    double require_H() const;
    const MeasuredFrequencies& require_measured() const;
    pso::SearchSpace search_space() const;
    IdentifyOptions identify_options() const;
};

RunConfig parse_config(const nlohmann::json& doc);
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);
nlohmann::json to_json(const RunConfig& config);

}  // namespace cable
