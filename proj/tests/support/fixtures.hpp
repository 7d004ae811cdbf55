#pragma once

#include "cable/config.hpp"

#include <numbers>
#include <string>

namespace fixture {

inline constexpr double kDeg = std::numbers::pi / 180.0;

inline std::string config_path(const std::string& name) { return std::string(CABLE_CONFIG_DIR) + "/" + name; }

// Numerical cable k (1..4) with its tabulated frequencies and exact parameters.
inline cable::RunConfig numerical_cable(int k) {
    return cable::parse_config_file(config_path("cable" + std::to_string(k) + ".json"));
}

inline cable::RunConfig strand(int k) {
    return cable::parse_config_file(config_path("strand" + std::to_string(k) + ".json"));
}

inline cable::AssembledSystem assemble(const cable::RunConfig& c) {
    return cable::assemble_cable(c.properties(), c.discretization(), c.require_H(), c.boundary);
}

}  // namespace fixture
