#pragma once

#include "cable/config.hpp"
#include "cable/modal_solver.hpp"

#include <json.hpp>

#include <string>

namespace cable {

const char* tool_version();

// CSV writers. '.' decimals, no thousands separators, final newline.
std::string frequencies_csv(const ModalSolution& sol);
std::string profile_csv(const Discretization& disc, const StaticProfile& profile);
std::string grid_csv(const SweepGrid& grid);
std::string isolines_csv(const IsolineSet& iso);
// One row per run and parameter; `relative` is value / reference, where the
// reference is the exact value when known and the run mean otherwise.
std::string boxplot_csv(const IdentificationResult& result, const std::optional<ParameterVector>& exact);
std::string count_study_csv(const std::vector<CountStudyEntry>& entries, const ParameterVector& exact);

nlohmann::json stats_json(const IdentificationResult& result);
nlohmann::json identification_document(const RunConfig& config, const IdentificationResult& result);

void write_text(const std::string& path, const std::string& text);

}  // namespace cable
