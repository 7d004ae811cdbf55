#include "cable/report.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <locale>
#include <sstream>

#ifndef CABLE_VERSION
#define CABLE_VERSION "0.0.0"
#endif

namespace cable {

using nlohmann::json;

namespace {

std::ostringstream csv_stream() {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    return os;
}

std::string full(double v) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    os << std::setprecision(17) << v;
    return os.str();
}

json params_json(const ParameterVector& p) {
    json o = json::object();
    const auto a = p.to_array();
    for (std::size_t j = 0; j < kParamCount; ++j) o[kParamNames[j]] = a[j];
    return o;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

const char* tool_version() { return CABLE_VERSION; }

std::string frequencies_csv(const ModalSolution& sol) {
    auto os = csv_stream();
    os << "order,frequency_hz,residual\n";
    for (std::size_t i = 0; i < sol.frequencies.size(); ++i) {
        os << (i + 1) << ',' << std::setprecision(6) << sol.frequencies[i] << ',' << std::setprecision(3)
           << sol.residuals[i] << '\n';
    }
    return os.str();
}

std::string profile_csv(const Discretization& disc, const StaticProfile& profile) {
    auto os = csv_stream();
    os << "x,y\n";
    for (std::size_t i = 0; i < profile.y_nodes.size(); ++i) {
        os << full(disc.x_nodes[i]) << ',' << full(profile.y_nodes[i]) << '\n';
    }
    return os.str();
}

std::string grid_csv(const SweepGrid& g) {
    auto os = csv_stream();
    os << "Kr,Ks,order,frequency\n";
    for (std::size_t o = 0; o < g.orders.size(); ++o) {
        for (std::size_t i = 0; i < g.kr.size(); ++i) {
            for (std::size_t j = 0; j < g.ks.size(); ++j) {
                os << full(g.kr[i]) << ',' << full(g.ks[j]) << ',' << g.orders[o] << ',' << full(g.at(o, i, j)) << '\n';
            }
        }
    }
    return os.str();
}

std::string isolines_csv(const IsolineSet& iso) {
    auto os = csv_stream();
    os << "order,line,vertex,Kr,Ks\n";
    for (const auto& o : iso.per_order) {
        for (std::size_t l = 0; l < o.lines.size(); ++l) {
            for (std::size_t v = 0; v < o.lines[l].points.size(); ++v) {
                os << o.order << ',' << l << ',' << v << ',' << full(o.lines[l].points[v].first) << ','
                   << full(o.lines[l].points[v].second) << '\n';
            }
        }
    }
    return os.str();
}

std::string boxplot_csv(const IdentificationResult& result, const std::optional<ParameterVector>& exact) {
    auto os = csv_stream();
    os << "parameter,run,seed,value,relative\n";
    for (std::size_t j = 0; j < kParamCount; ++j) {
        const double ref = exact ? exact->to_array()[j] : result.stats[j].mean;
        for (std::size_t r = 0; r < result.runs.size(); ++r) {
            const auto& run = result.runs[r];
            if (!run.ok) continue;
            const double v = run.params.to_array()[j];
            os << kParamNames[j] << ',' << r << ',' << run.seed << ',' << full(v) << ',' << full(v / ref) << '\n';
        }
    }
    return os.str();
}

std::string count_study_csv(const std::vector<CountStudyEntry>& entries, const ParameterVector& exact) {
    auto os = csv_stream();
    os << "count,run,seed,H,H_relative_error,fitness\n";
    for (const auto& e : entries) {
        for (std::size_t r = 0; r < e.result.runs.size(); ++r) {
            const auto& run = e.result.runs[r];
            if (!run.ok) continue;
            os << e.count << ',' << r << ',' << run.seed << ',' << full(run.params.H) << ','
               << full((run.params.H - exact.H) / exact.H) << ',' << full(run.fitness) << '\n';
        }
    }
    return os.str();
}

json stats_json(const IdentificationResult& result) {
    json s = json::object();
    for (std::size_t j = 0; j < kParamCount; ++j) {
        const auto& st = result.stats[j];
        s[kParamNames[j]] = {{"mean", st.mean},
                             {"median", st.median},
                             {"q1", st.q1},
                             {"q3", st.q3},
                             {"min", st.min},
                             {"max", st.max},
                             {"iqr_over_median", finite_or_null(st.iqr_over_median)},
                             {"dispersed", st.dispersed}};
    }
    return s;
}

json identification_document(const RunConfig& config, const IdentificationResult& result) {
    json doc = json::object();
    doc["tool"] = "cabletension";
    doc["version"] = tool_version();
    doc["seed"] = config.pso.seed;
    doc["config"] = to_json(config);
    json runs = json::array();
    for (const auto& r : result.runs) {
        runs.push_back({{"seed", r.seed},
                        {"ok", r.ok},
                        {"fitness", finite_or_null(r.fitness)},
                        {"iterations", r.iterations},
                        {"params", params_json(r.params)}});
    }
    doc["runs"] = runs;
    doc["successful_runs"] = result.successful_runs;
    doc["stats"] = stats_json(result);
    doc["estimate"] = params_json(result.estimate);
    doc["best"] = {{"params", params_json(result.best)}, {"fitness", finite_or_null(result.best_fitness)}};
    if (result.relative_error) {
        json e = json::object();
        for (std::size_t j = 0; j < kParamCount; ++j) e[kParamNames[j]] = (*result.relative_error)[j];
        doc["relative_error"] = e;
    }
    if (config.measured) {
        const auto& m = *config.measured;
        json ref = {{"string_theory_H", string_theory_tension(config.cable.m, config.cable.L, m)}};
        if (m.size() >= 2) {
            const auto br = beam_regression(config.cable.m, config.cable.L, m);
            ref["beam_regression"] = {{"H", br.H}, {"EI", br.EI}, {"valid", br.valid}};
        }
        doc["reference_methods"] = ref;
    }
    return doc;
}

void write_text(const std::string& path, const std::string& text) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

}  // namespace cable
