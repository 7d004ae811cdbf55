#include "cable/commands.hpp"

#include "cable/report.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace cable {

using nlohmann::json;

namespace {

std::string out_path(const RunConfig& c, const std::string& file) {
    return (std::filesystem::path(c.run.out_dir) / file).string();
}

class NullBuffer : public std::streambuf {
protected:
    int overflow(int c) override { return c; }
};

}  // namespace

RunConfig apply_overrides(RunConfig config, const CommandOptions& options) {
    if (options.out_dir) config.run.out_dir = *options.out_dir;
    if (options.seed) config.pso.seed = *options.seed;
    if (options.repetitions) {
        if (*options.repetitions < 1) throw ConfigError("--repetitions: must be at least 1");
        config.run.repetitions = *options.repetitions;
    }
    return config;
}

void cmd_solve(const RunConfig& c, std::ostream& log) {
    const auto sys = assemble_cable(c.properties(), c.discretization(), c.require_H(), c.boundary);
    const auto sol = solve_modes(sys, c.run.modes);
    const std::string csv = frequencies_csv(sol);
    write_text(out_path(c, "frequencies.csv"), csv);
    log << csv;
    if (sol.discarded_count > 0) log << "# discarded eigenvalues: " << sol.discarded_count << '\n';
}

void cmd_static(const RunConfig& c, std::ostream& log) {
    const auto props = c.properties();
    const auto disc = c.discretization();
    props.validate(disc);
    const auto tension = build_tension_field(props, disc, c.require_H());
    const auto ks = assemble_static_stiffness(props, disc, tension, c.boundary);
    const auto profile = solve_static_profile(ks, props, disc);
    write_text(out_path(c, "static_profile.csv"), profile_csv(disc, profile));
    double sag = 0.0;
    for (double y : profile.y_nodes) sag = std::max(sag, std::abs(y));
    log << "max |y| = " << sag << " m, relative residual = " << profile.relative_residual << '\n';
}

void cmd_reference(const RunConfig& c, std::ostream& log) {
    const auto& m = c.require_measured();
    json doc = json::object();
    const double Hs = string_theory_tension(c.cable.m, c.cable.L, m);
    doc["string_theory"] = {{"H", Hs}};
    log << std::setprecision(6) << "string theory:           H = " << Hs / 1e3 << " kN\n";
    if (m.size() >= 2) {
        const auto br = beam_regression(c.cable.m, c.cable.L, m);
        doc["beam_regression"] = {{"H", br.H}, {"EI", br.EI}, {"residual", br.residual}, {"valid", br.valid}};
        log << "beam regression:         H = " << br.H / 1e3 << " kN, EI = " << br.EI << " N m^2"
            << (br.valid ? "" : "  [estimator failure: " + br.note + "]") << '\n';
    }
    std::optional<double> EI;
    if (c.search && c.search->EI_cal) EI = *c.search->EI_cal;
    else if (c.cable.EI || (c.cable.E && c.cable.I)) EI = c.cable.flexural_stiffness();
    if (EI) {
        const auto bk = beam_known_EI(c.cable.m, c.cable.L, *EI, m);
        doc["beam_known_EI"] = {{"H", bk.H}, {"EI", *EI}, {"valid", bk.valid}};
        log << "beam with known EI:      H = " << bk.H / 1e3 << " kN" << (bk.valid ? "" : "  [estimator failure]")
            << '\n';
    }
    doc["tool"] = "cabletension";
    doc["version"] = tool_version();
    write_text(out_path(c, "reference.json"), doc.dump(2) + "\n");
}

void cmd_identify(const RunConfig& c, std::ostream& log) {
    const auto result = identify(c.known_cable(), c.require_measured(), c.search_space(), c.pso, c.identify_options());
    write_text(out_path(c, "identification.json"), identification_document(c, result).dump(2) + "\n");
    write_text(out_path(c, "boxplot.csv"), boxplot_csv(result, c.exact));
    log << "successful runs: " << result.successful_runs << "/" << result.runs.size() << '\n';
    log << "best fitness: " << std::setprecision(4) << result.best_fitness << " Hz^2\n";
    for (std::size_t j = 0; j < kParamCount; ++j) {
        const auto& st = result.stats[j];
        log << std::setw(4) << kParamNames[j] << "  mean " << std::setprecision(6) << st.mean << "  median " << st.median
            << "  IQR/median " << std::setprecision(3) << st.iqr_over_median;
        if (result.relative_error) log << "  error " << std::setprecision(3) << 100.0 * (*result.relative_error)[j] << "%";
        if (st.dispersed) log << "  [dispersed]";
        log << '\n';
    }
}

void cmd_sweep(const RunConfig& c, std::ostream& log) {
    if (!c.sweep) throw ConfigError("sweep: block required for this command");
    SweepSpec spec;
    spec.scenario = c.sweep->scenario;
    spec.kr = c.sweep->kr;
    spec.ks = c.sweep->ks;
    spec.orders = c.sweep->orders;
    const SweepFixed fixed{c.require_H(), c.cable.flexural_stiffness(), c.cable.axial_stiffness()};
    const auto grid = sweep_frequencies(c.known_cable(), fixed, spec, c.pso.execution);
    write_text(out_path(c, "sweep_grid.csv"), grid_csv(grid));
    json summary = {{"tool", "cabletension"}, {"version", tool_version()}, {"missing_points", grid.missing()}};
    log << "grid " << grid.kr.size() << " x " << grid.ks.size() << ", unsolvable points: " << grid.missing() << '\n';
    if (c.measured) {
        const auto iso = extract_isolines(grid, *c.measured);
        const auto rec = recommend_search_range(grid, iso);
        write_text(out_path(c, "isolines.csv"), isolines_csv(iso));
        json orders = json::array();
        for (const auto& o : iso.per_order) {
            orders.push_back({{"order", o.order}, {"target", o.target}, {"lines", o.lines.size()}, {"attained", o.attained}});
            if (!o.attained) log << "order " << o.order << ": target " << o.target << " Hz not attained on the grid\n";
        }
        summary["isolines"] = orders;
        summary["diagnostic"] = to_string(iso.diagnostic);
        summary["common_cells"] = iso.common_cells.size();
        summary["common_extent_diagonals"] = iso.common_extent;
        summary["recommended"] = {{"Kr", {rec.kr.lo, rec.kr.hi}}, {"Ks", {rec.ks.lo, rec.ks.hi}},
                                  {"warning", rec.warning}, {"message", rec.message}};
        log << "intersection diagnostic: " << to_string(iso.diagnostic) << '\n';
        log << "recommended Kr [" << rec.kr.lo << ", " << rec.kr.hi << "], Ks [" << rec.ks.lo << ", " << rec.ks.hi
            << "]" << (rec.warning ? "  warning: " + rec.message : "") << '\n';
    }
    write_text(out_path(c, "sweep_summary.json"), summary.dump(2) + "\n");
}

void cmd_freq_count_study(const RunConfig& c, std::ostream& log) {
    if (!c.exact) throw ConfigError("exact: required for the frequency-count study");
    const auto entries =
        frequency_count_study(c.known_cable(), c.require_measured(), c.search_space(), c.pso, c.identify_options());
    write_text(out_path(c, "count_study.csv"), count_study_csv(entries, *c.exact));
    json doc = {{"tool", "cabletension"}, {"version", tool_version()}, {"seed", c.pso.seed}, {"config", to_json(c)}};
    json rows = json::array();
    for (const auto& e : entries) {
        rows.push_back({{"count", e.count},
                        {"H_error_mean", e.H_error.mean},
                        {"H_error_median", e.H_error.median},
                        {"H_error_q1", e.H_error.q1},
                        {"H_error_q3", e.H_error.q3},
                        {"H_error_iqr", e.H_error.q3 - e.H_error.q1}});
        log << "N=" << e.count << "  mean H error " << std::setprecision(3) << 100 * e.H_error.mean << "%  IQR "
            << 100 * (e.H_error.q3 - e.H_error.q1) << "%\n";
    }
    doc["counts"] = rows;
    write_text(out_path(c, "count_study.json"), doc.dump(2) + "\n");
}

int run_command(const std::string& name, const std::string& config_path, const CommandOptions& options,
                std::ostream& out, std::ostream& err) {
    NullBuffer null_buffer;
    std::ostream null_stream(&null_buffer);
    std::ostream& log = options.quiet ? null_stream : out;
    try {
        const RunConfig c = apply_overrides(parse_config_file(config_path), options);
        if (name == "solve") cmd_solve(c, log);
        else if (name == "static") cmd_static(c, log);
        else if (name == "reference") cmd_reference(c, log);
        else if (name == "identify") cmd_identify(c, log);
        else if (name == "sweep") cmd_sweep(c, log);
        else if (name == "freq-count-study") cmd_freq_count_study(c, log);
        else throw ConfigError("unknown command " + name);
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IdentificationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitAllFailed;
    } catch (const ModelError& e) {
        err << "error: " << e.what() << '\n';
        return kExitModel;
    } catch (const SolverError& e) {
        err << "error: solver: " << e.what() << '\n';
        return kExitModel;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitModel;
    }
}

}  // namespace cable
