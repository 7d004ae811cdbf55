#include "cable/identification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace cable {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double quantile(const std::vector<double>& sorted, double q) {
    if (sorted.size() == 1) return sorted.front();
    const double pos = q * (sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (pos - lo) * (sorted[hi] - sorted[lo]);
}

}  // namespace

ParameterVector ParameterVector::from_array(const std::array<double, kParamCount>& a) {
    return {a[0], a[1], a[2], a[3], a[4], a[5], a[6]};
}

CableProperties KnownCable::properties(double EI, double EA) const {
    return CableProperties::uniform(m, g, L, theta, EI, EA, n);
}

std::vector<double> forward_frequencies(const ParameterVector& p, const KnownCable& cable, int count,
                                        EigenMethod method) {
    const auto disc = cable.discretization();
    const auto sys = assemble_cable(cable.properties(p.EI, p.EA), disc, p.H, p.boundary());
    return lowest_frequencies(sys, count, method);
}

double fitness(const ParameterVector& candidate, const KnownCable& cable, const MeasuredFrequencies& measured,
               EigenMethod method) {
    try {
        const auto f = forward_frequencies(candidate, cable, measured.highest_order(), method);
        double sum = 0.0;
        for (std::size_t k = 0; k < measured.size(); ++k) {
            const double d = f[measured.orders[k] - 1] - measured.values[k];
            sum += d * d;
        }
        return std::isfinite(sum) ? sum : kInf;
    } catch (const std::exception&) {
        return kInf;
    }
}

ParameterStats summarize(std::vector<double> values) {
    ParameterStats s;
    if (values.empty()) return s;
    std::sort(values.begin(), values.end());
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / values.size();
    s.median = quantile(values, 0.5);
    s.q1 = quantile(values, 0.25);
    s.q3 = quantile(values, 0.75);
    s.min = values.front();
    s.max = values.back();
    s.iqr_over_median = s.median != 0.0 ? (s.q3 - s.q1) / std::abs(s.median) : kInf;
    s.dispersed = s.iqr_over_median > 0.5;
    return s;
}

std::vector<double> IdentificationResult::run_relative_errors(std::size_t j, const ParameterVector& exact) const {
    const double ref = exact.to_array()[j];
    std::vector<double> out;
    for (const auto& r : runs) {
        if (r.ok) out.push_back((r.params.to_array()[j] - ref) / ref);
    }
    return out;
}

IdentificationResult identify(const KnownCable& cable, const MeasuredFrequencies& measured, const pso::SearchSpace& space,
                              const pso::PsoConfig& pso, const IdentifyOptions& options) {
    measured.validate();
    space.validate();
    if (space.dims() != kParamCount) throw std::invalid_argument("identify: search space must have seven dimensions");
    if (options.repetitions < 1) throw std::invalid_argument("identify: repetitions must be at least 1");

    std::vector<std::size_t> free_dims;
    pso::SearchSpace reduced;
    for (std::size_t j = 0; j < kParamCount; ++j) {
        if (options.fixed[j]) continue;
        free_dims.push_back(j);
        reduced.lower.push_back(space.lower[j]);
        reduced.upper.push_back(space.upper[j]);
    }
    if (free_dims.empty()) throw std::invalid_argument("identify: every parameter is fixed");

    auto expand = [&](const pso::Position& x) {
        std::array<double, kParamCount> a{};
        for (std::size_t j = 0; j < kParamCount; ++j) a[j] = options.fixed[j] ? *options.fixed[j] : 0.0;
        for (std::size_t k = 0; k < free_dims.size(); ++k) a[free_dims[k]] = x[k];
        return ParameterVector::from_array(a);
    };
    const pso::FitnessFn fn = [&](const pso::Position& x) {
        return fitness(expand(x), cable, measured, options.eigen);
    };

    IdentificationResult res;
    for (int r = 0; r < options.repetitions; ++r) {
        pso::PsoConfig cfg = pso;
        cfg.seed = pso.seed + static_cast<std::uint64_t>(r);
        const auto out = pso::run(reduced, cfg, fn);
        RunResult run;
        run.seed = cfg.seed;
        run.params = expand(out.best);
        run.fitness = out.best_f;
        run.iterations = out.iterations;
        run.ok = std::isfinite(out.best_f);
        run.history = out.history;
        res.runs.push_back(std::move(run));
    }

    std::array<std::vector<double>, kParamCount> columns;
    res.best_fitness = kInf;
    for (const auto& run : res.runs) {
        if (!run.ok) continue;
        ++res.successful_runs;
        const auto a = run.params.to_array();
        for (std::size_t j = 0; j < kParamCount; ++j) columns[j].push_back(a[j]);
        if (run.fitness < res.best_fitness) {
            res.best_fitness = run.fitness;
            res.best = run.params;
        }
    }
    if (res.successful_runs == 0) {
        throw IdentificationError("all " + std::to_string(options.repetitions) +
                                  " repetitions failed: no solvable candidate in the search space");
    }
    std::array<double, kParamCount> means{};
    for (std::size_t j = 0; j < kParamCount; ++j) {
        res.stats[j] = summarize(columns[j]);
        means[j] = res.stats[j].mean;
    }
    res.estimate = ParameterVector::from_array(means);
    if (options.exact) {
        std::array<double, kParamCount> err{};
        const auto ex = options.exact->to_array();
        for (std::size_t j = 0; j < kParamCount; ++j) err[j] = (means[j] - ex[j]) / ex[j];
        res.relative_error = err;
    }
    return res;
}

EngineeringReference engineering_reference(const KnownCable& cable, const MeasuredFrequencies& measured, double EI_cal,
                                           double EA_cal) {
    return {string_theory_tension(cable.m, cable.L, measured), EI_cal, EA_cal};
}

pso::SearchSpace derive_search_space(RangeMode mode, const std::optional<ParameterVector>& exact,
                                     const std::optional<EngineeringReference>& reference) {
    pso::SearchSpace s;
    if (mode == RangeMode::numerical) {
        if (!exact) throw std::invalid_argument("numerical search space needs exact parameter values");
        const auto a = exact->to_array();
        for (std::size_t j = 0; j < kParamCount; ++j) {
            const double w = j < 3 ? 0.25 : 0.5;
            s.lower.push_back((1.0 - w) * a[j]);
            s.upper.push_back((1.0 + w) * a[j]);
        }
        return s;
    }
    if (!reference) throw std::invalid_argument("engineering search space needs H_f, EI_cal and EA_cal");
    s.lower = {0.5 * reference->H_f, 0.2 * reference->EI_cal, 0.2 * reference->EA_cal, 1e4, 1e4, 1e4, 1e4};
    s.upper = {1.5 * reference->H_f, 2.0 * reference->EI_cal, 2.0 * reference->EA_cal, 1e6, 1e6, 1e8, 1e8};
    return s;
}

std::vector<CountStudyEntry> frequency_count_study(const KnownCable& cable, const MeasuredFrequencies& full,
                                                  const pso::SearchSpace& space, const pso::PsoConfig& pso,
                                                  const IdentifyOptions& options) {
    if (!options.exact) throw std::invalid_argument("frequency count study needs exact parameter values");
    std::vector<CountStudyEntry> out;
    for (std::size_t count = full.size(); count >= 1; --count) {
        CountStudyEntry e;
        e.count = static_cast<int>(count);
        e.result = identify(cable, full.first(count), space, pso, options);
        e.H_error = summarize(e.result.run_relative_errors(0, *options.exact));
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace cable
