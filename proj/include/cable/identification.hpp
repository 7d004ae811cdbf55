#pragma once

#include "cable/cable_model.hpp"
#include "cable/modal_solver.hpp"
#include "cable/pso.hpp"
#include "cable/reference_methods.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace cable {

inline constexpr std::size_t kParamCount = 7;
inline constexpr std::array<const char*, kParamCount> kParamNames = {"H", "EI", "EA", "Kr1", "Kr2", "Ks1", "Ks2"};

struct ParameterVector {
    double H = 0.0;  // mean chordwise tension
    double EI = 0.0;
    double EA = 0.0;
    double Kr1 = 0.0;
    double Kr2 = 0.0;
    double Ks1 = 0.0;
    double Ks2 = 0.0;

    std::array<double, kParamCount> to_array() const { return {H, EI, EA, Kr1, Kr2, Ks1, Ks2}; }
    static ParameterVector from_array(const std::array<double, kParamCount>& a);
    BoundaryStiffness boundary() const { return {Kr1, Kr2, Ks1, Ks2}; }

    bool operator==(const ParameterVector&) const = default;
};

// Geometry and mass of a cable whose stiffness parameters are unknown.
struct KnownCable {
    double m = 0.0;
    double g = 9.8;
    double L = 0.0;
    double theta = 0.0;  // rad
    int n = 99;

    CableProperties properties(double EI, double EA) const;
    Discretization discretization() const { return Discretization::uniform(L, n); }
};

// Frequencies of orders 1..count for a parameter set.
std::vector<double> forward_frequencies(const ParameterVector& p, const KnownCable& cable, int count,
                                        EigenMethod method = EigenMethod::automatic);

// Σ (f_c − f_m)² over the measured orders; +inf if the candidate is unsolvable.
double fitness(const ParameterVector& candidate, const KnownCable& cable, const MeasuredFrequencies& measured,
               EigenMethod method = EigenMethod::automatic);

struct ParameterStats {
    double mean = 0, median = 0, q1 = 0, q3 = 0, min = 0, max = 0;
    double iqr_over_median = 0;
    bool dispersed = false;  // IQR/median > 0.5; the mean is not a reliable point estimate
};

ParameterStats summarize(std::vector<double> values);

struct RunResult {
    std::uint64_t seed = 0;
    ParameterVector params;
    double fitness = 0.0;
    int iterations = 0;
    bool ok = false;
    std::vector<double> history;
};

struct IdentifyOptions {
    int repetitions = 1;
    // Parameters held at a known value and removed from the search.
    std::array<std::optional<double>, kParamCount> fixed{};
    std::optional<ParameterVector> exact;
    EigenMethod eigen = EigenMethod::automatic;
};

struct IdentificationResult {
    std::vector<RunResult> runs;
    int successful_runs = 0;
    std::array<ParameterStats, kParamCount> stats{};
    ParameterVector estimate;  // per-parameter means
    ParameterVector best;      // lowest-fitness run
    double best_fitness = 0.0;
    std::optional<std::array<double, kParamCount>> relative_error;  // of the means, vs exact

    // Relative error of parameter j in each successful run (requires exact).
    std::vector<double> run_relative_errors(std::size_t j, const ParameterVector& exact) const;
};

class IdentificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// `space` spans all seven parameters in ParameterVector order; fixed
// parameters are dropped from it. Repetition r uses seed pso.seed + r.
IdentificationResult identify(const KnownCable& cable, const MeasuredFrequencies& measured, const pso::SearchSpace& space,
                              const pso::PsoConfig& pso, const IdentifyOptions& options);

enum class RangeMode { numerical, engineering };

struct EngineeringReference {
    double H_f = 0.0;  // string-theory tension
    double EI_cal = 0.0;
    double EA_cal = 0.0;
};

EngineeringReference engineering_reference(const KnownCable& cable, const MeasuredFrequencies& measured, double EI_cal,
                                           double EA_cal);

pso::SearchSpace derive_search_space(RangeMode mode, const std::optional<ParameterVector>& exact,
                                     const std::optional<EngineeringReference>& reference);

struct CountStudyEntry {
    int count = 0;
    IdentificationResult result;
    ParameterStats H_error;  // statistics of the per-run relative tension error
};

// Identification with the first N measured frequencies for N = full count down to 1.
std::vector<CountStudyEntry> frequency_count_study(const KnownCable& cable, const MeasuredFrequencies& full,
                                                  const pso::SearchSpace& space, const pso::PsoConfig& pso,
                                                  const IdentifyOptions& options);

}  // namespace cable
