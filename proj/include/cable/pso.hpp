#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

namespace cable::pso {

struct SearchSpace {
    std::vector<double> lower;
    std::vector<double> upper;

    std::size_t dims() const { return lower.size(); }
    double width(std::size_t j) const { return upper[j] - lower[j]; }
    bool contains(const std::vector<double>& x) const;
    void validate() const;  // throws std::invalid_argument

    bool operator==(const SearchSpace&) const = default;
};

enum class Execution { serial, parallel };

struct PsoConfig {
    int population = 100;
    int t_max = 200;
    std::optional<double> delta;
    double lambda0 = 0.729;
    double lambda1 = 1.494;
    double lambda2 = 1.494;
    double v_max_fraction = 0.5;
    double v_init_fraction = 0.1;
    std::uint64_t seed = 1;
    Execution execution = Execution::parallel;

    void validate() const;
    // Inertia-weight coefficients equivalent to the constriction form
    // v ← χ[v + φ1ξ1(p − x) + φ2ξ2(g − x)].
    static PsoConfig from_constriction(double chi, double phi1, double phi2);

    bool operator==(const PsoConfig&) const = default;
};

// χ = 2 / |2 − φ − sqrt(φ² − 4φ)|, φ = φ1 + φ2 > 4.
double constriction_coefficient(double phi1, double phi2);

using Rng = std::mt19937_64;
using Position = std::vector<double>;
// Must be safe to call concurrently. Throwing or returning NaN counts as failure.
using FitnessFn = std::function<double(const Position&)>;

struct Particle {
    Position x;
    std::vector<double> v;
    Position pbest;
    double pbest_f = 0.0;
    double f = 0.0;
};

struct SwarmState {
    std::vector<Particle> particles;
    Position gbest;
    double gbest_f = 0.0;
    int t = 0;
};

// Evaluates fitness for every particle; failures become +inf.
void evaluate_serial(std::vector<Particle>& particles, const FitnessFn& fitness);
void evaluate_parallel(std::vector<Particle>& particles, const FitnessFn& fitness);

SwarmState initialize_swarm(const SearchSpace& space, const PsoConfig& config, Rng& rng, const FitnessFn& fitness);

// Velocity/position update of one particle; `draw` supplies ξ in [0, 1).
// Order of draws: for each dimension, ξ1 then ξ2.
void update_particle(Particle& p, const Position& gbest, const SearchSpace& space, const PsoConfig& config,
                     const std::function<double()>& draw);

void step(SwarmState& state, const SearchSpace& space, const PsoConfig& config, const FitnessFn& fitness, Rng& rng);

struct PsoResult {
    Position best;
    double best_f = 0.0;
    std::vector<double> history;  // entry 0 is the initial swarm, then one per iteration
    int iterations = 0;
};

PsoResult run(const SearchSpace& space, const PsoConfig& config, const FitnessFn& fitness);

}  // namespace cable::pso
