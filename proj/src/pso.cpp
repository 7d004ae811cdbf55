#include "cable/pso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cable::pso {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double safe_eval(const FitnessFn& fitness, const Position& x) {
    try {
        const double f = fitness(x);
        return std::isnan(f) ? kInf : f;
    } catch (...) {
        return kInf;
    }
}

void refresh_bests(SwarmState& s) {
    for (auto& p : s.particles) {
        if (p.f < p.pbest_f) {
            p.pbest_f = p.f;
            p.pbest = p.x;
        }
        if (p.pbest_f < s.gbest_f) {
            s.gbest_f = p.pbest_f;
            s.gbest = p.pbest;
        }
    }
}

void evaluate(std::vector<Particle>& particles, const PsoConfig& config, const FitnessFn& fitness) {
    if (config.execution == Execution::parallel) {
        evaluate_parallel(particles, fitness);
    } else {
        evaluate_serial(particles, fitness);
    }
}

}  // namespace

bool SearchSpace::contains(const std::vector<double>& x) const {
    if (x.size() != dims()) return false;
    for (std::size_t j = 0; j < dims(); ++j) {
        if (!(x[j] >= lower[j] && x[j] <= upper[j])) return false;
    }
    return true;
}

void SearchSpace::validate() const {
    if (lower.empty() || lower.size() != upper.size()) {
        throw std::invalid_argument("search space: lower/upper must be non-empty and the same length");
    }
    for (std::size_t j = 0; j < dims(); ++j) {
        if (!std::isfinite(lower[j]) || !std::isfinite(upper[j]) || !(lower[j] < upper[j])) {
            throw std::invalid_argument("search space: need finite lower < upper in dimension " + std::to_string(j));
        }
    }
}

void PsoConfig::validate() const {
    if (population < 1) throw std::invalid_argument("pso: population must be positive");
    if (t_max < 0) throw std::invalid_argument("pso: t_max must be non-negative");
    if (!(v_max_fraction > 0.0)) throw std::invalid_argument("pso: v_max_fraction must be positive");
    if (!(v_init_fraction >= 0.0)) throw std::invalid_argument("pso: v_init_fraction must be non-negative");
}

PsoConfig PsoConfig::from_constriction(double chi, double phi1, double phi2) {
    PsoConfig c;
    c.lambda0 = chi;
    c.lambda1 = chi * phi1;
    c.lambda2 = chi * phi2;
    return c;
}

double constriction_coefficient(double phi1, double phi2) {
    const double phi = phi1 + phi2;
    if (!(phi > 4.0)) throw std::invalid_argument("constriction requires phi1 + phi2 > 4");
    return 2.0 / std::abs(2.0 - phi - std::sqrt(phi * phi - 4.0 * phi));
}

void evaluate_serial(std::vector<Particle>& particles, const FitnessFn& fitness) {
    for (auto& p : particles) p.f = safe_eval(fitness, p.x);
}

void evaluate_parallel(std::vector<Particle>& particles, const FitnessFn& fitness) {
    const long count = static_cast<long>(particles.size());
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < count; ++k) particles[k].f = safe_eval(fitness, particles[k].x);
}

SwarmState initialize_swarm(const SearchSpace& space, const PsoConfig& config, Rng& rng, const FitnessFn& fitness) {
    space.validate();
    config.validate();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    SwarmState s;
    s.particles.resize(config.population);
    const std::size_t d = space.dims();
    for (auto& p : s.particles) {
        p.x.resize(d);
        p.v.resize(d);
        for (std::size_t j = 0; j < d; ++j) {
            p.x[j] = space.lower[j] + unit(rng) * space.width(j);
            const double speed = config.v_init_fraction * space.width(j);
            p.v[j] = unit(rng) < 0.5 ? -speed : speed;
        }
    }
    evaluate(s.particles, config, fitness);
    s.gbest_f = kInf;
    s.gbest = s.particles.front().x;
    for (auto& p : s.particles) {
        p.pbest = p.x;
        p.pbest_f = p.f;
    }
    refresh_bests(s);
    return s;
}

void update_particle(Particle& p, const Position& gbest, const SearchSpace& space, const PsoConfig& config,
                     const std::function<double()>& draw) {
    for (std::size_t j = 0; j < space.dims(); ++j) {
        const double xi1 = draw();
        const double xi2 = draw();
        double v = config.lambda0 * p.v[j] + config.lambda1 * xi1 * (p.pbest[j] - p.x[j]) +
                   config.lambda2 * xi2 * (gbest[j] - p.x[j]);
        const double vmax = config.v_max_fraction * space.width(j);
        v = std::clamp(v, -vmax, vmax);
        double x = p.x[j] + v;
        if (x < space.lower[j]) {
            x = space.lower[j];
            v = 0.0;
        } else if (x > space.upper[j]) {
            x = space.upper[j];
            v = 0.0;
        }
        p.x[j] = x;
        p.v[j] = v;
    }
}

void step(SwarmState& state, const SearchSpace& space, const PsoConfig& config, const FitnessFn& fitness, Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::function<double()> draw = [&] { return unit(rng); };
    for (auto& p : state.particles) update_particle(p, state.gbest, space, config, draw);
    evaluate(state.particles, config, fitness);
    refresh_bests(state);
    ++state.t;
}

PsoResult run(const SearchSpace& space, const PsoConfig& config, const FitnessFn& fitness) {
    Rng rng(config.seed);
    SwarmState state = initialize_swarm(space, config, rng, fitness);
    PsoResult out;
    out.history.push_back(state.gbest_f);
    // Termination is tested after each iteration.
    while (state.t < config.t_max) {
        step(state, space, config, fitness, rng);
        out.history.push_back(state.gbest_f);
        if (config.delta && state.gbest_f <= *config.delta) break;
    }
    out.best = state.gbest;
    out.best_f = state.gbest_f;
    out.iterations = state.t;
    return out;
}

}  // namespace cable::pso
