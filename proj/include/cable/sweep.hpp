#pragma once

#include "cable/identification.hpp"

#include <string>
#include <utility>
#include <vector>

namespace cable {

// tied:    Kr1 = Kr2 = Kr, Ks1 = Ks2 = Ks
// opposed: Ks1 and Kr2 rigid, Kr1 = Kr, Ks2 = Ks
enum class Scenario { tied, opposed };

BoundaryStiffness scenario_boundary(Scenario s, double Kr, double Ks);

struct AxisSpec {
    double lo_exp = 0.0;
    double hi_exp = 10.0;
    int points = 25;  // log-spaced over [10^lo_exp, 10^hi_exp]
    bool include_zero = true;
    bool include_rigid = false;

    std::vector<double> values() const;
    bool operator==(const AxisSpec&) const = default;
};

struct SweepFixed {
    double H = 0.0;
    double EI = 0.0;
    double EA = 0.0;
};

struct SweepSpec {
    Scenario scenario = Scenario::tied;
    AxisSpec kr;
    AxisSpec ks;
    std::vector<int> orders = {1, 2, 3};
};

struct SweepGrid {
    std::vector<double> kr;
    std::vector<double> ks;
    std::vector<int> orders;
    std::vector<double> data;  // NaN marks an unsolvable point

    double at(std::size_t order_idx, std::size_t i_kr, std::size_t i_ks) const {
        return data[(order_idx * kr.size() + i_kr) * ks.size() + i_ks];
    }
    double& at(std::size_t order_idx, std::size_t i_kr, std::size_t i_ks) {
        return data[(order_idx * kr.size() + i_kr) * ks.size() + i_ks];
    }
    std::size_t missing() const;
};

SweepGrid sweep_frequencies(const KnownCable& cable, const SweepFixed& fixed, const SweepSpec& spec,
                            pso::Execution execution = pso::Execution::parallel);

struct Polyline {
    std::vector<std::pair<double, double>> index_points;  // fractional (i_kr, i_ks)
    std::vector<std::pair<double, double>> points;        // (Kr, Ks)
};

struct OrderIsolines {
    int order = 0;
    double target = 0.0;
    std::vector<Polyline> lines;
    bool attained = false;
};

enum class IntersectionKind { none, unique, overlap };

struct IsolineSet {
    std::vector<OrderIsolines> per_order;
    IntersectionKind diagnostic = IntersectionKind::none;
    std::vector<std::pair<std::size_t, std::size_t>> common_cells;  // lower-left (i_kr, i_ks)
    double common_extent = 0.0;                                       // in cell diagonals
};

const char* to_string(IntersectionKind k);

// Marching squares in grid-index space. A cell is common when its centre lies
// within one cell diagonal of every order's isolines; the common cells form a
// unique intersection if they span at most three diagonals.
IsolineSet extract_isolines(const SweepGrid& sweep, const MeasuredFrequencies& targets);

struct StiffnessRange {
    double lo = 0.0;
    double hi = 0.0;
};

struct RangeRecommendation {
    StiffnessRange kr;
    StiffnessRange ks;
    bool warning = false;
    std::string message;
};

// Decade-aligned hull of all isoline vertices, widened one decade per side.
RangeRecommendation recommend_search_range(const SweepGrid& sweep, const IsolineSet& isolines);

}  // namespace cable
