#include "cable/sweep.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace cable;

namespace {

struct Cable1Sweep {
    KnownCable cable;
    SweepFixed fixed;
};

Cable1Sweep cable1() {
    const auto c = fixture::numerical_cable(1);
    return {c.known_cable(), {c.exact->H, c.exact->EI, c.exact->EA}};
}

SweepSpec small_spec() {
    SweepSpec s;
    s.kr = {3, 7, 9, true, false};
    s.ks = {4, 9, 11, false, false};
    return s;
}

double resolve(const KnownCable& cable, const SweepFixed& fx, Scenario sc, double Kr, double Ks, int order) {
    const auto bc = scenario_boundary(sc, Kr, Ks);
    const ParameterVector p{fx.H, fx.EI, fx.EA, bc.Kr1, bc.Kr2, bc.Ks1, bc.Ks2};
    return forward_frequencies(p, cable, order, EigenMethod::dense)[order - 1];
}

}  // namespace

TEST(AxisSpec, LogSpacingWithZeroAndRigid) {
    const AxisSpec a{0, 10, 11, true, true};
    const auto v = a.values();
    ASSERT_EQ(v.size(), 13u);
    EXPECT_EQ(v.front(), 0.0);
    EXPECT_DOUBLE_EQ(v[1], 1.0);
    EXPECT_DOUBLE_EQ(v[6], 1e5);
    EXPECT_DOUBLE_EQ(v[11], 1e10);
    EXPECT_TRUE(is_rigid(v.back()));
    EXPECT_THROW((AxisSpec{1, 1, 5}.values()), std::invalid_argument);
}

TEST(ScenarioBoundary, TiedAndOpposed) {
    EXPECT_EQ(scenario_boundary(Scenario::tied, 1, 2), (BoundaryStiffness{1, 1, 2, 2}));
    const auto o = scenario_boundary(Scenario::opposed, 1, 2);
    EXPECT_EQ(o.Kr1, 1);
    EXPECT_TRUE(is_rigid(o.Kr2));
    EXPECT_TRUE(is_rigid(o.Ks1));
    EXPECT_EQ(o.Ks2, 2);
}

TEST(Sweep, GridPointsMatchDirectSolves) {
    const auto s = cable1();
    const auto spec = small_spec();
    const auto g = sweep_frequencies(s.cable, s.fixed, spec, pso::Execution::serial);
    EXPECT_EQ(g.kr.size(), 10u);
    EXPECT_EQ(g.ks.size(), 11u);
    EXPECT_EQ(g.missing(), 0u);
    for (std::size_t i : {1u, 5u, 9u}) {
        for (std::size_t j : {0u, 6u, 10u}) {
            EXPECT_NEAR(g.at(2, i, j), resolve(s.cable, s.fixed, Scenario::tied, g.kr[i], g.ks[j], 3),
                        1e-9 * g.at(2, i, j));
        }
    }
}

TEST(Sweep, SerialAndParallelIdentical) {
    const auto s = cable1();
    const auto a = sweep_frequencies(s.cable, s.fixed, small_spec(), pso::Execution::serial);
    const auto b = sweep_frequencies(s.cable, s.fixed, small_spec(), pso::Execution::parallel);
    ASSERT_EQ(a.data.size(), b.data.size());
    for (std::size_t k = 0; k < a.data.size(); ++k) {
        if (std::isnan(a.data[k])) EXPECT_TRUE(std::isnan(b.data[k]));
        else EXPECT_EQ(a.data[k], b.data[k]);
    }
}

TEST(Sweep, FrequenciesNondecreasingInKsOnCable1) {
    const auto s = cable1();
    SweepSpec spec;
    spec.kr = {3, 5, 4, true, false};
    spec.ks = {4, 8, 10, false, false};
    const auto g = sweep_frequencies(s.cable, s.fixed, spec);
    for (std::size_t o = 0; o < g.orders.size(); ++o) {
        for (std::size_t i = 0; i < g.kr.size(); ++i) {
            for (std::size_t j = 1; j < g.ks.size(); ++j) {
                EXPECT_GE(g.at(o, i, j), g.at(o, i, j - 1) * (1 - 1e-9)) << "order " << g.orders[o] << " Kr " << g.kr[i];
            }
        }
    }
}

TEST(Sweep, LaterallyFreeEndsAreMissingNotFatal) {
    // Ks = 0 at both ends leaves a rigid-body translation; the static solve is singular
    const auto s = cable1();
    SweepSpec spec = small_spec();
    spec.ks.include_zero = true;
    const auto g = sweep_frequencies(s.cable, s.fixed, spec);
    EXPECT_EQ(g.ks.front(), 0.0);
    EXPECT_EQ(g.missing(), g.orders.size() * g.kr.size());
    for (std::size_t i = 0; i < g.kr.size(); ++i) EXPECT_TRUE(std::isnan(g.at(0, i, 0)));
}

TEST(Isolines, VerticesReproduceTargetsWhenResolved) {
    const auto s = cable1();
    // Kr kept below sqrt(EI*H), where the closed-form ghost ratio is regular
    SweepSpec spec;
    spec.kr = {3, 5.5, 11, true, false};
    spec.ks = {4, 9, 21, true, false};
    const auto g = sweep_frequencies(s.cable, s.fixed, spec);
    // frequencies of an interior point of the grid
    const auto targets = MeasuredFrequencies::consecutive({resolve(s.cable, s.fixed, Scenario::tied, 2e5, 7e5, 1),
                                                           resolve(s.cable, s.fixed, Scenario::tied, 2e5, 7e5, 2),
                                                           resolve(s.cable, s.fixed, Scenario::tied, 2e5, 7e5, 3)});
    const auto iso = extract_isolines(g, targets);
    std::size_t checked = 0;
    for (const auto& o : iso.per_order) {
        ASSERT_TRUE(o.attained) << o.order;
        for (const auto& l : o.lines) {
            for (const auto& [Kr, Ks] : l.points) {
                const double f = resolve(s.cable, s.fixed, Scenario::tied, Kr, Ks, o.order);
                EXPECT_NEAR(f, o.target, 5e-3 * o.target) << "order " << o.order << " at Kr=" << Kr << " Ks=" << Ks;
                ++checked;
            }
        }
    }
    EXPECT_GT(checked, 10u);
    EXPECT_NE(iso.diagnostic, IntersectionKind::none);
}

TEST(Isolines, UnattainableTargetIsFlagged) {
    const auto s = cable1();
    const auto g = sweep_frequencies(s.cable, s.fixed, small_spec());
    const auto iso = extract_isolines(g, MeasuredFrequencies::consecutive({50.0, 100.0, 150.0}));
    for (const auto& o : iso.per_order) {
        EXPECT_FALSE(o.attained);
        EXPECT_TRUE(o.lines.empty());
    }
    EXPECT_EQ(iso.diagnostic, IntersectionKind::none);
    const auto rec = recommend_search_range(g, iso);
    EXPECT_TRUE(rec.warning);
    EXPECT_DOUBLE_EQ(rec.kr.lo, 1e3);
    EXPECT_DOUBLE_EQ(rec.ks.hi, 1e9);
}

TEST(Isolines, OrderMissingFromSweepRejected) {
    const auto s = cable1();
    const auto g = sweep_frequencies(s.cable, s.fixed, small_spec());
    const MeasuredFrequencies m{{4}, {2.0}};
    EXPECT_THROW(extract_isolines(g, m), std::invalid_argument);
}

TEST(Isolines, SyntheticLinearFieldGivesStraightContour) {
    // f = i + j on a 6x6 index grid; the contour f = 4.5 is the anti-diagonal
    SweepGrid g;
    g.kr = {1, 10, 100, 1e3, 1e4, 1e5};
    g.ks = g.kr;
    g.orders = {1};
    g.data.resize(36);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) g.at(0, i, j) = double(i + j);
    const auto iso = extract_isolines(g, MeasuredFrequencies::consecutive({4.5}));
    ASSERT_EQ(iso.per_order[0].lines.size(), 1u);
    for (const auto& p : iso.per_order[0].lines[0].index_points) EXPECT_NEAR(p.first + p.second, 4.5, 1e-12);
    const auto& line = iso.per_order[0].lines[0];
    EXPECT_EQ(line.index_points.size(), 10u);
}

TEST(RangeRecommendation, DecadeHullWidenedByOne) {
    SweepGrid g;
    g.kr = {0, 1, 10, 100, 1e3, 1e4, 1e5, 1e6, 1e7};
    g.ks = g.kr;
    IsolineSet iso;
    OrderIsolines o;
    o.attained = true;
    Polyline l;
    l.points = {{3e3, 2e4}, {5e4, 8e4}};
    o.lines = {l};
    iso.per_order = {o};
    const auto r = recommend_search_range(g, iso);
    EXPECT_FALSE(r.warning);
    EXPECT_DOUBLE_EQ(r.kr.lo, 1e2);
    EXPECT_DOUBLE_EQ(r.kr.hi, 1e6);
    EXPECT_DOUBLE_EQ(r.ks.lo, 1e3);
    EXPECT_DOUBLE_EQ(r.ks.hi, 1e6);
}
