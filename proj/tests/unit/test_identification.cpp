#include "cable/identification.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace cable;

namespace {

pso::PsoConfig small_pso(std::uint64_t seed = 1) {
    pso::PsoConfig c;
    c.population = 12;
    c.t_max = 6;
    c.seed = seed;
    return c;
}

}  // namespace

TEST(Fitness, ZeroAtGeneratingParameters) {
    for (int k = 1; k <= 4; ++k) {
        const auto c = fixture::numerical_cable(k);
        const auto f = forward_frequencies(*c.exact, c.known_cable(), 7);
        const auto synth = MeasuredFrequencies::consecutive(f);
        EXPECT_LT(fitness(*c.exact, c.known_cable(), synth), 1e-10) << k;
    }
}

TEST(Fitness, SumOfSquaredDifferences) {
    const auto c = fixture::numerical_cable(1);
    const auto f = forward_frequencies(*c.exact, c.known_cable(), 3);
    const MeasuredFrequencies m{{1, 3}, {f[0] + 0.01, f[2] - 0.02}};
    EXPECT_NEAR(fitness(*c.exact, c.known_cable(), m), 0.01 * 0.01 + 0.02 * 0.02, 1e-12);
}

TEST(Fitness, UnsolvableCandidateIsInfinite) {
    const auto c = fixture::numerical_cable(1);
    ParameterVector p = *c.exact;
    p.H = 10.0;  // tension turns negative along the span
    EXPECT_TRUE(std::isinf(fitness(p, c.known_cable(), c.require_measured())));
}

TEST(Fitness, KrylovAndDenseAgree) {
    const auto c = fixture::numerical_cable(2);
    const double a = fitness(*c.exact, c.known_cable(), c.require_measured(), EigenMethod::dense);
    const double b = fitness(*c.exact, c.known_cable(), c.require_measured(), EigenMethod::krylov);
    EXPECT_NEAR(a, b, 1e-12 + 1e-8 * a);
}

TEST(SearchSpace, NumericalRangesAroundExact) {
    const auto c = fixture::numerical_cable(1);
    const auto s = derive_search_space(RangeMode::numerical, c.exact, std::nullopt);
    EXPECT_DOUBLE_EQ(s.lower[0], 0.75 * 2903600);
    EXPECT_DOUBLE_EQ(s.upper[0], 1.25 * 2903600);
    EXPECT_DOUBLE_EQ(s.lower[3], 1e5);
    EXPECT_DOUBLE_EQ(s.upper[6], 1.5e6);
    EXPECT_THROW(derive_search_space(RangeMode::numerical, std::nullopt, std::nullopt), std::invalid_argument);
}

TEST(SearchSpace, EngineeringRangesForStrand1) {
    const auto s = fixture::strand(1);
    const auto ref = engineering_reference(s.known_cable(), s.require_measured(), 67126.28145, 380718680.9);
    EXPECT_NEAR(ref.H_f, 190.31e3, 0.001 * 190.31e3);
    const auto sp = derive_search_space(RangeMode::engineering, std::nullopt, ref);
    EXPECT_NEAR(sp.lower[0], 95.155e3, 0.001 * 95.155e3);
    EXPECT_NEAR(sp.upper[0], 285.465e3, 0.001 * 285.465e3);
    EXPECT_DOUBLE_EQ(sp.lower[1], 0.2 * 67126.28145);
    EXPECT_DOUBLE_EQ(sp.upper[2], 2.0 * 380718680.9);
    EXPECT_DOUBLE_EQ(sp.lower[3], 1e4);
    EXPECT_DOUBLE_EQ(sp.upper[4], 1e6);
    EXPECT_DOUBLE_EQ(sp.lower[5], 1e4);
    EXPECT_DOUBLE_EQ(sp.upper[6], 1e8);
}

TEST(Identify, SingleRepetitionEqualsDirectSwarm) {
    const auto c = fixture::numerical_cable(1);
    const auto space = c.search_space();
    const auto cfg = small_pso(4);
    IdentifyOptions opt;
    opt.repetitions = 1;
    const auto res = identify(c.known_cable(), c.require_measured(), space, cfg, opt);

    const auto direct = pso::run(space, cfg, [&](const pso::Position& x) {
        std::array<double, kParamCount> a{};
        std::copy(x.begin(), x.end(), a.begin());
        return fitness(ParameterVector::from_array(a), c.known_cable(), c.require_measured());
    });
    ASSERT_EQ(res.runs.size(), 1u);
    EXPECT_EQ(res.runs[0].params.to_array()[0], direct.best[0]);
    EXPECT_EQ(res.runs[0].fitness, direct.best_f);
    EXPECT_EQ(res.best_fitness, direct.best_f);
    EXPECT_EQ(res.runs[0].history, direct.history);
}

TEST(Identify, SeedsAdvancePerRepetitionAndResultsAreReproducible) {
    const auto c = fixture::numerical_cable(3);
    IdentifyOptions opt;
    opt.repetitions = 3;
    opt.exact = c.exact;
    const auto a = identify(c.known_cable(), c.require_measured(), c.search_space(), small_pso(10), opt);
    const auto b = identify(c.known_cable(), c.require_measured(), c.search_space(), small_pso(10), opt);
    ASSERT_EQ(a.runs.size(), 3u);
    for (int r = 0; r < 3; ++r) {
        EXPECT_EQ(a.runs[r].seed, 10u + r);
        EXPECT_EQ(a.runs[r].params, b.runs[r].params);
    }
    EXPECT_EQ(a.successful_runs, 3);
    ASSERT_TRUE(a.relative_error.has_value());
    EXPECT_NEAR((*a.relative_error)[0], (a.estimate.H - c.exact->H) / c.exact->H, 1e-15);
    for (const auto& run : a.runs) {
        const auto v = run.params.to_array();
        EXPECT_TRUE(c.search_space().contains(std::vector<double>(v.begin(), v.end())));
    }
}

TEST(Identify, FixedParametersAreHeld) {
    const auto c = fixture::numerical_cable(1);
    IdentifyOptions opt;
    opt.fixed[2] = c.exact->EA;
    opt.fixed[5] = c.exact->Ks1;
    const auto r = identify(c.known_cable(), c.require_measured(), c.search_space(), small_pso(), opt);
    EXPECT_EQ(r.runs[0].params.EA, c.exact->EA);
    EXPECT_EQ(r.runs[0].params.Ks1, c.exact->Ks1);
    EXPECT_NE(r.runs[0].params.H, c.exact->H);
}

TEST(Identify, AllFailingRunsRaise) {
    const auto c = fixture::numerical_cable(1);
    // every tension in this box is far too small for the cable weight
    pso::SearchSpace space = c.search_space();
    space.lower[0] = 1.0;
    space.upper[0] = 2.0;
    IdentifyOptions opt;
    opt.repetitions = 2;
    EXPECT_THROW(identify(c.known_cable(), c.require_measured(), space, small_pso(), opt), IdentificationError);
}

TEST(Summarize, QuartilesAndDispersionFlag) {
    const auto s = summarize({1, 2, 3, 4, 5});
    EXPECT_DOUBLE_EQ(s.mean, 3);
    EXPECT_DOUBLE_EQ(s.median, 3);
    EXPECT_DOUBLE_EQ(s.q1, 2);
    EXPECT_DOUBLE_EQ(s.q3, 4);
    EXPECT_DOUBLE_EQ(s.iqr_over_median, 2.0 / 3.0);
    EXPECT_TRUE(s.dispersed);
    const auto t = summarize({10, 10.5, 11, 9.5});
    EXPECT_FALSE(t.dispersed);
    EXPECT_DOUBLE_EQ(t.min, 9.5);
    EXPECT_DOUBLE_EQ(t.max, 11);
}

TEST(FrequencyCountStudy, RunsFromFullCountDownToOne) {
    const auto c = fixture::numerical_cable(3);
    IdentifyOptions opt;
    opt.exact = c.exact;
    auto cfg = small_pso();
    cfg.population = 6;
    cfg.t_max = 2;
    const auto entries =
        frequency_count_study(c.known_cable(), c.require_measured().first(3), c.search_space(), cfg, opt);
    ASSERT_EQ(entries.size(), 3u);
    EXPECT_EQ(entries[0].count, 3);
    EXPECT_EQ(entries[2].count, 1);
    opt.exact.reset();
    EXPECT_THROW(frequency_count_study(c.known_cable(), c.require_measured(), c.search_space(), cfg, opt),
                 std::invalid_argument);
}
