#include <gtest/gtest.h>

#include <random>

#include "dosimpact/analytic.hpp"
#include "dosimpact/portfolio.hpp"

using namespace dosimpact;

namespace {

Asset datacentre() {
    Asset a;
    a.id = "datacentre";
    a.M0 = 1e7;
    a.rM = -4.76e-5;
    a.value_rate_own = 5e8;
    a.value_rate_contingent = 5e8;
    a.capability_value = 2.5e8;
    a.model = {5.8e-5, annual_rate_to_hourly(0.5), 1.0, 0.2};
    return a;
}

SimulationConfig quiet(double dt, double horizon) {
    SimulationConfig c;
    c.dt = dt;
    c.horizon = horizon;
    c.noise_enabled = false;
    return c;
}

const std::vector<AttackShock> full_shock{{0.0, 1.0}};

}  // namespace

TEST(Portfolio, TriangleRecoveryDegradedValue) {
    const auto a = datacentre();
    const auto t = simulate_path(a, quiet(1e-3, 1.0), full_shock, 0);
    const auto d = damage_triple(t, a, 1.0);
    // 1e9 EUR/yr over the triangle of area 0.5 * (1 / 1.2) h
    EXPECT_NEAR(d.degraded_value, 47564.687975646879756, 47564.69 * 1e-3);
}

TEST(Portfolio, ShortAndLongTermComponents) {
    const auto a = datacentre();
    const auto t = simulate_path(a, quiet(1.0, 48.0), full_shock, 0);
    const auto d = damage_triple(t, a, 10.0);
    double sum = 0.0;
    for (std::size_t k = 0; k < 10; ++k) {
        sum += t.dM[k];
    }
    EXPECT_EQ(d.short_term_monetary, sum);
    EXPECT_EQ(d.initial_investment_step, t.K[0] - t.initial.K);
    EXPECT_NEAR(d.annuity_commitment, 2.5e8, 1e-6);
    EXPECT_EQ(d.long_term_investment, d.initial_investment_step + d.annuity_commitment);
    EXPECT_EQ(d.total(), d.short_term_monetary + d.long_term_investment + d.degraded_value);
}

TEST(Portfolio, WindowStartsAtFirstShock) {
    auto a = datacentre();
    a.M0 = 1.0;
    const std::vector<AttackShock> later{{5.0, 1.0}};
    const auto t = simulate_path(a, quiet(1.0, 20.0), later, 0);
    const auto d = damage_triple(t, a, 3.0);
    EXPECT_EQ(d.short_term_monetary, t.dM[5] + t.dM[6] + t.dM[7]);
    EXPECT_EQ(d.initial_investment_step, t.K[5] - t.K[4]);
}

TEST(Portfolio, AccumulatorRejectsBadWindows) {
    const auto a = datacentre();
    const auto c = quiet(1.0, 10.0);
    EXPECT_THROW(DamageAccumulator(a, c, std::nullopt, 5.0), std::invalid_argument);
    EXPECT_THROW(DamageAccumulator(a, c, 0, 0.0), std::invalid_argument);
    EXPECT_THROW(DamageAccumulator(a, c, 0, 2.5), std::invalid_argument);
    EXPECT_THROW(DamageAccumulator(a, c, 5, 6.0), std::invalid_argument);
    EXPECT_NO_THROW(DamageAccumulator(a, c, 5, 5.0));
}

TEST(Portfolio, DefaultWindowClipsToHorizon) {
    const auto a = datacentre();
    EXPECT_EQ(default_window(a, quiet(1.0, 48.0), full_shock), 48.0);
    const std::vector<AttackShock> later{{10.5, 1.0}};
    EXPECT_EQ(default_window(a, quiet(1.0, 48.0), later), 38.0);
    EXPECT_EQ(default_window(a, quiet(1.0, 5000.0), later), 2160.0);
}

TEST(Portfolio, AggregateIsOrderedComponentwiseSum) {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(0.0, 1e9);
    std::vector<DamageTriple> t(37);
    for (auto& x : t) {
        x = {u(gen), u(gen), u(gen), u(gen), u(gen)};
    }
    const auto sum = aggregate_portfolio(t);
    double s = 0.0, l = 0.0, g = 0.0, i = 0.0, n = 0.0;
    for (const auto& x : t) {
        s += x.short_term_monetary;
        l += x.long_term_investment;
        g += x.degraded_value;
        i += x.initial_investment_step;
        n += x.annuity_commitment;
    }
    EXPECT_EQ(sum.short_term_monetary, s);
    EXPECT_EQ(sum.long_term_investment, l);
    EXPECT_EQ(sum.degraded_value, g);
    EXPECT_EQ(sum.initial_investment_step, i);
    EXPECT_EQ(sum.annuity_commitment, n);
    EXPECT_EQ(aggregate_portfolio(std::span<const DamageTriple>{}), DamageTriple{});
}

TEST(Portfolio, SummaryStatistics) {
    std::vector<DamageTriple> t;
    for (int i = 1; i <= 5; ++i) {
        t.push_back({static_cast<double>(i), 0.0, 10.0 * i, 0.0, 0.0});
    }
    const auto s = summarize_damages(t);
    EXPECT_EQ(s.n_paths, 5u);
    EXPECT_EQ(s.short_term_monetary.mean, 3.0);
    EXPECT_EQ(s.short_term_monetary.median, 3.0);
    EXPECT_DOUBLE_EQ(s.short_term_monetary.q95, 4.8);
    EXPECT_EQ(s.total.median, 33.0);
    EXPECT_EQ(mean_triple(t).degraded_value, 30.0);
}

TEST(Portfolio, AssessmentMatchesPathReplay) {
    auto a = datacentre();
    a.M0 = 1.0;
    a.capability_value = 1e3;
    a.model.V = 0.01;
    SimulationConfig c;
    c.dt = 0.5;
    c.horizon = 20.0;
    c.n_paths = 300;
    c.seed = 8;
    const std::vector<AttackShock> shocks{{2.0, 0.5}};
    const auto r = assess_asset(a, c, shocks, 6.0, {.threads = 2});
    ASSERT_EQ(r.per_path.size(), 300u);
    for (const std::size_t p : {0u, 17u, 299u}) {
        const auto t = simulate_path(a, c, shocks, p);
        EXPECT_EQ(r.per_path[p], damage_triple(t, a, 6.0)) << "path " << p;
    }
    EXPECT_EQ(r.mean, mean_triple(r.per_path));
    EXPECT_EQ(r.summary, summarize_damages(r.per_path));
}

TEST(Portfolio, ClaimEqualsTripleSum) {
    const DamageTriple t{1.5, 2.25, 4.0, 0.25, 2.0};
    for (const auto k : {CountermeasureKind::dissuasive, CountermeasureKind::retaliation,
                         CountermeasureKind::compensation}) {
        const auto r = countermeasure_report(t, k);
        ASSERT_TRUE(r.claim);
        EXPECT_EQ(*r.claim, t.short_term_monetary + t.long_term_investment + t.degraded_value);
        EXPECT_FALSE(r.internal_only);
    }
    const auto silent = countermeasure_report(t, CountermeasureKind::keep_silent);
    EXPECT_FALSE(silent.claim);
    EXPECT_TRUE(silent.internal_only);
    EXPECT_EQ(silent.total, t);
}

TEST(Portfolio, NamedReportSumsAssets) {
    std::vector<AssetDamage> assets{{"a", {1.0, 2.0, 3.0, 0.5, 1.5}, std::nullopt},
                                    {"b", {10.0, 20.0, 30.0, 5.0, 15.0}, std::nullopt}};
    const auto r = countermeasure_report(assets, CountermeasureKind::retaliation);
    EXPECT_EQ(r.total, aggregate_portfolio(std::vector<DamageTriple>{assets[0].triple,
                                                                      assets[1].triple}));
    EXPECT_EQ(*r.claim, 66.0);
    EXPECT_EQ(r.assets, assets);
}

TEST(Portfolio, ProcessNames) {
    EXPECT_EQ(parse_countermeasure("keep_silent"), CountermeasureKind::keep_silent);
    EXPECT_FALSE(parse_countermeasure("lawsuit"));
    EXPECT_EQ(countermeasure_kinds(), "dissuasive, retaliation, compensation, keep_silent");
    for (const auto k : {CountermeasureKind::dissuasive, CountermeasureKind::retaliation,
                         CountermeasureKind::compensation, CountermeasureKind::keep_silent}) {
        EXPECT_EQ(parse_countermeasure(to_string(k)), k);
    }
}
