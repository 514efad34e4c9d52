#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "dosimpact/scenario.hpp"

using namespace dosimpact;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::filesystem::path> files_in(const std::string& dir) {
    std::vector<std::filesystem::path> out;
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
        out.push_back(e.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Diagnostic> diagnostics_of(std::string_view text) {
    try {
        parse_scenario(text);
    } catch (const ScenarioError& e) {
        return e.diagnostics();
    }
    return {};
}

std::vector<Diagnostic> invalid(const std::string& name) {
    return diagnostics_of(slurp(std::string(FIXTURE_DIR) + "/invalid/" + name));
}

bool has(const std::vector<Diagnostic>& ds, std::size_t line, std::string_view field) {
    for (const auto& d : ds) {
        if (d.line == line && d.field == field) {
            return true;
        }
    }
    return false;
}

bool mentions(const std::vector<Diagnostic>& ds, std::string_view text) {
    for (const auto& d : ds) {
        if (d.message.find(text) != std::string::npos) {
            return true;
        }
    }
    return false;
}

const std::string minimal_head = "version: 1\nprocess: compensation\n[simulation]\nhorizon: 4\n";

}  // namespace

TEST(Scenario, EmbeddedDatacentre) {
    const auto doc = parse_scenario(datacentre_scenario_text());
    ASSERT_EQ(doc.assets.size(), 1u);
    const auto& a = doc.assets[0].asset;
    EXPECT_EQ(a.id, "datacentre");
    EXPECT_EQ(a.category, AssetCategory::company);
    EXPECT_EQ(a.model.r_eq, annual_rate_to_hourly(0.5));
    EXPECT_EQ(a.model.a, 5.8e-5);
    EXPECT_EQ(a.model.V, 1.0);
    EXPECT_EQ(a.model.lambda_market, 0.2);
    EXPECT_EQ(a.rM, -4.76e-5);
    EXPECT_EQ(a.M0, 1e7);
    EXPECT_EQ(a.TK, 2160.0);
    EXPECT_EQ(a.capability_value, 2.5e8);
    EXPECT_EQ(a.A0_post, 0.0);
    EXPECT_EQ(a.usability.lambda_usability, 0.0);
    EXPECT_EQ(doc.assets[0].shocks, (std::vector<AttackShock>{{0.0, 1.0}}));
    EXPECT_EQ(doc.config.dt, 1.0);
    EXPECT_EQ(doc.config.seed, 42u);
    EXPECT_EQ(doc.process, CountermeasureKind::compensation);
}

TEST(Scenario, BundledFileMatchesEmbeddedText) {
    EXPECT_EQ(slurp(std::string(SCENARIO_DIR) + "/datacentre.scn"), datacentre_scenario_text());
}

TEST(Scenario, EchoFixpointOnCorpus) {
    const auto files = files_in(std::string(FIXTURE_DIR) + "/scenarios");
    ASSERT_GE(files.size(), 10u);
    std::set<AssetCategory> categories;
    for (const auto& f : files) {
        SCOPED_TRACE(f.filename().string());
        const auto doc = parse_scenario(slurp(f));
        const auto echo = echo_scenario(doc);
        const auto again = parse_scenario(echo);
        EXPECT_EQ(again, doc);
        EXPECT_EQ(echo_scenario(again), echo);
        for (const auto& a : doc.assets) {
            categories.insert(a.asset.category);
        }
    }
    EXPECT_EQ(categories.size(), 4u);
}

TEST(Scenario, PresetsApply) {
    const auto water = parse_scenario(
        slurp(std::string(FIXTURE_DIR) + "/scenarios/public_service_water.scn"));
    EXPECT_EQ(water.assets[0].asset.model.r_eq, annual_rate_to_hourly(0.9));

    const auto plant = parse_scenario(slurp(std::string(FIXTURE_DIR) + "/scenarios/company_roa.scn"));
    EXPECT_EQ(plant.assets[0].asset.model.r_eq, annual_rate_to_hourly(0.5));
    EXPECT_EQ(plant.assets[0].asset.model.lambda_market, 0.2);

    const auto tech =
        parse_scenario(slurp(std::string(FIXTURE_DIR) + "/scenarios/technology_provider.scn"));
    EXPECT_EQ(tech.assets[0].asset.model.r_eq, annual_rate_to_hourly(0.22));

    const auto portfolio = parse_scenario(slurp(std::string(FIXTURE_DIR) + "/scenarios/portfolio.scn"));
    EXPECT_EQ(portfolio.assets[0].asset.TK, hours_per_quarter);
    EXPECT_EQ(portfolio.window, 12.0);
}

TEST(Scenario, ShocksSortedPerAsset) {
    const auto doc = parse_scenario(slurp(std::string(FIXTURE_DIR) + "/scenarios/portfolio.scn"));
    ASSERT_EQ(doc.assets.size(), 2u);
    EXPECT_EQ(doc.assets[0].shocks, (std::vector<AttackShock>{{1.0, 0.2}, {4.0, 0.6}}));
    EXPECT_EQ(doc.assets[1].shocks, (std::vector<AttackShock>{{4.0, 1.0}}));
}

TEST(Scenario, CategoryPresetRules) {
    EXPECT_EQ(company_r_eq_annual(0.3, 0.5), 0.5);
    EXPECT_EQ(company_r_eq_annual(0.6, 0.5), 0.6);

    const auto ps = category_preset(AssetCategory::public_service);
    EXPECT_TRUE(ps.continuity_obligation);
    EXPECT_TRUE(ps.r_eq_is_judgment);
    EXPECT_EQ(ps.r_eq_annual_default, 0.9);

    const auto co = category_preset("company");
    EXPECT_EQ(co.r_eq_rule, TimePreferenceRule::max_roa_margin);
    EXPECT_EQ(co.TK_default, hours_per_quarter);

    const auto si = category_preset(AssetCategory::shared_infrastructure);
    EXPECT_TRUE(si.requires_confirmation);
    EXPECT_FALSE(si.r_eq_annual_default);

    EXPECT_EQ(category_preset(AssetCategory::technology_provider).r_eq_rule,
              TimePreferenceRule::max_roa_margin);

    try {
        category_preset("bank");
        FAIL() << "expected an exception";
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        for (const auto* kind : {"public_service", "company", "shared_infrastructure",
                                 "technology_provider"}) {
            EXPECT_NE(msg.find(kind), std::string::npos) << kind;
        }
    }
}

TEST(Scenario, PresetsPassValidationWithMinimalFields) {
    for (const auto c : {AssetCategory::public_service, AssetCategory::company,
                         AssetCategory::shared_infrastructure, AssetCategory::technology_provider}) {
        const auto p = category_preset(c);
        Asset a;
        a.id = "x";
        a.category = c;
        a.model.r_eq = annual_rate_to_hourly(p.r_eq_annual_default.value_or(0.5));
        a.model.lambda_market = p.lambda_market_default;
        a.usability.lambda_usability = p.lambda_usability_default;
        a.TK = p.TK_default.value_or(100.0);
        EXPECT_TRUE(validate_asset(a).empty()) << to_string(c);
    }
}

TEST(Scenario, UnknownKeyIsLocated) {
    const auto d = invalid("unknown_key.scn");
    EXPECT_TRUE(has(d, 13, "asset[a].model.volatility"));
    EXPECT_TRUE(mentions(d, "unknown key"));
}

TEST(Scenario, UndeclaredShockIsLocated) {
    const auto d = invalid("undeclared_shock.scn");
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[0].line, 14u);
    EXPECT_EQ(d[0].field, "shock[b]");
    EXPECT_TRUE(mentions(d, "undeclared asset 'b'"));
}

TEST(Scenario, NeedsAnAsset) {
    EXPECT_TRUE(mentions(invalid("no_assets.scn"), "scenario requires at least one asset"));
}

TEST(Scenario, NeedsVersionFirst) {
    const auto d = invalid("missing_version.scn");
    EXPECT_TRUE(has(d, 1, "version"));
    EXPECT_TRUE(mentions(diagnostics_of("version: 2\nprocess: compensation\n"), "unsupported version 2"));
}

TEST(Scenario, DuplicateKey) {
    const auto d = invalid("duplicate_key.scn");
    EXPECT_TRUE(has(d, 6, "simulation.horizon"));
    EXPECT_TRUE(mentions(d, "first set on line 5"));
}

TEST(Scenario, InfrastructureNeedsExplicitRate) {
    const auto d = invalid("infrastructure_without_rate.scn");
    EXPECT_TRUE(has(d, 7, "asset[grid].model.r_eq"));
}

TEST(Scenario, RangeViolationsAreLocated) {
    const auto d = invalid("out_of_range.scn");
    EXPECT_TRUE(has(d, 6, "simulation.correlation"));
    EXPECT_TRUE(has(d, 12, "asset[a].A0_post"));
    EXPECT_TRUE(has(d, 17, "shock[a].time"));
}

TEST(Scenario, UnknownCategoryListsKinds) {
    const auto d = invalid("bad_category.scn");
    EXPECT_TRUE(has(d, 8, "asset[a].category"));
    EXPECT_TRUE(mentions(d, "shared_infrastructure"));
}

TEST(Scenario, SyntaxErrors) {
    EXPECT_TRUE(has(diagnostics_of(minimal_head + "dt 1\n"), 5, ""));
    EXPECT_TRUE(has(diagnostics_of(minimal_head + "[simulation\n"), 5, ""));
    EXPECT_TRUE(has(diagnostics_of(minimal_head + "[market x]\n"), 5, "market"));
    EXPECT_TRUE(has(diagnostics_of(minimal_head + "dt: fast\n"), 5, "simulation.dt"));
    EXPECT_TRUE(has(diagnostics_of(minimal_head + "noise: yes\n"), 5, "simulation.noise"));
    EXPECT_TRUE(has(diagnostics_of(minimal_head + "paths: -3\n"), 5, "simulation.paths"));
    EXPECT_TRUE(has(diagnostics_of(minimal_head + "dt: inf\n"), 5, "simulation.dt"));
    EXPECT_TRUE(mentions(diagnostics_of(""), "version"));
}

TEST(Scenario, AnnualAndHourlyMustAgree) {
    const std::string asset =
        "[asset a]\ncategory: company\nM0: 1\nmodel.a: 0\nmodel.V: 0\n";
    EXPECT_TRUE(has(diagnostics_of(minimal_head + asset + "model.r_eq: 1e-4\nmodel.r_eq_annual: 0.5\n"),
                    11, "asset[a].model.r_eq_annual"));
    EXPECT_NO_THROW(parse_scenario(minimal_head + asset + "model.r_eq: 0.01\nmodel.r_eq_annual: 87.6\n"));
}

TEST(Scenario, CompanyNeedsARateSource) {
    const std::string text = minimal_head + "[asset a]\ncategory: company\nM0: 1\nmodel.a: 0\nmodel.V: 0\n";
    EXPECT_TRUE(has(diagnostics_of(text), 5, "asset[a].model.r_eq"));
}

TEST(Scenario, MarginInputsOnlyForCompanies) {
    const std::string text = minimal_head +
                             "[asset a]\ncategory: public_service\nTK: 10\nM0: 1\nroa_annual: 0.2\n"
                             "model.a: 0\nmodel.V: 0\n";
    EXPECT_TRUE(has(diagnostics_of(text), 9, "asset[a].roa_annual"));
}

TEST(Scenario, EffectiveWindow) {
    auto doc = parse_scenario(datacentre_scenario_text());
    EXPECT_EQ(effective_window(doc, doc.assets[0]), 48.0);
    doc.window = 6.0;
    EXPECT_EQ(effective_window(doc, doc.assets[0]), 6.0);
}

TEST(Scenario, DiagnosticText) {
    EXPECT_EQ(to_string(Diagnostic{3, "simulation.dt", "must be > 0"}),
              "line 3: simulation.dt: must be > 0");
    EXPECT_EQ(to_string(Diagnostic{0, "", "oops"}), "oops");
}
