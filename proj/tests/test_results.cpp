#include <gtest/gtest.h>

#include <json.hpp>

#include "cli.hpp"
#include "dosimpact/results.hpp"
#include "dosimpact/scenario.hpp"

using namespace dosimpact;
using nlohmann::json;

namespace {

ScenarioDocument datacentre_doc() { return parse_scenario(datacentre_scenario_text()); }

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        const auto nl = s.find('\n', pos);
        out.push_back(s.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return out;
}

}  // namespace

TEST(Results, CsvShape) {
    auto doc = datacentre_doc();
    doc.config.n_paths = 1;
    doc.config.horizon = 2.0;
    doc.config.noise_enabled = false;
    const auto& e = doc.assets[0];
    const auto stats = simulate_ensemble(e.asset, doc.config, e.shocks);
    const auto csv = write_csv(stats);
    EXPECT_EQ(csv, write_csv(simulate_ensemble(e.asset, doc.config, e.shocks)));
    ASSERT_EQ(csv.back(), '\n');
    EXPECT_EQ(csv.find('\r'), std::string::npos);
    const auto rows = lines_of(csv);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0], "time_h,r_mean,r_var,M_mean,K_mean,A_mean,A_q05,A_q50,A_q95,dM_cum_mean");
    EXPECT_EQ(rows[1].substr(0, 21), "1,1,0,19999524,472262");
    EXPECT_EQ(std::count(rows[1].begin(), rows[1].end(), ','), 9);
}

TEST(Results, CsvWithoutQuantilesLeavesCellsEmpty) {
    auto doc = datacentre_doc();
    doc.config.horizon = 2.0;
    doc.config.n_paths = 3;
    const auto& e = doc.assets[0];
    const auto stats = simulate_ensemble(e.asset, doc.config, e.shocks, {.quantiles = false});
    const auto rows = lines_of(write_csv(stats));
    EXPECT_NE(rows[1].find(",,,"), std::string::npos);
}

TEST(Results, JsonSchemaAndExactNumbers) {
    const auto doc = datacentre_doc();
    const auto run = cli::run_scenario(doc, 2);
    const auto text = write_json(run.meta, run.series, run.report);
    const auto j = json::parse(text);
    EXPECT_EQ(j.at("meta").at("seed"), 42);
    EXPECT_EQ(j.at("meta").at("n_paths"), 1000);
    EXPECT_EQ(j.at("meta").at("dt"), 1.0);
    EXPECT_EQ(j.at("meta").at("version"), 1);
    const auto& series = j.at("series").at(0);
    EXPECT_EQ(series.at("asset_id"), "datacentre");
    const auto& stats = run.series[0].stats;
    for (std::size_t i = 0; i < stats.times.size(); ++i) {
        ASSERT_EQ(series.at("r_mean").at(i).get<double>(), stats.r.mean[i]);
        ASSERT_EQ(series.at("K_mean").at(i).get<double>(), stats.K.mean[i]);
        ASSERT_EQ(series.at("A_q95").at(i).get<double>(), stats.A.q95[i]);
    }
    EXPECT_EQ(j.at("damage_triple").at("total").get<double>(), run.report.total.total());
    EXPECT_EQ(j.at("claim_report").at("claim").get<double>(), *run.report.claim);
}

TEST(Results, EmbeddedScenarioEchoReparses) {
    auto doc = datacentre_doc();
    doc.config.n_paths = 10;
    doc.window = 3.0;
    const auto run = cli::run_scenario(doc);
    const auto j = json::parse(write_json(run.meta, run.series, run.report));
    EXPECT_EQ(parse_scenario(j.at("meta").at("scenario").get<std::string>()), doc);
}

TEST(Results, ShortTermMonetaryOfFirstHour) {
    auto doc = datacentre_doc();
    doc.config.noise_enabled = false;
    doc.config.n_paths = 1;
    doc.window = 1.0;
    const auto run = cli::run_scenario(doc);
    const auto j = json::parse(write_json(run.meta, run.series, run.report));
    EXPECT_NEAR(j.at("damage_triple").at("short_term_monetary").get<double>(), 9999524.0, 1e-6);
}

TEST(Results, ClaimReportRoundTrip) {
    auto doc = datacentre_doc();
    doc.config.n_paths = 20;
    for (const auto k : {CountermeasureKind::retaliation, CountermeasureKind::keep_silent}) {
        doc.process = k;
        const auto run = cli::run_scenario(doc);
        EXPECT_EQ(read_claim_report(write_json(run.meta, run.series, run.report)), run.report);
        EXPECT_EQ(read_claim_report(write_claim_report(run.report)), run.report);
        const auto j = json::parse(write_claim_report(run.report));
        EXPECT_EQ(j.at("claim_report").contains("claim"), k != CountermeasureKind::keep_silent);
    }
}

TEST(Results, MalformedClaimReport) {
    EXPECT_THROW(read_claim_report("{"), std::runtime_error);
    EXPECT_THROW(read_claim_report(R"({"claim_report": {"process": "bribe"}})"), std::runtime_error);
}

TEST(Results, OutputFormatNames) {
    EXPECT_EQ(parse_output_format("csv"), OutputFormat::csv);
    EXPECT_EQ(parse_output_format("json"), OutputFormat::json);
    EXPECT_FALSE(parse_output_format("xml"));
}
