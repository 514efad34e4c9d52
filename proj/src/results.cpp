#include "dosimpact/results.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

namespace dosimpact {

namespace {

using nlohmann::ordered_json;

std::string cell(const std::vector<double>& v, std::size_t i) {
    return i < v.size() ? fmt::format("{}", v[i]) : std::string();
}

ordered_json triple_json(const DamageTriple& t) {
    return {
        {"short_term_monetary", t.short_term_monetary},
        {"long_term_investment", t.long_term_investment},
        {"initial_investment_step", t.initial_investment_step},
        {"annuity_commitment", t.annuity_commitment},
        {"degraded_value", t.degraded_value},
        {"total", t.total()},
    };
}

DamageTriple triple_from(const ordered_json& j) {
    DamageTriple t;
    t.short_term_monetary = j.at("short_term_monetary").get<double>();
    t.long_term_investment = j.at("long_term_investment").get<double>();
    t.initial_investment_step = j.at("initial_investment_step").get<double>();
    t.annuity_commitment = j.at("annuity_commitment").get<double>();
    t.degraded_value = j.at("degraded_value").get<double>();
    return t;
}

ordered_json component_json(const ComponentSummary& c) {
    return {{"mean", c.mean}, {"median", c.median}, {"q95", c.q95}};
}

ComponentSummary component_from(const ordered_json& j) {
    return {j.at("mean").get<double>(), j.at("median").get<double>(), j.at("q95").get<double>()};
}

ordered_json summary_json(const DamageSummary& s) {
    return {
        {"n_paths", s.n_paths},
        {"short_term_monetary", component_json(s.short_term_monetary)},
        {"long_term_investment", component_json(s.long_term_investment)},
        {"degraded_value", component_json(s.degraded_value)},
        {"total", component_json(s.total)},
    };
}

DamageSummary summary_from(const ordered_json& j) {
    DamageSummary s;
    s.n_paths = j.at("n_paths").get<std::size_t>();
    s.short_term_monetary = component_from(j.at("short_term_monetary"));
    s.long_term_investment = component_from(j.at("long_term_investment"));
    s.degraded_value = component_from(j.at("degraded_value"));
    s.total = component_from(j.at("total"));
    return s;
}

ordered_json claim_json(const ClaimReport& r) {
    ordered_json j;
    j["process"] = std::string(to_string(r.process));
    j["internal_only"] = r.internal_only;
    j["claim_basis"] = r.claim_basis;
    if (r.claim) {
        j["claim"] = *r.claim;
    }
    j["total"] = triple_json(r.total);
    if (r.distribution) {
        j["distribution"] = summary_json(*r.distribution);
    }
    ordered_json assets = ordered_json::array();
    for (const auto& a : r.assets) {
        ordered_json entry{{"asset_id", a.asset_id}, {"damage_triple", triple_json(a.triple)}};
        if (a.distribution) {
            entry["distribution"] = summary_json(*a.distribution);
        }
        assets.push_back(std::move(entry));
    }
    j["assets"] = std::move(assets);
    return j;
}

ordered_json series_json(const AssetSeries& s) {
    const auto& st = s.stats;
    const auto& hr = st.half_restoration;
    ordered_json half{{"reached", hr.hours.size()}, {"never", hr.never}};
    if (!hr.hours.empty()) {
        std::vector<double> sorted = hr.hours;
        std::sort(sorted.begin(), sorted.end());
        double sum = 0.0;
        for (const double h : hr.hours) {
            sum += h;
        }
        half["mean_h"] = sum / static_cast<double>(hr.hours.size());
        half["median_h"] = sorted_quantile(sorted, 0.5);
    }
    ordered_json j{
        {"asset_id", s.asset_id},
        {"time_h", st.times},
        {"r_mean", st.r.mean},
        {"r_var", st.r.variance},
        {"M_mean", st.M.mean},
        {"K_mean", st.K.mean},
        {"A_mean", st.A.mean},
    };
    if (st.has_quantiles) {
        j["A_q05"] = st.A.q05;
        j["A_q50"] = st.A.q50;
        j["A_q95"] = st.A.q95;
    }
    j["dM_cum_mean"] = st.dM_cumulative_mean;
    j["half_restoration"] = std::move(half);
    return j;
}

}  // namespace

std::optional<OutputFormat> parse_output_format(std::string_view text) {
    if (text == "csv") {
        return OutputFormat::csv;
    }
    if (text == "json") {
        return OutputFormat::json;
    }
    return std::nullopt;
}

std::string write_csv(const PathStatistics& s) {
    std::string out = "time_h,r_mean,r_var,M_mean,K_mean,A_mean,A_q05,A_q50,A_q95,dM_cum_mean\n";
    for (std::size_t i = 0; i < s.times.size(); ++i) {
        out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", s.times[i], s.r.mean[i],
                           s.r.variance[i], s.M.mean[i], s.K.mean[i], s.A.mean[i],
                           cell(s.A.q05, i), cell(s.A.q50, i), cell(s.A.q95, i),
                           s.dM_cumulative_mean[i]);
    }
    return out;
}

std::string write_json(const ResultsMeta& meta, std::span<const AssetSeries> series,
                       const ClaimReport& report) {
    ordered_json series_list = ordered_json::array();
    for (const auto& s : series) {
        series_list.push_back(series_json(s));
    }
    const ordered_json doc{
        {"meta",
         {{"version", results_version},
          {"seed", meta.seed},
          {"dt", meta.dt},
          {"n_paths", meta.n_paths},
          {"scenario", meta.scenario}}},
        {"series", std::move(series_list)},
        {"damage_triple", triple_json(report.total)},
        {"claim_report", claim_json(report)},
    };
    return doc.dump(2) + "\n";
}

std::string write_claim_report(const ClaimReport& report) {
    return ordered_json{{"claim_report", claim_json(report)}}.dump(2) + "\n";
}

ClaimReport read_claim_report(std::string_view text) {
    try {
        const auto doc = ordered_json::parse(text.begin(), text.end());
        const auto& j = doc.at("claim_report");
        ClaimReport r;
        const auto process = parse_countermeasure(j.at("process").get<std::string>());
        if (!process) {
            throw std::runtime_error(
                fmt::format("claim_report.process: unknown kind '{}'; expected one of: {}",
                            j.at("process").get<std::string>(), countermeasure_kinds()));
        }
        r.process = *process;
        r.internal_only = j.at("internal_only").get<bool>();
        r.claim_basis = j.at("claim_basis").get<std::string>();
        if (j.contains("claim")) {
            r.claim = j.at("claim").get<double>();
        }
        r.total = triple_from(j.at("total"));
        if (j.contains("distribution")) {
            r.distribution = summary_from(j.at("distribution"));
        }
        for (const auto& a : j.at("assets")) {
            AssetDamage d;
            d.asset_id = a.at("asset_id").get<std::string>();
            d.triple = triple_from(a.at("damage_triple"));
            if (a.contains("distribution")) {
                d.distribution = summary_from(a.at("distribution"));
            }
            r.assets.push_back(std::move(d));
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(fmt::format("malformed results file: {}", e.what()));
    }
}

}  // namespace dosimpact
