#pragma once

// CSV and JSON result files.
//
// Numbers are written in their shortest round-tripping decimal form, so
// reading a file back gives the exact doubles that were written.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "dosimpact/ensemble.hpp"
#include "dosimpact/portfolio.hpp"

namespace dosimpact {

enum class OutputFormat { csv, json };

std::optional<OutputFormat> parse_output_format(std::string_view text);

inline constexpr int results_version = 1;

struct ResultsMeta {
    std::uint64_t seed = 0;
    double dt = 0.0;
    std::size_t n_paths = 0;
    std::string scenario;  // canonical scenario echo
};

struct AssetSeries {
    std::string asset_id;
    PathStatistics stats;
};

/// time_h,r_mean,r_var,M_mean,K_mean,A_mean,A_q05,A_q50,A_q95,dM_cum_mean
/// Quantile cells are empty when the statistics carry no quantiles.
std::string write_csv(const PathStatistics& stats);

/// {meta, series, damage_triple, claim_report}; series holds one entry per asset.
std::string write_json(const ResultsMeta& meta, std::span<const AssetSeries> series,
                       const ClaimReport& report);

/// A claim report on its own, as printed by `report`.
std::string write_claim_report(const ClaimReport& report);

/// Reads the claim report back from write_json or write_claim_report output.
/// Throws std::runtime_error on malformed input.
ClaimReport read_claim_report(std::string_view json);

}  // namespace dosimpact
