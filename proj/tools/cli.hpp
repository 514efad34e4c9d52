#pragma once

// The dosimpact command line, callable in-process.

#include <iosfwd>
#include <string>
#include <vector>

#include "dosimpact/results.hpp"
#include "dosimpact/scenario.hpp"

namespace dosimpact::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 2,
    exit_invalid = 3,  // parse or validation failure, including numeric overflow
    exit_io = 4,
};

struct ScenarioRun {
    ResultsMeta meta;
    std::vector<AssetSeries> series;
    ClaimReport report;
};

/// Simulates every asset of the document and builds the claim report for
/// doc.process. Asset i uses seed doc.config.seed + i.
ScenarioRun run_scenario(const ScenarioDocument& doc, unsigned threads = 0);

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dosimpact::cli
