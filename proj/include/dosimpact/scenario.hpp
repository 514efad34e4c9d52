#pragma once

// Scenario files and category presets.
//
// The file format is a versioned, line-oriented key tree; docs/scenario-format.md
// has the grammar and the full key list. Parsing applies the category preset
// first and explicit keys second, then validates the result. Unknown keys are
// errors.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dosimpact/model.hpp"
#include "dosimpact/portfolio.hpp"

namespace dosimpact {

struct ScenarioAsset {
    Asset asset;
    std::vector<AttackShock> shocks;  // sorted by time

    bool operator==(const ScenarioAsset&) const = default;
};

struct ScenarioDocument {
    int version = 1;
    std::vector<ScenarioAsset> assets;  // file order
    SimulationConfig config;
    CountermeasureKind process = CountermeasureKind::compensation;
    std::optional<double> window;  // h; default per asset is default_window()

    bool operator==(const ScenarioDocument&) const = default;
};

struct Diagnostic {
    std::size_t line = 0;  // 1-based; 0 when not tied to a line
    std::string field;
    std::string message;
};

std::string to_string(const Diagnostic& d);

class ScenarioError : public std::runtime_error {
public:
    explicit ScenarioError(std::vector<Diagnostic> diagnostics);

    const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

private:
    std::vector<Diagnostic> diagnostics_;
};

enum class TimePreferenceRule {
    judgment_default,   // preset carries a judgment value
    max_roa_margin,     // max(return on assets, operational margin)
    explicit_required,  // user must state r_eq
};

struct CategoryPreset {
    AssetCategory category = AssetCategory::company;
    TimePreferenceRule r_eq_rule = TimePreferenceRule::explicit_required;
    std::string r_eq_policy;
    std::optional<double> r_eq_annual_default;
    bool r_eq_is_judgment = false;
    std::optional<double> TK_default;
    double lambda_market_default = 0.0;
    double lambda_usability_default = 0.0;
    bool continuity_obligation = false;  // service continuity mandated by law: high priority
    bool requires_confirmation = false;  // no default; the value must be confirmed in the file
    std::string notes;
};

CategoryPreset category_preset(AssetCategory category);

/// Throws std::invalid_argument naming the four valid kinds.
CategoryPreset category_preset(std::string_view category);

/// Annual equilibrium rate from the company rule: the larger of the two.
double company_r_eq_annual(double return_on_assets, double operational_margin);

/// Throws ScenarioError with every located problem found.
ScenarioDocument parse_scenario(std::string_view text);

/// Canonical text of a document; parse_scenario(echo_scenario(d)) == d.
std::string echo_scenario(const ScenarioDocument& doc);

/// Window for one asset: the document's window when set, else default_window().
double effective_window(const ScenarioDocument& doc, const ScenarioAsset& entry);

/// The embedded data-centre example scenario.
std::string_view datacentre_scenario_text();

}  // namespace dosimpact
