#pragma once

// Damage scaling of simulated assets and counter-measure claim reports.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dosimpact/ensemble.hpp"
#include "dosimpact/model.hpp"
#include "dosimpact/stochastic.hpp"

namespace dosimpact {

/// The three damage dimensions of one asset (or a portfolio), in EUR.
struct DamageTriple {
    double short_term_monetary = 0.0;   // sum of dM over the window
    double long_term_investment = 0.0;  // initial_investment_step + annuity_commitment
    double degraded_value = 0.0;        // lost usable value over the window
    double initial_investment_step = 0.0;  // dK of the first post-shock step
    double annuity_commitment = 0.0;       // hourly annuity times TK

    double total() const { return short_term_monetary + long_term_investment + degraded_value; }
    bool operator==(const DamageTriple&) const = default;
};

/// Streaming evaluation of a DamageTriple over a shock-anchored window.
///
/// The window covers the steps [s, s + w) where s is the first shock step and
/// w = window/dt. Degraded value uses the trapezoidal rule on A, with the
/// left end of the shock step at A0_post.
class DamageAccumulator {
public:
    DamageAccumulator(const Asset& asset, const SimulationConfig& config,
                      std::optional<std::size_t> first_shock_step, double window);

    void observe(const StepRecord& record);
    DamageTriple result() const;

private:
    std::size_t begin_ = 0;
    std::size_t end_ = 0;
    double dt_ = 0.0;
    double value_rate_hourly_ = 0.0;
    DamageTriple triple_;
};

/// Window used when none is given: TK, clipped to the end of the horizon.
double default_window(const Asset& asset, const SimulationConfig& config,
                      std::span<const AttackShock> shocks);

DamageTriple damage_triple(const Trajectory& trajectory, const Asset& asset, double window);

/// Componentwise sum in input order.
DamageTriple aggregate_portfolio(std::span<const DamageTriple> triples);

struct ComponentSummary {
    double mean = 0.0;
    double median = 0.0;
    double q95 = 0.0;

    bool operator==(const ComponentSummary&) const = default;
};

/// Distribution of per-path damages.
struct DamageSummary {
    ComponentSummary short_term_monetary;
    ComponentSummary long_term_investment;
    ComponentSummary degraded_value;
    ComponentSummary total;
    std::size_t n_paths = 0;

    bool operator==(const DamageSummary&) const = default;
};

DamageSummary summarize_damages(std::span<const DamageTriple> per_path);

/// Componentwise mean in path order.
DamageTriple mean_triple(std::span<const DamageTriple> per_path);

struct AssetAssessment {
    PathStatistics stats;
    std::vector<DamageTriple> per_path;
    DamageTriple mean;
    DamageSummary summary;
};

/// Runs the ensemble and evaluates every path's damage over the window.
/// options.observer is ignored; the damage evaluation installs its own.
AssetAssessment assess_asset(const Asset& asset, const SimulationConfig& config,
                             std::span<const AttackShock> shocks, double window,
                             const EnsembleOptions& options = {});

enum class CountermeasureKind { dissuasive, retaliation, compensation, keep_silent };

std::string_view to_string(CountermeasureKind kind);
std::optional<CountermeasureKind> parse_countermeasure(std::string_view text);
/// "dissuasive, retaliation, compensation, keep_silent"
std::string_view countermeasure_kinds();

struct AssetDamage {
    std::string asset_id;
    DamageTriple triple;
    std::optional<DamageSummary> distribution;

    bool operator==(const AssetDamage&) const = default;
};

struct ClaimReport {
    CountermeasureKind process = CountermeasureKind::compensation;
    std::vector<AssetDamage> assets;
    DamageTriple total;
    std::optional<double> claim;  // absent for keep_silent
    bool internal_only = false;
    std::string claim_basis;
    std::optional<DamageSummary> distribution;  // per-path portfolio totals

    bool operator==(const ClaimReport&) const = default;
};

/// Claim equals total.total() for the three external processes; keep_silent
/// keeps the figures internal and carries no claim.
ClaimReport countermeasure_report(const DamageTriple& total, CountermeasureKind process);

/// Report over named per-asset triples; the total is their sum in the given order.
ClaimReport countermeasure_report(std::vector<AssetDamage> assets, CountermeasureKind process);

}  // namespace dosimpact
