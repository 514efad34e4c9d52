#pragma once

// Domain types shared by every dosimpact module.
//
// The canonical time unit is the hour. Every rate stored in these types is
// per hour; value rates of assets (turnover, contingent liabilities) are the
// only per-year quantities and are converted where they are consumed.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dosimpact {

inline constexpr double hours_per_year = 8760.0;
inline constexpr double hours_per_quarter = 2160.0;  // 90 days

/// Mean-reverting time preference: dr = a (r_eq - r) dt - V dW.
struct TimePreferenceModel {
    double a = 0.0;              // reversion intensity, 1/h
    double r_eq = 0.0;           // equilibrium time preference, 1/h
    double V = 0.0;              // volatility of r, 1/h
    double lambda_market = 0.0;  // market premium per unit risk (dK, dA drift)

    bool operator==(const TimePreferenceModel&) const = default;
};

/// Timed jump of magnitude S injected into the driver W.
struct AttackShock {
    double time = 0.0;  // hours since start of simulation
    double magnitude = 0.0;

    bool operator==(const AttackShock&) const = default;
};

enum class UsabilityKind { linear_decreasing, piecewise, brownian };

struct UsabilityKnot {
    double time = 0.0;   // hours since start of simulation
    double value = 0.0;  // WA at that time, in [0,1]

    bool operator==(const UsabilityKnot&) const = default;
};

/// Shape of the usability risk driver WA(t).
///
/// linear_decreasing: WA(t) = 1 - t/TK_ref, so dWA = -dt/TK_ref on every step.
/// piecewise: WA interpolated linearly between knots, flat outside them.
/// brownian: dWA is a Gaussian increment (zero when noise is disabled).
struct UsabilityProfile {
    UsabilityKind kind = UsabilityKind::linear_decreasing;
    double TK_ref = hours_per_quarter;
    double VA = 0.0;                // usability volatility, 1/h
    double lambda_usability = 0.0;  // usability premium, second Lambda of dA
    std::vector<UsabilityKnot> knots;

    bool operator==(const UsabilityProfile&) const = default;
};

enum class AssetCategory { public_service, company, shared_infrastructure, technology_provider };

/// How K(0) is chosen: hourly annuity of the capability value, or the value itself.
enum class InitialInvestment { annuity, total_value };

struct Asset {
    std::string id;
    AssetCategory category = AssetCategory::company;
    double M0 = 0.0;                     // EUR
    double rM = 0.0;                     // 1/h, may be negative
    double value_rate_own = 0.0;         // EUR/year
    double value_rate_contingent = 0.0;  // EUR/year
    double TK = hours_per_quarter;       // rebuild horizon, h
    TimePreferenceModel model;
    UsabilityProfile usability;
    double A0_post = 0.0;  // usability right after the attack

    // Explicit capability value over TK (EUR); replaces the rate-derived one.
    std::optional<double> capability_value;
    // r(0); defaults to model.r_eq.
    std::optional<double> r_initial;
    InitialInvestment K0_mode = InitialInvestment::annuity;

    bool operator==(const Asset&) const = default;
};

enum class UsabilityMode { multiplicative, linearized };

struct SimulationConfig {
    double dt = 1.0;       // h
    double horizon = 1.0;  // h
    std::size_t n_paths = 1;
    std::uint64_t seed = 0;
    UsabilityMode usability_mode = UsabilityMode::linearized;
    bool noise_enabled = true;
    double correlation = 0.0;     // rho between the W and WA drivers
    std::size_t output_every = 1;  // ensemble statistics on every n-th step

    bool operator==(const SimulationConfig&) const = default;
};

/// One violated invariant. `field` is a dotted path relative to the object checked.
struct Violation {
    std::string field;
    std::string message;

    bool operator==(const Violation&) const = default;
};

std::string to_string(const Violation& v);

double annual_rate_to_hourly(double r_annual);
double hourly_rate_to_annual(double r_hourly);

/// (value_rate_own + value_rate_contingent) as EUR per hour.
double hourly_value_rate(const Asset& asset);

/// Capability value over TK: the explicit override when present, otherwise
/// the value rates times TK/8760.
double total_capability_value(const Asset& asset);

std::vector<Violation> validate_asset(const Asset& asset);
std::vector<Violation> validate_config(const SimulationConfig& config);
std::vector<Violation> validate_shocks(std::span<const AttackShock> shocks,
                                       const SimulationConfig& config);

/// Integer number of steps in horizon/dt. Throws std::invalid_argument when
/// the config is invalid or horizon is not a whole number of steps.
std::size_t step_count(const SimulationConfig& config);

/// Index of the step whose interval [k dt, (k+1) dt) contains `time`.
std::size_t step_index_at(double time, double dt);

std::string_view to_string(AssetCategory category);
std::string_view to_string(UsabilityKind kind);
std::string_view to_string(UsabilityMode mode);
std::string_view to_string(InitialInvestment mode);

std::optional<AssetCategory> parse_asset_category(std::string_view text);
std::optional<UsabilityKind> parse_usability_kind(std::string_view text);
std::optional<UsabilityMode> parse_usability_mode(std::string_view text);
std::optional<InitialInvestment> parse_initial_investment(std::string_view text);

}  // namespace dosimpact
