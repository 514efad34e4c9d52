#include "dosimpact/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

namespace dosimpact {

namespace {

constexpr double step_tolerance = 1e-9;

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(const std::array<std::pair<std::string_view, Enum>, N>& table,
                           std::string_view text) {
    for (const auto& [name, value] : table) {
        if (name == text) {
            return value;
        }
    }
    return std::nullopt;
}

template <typename Enum, std::size_t N>
std::string_view name_of(const std::array<std::pair<std::string_view, Enum>, N>& table,
                         Enum value) {
    for (const auto& [name, v] : table) {
        if (v == value) {
            return name;
        }
    }
    return "?";
}

constexpr std::array<std::pair<std::string_view, AssetCategory>, 4> category_names{{
    {"public_service", AssetCategory::public_service},
    {"company", AssetCategory::company},
    {"shared_infrastructure", AssetCategory::shared_infrastructure},
    {"technology_provider", AssetCategory::technology_provider},
}};

constexpr std::array<std::pair<std::string_view, UsabilityKind>, 3> kind_names{{
    {"linear_decreasing", UsabilityKind::linear_decreasing},
    {"piecewise", UsabilityKind::piecewise},
    {"brownian", UsabilityKind::brownian},
}};

constexpr std::array<std::pair<std::string_view, UsabilityMode>, 2> mode_names{{
    {"multiplicative", UsabilityMode::multiplicative},
    {"linearized", UsabilityMode::linearized},
}};

constexpr std::array<std::pair<std::string_view, InitialInvestment>, 2> investment_names{{
    {"annuity", InitialInvestment::annuity},
    {"total_value", InitialInvestment::total_value},
}};

class Checker {
public:
    explicit Checker(std::vector<Violation>& out) : out_(out) {}

    void finite(std::string_view field, double v) {
        if (!std::isfinite(v)) {
            add(field, fmt::format("must be finite (got {})", v));
        }
    }
    void at_least(std::string_view field, double v, double lo) {
        if (!std::isfinite(v) || v < lo) {
            add(field, fmt::format("must be >= {} (got {})", lo, v));
        }
    }
    void positive(std::string_view field, double v) {
        if (!std::isfinite(v) || v <= 0.0) {
            add(field, fmt::format("must be > 0 (got {})", v));
        }
    }
    void closed_unit(std::string_view field, double v) {
        if (!(v >= 0.0 && v <= 1.0)) {
            add(field, fmt::format("must lie in [0, 1] (got {})", v));
        }
    }
    void add(std::string_view field, std::string message) {
        out_.push_back({std::string(field), std::move(message)});
    }

private:
    std::vector<Violation>& out_;
};

}  // namespace

std::string to_string(const Violation& v) { return fmt::format("{}: {}", v.field, v.message); }

double annual_rate_to_hourly(double r_annual) { return r_annual / hours_per_year; }

double hourly_rate_to_annual(double r_hourly) { return r_hourly * hours_per_year; }

double hourly_value_rate(const Asset& asset) {
    return (asset.value_rate_own + asset.value_rate_contingent) / hours_per_year;
}

double total_capability_value(const Asset& asset) {
    if (asset.capability_value) {
        return *asset.capability_value;
    }
    return hourly_value_rate(asset) * asset.TK;
}

std::vector<Violation> validate_asset(const Asset& asset) {
    std::vector<Violation> out;
    Checker check(out);

    if (asset.id.empty()) {
        check.add("id", "must not be empty");
    }
    check.at_least("M0", asset.M0, 0.0);
    check.finite("rM", asset.rM);
    check.at_least("value_rate_own", asset.value_rate_own, 0.0);
    check.at_least("value_rate_contingent", asset.value_rate_contingent, 0.0);
    check.positive("TK", asset.TK);
    check.closed_unit("A0_post", asset.A0_post);
    if (asset.capability_value) {
        check.at_least("capability_value", *asset.capability_value, 0.0);
    }
    if (asset.r_initial) {
        check.closed_unit("r_initial", *asset.r_initial);
    }

    const auto& m = asset.model;
    check.at_least("model.a", m.a, 0.0);
    check.at_least("model.V", m.V, 0.0);
    check.at_least("model.lambda_market", m.lambda_market, 0.0);
    if (!(m.r_eq > 0.0 && m.r_eq < 1.0)) {
        check.add("model.r_eq", fmt::format("must lie in (0, 1) per hour (got {})", m.r_eq));
    }

    const auto& u = asset.usability;
    check.at_least("usability.VA", u.VA, 0.0);
    check.finite("usability.lambda_usability", u.lambda_usability);
    switch (u.kind) {
    case UsabilityKind::linear_decreasing:
        check.positive("usability.TK_ref", u.TK_ref);
        break;
    case UsabilityKind::piecewise:
        if (u.knots.empty()) {
            check.add("usability.knots", "piecewise profile needs at least one knot");
        }
        for (std::size_t i = 0; i < u.knots.size(); ++i) {
            const auto& k = u.knots[i];
            const auto field = fmt::format("usability.knots[{}]", i);
            check.at_least(field + ".time", k.time, 0.0);
            check.closed_unit(field + ".value", k.value);
            if (i > 0 && !(k.time > u.knots[i - 1].time)) {
                check.add(field + ".time", "knot times must be strictly increasing");
            }
        }
        break;
    case UsabilityKind::brownian:
        break;
    }
    return out;
}

std::vector<Violation> validate_config(const SimulationConfig& config) {
    std::vector<Violation> out;
    Checker check(out);
    check.positive("dt", config.dt);
    if (!(std::isfinite(config.horizon) && config.horizon >= config.dt)) {
        check.add("horizon", fmt::format("must be finite and >= dt (got {})", config.horizon));
    }
    if (config.n_paths == 0) {
        check.add("paths", "must be at least 1");
    }
    if (!(config.correlation >= -1.0 && config.correlation <= 1.0)) {
        check.add("correlation", fmt::format("must lie in [-1, 1] (got {})", config.correlation));
    }
    if (config.output_every == 0) {
        check.add("output_every", "must be at least 1");
    }
    if (!out.empty()) {
        return out;
    }

    const double ratio = config.horizon / config.dt;
    const double steps = std::round(ratio);
    if (std::abs(ratio - steps) > step_tolerance * std::max(1.0, steps)) {
        check.add("horizon", fmt::format("{} h is not a whole number of {} h steps",
                                         config.horizon, config.dt));
    } else if (static_cast<std::size_t>(steps) % config.output_every != 0) {
        check.add("output_every", fmt::format("must divide the step count {}", steps));
    }
    return out;
}

std::vector<Violation> validate_shocks(std::span<const AttackShock> shocks,
                                       const SimulationConfig& config) {
    std::vector<Violation> out;
    Checker check(out);
    for (std::size_t i = 0; i < shocks.size(); ++i) {
        const auto field = fmt::format("shocks[{}]", i);
        const auto& s = shocks[i];
        check.at_least(field + ".magnitude", s.magnitude, 0.0);
        if (!(s.time >= 0.0 && s.time < config.horizon)) {
            check.add(field + ".time", fmt::format("must lie in [0, horizon = {}) (got {})",
                                                   config.horizon, s.time));
        }
        if (i > 0 && s.time < shocks[i - 1].time) {
            check.add(field + ".time", "shocks must be sorted by time");
        }
    }
    return out;
}

std::size_t step_count(const SimulationConfig& config) {
    const auto violations = validate_config(config);
    if (!violations.empty()) {
        throw std::invalid_argument("invalid simulation config: " + to_string(violations.front()));
    }
    return static_cast<std::size_t>(std::round(config.horizon / config.dt));
}

std::size_t step_index_at(double time, double dt) {
    return static_cast<std::size_t>(std::floor(time / dt + step_tolerance));
}

std::string_view to_string(AssetCategory category) { return name_of(category_names, category); }
std::string_view to_string(UsabilityKind kind) { return name_of(kind_names, kind); }
std::string_view to_string(UsabilityMode mode) { return name_of(mode_names, mode); }
std::string_view to_string(InitialInvestment mode) { return name_of(investment_names, mode); }

std::optional<AssetCategory> parse_asset_category(std::string_view text) {
    return lookup(category_names, text);
}
std::optional<UsabilityKind> parse_usability_kind(std::string_view text) {
    return lookup(kind_names, text);
}
std::optional<UsabilityMode> parse_usability_mode(std::string_view text) {
    return lookup(mode_names, text);
}
std::optional<InitialInvestment> parse_initial_investment(std::string_view text) {
    return lookup(investment_names, text);
}

}  // namespace dosimpact
