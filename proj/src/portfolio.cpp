#include "dosimpact/portfolio.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

#include "dosimpact/analytic.hpp"

namespace dosimpact {

namespace {

constexpr std::array<std::pair<std::string_view, CountermeasureKind>, 4> process_names{{
    {"dissuasive", CountermeasureKind::dissuasive},
    {"retaliation", CountermeasureKind::retaliation},
    {"compensation", CountermeasureKind::compensation},
    {"keep_silent", CountermeasureKind::keep_silent},
}};

std::string_view claim_basis(CountermeasureKind kind) {
    switch (kind) {
    case CountermeasureKind::dissuasive:
        return "announced claim, raised if an attack occurs";
    case CountermeasureKind::retaliation:
        return "claim against attacker assets";
    case CountermeasureKind::compensation:
        return "claim for court-based compensation";
    case CountermeasureKind::keep_silent:
        return "internal assessment only, nothing reported";
    }
    return "";
}

ComponentSummary summarize(std::vector<double> values) {
    ComponentSummary s;
    double sum = 0.0;
    for (const double v : values) {
        sum += v;
    }
    s.mean = sum / static_cast<double>(values.size());
    std::sort(values.begin(), values.end());
    s.median = sorted_quantile(values, 0.5);
    s.q95 = sorted_quantile(values, 0.95);
    return s;
}

class DamageObserver final : public PathObserver {
public:
    DamageObserver(DamageAccumulator acc, DamageTriple& out) : acc_(std::move(acc)), out_(out) {}

    void on_step(const StepRecord& record) override { acc_.observe(record); }
    void on_finish() override { out_ = acc_.result(); }

private:
    DamageAccumulator acc_;
    DamageTriple& out_;
};

}  // namespace

DamageAccumulator::DamageAccumulator(const Asset& asset, const SimulationConfig& config,
                                     std::optional<std::size_t> first_shock_step,
                                     double window)
    : dt_(config.dt), value_rate_hourly_(hourly_value_rate(asset)) {
    if (!first_shock_step) {
        throw std::invalid_argument(
            fmt::format("asset '{}': damage window is anchored at the first shock, "
                        "but the path has no shock",
                        asset.id));
    }
    if (!(window > 0.0) || !std::isfinite(window)) {
        throw std::invalid_argument(fmt::format("window must be > 0 (got {})", window));
    }
    const double ratio = window / config.dt;
    const double steps = std::round(ratio);
    if (std::abs(ratio - steps) > 1e-9 * std::max(1.0, steps)) {
        throw std::invalid_argument(
            fmt::format("window {} h is not a whole number of {} h steps", window, config.dt));
    }
    const std::size_t n_steps = step_count(config);
    begin_ = *first_shock_step;
    end_ = begin_ + static_cast<std::size_t>(steps);
    if (end_ > n_steps) {
        throw std::invalid_argument(fmt::format(
            "window {} h from the first shock at t = {} h exceeds the horizon {} h", window,
            static_cast<double>(begin_) * config.dt, config.horizon));
    }
    triple_.annuity_commitment = hourly_annuity(total_capability_value(asset), asset.TK) * asset.TK;
}

void DamageAccumulator::observe(const StepRecord& record) {
    if (record.step < begin_ || record.step >= end_) {
        return;
    }
    if (record.step == begin_) {
        triple_.initial_investment_step = record.dK;
    }
    triple_.short_term_monetary += record.dM;
    const double lost = 1.0 - 0.5 * (record.A_start + record.A);
    triple_.degraded_value += value_rate_hourly_ * lost * dt_;
}

DamageTriple DamageAccumulator::result() const {
    DamageTriple out = triple_;
    out.long_term_investment = out.initial_investment_step + out.annuity_commitment;
    return out;
}

double default_window(const Asset& asset, const SimulationConfig& config,
                      std::span<const AttackShock> shocks) {
    if (shocks.empty()) {
        return asset.TK;
    }
    const std::size_t n_steps = step_count(config);
    const std::size_t start = std::min(step_index_at(shocks.front().time, config.dt), n_steps - 1);
    const double remaining = static_cast<double>(n_steps - start) * config.dt;
    // TK may not be a whole number of steps; round it down to one.
    const double tk_steps = std::floor(asset.TK / config.dt + 1e-9);
    return std::min(std::max(tk_steps, 1.0) * config.dt, remaining);
}

DamageTriple damage_triple(const Trajectory& trajectory, const Asset& asset, double window) {
    SimulationConfig config;
    config.dt = trajectory.dt;
    config.horizon = static_cast<double>(trajectory.size()) * trajectory.dt;
    if (trajectory.size() == 0) {
        throw std::invalid_argument("damage_triple: empty trajectory");
    }
    DamageAccumulator acc(asset, config, trajectory.first_shock_step, window);
    for (std::size_t k = 0; k < trajectory.size(); ++k) {
        StepRecord rec;
        rec.step = k;
        rec.time = trajectory.times[k];
        rec.r = trajectory.r[k];
        rec.M = trajectory.M[k];
        rec.K = trajectory.K[k];
        rec.A = trajectory.A[k];
        rec.dM = trajectory.dM[k];
        const double K_prev = k == 0 ? trajectory.initial.K : trajectory.K[k - 1];
        rec.dK = rec.K - K_prev;
        rec.first_shock = trajectory.first_shock_step == k;
        rec.A_start = rec.first_shock ? asset.A0_post
                                      : (k == 0 ? trajectory.initial.A : trajectory.A[k - 1]);
        acc.observe(rec);
    }
    return acc.result();
}

DamageTriple aggregate_portfolio(std::span<const DamageTriple> triples) {
    DamageTriple sum;
    for (const auto& t : triples) {
        sum.short_term_monetary += t.short_term_monetary;
        sum.long_term_investment += t.long_term_investment;
        sum.degraded_value += t.degraded_value;
        sum.initial_investment_step += t.initial_investment_step;
        sum.annuity_commitment += t.annuity_commitment;
    }
    return sum;
}

DamageTriple mean_triple(std::span<const DamageTriple> per_path) {
    if (per_path.empty()) {
        return {};
    }
    DamageTriple mean = aggregate_portfolio(per_path);
    const double n = static_cast<double>(per_path.size());
    mean.short_term_monetary /= n;
    mean.long_term_investment /= n;
    mean.degraded_value /= n;
    mean.initial_investment_step /= n;
    mean.annuity_commitment /= n;
    return mean;
}

DamageSummary summarize_damages(std::span<const DamageTriple> per_path) {
    if (per_path.empty()) {
        throw std::invalid_argument("summarize_damages: no paths");
    }
    auto column = [&](auto&& get) {
        std::vector<double> v;
        v.reserve(per_path.size());
        for (const auto& t : per_path) {
            v.push_back(get(t));
        }
        return summarize(std::move(v));
    };
    DamageSummary s;
    s.short_term_monetary = column([](const DamageTriple& t) { return t.short_term_monetary; });
    s.long_term_investment = column([](const DamageTriple& t) { return t.long_term_investment; });
    s.degraded_value = column([](const DamageTriple& t) { return t.degraded_value; });
    s.total = column([](const DamageTriple& t) { return t.total(); });
    s.n_paths = per_path.size();
    return s;
}

AssetAssessment assess_asset(const Asset& asset, const SimulationConfig& config,
                             std::span<const AttackShock> shocks, double window,
                             const EnsembleOptions& options) {
    const std::optional<std::size_t> shock_step =
        shocks.empty() ? std::nullopt
                       : std::optional<std::size_t>(step_index_at(shocks.front().time, config.dt));
    // Validates the window once, before any path runs.
    const DamageAccumulator prototype(asset, config, shock_step, window);

    AssetAssessment out;
    out.per_path.resize(config.n_paths);
    EnsembleOptions opts = options;
    opts.observer = [&](std::size_t path) -> std::unique_ptr<PathObserver> {
        return std::make_unique<DamageObserver>(prototype, out.per_path[path]);
    };
    out.stats = simulate_ensemble(asset, config, shocks, opts);
    out.mean = mean_triple(out.per_path);
    out.summary = summarize_damages(out.per_path);
    return out;
}

std::string_view to_string(CountermeasureKind kind) {
    for (const auto& [name, k] : process_names) {
        if (k == kind) {
            return name;
        }
    }
    return "?";
}

std::optional<CountermeasureKind> parse_countermeasure(std::string_view text) {
    for (const auto& [name, k] : process_names) {
        if (name == text) {
            return k;
        }
    }
    return std::nullopt;
}

std::string_view countermeasure_kinds() {
    return "dissuasive, retaliation, compensation, keep_silent";
}

ClaimReport countermeasure_report(const DamageTriple& total, CountermeasureKind process) {
    ClaimReport report;
    report.process = process;
    report.total = total;
    report.internal_only = process == CountermeasureKind::keep_silent;
    if (!report.internal_only) {
        report.claim = total.total();
    }
    report.claim_basis = std::string(claim_basis(process));
    return report;
}

ClaimReport countermeasure_report(std::vector<AssetDamage> assets, CountermeasureKind process) {
    std::vector<DamageTriple> triples;
    triples.reserve(assets.size());
    for (const auto& a : assets) {
        triples.push_back(a.triple);
    }
    ClaimReport report = countermeasure_report(aggregate_portfolio(triples), process);
    report.assets = std::move(assets);
    return report;
}

}  // namespace dosimpact
