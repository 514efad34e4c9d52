#include "dosimpact/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "dosimpact/analytic.hpp"

namespace dosimpact {

namespace {

double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

// WA(t) for a piecewise profile: linear between knots, flat outside.
double piecewise_value(std::span<const UsabilityKnot> knots, double t) {
    if (t <= knots.front().time) {
        return knots.front().value;
    }
    if (t >= knots.back().time) {
        return knots.back().value;
    }
    const auto hi = std::upper_bound(knots.begin(), knots.end(), t,
                                     [](double x, const UsabilityKnot& k) { return x < k.time; });
    const auto lo = hi - 1;
    const double w = (t - lo->time) / (hi->time - lo->time);
    return lo->value + w * (hi->value - lo->value);
}

double drift_K(double r, double dW, const TimePreferenceModel& model, double beta, double dt) {
    return r * dt + model.V * beta * (dW + model.lambda_market * dt);
}

double step_K_with_beta(double K_prev, double r, double dW, const TimePreferenceModel& model,
                        double beta, double dt) {
    return std::max(0.0, K_prev * (1.0 + drift_K(r, dW, model, beta, dt)));
}

void require_positive_dt(double dt, const char* who) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument(fmt::format("{}: dt must be > 0 (got {})", who, dt));
    }
}

}  // namespace

DriverStream::DriverStream(const SimulationConfig& config, std::span<const AttackShock> shocks,
                           const UsabilityProfile& usability, std::uint64_t path_index)
    : config_(config),
      usability_(usability),
      n_steps_(step_count(config)),
      normal_(path_stream_seed(config.seed, path_index)) {
    const auto violations = validate_shocks(shocks, config);
    if (!violations.empty()) {
        throw std::invalid_argument("invalid shocks: " + to_string(violations.front()));
    }
    for (const auto& s : shocks) {
        const std::size_t k = std::min(step_index_at(s.time, config.dt), n_steps_ - 1);
        if (!jumps_.empty() && jumps_.back().first == k) {
            jumps_.back().second += s.magnitude;
        } else {
            jumps_.emplace_back(k, s.magnitude);
        }
    }
    sqrt_dt_ = std::sqrt(config.dt);
    rho_perp_ = std::sqrt(std::max(0.0, 1.0 - config.correlation * config.correlation));
}

double DriverStream::profile_increment(std::size_t k) const {
    switch (usability_.kind) {
    case UsabilityKind::linear_decreasing:
        return -config_.dt / usability_.TK_ref;
    case UsabilityKind::piecewise: {
        const double t0 = static_cast<double>(k) * config_.dt;
        const double t1 = static_cast<double>(k + 1) * config_.dt;
        return piecewise_value(usability_.knots, t1) - piecewise_value(usability_.knots, t0);
    }
    case UsabilityKind::brownian:
        return 0.0;
    }
    return 0.0;
}

DriverStream::Step DriverStream::next() {
    if (k_ >= n_steps_) {
        throw std::out_of_range("DriverStream: no steps left");
    }
    Step s;
    if (next_jump_ < jumps_.size() && jumps_[next_jump_].first == k_) {
        s.jump = -jumps_[next_jump_].second;
        ++next_jump_;
    }
    s.dWA = profile_increment(k_);
    if (config_.noise_enabled) {
        const double z1 = normal_();
        s.dW = sqrt_dt_ * z1;
        if (usability_.kind == UsabilityKind::brownian) {
            const double z2 = normal_();
            s.dWA += sqrt_dt_ * (config_.correlation * z1 + rho_perp_ * z2);
        }
    }
    s.dW += s.jump;
    ++k_;
    return s;
}

DriverIncrements make_increments(const SimulationConfig& config,
                                 std::span<const AttackShock> shocks,
                                 const UsabilityProfile& usability, std::uint64_t path_index) {
    DriverStream stream(config, shocks, usability, path_index);
    DriverIncrements out;
    out.dW.reserve(stream.steps());
    out.dW_jump.reserve(stream.steps());
    out.dWA.reserve(stream.steps());
    while (stream.position() < stream.steps()) {
        const auto s = stream.next();
        out.dW.push_back(s.dW);
        out.dW_jump.push_back(s.jump);
        out.dWA.push_back(s.dWA);
    }
    return out;
}

double step_r(double r_prev, double dW_step, const TimePreferenceModel& model, double dt) {
    return clamp_unit(r_prev + model.a * (model.r_eq - r_prev) * dt - model.V * dW_step);
}

MonetaryStep step_M(double M_prev, double r, double rM, double dt) {
    const double dM = deterministic_dM(M_prev, r, rM, dt);
    return {M_prev + dM, dM};
}

double step_K(double K_prev, double r, double dW_step, const TimePreferenceModel& model,
              double TK, double dt) {
    require_positive_dt(dt, "step_K");
    return step_K_with_beta(K_prev, r, dW_step, model, beta_k(model.a, TK), dt);
}

double step_A(double A_prev, double r, double dW_step, double dWA_step,
              const TimePreferenceModel& model, const UsabilityProfile& usability,
              UsabilityMode mode, double dt) {
    require_positive_dt(dt, "step_A");
    const double drift = r * dt + model.V * (dW_step + model.lambda_market * dt) +
                         usability.VA * (dWA_step + usability.lambda_usability * dt);
    if (mode == UsabilityMode::multiplicative) {
        return clamp_unit(A_prev * (1.0 + drift));
    }
    return clamp_unit(A_prev + drift);
}

double initial_investment(const Asset& asset) {
    const double total = total_capability_value(asset);
    return asset.K0_mode == InitialInvestment::annuity ? hourly_annuity(total, asset.TK) : total;
}

PathIntegrator::PathIntegrator(const Asset& asset, const SimulationConfig& config,
                               std::span<const AttackShock> shocks, std::uint64_t path_index)
    : asset_(asset),
      config_(config),
      drivers_(config, shocks, asset.usability, path_index) {
    if (const auto v = validate_asset(asset); !v.empty()) {
        throw std::invalid_argument(
            fmt::format("invalid asset '{}': {}", asset.id, to_string(v.front())));
    }
    beta_ = beta_k(asset.model.a, asset.TK);
    state_.r = asset.r_initial.value_or(asset.model.r_eq);
    state_.M = asset.M0;
    state_.K = initial_investment(asset);
    state_.A = 1.0;
    if (!shocks.empty()) {
        first_shock_time_ = shocks.front().time;
        first_shock_step_ = std::min(step_index_at(shocks.front().time, config.dt),
                                     drivers_.steps() - 1);
    }
}

StepRecord PathIntegrator::advance() {
    const std::size_t k = drivers_.position();
    const auto d = drivers_.next();
    const double dt = config_.dt;
    const auto& model = asset_.model;
    const double diffusion = d.dW - d.jump;

    StepRecord rec;
    rec.step = k;
    rec.time = static_cast<double>(k + 1) * dt;
    rec.first_shock = first_shock_step_ && *first_shock_step_ == k;

    rec.r = step_r(state_.r, d.dW, model, dt);
    const auto m = step_M(state_.M, rec.r, asset_.rM, dt);
    rec.M = m.M_next;
    rec.dM = m.dM;
    rec.K = step_K_with_beta(state_.K, rec.r, diffusion, model, beta_, dt);
    rec.dK = rec.K - state_.K;
    rec.A_start = rec.first_shock ? asset_.A0_post : state_.A;
    rec.A = step_A(rec.A_start, rec.r, diffusion, d.dWA, model, asset_.usability,
                   config_.usability_mode, dt);

    if (!std::isfinite(rec.M) || !std::isfinite(rec.K)) {
        throw std::overflow_error(fmt::format(
            "asset '{}': monetary quantities overflowed at t = {} h; shorten the horizon",
            asset_.id, rec.time));
    }
    state_ = {rec.r, rec.M, rec.K, rec.A};
    return rec;
}

Trajectory simulate_path(const Asset& asset, const SimulationConfig& config,
                         std::span<const AttackShock> shocks, std::uint64_t path_index) {
    PathIntegrator path(asset, config, shocks, path_index);
    Trajectory out;
    out.initial = path.state();
    out.dt = config.dt;
    out.first_shock_step = path.first_shock_step();
    out.first_shock_time = path.first_shock_time();

    const std::size_t n = path.steps();
    for (auto* series : {&out.times, &out.r, &out.M, &out.K, &out.A, &out.dM, &out.dM_cumulative}) {
        series->reserve(n);
    }
    double cumulative = 0.0;
    while (!path.done()) {
        const auto rec = path.advance();
        cumulative += rec.dM;
        out.times.push_back(rec.time);
        out.r.push_back(rec.r);
        out.M.push_back(rec.M);
        out.K.push_back(rec.K);
        out.A.push_back(rec.A);
        out.dM.push_back(rec.dM);
        out.dM_cumulative.push_back(cumulative);
    }
    return out;
}

}  // namespace dosimpact
