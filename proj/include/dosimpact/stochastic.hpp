#pragma once

// Euler–Maruyama integration of the coupled time preference (r), short-term
// monetary mass (M), long-term investment (K) and usability (A) processes.
//
// Step k (0-based) covers [k dt, (k+1) dt); its results are sampled at
// t = (k+1) dt. An attack shock of magnitude S at time t lands in the step
// containing t and contributes -S to dW, which raises r by V S. The jump only
// drives r: M, K and A feel the attack through r and, for A, through the
// A0_post replacement made at the instant of the first shock.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dosimpact/model.hpp"
#include "dosimpact/random.hpp"

namespace dosimpact {

struct DriverIncrements {
    std::vector<double> dW;       // time-preference driver, jumps included
    std::vector<double> dW_jump;  // shock part of dW (-S at shock steps, else 0)
    std::vector<double> dWA;      // usability driver
};

/// Sequential source of driver increments for one path.
class DriverStream {
public:
    struct Step {
        double dW = 0.0;
        double jump = 0.0;
        double dWA = 0.0;
    };

    DriverStream(const SimulationConfig& config, std::span<const AttackShock> shocks,
                 const UsabilityProfile& usability, std::uint64_t path_index);

    Step next();
    std::size_t steps() const { return n_steps_; }
    std::size_t position() const { return k_; }

private:
    double profile_increment(std::size_t k) const;

    SimulationConfig config_;
    UsabilityProfile usability_;
    std::size_t n_steps_ = 0;
    std::size_t k_ = 0;
    std::vector<std::pair<std::size_t, double>> jumps_;  // (step, total magnitude)
    std::size_t next_jump_ = 0;
    double sqrt_dt_ = 0.0;
    double rho_perp_ = 1.0;
    NormalStream normal_;
};

/// Throws std::invalid_argument for unsorted or out-of-horizon shocks.
DriverIncrements make_increments(const SimulationConfig& config,
                                 std::span<const AttackShock> shocks,
                                 const UsabilityProfile& usability, std::uint64_t path_index);

double step_r(double r_prev, double dW_step, const TimePreferenceModel& model, double dt);

struct MonetaryStep {
    double M_next = 0.0;
    double dM = 0.0;
};
MonetaryStep step_M(double M_prev, double r, double rM, double dt);

/// K_prev (1 + r dt + V beta_k(a, TK) (dW + lambda_market dt)), floored at 0.
double step_K(double K_prev, double r, double dW_step, const TimePreferenceModel& model,
              double TK, double dt);

/// Usability update. The drift is
///   r dt + V (dW + lambda_market dt) + VA (dWA + lambda_usability dt);
/// multiplicative mode applies it as A (1 + drift), linearized as A + drift.
/// Both clamp to [0, 1].
double step_A(double A_prev, double r, double dW_step, double dWA_step,
              const TimePreferenceModel& model, const UsabilityProfile& usability,
              UsabilityMode mode, double dt);

/// K(0): the hourly annuity of the capability value, or the value itself.
double initial_investment(const Asset& asset);

struct PathState {
    double r = 0.0;
    double M = 0.0;
    double K = 0.0;
    double A = 1.0;

    bool operator==(const PathState&) const = default;
};

/// Everything known about one step after it has been taken.
struct StepRecord {
    std::size_t step = 0;
    double time = 0.0;     // end of the step
    double r = 0.0;
    double M = 0.0;
    double K = 0.0;
    double A = 0.0;
    double A_start = 0.0;  // A at the start of the step, after any A0_post replacement
    double dM = 0.0;
    double dK = 0.0;
    bool first_shock = false;
};

/// Advances one path step by step without storing its history.
class PathIntegrator {
public:
    PathIntegrator(const Asset& asset, const SimulationConfig& config,
                   std::span<const AttackShock> shocks, std::uint64_t path_index);

    bool done() const { return drivers_.position() >= drivers_.steps(); }
    std::size_t steps() const { return drivers_.steps(); }
    const PathState& state() const { return state_; }
    std::optional<std::size_t> first_shock_step() const { return first_shock_step_; }
    std::optional<double> first_shock_time() const { return first_shock_time_; }

    /// Throws std::overflow_error when M or K stop being finite.
    StepRecord advance();

private:
    Asset asset_;
    SimulationConfig config_;
    DriverStream drivers_;
    PathState state_;
    double beta_ = 0.0;
    std::optional<std::size_t> first_shock_step_;
    std::optional<double> first_shock_time_;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<double> r;
    std::vector<double> M;
    std::vector<double> K;
    std::vector<double> A;
    std::vector<double> dM;
    std::vector<double> dM_cumulative;
    PathState initial;
    double dt = 0.0;
    std::optional<std::size_t> first_shock_step;
    std::optional<double> first_shock_time;

    std::size_t size() const { return times.size(); }
    bool operator==(const Trajectory&) const = default;
};

/// Full trajectory of one path; a pure function of its arguments.
Trajectory simulate_path(const Asset& asset, const SimulationConfig& config,
                         std::span<const AttackShock> shocks, std::uint64_t path_index);

}  // namespace dosimpact
