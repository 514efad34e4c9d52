#pragma once

// Closed-form quantities of the time-preference model. Besides being model
// outputs they serve as oracles for the Monte Carlo engine.

#include <optional>

#include "dosimpact/model.hpp"

namespace dosimpact {

struct OuMoments {
    double mean = 0.0;      // 1/h
    double variance = 0.0;  // (1/h)^2
};

/// Duration factor (1 - exp(-a TK)) / a; TK in the limit a -> 0.
double beta_k(double a, double TK);

/// Mean and variance of the unclamped process r(t) started at r0.
///
/// Exact for paths that never touch the [0,1] clamp; the simulator truncates
/// at the boundary, so near it these are only approximate oracles.
OuMoments ou_moments(double r0, const TimePreferenceModel& model, double t);

/// Linear recovery rate of usability after an attack, r_post + V lambda - VA/TK.
double recovery_growth_rate(double r_post, double V, double lambda_market, double VA, double TK);

/// Time for usability to climb from 0 to one half at growth rate g.
/// std::nullopt means unbounded: with g <= 0 the half level is never reached.
std::optional<double> half_restoration_time(double g);

/// Short-term monetary increment M_prev (r + rM) dt.
double deterministic_dM(double M_prev, double r, double rM, double dt);

/// Flat hourly annuity total_value / TK, undiscounted.
double hourly_annuity(double total_value, double TK);

}  // namespace dosimpact
