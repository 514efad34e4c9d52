#include "dosimpact/analytic.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace dosimpact {

double beta_k(double a, double TK) {
    if (!(a >= 0.0) || !std::isfinite(a)) {
        throw std::invalid_argument(fmt::format("beta_k: a must be >= 0 (got {})", a));
    }
    if (!(TK > 0.0) || !std::isfinite(TK)) {
        throw std::invalid_argument(fmt::format("beta_k: TK must be > 0 (got {})", TK));
    }
    if (a == 0.0) {
        return TK;
    }
    // expm1 keeps full precision as a -> 0.
    return -std::expm1(-a * TK) / a;
}

OuMoments ou_moments(double r0, const TimePreferenceModel& model, double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw std::invalid_argument(fmt::format("ou_moments: t must be >= 0 (got {})", t));
    }
    if (!(model.a >= 0.0) || !(model.V >= 0.0)) {
        throw std::invalid_argument("ou_moments: a and V must be >= 0");
    }
    const double a = model.a;
    const double v2 = model.V * model.V;
    OuMoments m;
    m.mean = model.r_eq + (r0 - model.r_eq) * std::exp(-a * t);
    m.variance = a == 0.0 ? v2 * t : v2 * (-std::expm1(-2.0 * a * t)) / (2.0 * a);
    return m;
}

double recovery_growth_rate(double r_post, double V, double lambda_market, double VA, double TK) {
    if (!(TK > 0.0)) {
        throw std::invalid_argument(
            fmt::format("recovery_growth_rate: TK must be > 0 (got {})", TK));
    }
    return r_post + V * lambda_market - VA / TK;
}

std::optional<double> half_restoration_time(double g) {
    if (!(g > 0.0)) {
        return std::nullopt;
    }
    return 0.5 / g;
}

double deterministic_dM(double M_prev, double r, double rM, double dt) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument(fmt::format("deterministic_dM: dt must be > 0 (got {})", dt));
    }
    return M_prev * (r + rM) * dt;
}

double hourly_annuity(double total_value, double TK) {
    if (!(TK > 0.0)) {
        throw std::invalid_argument(fmt::format("hourly_annuity: TK must be > 0 (got {})", TK));
    }
    return total_value / TK;
}

}  // namespace dosimpact
