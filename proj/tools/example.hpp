#pragma once

// The data-centre worked example: computed figures next to the published ones.

#include <string>
#include <vector>

namespace dosimpact::cli {

struct ExampleRow {
    std::string quantity;
    std::string computed;
    std::string published;
    std::string verdict;  // MATCH, DISCREPANCY or INFO

    bool operator==(const ExampleRow&) const = default;
};

struct ExampleReport {
    double r_eq_hourly = 0.0;
    double r_1h = 0.0;
    double dM_1h = 0.0;
    double capability_value = 0.0;
    double capability_value_from_rates = 0.0;
    double hourly_annuity = 0.0;
    double beta_k = 0.0;
    double dK_annuity_init = 0.0;      // K(0) = hourly annuity
    double dK_total_value_init = 0.0;  // K(0) = total capability value
    double dK_shock_term = 0.0;        // K(0) V beta_K S with K(0) = hourly annuity
    double va_threshold = 0.0;         // VA at which the usability growth rate is zero, h
    double t_half_va0 = 0.0;           // h

    std::vector<ExampleRow> rows;
    std::vector<std::string> notes;

    bool operator==(const ExampleReport&) const = default;
};

/// Runs the embedded scenario with noise off, one path.
ExampleReport run_example();

std::string format_example(const ExampleReport& report);

}  // namespace dosimpact::cli
