#pragma once

// Monte Carlo ensemble over independent paths.
//
// Paths are grouped into fixed-size chunks by path index. Each chunk's
// partial moments are computed in path order and the chunks are merged in
// chunk order, so the statistics are bit-identical for any thread count.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "dosimpact/model.hpp"
#include "dosimpact/stochastic.hpp"

namespace dosimpact {

struct SeriesStatistics {
    std::vector<double> mean;
    std::vector<double> variance;  // unbiased; 0 for a single path
    std::vector<double> q05;       // quantile vectors are empty when not requested
    std::vector<double> q50;
    std::vector<double> q95;

    bool operator==(const SeriesStatistics&) const = default;
};

/// Elapsed time from the first shock until A >= 0.5, per path.
struct HalfRestorationDistribution {
    std::vector<double> hours;  // paths that reached one half, in path order
    std::size_t never = 0;      // paths that did not within the horizon

    bool operator==(const HalfRestorationDistribution&) const = default;
};

struct PathStatistics {
    std::vector<double> times;  // sampled step end times, h
    SeriesStatistics r;
    SeriesStatistics M;
    SeriesStatistics K;
    SeriesStatistics A;
    std::vector<double> dM_cumulative_mean;
    HalfRestorationDistribution half_restoration;
    std::size_t n_paths = 0;
    std::uint64_t seed = 0;
    bool has_quantiles = false;

    bool operator==(const PathStatistics&) const = default;
};

/// Per-path hook. One observer is created per path and sees every step of it;
/// observers of distinct paths may run concurrently.
class PathObserver {
public:
    virtual ~PathObserver() = default;
    virtual void on_step(const StepRecord& record) = 0;
    virtual void on_finish() {}
};

using ObserverFactory = std::function<std::unique_ptr<PathObserver>(std::size_t path_index)>;

struct EnsembleOptions {
    unsigned threads = 0;  // 0: hardware concurrency
    bool quantiles = true;
    ObserverFactory observer;
};

inline constexpr std::size_t ensemble_chunk_size = 256;

PathStatistics simulate_ensemble(const Asset& asset, const SimulationConfig& config,
                                 std::span<const AttackShock> shocks,
                                 const EnsembleOptions& options = {});

/// Linear-interpolation quantile (Hyndman–Fan type 7) of sorted data.
double sorted_quantile(std::span<const double> sorted, double p);

}  // namespace dosimpact
