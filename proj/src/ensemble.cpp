#include "dosimpact/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <thread>

namespace dosimpact {

namespace {

enum Channel : std::size_t { ch_r, ch_M, ch_K, ch_A, ch_dMcum, channel_count };
constexpr std::size_t quantile_channels = 4;  // r, M, K, A

struct Moments {
    double mean = 0.0;
    double m2 = 0.0;
};

struct ChunkPartial {
    std::size_t count = 0;
    std::vector<Moments> moments;  // [record * channel_count + channel]
    std::exception_ptr error;
};

void merge_into(std::vector<Moments>& acc, std::size_t& n_acc, const ChunkPartial& part) {
    if (part.count == 0) {
        return;
    }
    if (n_acc == 0) {
        acc = part.moments;
        n_acc = part.count;
        return;
    }
    const double na = static_cast<double>(n_acc);
    const double nb = static_cast<double>(part.count);
    const double n = na + nb;
    for (std::size_t i = 0; i < acc.size(); ++i) {
        const double delta = part.moments[i].mean - acc[i].mean;
        acc[i].mean += delta * nb / n;
        acc[i].m2 += part.moments[i].m2 + delta * delta * na * nb / n;
    }
    n_acc += part.count;
}

const double no_crossing = std::numeric_limits<double>::quiet_NaN();

}  // namespace

double sorted_quantile(std::span<const double> sorted, double p) {
    if (sorted.empty()) {
        throw std::invalid_argument("sorted_quantile: empty sample");
    }
    const double h = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

PathStatistics simulate_ensemble(const Asset& asset, const SimulationConfig& config,
                                 std::span<const AttackShock> shocks,
                                 const EnsembleOptions& options) {
    const std::size_t n_steps = step_count(config);
    const std::size_t n_paths = config.n_paths;
    const std::size_t every = config.output_every;
    const std::size_t n_records = n_steps / every;
    const std::size_t n_chunks = (n_paths + ensemble_chunk_size - 1) / ensemble_chunk_size;

    // Fail fast on invalid input before any worker starts.
    { PathIntegrator probe(asset, config, shocks, 0); }

    std::vector<ChunkPartial> partials(n_chunks);
    std::vector<double> samples;  // [(channel * n_records + record) * n_paths + path]
    if (options.quantiles) {
        samples.resize(quantile_channels * n_records * n_paths);
    }
    std::vector<double> crossing(n_paths, no_crossing);

    auto run_chunk = [&](std::size_t chunk) {
        ChunkPartial& part = partials[chunk];
        part.moments.assign(n_records * channel_count, Moments{});
        const std::size_t first = chunk * ensemble_chunk_size;
        const std::size_t last = std::min(n_paths, first + ensemble_chunk_size);
        for (std::size_t p = first; p < last; ++p) {
            PathIntegrator path(asset, config, shocks, p);
            auto observer = options.observer ? options.observer(p) : nullptr;
            const auto shock_step = path.first_shock_step();
            const double shock_time = path.first_shock_time().value_or(0.0);
            const double n = static_cast<double>(++part.count);
            double cumulative = 0.0;
            while (!path.done()) {
                const auto rec = path.advance();
                cumulative += rec.dM;
                if (observer) {
                    observer->on_step(rec);
                }
                if (shock_step && rec.step >= *shock_step && std::isnan(crossing[p]) &&
                    rec.A >= 0.5) {
                    crossing[p] = rec.time - shock_time;
                }
                if ((rec.step + 1) % every != 0) {
                    continue;
                }
                const std::size_t record = (rec.step + 1) / every - 1;
                const double values[channel_count] = {rec.r, rec.M, rec.K, rec.A, cumulative};
                Moments* m = &part.moments[record * channel_count];
                for (std::size_t c = 0; c < channel_count; ++c) {
                    const double delta = values[c] - m[c].mean;
                    m[c].mean += delta / n;
                    m[c].m2 += delta * (values[c] - m[c].mean);
                }
                if (options.quantiles) {
                    for (std::size_t c = 0; c < quantile_channels; ++c) {
                        samples[(c * n_records + record) * n_paths + p] = values[c];
                    }
                }
            }
            if (observer) {
                observer->on_finish();
            }
        }
    };

    unsigned threads = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
    threads = static_cast<unsigned>(std::clamp<std::size_t>(threads, 1, n_chunks));
    std::atomic<std::size_t> next_chunk{0};
    auto worker = [&] {
        for (std::size_t c = next_chunk++; c < n_chunks; c = next_chunk++) {
            try {
                run_chunk(c);
            } catch (...) {
                partials[c].error = std::current_exception();
            }
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }
    for (const auto& part : partials) {
        if (part.error) {
            std::rethrow_exception(part.error);
        }
    }

    std::vector<Moments> moments;
    std::size_t merged = 0;
    for (const auto& part : partials) {
        merge_into(moments, merged, part);
    }

    PathStatistics out;
    out.n_paths = n_paths;
    out.seed = config.seed;
    out.has_quantiles = options.quantiles;
    out.times.resize(n_records);
    for (std::size_t i = 0; i < n_records; ++i) {
        out.times[i] = static_cast<double>((i + 1) * every) * config.dt;
    }

    SeriesStatistics* series[quantile_channels] = {&out.r, &out.M, &out.K, &out.A};
    const double denom = n_paths > 1 ? static_cast<double>(n_paths - 1) : 1.0;
    for (std::size_t c = 0; c < quantile_channels; ++c) {
        series[c]->mean.resize(n_records);
        series[c]->variance.resize(n_records);
        for (std::size_t i = 0; i < n_records; ++i) {
            const auto& m = moments[i * channel_count + c];
            series[c]->mean[i] = m.mean;
            series[c]->variance[i] = n_paths > 1 ? m.m2 / denom : 0.0;
        }
    }
    out.dM_cumulative_mean.resize(n_records);
    for (std::size_t i = 0; i < n_records; ++i) {
        out.dM_cumulative_mean[i] = moments[i * channel_count + ch_dMcum].mean;
    }

    if (options.quantiles) {
        std::vector<double> column(n_paths);
        for (std::size_t c = 0; c < quantile_channels; ++c) {
            auto& s = *series[c];
            s.q05.resize(n_records);
            s.q50.resize(n_records);
            s.q95.resize(n_records);
            for (std::size_t i = 0; i < n_records; ++i) {
                const auto begin = samples.begin() + static_cast<std::ptrdiff_t>((c * n_records + i) * n_paths);
                std::copy(begin, begin + static_cast<std::ptrdiff_t>(n_paths), column.begin());
                std::sort(column.begin(), column.end());
                s.q05[i] = sorted_quantile(column, 0.05);
                s.q50[i] = sorted_quantile(column, 0.50);
                s.q95[i] = sorted_quantile(column, 0.95);
            }
        }
    }

    for (const double h : crossing) {
        if (std::isnan(h)) {
            ++out.half_restoration.never;
        } else {
            out.half_restoration.hours.push_back(h);
        }
    }
    return out;
}

}  // namespace dosimpact
