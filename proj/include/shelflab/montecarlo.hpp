#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "shelflab/normal.hpp"
#include "shelflab/rational.hpp"
#include "shelflab/statistics.hpp"

namespace shelflab::montecarlo {

// Exact integer moment accumulator. Merging is commutative and associative,
// so chunked parallel runs reduce to the same summary as a sequential pass.
struct MomentSummary {
    std::uint64_t count = 0;
    unsigned __int128 sum = 0;
    unsigned __int128 sum_sq = 0;
    std::int64_t min = INT64_MAX;
    std::int64_t max = INT64_MIN;

    void add(std::int64_t value);
    double mean() const;
    // Population variance (sum_sq - sum^2/count)/count, computed exactly in
    // big integers before the final division.
    double variance() const;

    bool operator==(const MomentSummary& o) const = default;
};

MomentSummary merge(const MomentSummary& a, const MomentSummary& b);

std::string to_decimal_string(unsigned __int128 v);

struct ExperimentConfig {
    ShuffleSpec spec;
    StatisticKind statistic = StatisticKind::inversions;
    std::uint64_t sample_count = 1;
    std::uint64_t seed = 0;
    std::uint64_t chunk_size = 8192;
    unsigned worker_hint = 0;  // 0 = hardware concurrency; never affects results
};

// Affine map z = (value - center) / scale used to compare a statistic with
// the standard normal; center and scale come from the closed forms, not from
// sample moments.
struct Standardizer {
    double center = 0.0;
    double scale = 1.0;
    double operator()(double value) const { return (value - center) / scale; }
};

// The theoretical standardizer for a statistic under the given shuffle.
// Returns nothing when the scale degenerates (n = 1 inversions, or a
// degenerate even-pile probability).
std::optional<Standardizer> standardizer_for(StatisticKind kind, const ShuffleSpec& spec);

struct ExperimentReport {
    // config echo (worker hint intentionally excluded: results never depend on it)
    std::uint64_t n = 0;
    std::uint32_t m = 0;
    std::optional<std::vector<Rational>> bias;
    StatisticKind statistic = StatisticKind::inversions;
    std::uint64_t sample_count = 0;
    std::uint64_t seed = 0;
    std::uint64_t chunk_size = 0;

    MomentSummary summary;
    std::map<std::int64_t, std::uint64_t> histogram;

    std::optional<double> empirical_kd;
    std::optional<double> standardized_mean;
    std::optional<double> standardized_variance;
    std::optional<std::int64_t> coupling_max_abs_dev;  // descent runs only

    // Closed-form evaluations at this (n, m).
    std::optional<double> chen_shao_bound;     // inversions / pair_sum, n > 2
    std::optional<double> kd_envelope;         // kd_bound_constant()/sqrt(n)
    std::optional<double> slutsky_error;       // descents
    std::optional<double> claimed_limit_var;   // descents: (m^2+2)/(3m^2)
    std::optional<double> residual_vs_coupling_limit;  // |stdvar - 1|
    std::optional<double> residual_vs_claimed_limit;   // |stdvar - claimed|

    double wall_time_seconds = 0.0;
};

// Draws sample_count words, accumulates the chosen statistic into an exact
// summary and a lossless histogram, and evaluates the normal-approximation
// quality. Chunk i draws from substream(seed, i); for a fixed (seed,
// chunk_size) the report is identical for any worker count.
ExperimentReport run_experiment(const ExperimentConfig& config);

// sup_z |empirical CDF - Phi(standardized z)| over the histogram's jump
// points, both one-sided limits at each jump.
double empirical_kd(const std::map<std::int64_t, std::uint64_t>& histogram,
                    const Standardizer& standardizer);

}  // namespace shelflab::montecarlo
