#include "shelflab/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "shelflab/bigint.hpp"
#include "shelflab/rng.hpp"
#include "shelflab/theory.hpp"

namespace shelflab::montecarlo {

void MomentSummary::add(std::int64_t value) {
    if (value < 0) throw std::invalid_argument("MomentSummary: negative statistic");
    ++count;
    const auto v = static_cast<unsigned __int128>(value);
    sum += v;
    sum_sq += v * v;
    if (value < min) min = value;
    if (value > max) max = value;
}

double MomentSummary::mean() const {
    if (count == 0) return 0.0;
    return BigInt(sum).to_double() / static_cast<double>(count);
}

double MomentSummary::variance() const {
    if (count == 0) return 0.0;
    const BigInt c(count);
    BigInt numerator = c * BigInt(sum_sq) - BigInt(sum) * BigInt(sum);
    return numerator.to_double() / (static_cast<double>(count) * static_cast<double>(count));
}

MomentSummary merge(const MomentSummary& a, const MomentSummary& b) {
    MomentSummary out;
    out.count = a.count + b.count;
    out.sum = a.sum + b.sum;
    out.sum_sq = a.sum_sq + b.sum_sq;
    out.min = std::min(a.min, b.min);
    out.max = std::max(a.max, b.max);
    return out;
}

std::string to_decimal_string(unsigned __int128 v) { return BigInt(v).to_string(); }

std::optional<Standardizer> standardizer_for(StatisticKind kind, const ShuffleSpec& spec) {
    const double n = static_cast<double>(spec.n());
    switch (kind) {
        case StatisticKind::inversions:
        case StatisticKind::pair_sum: {
            if (spec.n() < 2) return std::nullopt;
            const double binom = 0.5 * n * (n - 1.0);
            const double scale =
                2.0 * std::sqrt(theory::zeta1_sq(spec.m()).to_double()) * binom / std::sqrt(n);
            return Standardizer{binom / 2.0, scale};
        }
        case StatisticKind::descents:
            return Standardizer{n / 2.0, std::sqrt(n / 4.0)};
        case StatisticKind::even_cards: {
            const double q = theory::even_pile_probability(spec).to_double();
            const double scale = std::sqrt(n * q * (1.0 - q));
            if (!(scale > 0.0)) return std::nullopt;
            return Standardizer{n * q, scale};
        }
    }
    return std::nullopt;
}

double empirical_kd(const std::map<std::int64_t, std::uint64_t>& histogram,
                    const Standardizer& standardizer) {
    if (histogram.empty()) throw std::invalid_argument("empirical_kd: empty histogram");
    if (!(standardizer.scale > 0.0)) {
        throw std::invalid_argument("empirical_kd: standardizer scale must be positive");
    }
    std::uint64_t total = 0;
    for (const auto& [value, count] : histogram) total += count;
    std::vector<std::pair<double, double>> jumps;
    jumps.reserve(histogram.size());
    std::uint64_t cum = 0;
    for (const auto& [value, count] : histogram) {
        cum += count;
        jumps.emplace_back(standardizer(static_cast<double>(value)),
                           static_cast<double>(cum) / static_cast<double>(total));
    }
    return kd_step_vs_normal(jumps);
}

namespace {

struct WorkerAccum {
    MomentSummary summary;
    std::map<std::int64_t, std::uint64_t> histogram;
    std::int64_t coupling_max = -1;
};

void merge_into(WorkerAccum& into, const WorkerAccum& from) {
    into.summary = merge(into.summary, from.summary);
    for (const auto& [value, count] : from.histogram) into.histogram[value] += count;
    into.coupling_max = std::max(into.coupling_max, from.coupling_max);
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
    if (config.sample_count < 1) {
        throw std::invalid_argument("run_experiment: sample_count must be at least 1");
    }
    if (config.chunk_size < 1) {
        throw std::invalid_argument("run_experiment: chunk_size must be at least 1");
    }
    const auto start_time = std::chrono::steady_clock::now();

    const ShuffleSpec& spec = config.spec;
    const std::uint64_t n = spec.n();
    const std::uint32_t m = spec.m();
    const std::uint64_t chunk_count =
        (config.sample_count + config.chunk_size - 1) / config.chunk_size;
    unsigned workers = config.worker_hint ? config.worker_hint
                                          : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(
        std::min<std::uint64_t>(workers, chunk_count));

    std::vector<WorkerAccum> accums(workers);
    std::atomic<std::uint64_t> next_chunk{0};

    auto work = [&](unsigned worker_index) {
        WorkerAccum& acc = accums[worker_index];
        const LetterSampler sampler(spec);
        std::vector<std::uint32_t> letters(n);
        StatScratch scratch;
        while (true) {
            const std::uint64_t chunk = next_chunk.fetch_add(1);
            if (chunk >= chunk_count) break;
            const std::uint64_t begin = chunk * config.chunk_size;
            const std::uint64_t count =
                std::min<std::uint64_t>(config.chunk_size, config.sample_count - begin);
            EngineSource source(substream_seed(config.seed, chunk));
            for (std::uint64_t s = 0; s < count; ++s) {
                for (auto& x : letters) x = sampler.draw(source);
                std::int64_t value = 0;
                switch (config.statistic) {
                    case StatisticKind::inversions:
                        shelflab::detail::build_permutation(letters, m, scratch.perm,
                                                            scratch.counts, scratch.block_starts);
                        value = shelflab::detail::inversions_fast_into(scratch.perm,
                                                                       scratch.fenwick);
                        break;
                    case StatisticKind::pair_sum:
                        value = shelflab::detail::pair_sum_into(letters, m, scratch);
                        break;
                    case StatisticKind::descents: {
                        // Construction asserts d = E + C and |d - B| <= 4m-1.
                        DescentDecomposition dd =
                            shelflab::detail::decompose_into(letters, m, scratch);
                        value = dd.total_descents;
                        std::int64_t dev = dd.total_descents - dd.even_card_count;
                        if (dev < 0) dev = -dev;
                        acc.coupling_max = std::max(acc.coupling_max, dev);
                        break;
                    }
                    case StatisticKind::even_cards: {
                        std::int64_t evens = 0;
                        for (std::uint32_t x : letters) evens += (x % 2 == 0);
                        value = evens;
                        break;
                    }
                }
                acc.summary.add(value);
                ++acc.histogram[value];
            }
        }
    };

    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }

    WorkerAccum total;
    for (const auto& acc : accums) merge_into(total, acc);

    ExperimentReport report;
    report.n = n;
    report.m = m;
    report.bias = spec.pile_probs();
    report.statistic = config.statistic;
    report.sample_count = config.sample_count;
    report.seed = config.seed;
    report.chunk_size = config.chunk_size;
    report.summary = total.summary;
    report.histogram = std::move(total.histogram);
    if (config.statistic == StatisticKind::descents) {
        report.coupling_max_abs_dev = total.coupling_max;
    }

    if (auto std_maybe = standardizer_for(config.statistic, spec)) {
        const Standardizer& standardizer = *std_maybe;
        report.empirical_kd = empirical_kd(report.histogram, standardizer);
        report.standardized_mean = standardizer(report.summary.mean());
        report.standardized_variance =
            report.summary.variance() / (standardizer.scale * standardizer.scale);
    }

    switch (config.statistic) {
        case StatisticKind::inversions:
        case StatisticKind::pair_sum: {
            report.kd_envelope = theory::kd_bound_constant() / std::sqrt(static_cast<double>(n));
            if (n > 2) report.chen_shao_bound = theory::inversion_kd_bound(n, m);
            if (report.empirical_kd && *report.empirical_kd > *report.kd_envelope) {
                throw std::logic_error("empirical Kolmogorov distance exceeds the C/sqrt(n) envelope");
            }
            break;
        }
        case StatisticKind::descents: {
            report.slutsky_error = theory::descent_slutsky_error(n, m);
            const double claimed = theory::limit_var_descents_claimed(m).to_double();
            report.claimed_limit_var = claimed;
            if (report.standardized_variance) {
                report.residual_vs_coupling_limit = std::abs(*report.standardized_variance - 1.0);
                report.residual_vs_claimed_limit =
                    std::abs(*report.standardized_variance - claimed);
            }
            break;
        }
        case StatisticKind::even_cards:
            break;
    }

    const auto end_time = std::chrono::steady_clock::now();
    report.wall_time_seconds = std::chrono::duration<double>(end_time - start_time).count();
    return report;
}

}  // namespace shelflab::montecarlo
