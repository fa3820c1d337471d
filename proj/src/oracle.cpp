#include "shelflab/oracle.hpp"

#include <algorithm>
#include <thread>

#include "shelflab/normal.hpp"
#include "shelflab/theory.hpp"

namespace shelflab::oracle {

BudgetExceeded::BudgetExceeded(BigInt state_count, std::uint64_t budget)
    : std::runtime_error("enumeration requires " + state_count.to_string() +
                         " states, budget is " + std::to_string(budget)),
      state_count_(std::move(state_count)),
      budget_(budget) {}

BigInt word_state_count(const ShuffleSpec& spec) {
    return BigInt::pow(BigInt(static_cast<std::uint64_t>(spec.pile_count())), spec.n());
}

namespace {

// Everything the statistics module computes for one word, with the pathwise
// identities checked as a side effect of computing them.
struct PerWordStats {
    std::int64_t letter_inversions;  // A
    std::int64_t equal_even_pairs;   // C (pair statistic)
    std::int64_t inversions;         // I, from the generated permutation
    std::int64_t descents;           // d
    std::int64_t even_cards;         // B
};

struct WordScratch {
    StatScratch stats;
    std::vector<std::int64_t> alphabet_fenwick;
};

PerWordStats compute_word_stats(const std::vector<std::uint32_t>& letters, std::uint32_t m,
                                WordScratch& ws) {
    auto& s = ws.stats;
    shelflab::detail::build_permutation(letters, m, s.perm, s.counts, s.block_starts);

    PerWordStats out{};
    out.inversions = shelflab::detail::inversions_fast_into(s.perm, s.fenwick);

    // A via a Fenwick tree over the alphabet; C from the pile counts.
    ws.alphabet_fenwick.assign(2 * m + 1, 0);
    for (std::size_t i = 0; i < letters.size(); ++i) {
        std::size_t idx = letters[i];
        std::int64_t leq = 0;
        for (std::size_t j = idx; j > 0; j -= j & (~j + 1)) leq += ws.alphabet_fenwick[j];
        out.letter_inversions += static_cast<std::int64_t>(i) - leq;
        for (std::size_t j = idx; j < ws.alphabet_fenwick.size(); j += j & (~j + 1)) {
            ++ws.alphabet_fenwick[j];
        }
    }
    std::int64_t even_run = 0, nonempty_even = 0;
    for (std::uint32_t k = 1; k < 2 * m; k += 2) {
        const std::int64_t c = static_cast<std::int64_t>(s.counts[k]);
        out.equal_even_pairs += c * (c - 1) / 2;
        out.even_cards += c;
        if (c > 0) {
            even_run += c - 1;
            ++nonempty_even;
        }
    }

    if (out.letter_inversions + out.equal_even_pairs != out.inversions) {
        throw std::logic_error("pathwise identity violated: pair_sum != inversions");
    }

    std::int64_t boundary = 0;
    for (std::size_t b = 1; b < s.block_starts.size(); ++b) {
        const std::uint64_t o = s.block_starts[b];
        if (s.perm[o - 1] > s.perm[o]) ++boundary;
    }
    std::int64_t total = 0;
    for (std::size_t i = 0; i + 1 < s.perm.size(); ++i) {
        if (s.perm[i] > s.perm[i + 1]) ++total;
    }
    // Construction validates d = E + C and |d - B| <= 4m - 1.
    DescentDecomposition dd(even_run, boundary, out.even_cards, nonempty_even, total, m);
    out.descents = dd.total_descents;
    return out;
}

// Walks words with indices in [start, end) of the odometer order: letters are
// the digits of the index in base 2m, most significant first, so the last
// position moves fastest. The visitor receives the first changed position.
template <typename Visit>
void walk_words(std::uint64_t n, std::uint32_t base, std::uint64_t start, std::uint64_t end,
                Visit&& visit) {
    std::vector<std::uint32_t> letters(n);
    std::uint64_t w = start;
    for (std::size_t i = n; i-- > 0;) {
        letters[i] = static_cast<std::uint32_t>(w % base) + 1;
        w /= base;
    }
    std::size_t changed_from = 0;
    for (std::uint64_t idx = start; idx < end; ++idx) {
        visit(letters, changed_from);
        std::size_t i = n;
        while (i-- > 0) {
            if (letters[i] < base) {
                ++letters[i];
                break;
            }
            letters[i] = 1;
        }
        changed_from = i;
    }
}

std::uint64_t checked_state_count(const ShuffleSpec& spec, const EnumerationOptions& options) {
    BigInt states = word_state_count(spec);
    if (!states.fits_uint64() || states.to_uint64() > options.budget) {
        throw BudgetExceeded(std::move(states), options.budget);
    }
    return states.to_uint64();
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> partition_range(std::uint64_t total,
                                                                     unsigned threads) {
    const std::uint64_t parts = std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, total));
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    for (std::uint64_t r = 0; r < parts; ++r) {
        out.emplace_back(total * r / parts, total * (r + 1) / parts);
    }
    return out;
}

std::int64_t statistic_of(const PerWordStats& w, StatisticKind kind) {
    switch (kind) {
        case StatisticKind::inversions: return w.inversions;
        case StatisticKind::descents: return w.descents;
        case StatisticKind::pair_sum: return w.letter_inversions + w.equal_even_pairs;
        case StatisticKind::even_cards: return w.even_cards;
    }
    throw std::logic_error("unknown statistic kind");
}

// Numerators of the pile probabilities over their least common denominator.
struct BiasWeights {
    std::vector<BigInt> numerators;
    BigInt denominator;
};

BiasWeights bias_weights(const ShuffleSpec& spec) {
    BiasWeights out;
    out.denominator = BigInt(std::int64_t{1});
    const auto& probs = *spec.pile_probs();
    for (const auto& p : probs) {
        BigInt g = BigInt::gcd(out.denominator, p.den());
        out.denominator = out.denominator / g * p.den();
    }
    for (const auto& p : probs) {
        out.numerators.push_back(p.num() * (out.denominator / p.den()));
    }
    return out;
}

}  // namespace

ExactDistribution enumerate_distribution(const ShuffleSpec& spec, StatisticKind statistic,
                                         const EnumerationOptions& options) {
    const std::uint64_t states = checked_state_count(spec, options);
    const std::uint32_t base = spec.pile_count();
    const std::uint64_t n = spec.n();

    ExactDistribution dist;
    dist.n = n;
    dist.m = spec.m();
    dist.statistic = statistic;
    dist.biased = spec.is_biased();

    const auto ranges = partition_range(states, options.threads);
    std::vector<std::map<std::int64_t, BigInt>> partials(ranges.size());

    if (!spec.is_biased()) {
        std::vector<std::map<std::int64_t, std::uint64_t>> tallies(ranges.size());
        auto work = [&](std::size_t r) {
            WordScratch ws;
            walk_words(n, base, ranges[r].first, ranges[r].second,
                       [&](const std::vector<std::uint32_t>& letters, std::size_t) {
                           PerWordStats w = compute_word_stats(letters, spec.m(), ws);
                           ++tallies[r][statistic_of(w, statistic)];
                       });
        };
        if (ranges.size() == 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            for (std::size_t r = 0; r < ranges.size(); ++r) pool.emplace_back(work, r);
            for (auto& t : pool) t.join();
        }
        for (std::size_t r = 0; r < ranges.size(); ++r) {
            for (const auto& [value, count] : tallies[r]) {
                auto [it, inserted] = dist.counts.try_emplace(value, BigInt(count));
                if (!inserted) it->second += BigInt(count);
            }
        }
        dist.total = BigInt::pow(BigInt(static_cast<std::uint64_t>(base)), n);
        return dist;
    }

    const BiasWeights weights = bias_weights(spec);
    auto work = [&](std::size_t r) {
        WordScratch ws;
        // prefix[i] = product of the first i letter weights; only the suffix
        // the odometer touched needs recomputing
        std::vector<BigInt> prefix(n + 1);
        prefix[0] = BigInt(std::int64_t{1});
        walk_words(n, base, ranges[r].first, ranges[r].second,
                   [&](const std::vector<std::uint32_t>& letters, std::size_t changed_from) {
                       for (std::size_t i = changed_from; i < n; ++i) {
                           prefix[i + 1] = prefix[i] * weights.numerators[letters[i] - 1];
                       }
                       if (prefix[n].is_zero()) return;  // zero-probability word
                       PerWordStats w = compute_word_stats(letters, spec.m(), ws);
                       auto [it, inserted] =
                           partials[r].try_emplace(statistic_of(w, statistic), prefix[n]);
                       if (!inserted) it->second += prefix[n];
                   });
    };
    if (ranges.size() == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t r = 0; r < ranges.size(); ++r) pool.emplace_back(work, r);
        for (auto& t : pool) t.join();
    }
    for (std::size_t r = 0; r < ranges.size(); ++r) {
        for (const auto& [value, mass] : partials[r]) {
            auto [it, inserted] = dist.counts.try_emplace(value, mass);
            if (!inserted) it->second += mass;
        }
    }
    dist.total = BigInt::pow(weights.denominator, n);
    return dist;
}

std::pair<Rational, Rational> exact_moments(const ExactDistribution& dist) {
    if (dist.counts.empty()) throw std::invalid_argument("exact_moments: empty distribution");
    BigInt sum_v, sum_v2;
    for (const auto& [value, count] : dist.counts) {
        const BigInt v(value);
        sum_v += v * count;
        sum_v2 += v * v * count;
    }
    Rational mean(sum_v, dist.total);
    Rational variance = Rational(sum_v2, dist.total) - mean * mean;
    return {mean, variance};
}

double exact_kd_to_normal(const ExactDistribution& dist, double mu, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("exact_kd_to_normal: sigma must be positive");
    std::vector<std::pair<double, double>> jumps;
    jumps.reserve(dist.counts.size());
    BigInt cum;
    const double total = dist.total.to_double();
    for (const auto& [value, count] : dist.counts) {
        cum += count;
        jumps.emplace_back((static_cast<double>(value) - mu) / sigma, cum.to_double() / total);
    }
    return kd_step_vs_normal(jumps);
}

ComponentMoments enumerate_component_moments(const ShuffleSpec& spec,
                                             const EnumerationOptions& options) {
    if (spec.is_biased()) {
        throw std::invalid_argument("component moments are defined for the uniform shuffle");
    }
    const std::uint64_t states = checked_state_count(spec, options);
    const std::uint32_t base = spec.pile_count();

    struct Sums {
        unsigned __int128 a = 0, a2 = 0, c = 0, c2 = 0, ac = 0;
        unsigned __int128 i = 0, i2 = 0, d = 0, d2 = 0;
        std::int64_t max_dev = 0;
    };
    const auto ranges = partition_range(states, options.threads);
    std::vector<Sums> partials(ranges.size());

    auto work = [&](std::size_t r) {
        WordScratch ws;
        Sums s;
        walk_words(spec.n(), base, ranges[r].first, ranges[r].second,
                   [&](const std::vector<std::uint32_t>& letters, std::size_t) {
                       PerWordStats w = compute_word_stats(letters, spec.m(), ws);
                       const auto ua = static_cast<unsigned __int128>(w.letter_inversions);
                       const auto uc = static_cast<unsigned __int128>(w.equal_even_pairs);
                       const auto ui = static_cast<unsigned __int128>(w.inversions);
                       const auto ud = static_cast<unsigned __int128>(w.descents);
                       s.a += ua;
                       s.a2 += ua * ua;
                       s.c += uc;
                       s.c2 += uc * uc;
                       s.ac += ua * uc;
                       s.i += ui;
                       s.i2 += ui * ui;
                       s.d += ud;
                       s.d2 += ud * ud;
                       std::int64_t dev = w.descents - w.even_cards;
                       if (dev < 0) dev = -dev;
                       if (dev > s.max_dev) s.max_dev = dev;
                   });
        partials[r] = s;
    };
    if (ranges.size() == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t r = 0; r < ranges.size(); ++r) pool.emplace_back(work, r);
        for (auto& t : pool) t.join();
    }

    BigInt sa, sa2, sc, sc2, sac, si, si2, sd, sd2;
    std::int64_t max_dev = 0;
    for (const auto& s : partials) {
        sa += BigInt(s.a);
        sa2 += BigInt(s.a2);
        sc += BigInt(s.c);
        sc2 += BigInt(s.c2);
        sac += BigInt(s.ac);
        si += BigInt(s.i);
        si2 += BigInt(s.i2);
        sd += BigInt(s.d);
        sd2 += BigInt(s.d2);
        max_dev = std::max(max_dev, s.max_dev);
    }

    const BigInt total(states);
    auto mean_of = [&](const BigInt& sum) { return Rational(sum, total); };
    auto var_of = [&](const BigInt& sum, const BigInt& sum_sq) {
        Rational mean(sum, total);
        return Rational(sum_sq, total) - mean * mean;
    };

    ComponentMoments out;
    out.mean_A = mean_of(sa);
    out.var_A = var_of(sa, sa2);
    out.mean_C = mean_of(sc);
    out.var_C = var_of(sc, sc2);
    out.cov_AC = Rational(sac, total) - out.mean_A * out.mean_C;
    out.mean_I = mean_of(si);
    out.var_I = var_of(si, si2);
    out.mean_d = mean_of(sd);
    out.var_d = var_of(sd, sd2);
    out.coupling_max_abs_dev = max_dev;
    return out;
}

std::size_t AuditReport::finding_count() const {
    std::size_t count = 0;
    for (const auto& p : points) {
        for (const auto& c : p.comparisons) {
            if (!c.match) ++count;
        }
    }
    return count;
}

bool AuditReport::has_printed_finding() const {
    for (const auto& p : points) {
        for (const auto& c : p.comparisons) {
            if (!c.match && c.printed_formula) return true;
        }
    }
    return false;
}

AuditReport audit_formulas(const std::vector<std::pair<std::uint64_t, std::uint32_t>>& grid,
                           const EnumerationOptions& options) {
    AuditReport report;
    for (const auto& [n, m] : grid) {
        ShuffleSpec spec(n, m);
        PointAudit point;
        point.n = n;
        point.m = m;
        point.states = word_state_count(spec);
        try {
            point.oracle = enumerate_component_moments(spec, options);
        } catch (const BudgetExceeded& e) {
            report.skipped.push_back("n=" + std::to_string(n) + " m=" + std::to_string(m) + ": " +
                                     e.what());
            continue;
        }

        const auto formulas = theory::inversion_moments(n, m);
        const auto [desc_mean, desc_var] = theory::descent_moments(n, m);
        auto add = [&](std::string quantity, std::string claim, bool printed,
                       const Rational& claimed, const Rational& oracle_value) {
            AuditComparison c;
            c.quantity = std::move(quantity);
            c.claim = std::move(claim);
            c.printed_formula = printed;
            c.claimed = claimed;
            c.oracle = oracle_value;
            c.difference = claimed - oracle_value;
            c.match = c.difference.is_zero();
            point.comparisons.push_back(std::move(c));
        };

        add("inversion_mean", "mean_inversions", true, formulas.mean, point.oracle.mean_I);
        add("inversion_var_A", "var_A", true, formulas.var_A, point.oracle.var_A);
        add("inversion_var_C", "var_C", true, formulas.var_C, point.oracle.var_C);
        add("inversion_cov", "cov_printed", true, formulas.cov_printed, point.oracle.cov_AC);
        add("inversion_cov", "cov_corrected", false, formulas.cov_corrected, point.oracle.cov_AC);
        add("inversion_var_total", "var_total_printed", true, formulas.var_total_printed,
            point.oracle.var_I);
        add("inversion_var_total", "var_total_from_components", false,
            formulas.var_total_from_components, point.oracle.var_I);
        if (m == 1) {
            add("inversion_var_total", "unimodal_variance_claimed", true,
                theory::unimodal_inversion_variance_claimed(n), point.oracle.var_I);
        }
        add("descent_mean", "descent_mean", true, desc_mean, point.oracle.mean_d);
        add("descent_var", "descent_var_formula", true, desc_var, point.oracle.var_d);
        if (m == 1) {
            add("descent_var", "descent_var_m1", true, Rational(BigInt(n - 1), BigInt(std::int64_t{4})),
                point.oracle.var_d);
        }
        report.points.push_back(std::move(point));
    }
    return report;
}

}  // namespace shelflab::oracle
