#include "shelflab/statistics.hpp"

#include <stdexcept>

namespace shelflab {

std::string to_string(StatisticKind kind) {
    switch (kind) {
        case StatisticKind::inversions: return "inversions";
        case StatisticKind::descents: return "descents";
        case StatisticKind::pair_sum: return "pair_sum";
        case StatisticKind::even_cards: return "even_cards";
    }
    throw std::logic_error("unknown statistic kind");
}

StatisticKind statistic_from_string(const std::string& name) {
    if (name == "inversions") return StatisticKind::inversions;
    if (name == "descents") return StatisticKind::descents;
    if (name == "pair_sum") return StatisticKind::pair_sum;
    if (name == "even_cards") return StatisticKind::even_cards;
    throw std::invalid_argument("unknown statistic '" + name +
                                "'; expected inversions, descents, pair_sum or even_cards");
}

std::int64_t inversions_naive(const Permutation& p) {
    const auto& v = p.one_line();
    std::int64_t count = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            if (v[i] > v[j]) ++count;
        }
    }
    return count;
}

namespace {

// Fenwick tree over values 1..n stored in buf[1..n]; buf[0] unused.
inline void fenwick_add(std::vector<std::int64_t>& buf, std::size_t i) {
    for (; i < buf.size(); i += i & (~i + 1)) ++buf[i];
}

inline std::int64_t fenwick_prefix(const std::vector<std::int64_t>& buf, std::size_t i) {
    std::int64_t s = 0;
    for (; i > 0; i -= i & (~i + 1)) s += buf[i];
    return s;
}

}  // namespace

namespace detail {

std::int64_t inversions_fast_into(const std::vector<std::uint32_t>& perm,
                                  std::vector<std::int64_t>& fenwick) {
    fenwick.assign(perm.size() + 1, 0);
    std::int64_t count = 0;
    for (std::size_t j = 0; j < perm.size(); ++j) {
        // values seen so far that exceed perm[j]
        count += static_cast<std::int64_t>(j) - fenwick_prefix(fenwick, perm[j]);
        fenwick_add(fenwick, perm[j]);
    }
    return count;
}

std::int64_t pair_sum_into(const std::vector<std::uint32_t>& letters, std::uint32_t m,
                           StatScratch& scratch) {
    scratch.fenwick.assign(2 * m + 1, 0);
    scratch.counts.assign(2 * m, 0);
    std::int64_t count = 0;
    for (std::size_t i = 0; i < letters.size(); ++i) {
        count += static_cast<std::int64_t>(i) - fenwick_prefix(scratch.fenwick, letters[i]);
        fenwick_add(scratch.fenwick, letters[i]);
        ++scratch.counts[letters[i] - 1];
    }
    for (std::uint32_t k = 1; k < 2 * m; k += 2) {
        const std::int64_t c = static_cast<std::int64_t>(scratch.counts[k]);
        count += c * (c - 1) / 2;
    }
    return count;
}

DescentDecomposition decompose_into(const std::vector<std::uint32_t>& letters, std::uint32_t m,
                                    StatScratch& scratch) {
    build_permutation(letters, m, scratch.perm, scratch.counts, scratch.block_starts);

    std::int64_t even_run = 0;
    std::int64_t even_cards = 0;
    std::int64_t nonempty_even = 0;
    for (std::uint32_t k = 1; k < 2 * m; k += 2) {  // k indexes pile k+1, the even labels
        const std::int64_t c = static_cast<std::int64_t>(scratch.counts[k]);
        even_cards += c;
        if (c > 0) {
            even_run += c - 1;
            ++nonempty_even;
        }
    }

    std::int64_t boundary = 0;
    for (std::size_t b = 1; b < scratch.block_starts.size(); ++b) {
        const std::uint64_t o = scratch.block_starts[b];
        if (scratch.perm[o - 1] > scratch.perm[o]) ++boundary;
    }

    std::int64_t total = 0;
    for (std::size_t i = 0; i + 1 < scratch.perm.size(); ++i) {
        if (scratch.perm[i] > scratch.perm[i + 1]) ++total;
    }

    return DescentDecomposition(even_run, boundary, even_cards, nonempty_even, total, m);
}

}  // namespace detail

std::int64_t inversions_fast(const Permutation& p) {
    std::vector<std::int64_t> fenwick;
    return detail::inversions_fast_into(p.one_line(), fenwick);
}

std::int64_t descents(const Permutation& p) {
    const auto& v = p.one_line();
    std::int64_t count = 0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        if (v[i] > v[i + 1]) ++count;
    }
    return count;
}

std::int64_t word_letter_inversions(const RandomWord& word) {
    // Fenwick over the alphabet [1, 2m]: for each position, count earlier
    // letters strictly greater.
    std::vector<std::int64_t> fenwick(2 * word.m + 1, 0);
    std::int64_t count = 0;
    for (std::size_t i = 0; i < word.letters.size(); ++i) {
        count += static_cast<std::int64_t>(i) - fenwick_prefix(fenwick, word.letters[i]);
        fenwick_add(fenwick, word.letters[i]);
    }
    return count;
}

std::int64_t equal_even_letter_pairs(const RandomWord& word) {
    std::vector<std::int64_t> counts(2 * word.m, 0);
    for (std::uint32_t x : word.letters) ++counts[x - 1];
    std::int64_t pairs = 0;
    for (std::uint32_t k = 1; k < 2 * word.m; k += 2) {
        pairs += counts[k] * (counts[k] - 1) / 2;
    }
    return pairs;
}

std::int64_t pair_sum_inversions(const RandomWord& word) {
    return word_letter_inversions(word) + equal_even_letter_pairs(word);
}

std::int64_t even_card_count(const RandomWord& word) {
    std::int64_t count = 0;
    for (std::uint32_t x : word.letters) count += (x % 2 == 0);
    return count;
}

DescentDecomposition::DescentDecomposition(std::int64_t even_run, std::int64_t boundary,
                                           std::int64_t even_cards, std::int64_t nonempty_even,
                                           std::int64_t total, std::uint32_t m)
    : even_run_descents(even_run),
      boundary_descents(boundary),
      even_card_count(even_cards),
      nonempty_even_piles(nonempty_even),
      total_descents(total) {
    const std::int64_t two_m = 2 * static_cast<std::int64_t>(m);
    if (total != even_run + boundary) {
        throw std::logic_error("DescentDecomposition: total != even_run + boundary");
    }
    if (boundary < 0 || boundary > two_m - 1) {
        throw std::logic_error("DescentDecomposition: boundary descents outside [0, 2m-1]");
    }
    if (nonempty_even < 0 || nonempty_even > two_m / 2) {
        throw std::logic_error("DescentDecomposition: nonempty even piles exceed m");
    }
    const std::int64_t dev = total - even_cards;
    if (dev > 2 * two_m - 1 || dev < -(2 * two_m - 1)) {
        throw std::logic_error("DescentDecomposition: |d - B| exceeds 4m-1");
    }
}

DescentDecomposition descent_decomposition(const RandomWord& word) {
    StatScratch scratch;
    return detail::decompose_into(word.letters, word.m, scratch);
}

double kernel_h(const KernelPoint& a, const KernelPoint& b, std::uint32_t m) {
    const std::uint32_t piles = 2 * m;
    if (a.x < 1 || a.x > piles || b.x < 1 || b.x > piles) {
        throw std::invalid_argument("kernel_h: letter outside [1, 2m]");
    }
    if (!(a.u > 0.0 && a.u < 1.0) || !(b.u > 0.0 && b.u < 1.0)) {
        throw std::invalid_argument("kernel_h: u outside (0, 1)");
    }
    if (a.u == b.u && a.x != b.x) {
        throw std::invalid_argument("kernel_h: tied u-components with distinct letters");
    }
    bool indicator = false;
    if (a.x > b.x) {
        indicator = a.u < b.u;
    } else if (a.x < b.x) {
        indicator = a.u > b.u;
    } else {
        indicator = a.x % 2 == 0;
    }
    return indicator ? 0.5 : -0.5;
}

double h1(const KernelPoint& z, std::uint32_t m) {
    const std::uint32_t piles = 2 * m;
    if (z.x < 1 || z.x > piles) throw std::invalid_argument("h1: letter outside [1, 2m]");
    const double tm = static_cast<double>(piles);
    return (z.x - 1) / tm * (1.0 - z.u) + (piles - z.x) / tm * z.u +
           (z.x % 2 == 0 ? 1.0 / tm : 0.0) - 0.5;
}

}  // namespace shelflab
