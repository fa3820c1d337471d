#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shelflab/shuffle.hpp"

namespace shelflab {

// Statistics a shuffle experiment or enumeration can track.
enum class StatisticKind { inversions, descents, pair_sum, even_cards };

std::string to_string(StatisticKind kind);
StatisticKind statistic_from_string(const std::string& name);

// Count of pairs i < j with p(i) > p(j) by direct pair enumeration. O(n^2);
// the reference every faster route is checked against.
std::int64_t inversions_naive(const Permutation& p);

// Same value in O(n log n) via a Fenwick tree over card labels.
std::int64_t inversions_fast(const Permutation& p);

// Count of positions i with p(i) > p(i+1).
std::int64_t descents(const Permutation& p);

// Word-level statistics. These never build the permutation; together with
// the permutation route they give two independent paths to the same values.
//
// Count of pairs i < k with X_i > X_k.
std::int64_t word_letter_inversions(const RandomWord& word);
// Count of pairs i < k with X_i = X_k and the common letter even.
std::int64_t equal_even_letter_pairs(const RandomWord& word);
// Sum of the two; equals the inversion count of the generated permutation
// pathwise, not merely in distribution.
std::int64_t pair_sum_inversions(const RandomWord& word);
// Count of letters with an even value.
std::int64_t even_card_count(const RandomWord& word);

// Split of the descent count of a shuffle: descents inside reversed even-pile
// runs plus descents at the junctions of consecutive nonempty pile blocks,
// with the even-card count whose binomial law couples to the total.
struct DescentDecomposition {
    std::int64_t even_run_descents;    // within even-pile descending runs
    std::int64_t boundary_descents;    // at block concatenation junctions
    std::int64_t even_card_count;      // cards placed into even piles
    std::int64_t nonempty_even_piles;
    std::int64_t total_descents;

    // Validates the pathwise identities on construction:
    //   total = even_run + boundary, boundary <= 2m-1,
    //   nonempty_even_piles <= m, |total - even_card_count| <= 4m-1.
    DescentDecomposition(std::int64_t even_run, std::int64_t boundary, std::int64_t even_cards,
                         std::int64_t nonempty_even, std::int64_t total, std::uint32_t m);
};

DescentDecomposition descent_decomposition(const RandomWord& word);

// One coordinate of the U-statistic representation: the pile letter together
// with the auxiliary continuous uniform that breaks within-pile ties.
struct KernelPoint {
    std::uint32_t x;  // in [1, 2m]
    double u;         // in (0, 1)
};

// Symmetric order-2 kernel; value is always -1/2 or +1/2. Equal u-components
// with distinct letters are rejected: the sampler draws u from a continuous
// law, so a tie can only come from caller error.
double kernel_h(const KernelPoint& a, const KernelPoint& b, std::uint32_t m);

// Conditional expectation of the kernel given one coordinate;
// |h1| <= 5/2 always.
double h1(const KernelPoint& z, std::uint32_t m);

// Reusable buffers for the sampling hot loops.
struct StatScratch {
    std::vector<std::uint32_t> perm;
    std::vector<std::uint64_t> counts;
    std::vector<std::uint64_t> block_starts;
    std::vector<std::int64_t> fenwick;
};

namespace detail {
std::int64_t inversions_fast_into(const std::vector<std::uint32_t>& perm,
                                  std::vector<std::int64_t>& fenwick);
std::int64_t pair_sum_into(const std::vector<std::uint32_t>& letters, std::uint32_t m,
                           StatScratch& scratch);
DescentDecomposition decompose_into(const std::vector<std::uint32_t>& letters, std::uint32_t m,
                                    StatScratch& scratch);
}  // namespace detail

}  // namespace shelflab
