#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "shelflab/rational.hpp"
#include "shelflab/rng.hpp"

namespace shelflab {

// Parameters of a shelf shuffle: n cards dropped into 2m piles, odd piles
// kept ascending, even piles reversed, piles concatenated in order. An
// optional probability vector biases the pile choice; absent means uniform.
//
// Labels and positions are 1-based everywhere in the public interface.
class ShuffleSpec {
public:
    ShuffleSpec(std::uint64_t n, std::uint32_t m);
    ShuffleSpec(std::uint64_t n, std::uint32_t m, std::vector<Rational> pile_probs);

    std::uint64_t n() const { return n_; }
    std::uint32_t m() const { return m_; }
    std::uint32_t pile_count() const { return 2 * m_; }
    bool is_biased() const { return pile_probs_.has_value(); }
    const std::optional<std::vector<Rational>>& pile_probs() const { return pile_probs_; }

    // Probability of pile k (1-based); 1/(2m) in the uniform case.
    Rational pile_prob(std::uint32_t k) const;

    // Largest supported deck size: card labels and positions fit in 32 bits
    // and n(n-1)/2 fits in a signed 64-bit statistic.
    static constexpr std::uint64_t kMaxDeckSize = 0xFFFFFFFFull;

private:
    std::uint64_t n_;
    std::uint32_t m_;
    std::optional<std::vector<Rational>> pile_probs_;
    void validate() const;
};

// The letters X_1..X_n assigning each card to a pile.
struct RandomWord {
    std::vector<std::uint32_t> letters;  // each in [1, 2m]
    std::uint32_t m = 0;

    RandomWord(std::vector<std::uint32_t> letters_in, std::uint32_t m_in);
    std::uint64_t n() const { return letters.size(); }
};

// One-line notation: position i (1-based) holds card label one_line()[i-1].
class Permutation {
public:
    static Permutation from_one_line(std::vector<std::uint32_t> one_line);
    static Permutation identity(std::uint64_t n);
    // Caller guarantees the vector is a bijection of 1..n.
    static Permutation trusted(std::vector<std::uint32_t> one_line);

    std::uint64_t size() const { return one_line_.size(); }
    std::uint32_t operator[](std::size_t pos) const { return one_line_[pos]; }
    const std::vector<std::uint32_t>& one_line() const { return one_line_; }

    bool operator==(const Permutation& o) const = default;

    static bool is_valid_one_line(const std::vector<std::uint32_t>& v);

private:
    explicit Permutation(std::vector<std::uint32_t> v) : one_line_(std::move(v)) {}
    std::vector<std::uint32_t> one_line_;
};

// Categorical pile sampler. Thresholds are fixed at construction:
// T_k = floor(2^64 * P(letter <= k)), and a raw draw r yields the smallest k
// with r < T_k. Exactly one 64-bit draw is consumed per letter, so streams
// replay identically across runs and chunk layouts. Zero-probability piles
// can never be produced, including the degenerate all-mass-on-one-pile case.
class LetterSampler {
public:
    explicit LetterSampler(const ShuffleSpec& spec);
    std::uint32_t draw(RandomSource& source) const;
    std::uint32_t letter_for_raw(std::uint64_t r) const;
    // Smallest raw draw mapping to letter k; lets a replay stream target a
    // prescribed word. Throws if k has zero probability.
    std::uint64_t raw_for_letter(std::uint32_t k) const;

private:
    std::vector<unsigned __int128> thresholds_;  // size 2m, last entry 2^64
};

RandomWord sample_word(const ShuffleSpec& spec, RandomSource& source);

Permutation word_to_permutation(const RandomWord& word);

// Entry k (1-based, returned 0-based at index k-1) counts letters equal to k.
std::vector<std::uint64_t> pile_counts(const RandomWord& word);

Permutation invert(const Permutation& p);

// True iff the permutation has no valley: no interior position i with
// p(i-1) > p(i) and p(i+1) > p(i).
bool is_unimodal(const Permutation& p);

namespace detail {
// Core builder used by the hot paths; buffers are resized and reused by the
// caller. block_starts receives the output offset of every nonempty pile
// block, in pile order.
void build_permutation(const std::vector<std::uint32_t>& letters, std::uint32_t m,
                       std::vector<std::uint32_t>& perm, std::vector<std::uint64_t>& counts,
                       std::vector<std::uint64_t>& block_starts);
}  // namespace detail

}  // namespace shelflab
