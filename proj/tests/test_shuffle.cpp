#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "shelflab/shuffle.hpp"
#include "shelflab/rng.hpp"

#include <cstdint>
#include <vector>

using namespace shelflab;

namespace {

const std::vector<std::uint32_t> kPaperWord = {2, 1, 3, 2, 2, 4, 4, 1, 2, 1, 3, 3};
const std::vector<std::uint32_t> kPaperPerm = {2, 8, 10, 9, 5, 4, 1, 3, 11, 12, 7, 6};

RandomWord random_word(SplitMix64& rng, std::uint64_t n, std::uint32_t m) {
    std::vector<std::uint32_t> letters(n);
    for (auto& x : letters) x = static_cast<std::uint32_t>(rng.next() % (2 * m)) + 1;
    return RandomWord(std::move(letters), m);
}

}  // namespace

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(ShuffleSpec(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(ShuffleSpec(5, 0), std::invalid_argument);
    CHECK_NOTHROW(ShuffleSpec(1, 1));
    CHECK(ShuffleSpec(5, 3).pile_count() == 6);
    CHECK(ShuffleSpec(5, 3).pile_prob(1) == Rational(1, 6));

    // bias vectors must have length 2m, nonnegative entries, exact sum 1
    CHECK_NOTHROW(ShuffleSpec(3, 1, {Rational(1, 4), Rational(3, 4)}));
    CHECK_THROWS_AS(ShuffleSpec(3, 1, {Rational(1)}), std::invalid_argument);
    CHECK_THROWS_AS(ShuffleSpec(3, 1, {Rational(-1, 4), Rational(5, 4)}), std::invalid_argument);
    CHECK_THROWS_AS(ShuffleSpec(3, 1, {Rational(1, 4), Rational(1, 4)}), std::invalid_argument);
    CHECK_NOTHROW(ShuffleSpec(3, 1, {Rational(1), Rational(0)}));
}

TEST_CASE("word validation") {
    CHECK_THROWS_AS(RandomWord({}, 1), std::invalid_argument);
    CHECK_THROWS_AS(RandomWord({0, 1}, 1), std::invalid_argument);
    CHECK_THROWS_AS(RandomWord({3}, 1), std::invalid_argument);
    CHECK_NOTHROW(RandomWord({1, 2, 2}, 1));
}

TEST_CASE("letter sampler thresholds") {
    LetterSampler uniform(ShuffleSpec(4, 1));
    CHECK(uniform.letter_for_raw(0) == 1);
    CHECK(uniform.letter_for_raw((1ull << 63) - 1) == 1);
    CHECK(uniform.letter_for_raw(1ull << 63) == 2);
    CHECK(uniform.letter_for_raw(UINT64_MAX) == 2);

    LetterSampler biased(ShuffleSpec(4, 1, {Rational(1, 4), Rational(3, 4)}));
    CHECK(biased.letter_for_raw(0) == 1);
    CHECK(biased.letter_for_raw((1ull << 62) - 1) == 1);
    CHECK(biased.letter_for_raw(1ull << 62) == 2);

    // all mass on pile 1: letter 2 unreachable for every raw draw
    LetterSampler degenerate(ShuffleSpec(4, 1, {Rational(1), Rational(0)}));
    CHECK(degenerate.letter_for_raw(0) == 1);
    CHECK(degenerate.letter_for_raw(UINT64_MAX) == 1);
    CHECK_THROWS_AS(degenerate.raw_for_letter(2), std::invalid_argument);
}

TEST_CASE("sample_word stays in range and consumes one draw per letter") {
    ShuffleSpec spec(5, 1);
    EngineSource source(substream_seed(42, 0));
    for (int trial = 0; trial < 200; ++trial) {
        RandomWord w = sample_word(spec, source);
        for (auto x : w.letters) CHECK((x == 1 || x == 2));
    }

    // exactly n draws: a replay source with n values is fully consumed
    LetterSampler sampler(spec);
    std::vector<std::uint64_t> five(5, sampler.raw_for_letter(1));
    ReplaySource replay(five);
    RandomWord w = sample_word(spec, replay);
    CHECK(w.letters == std::vector<std::uint32_t>(5, 1));
    CHECK_THROWS_AS(replay.next_u64(), std::out_of_range);
}

TEST_CASE("sample_word replays the worked example") {
    ShuffleSpec spec(12, 2);
    LetterSampler sampler(spec);
    std::vector<std::uint64_t> raws;
    for (auto letter : kPaperWord) raws.push_back(sampler.raw_for_letter(letter));
    ReplaySource replay(raws);
    RandomWord w = sample_word(spec, replay);
    CHECK(w.letters == kPaperWord);
    CHECK(word_to_permutation(w).one_line() == kPaperPerm);
}

TEST_CASE("degenerate bias always picks pile 1") {
    ShuffleSpec spec(3, 1, {Rational(1), Rational(0)});
    EngineSource source(substream_seed(7, 0));
    RandomWord w = sample_word(spec, source);
    CHECK(w.letters == std::vector<std::uint32_t>{1, 1, 1});
}

TEST_CASE("sampling is reproducible for a fixed seed") {
    ShuffleSpec spec(40, 5);
    EngineSource a(substream_seed(123, 0));
    EngineSource b(substream_seed(123, 0));
    for (int i = 0; i < 20; ++i) {
        CHECK(sample_word(spec, a).letters == sample_word(spec, b).letters);
    }
}

TEST_CASE("word_to_permutation matches the worked example") {
    RandomWord word(kPaperWord, 2);
    CHECK(word_to_permutation(word).one_line() == kPaperPerm);
    CHECK(pile_counts(word) == std::vector<std::uint64_t>{3, 4, 3, 2});
}

TEST_CASE("single-pile words") {
    RandomWord ones(std::vector<std::uint32_t>(7, 1), 1);
    CHECK(word_to_permutation(ones) == Permutation::identity(7));
    CHECK(pile_counts(ones) == std::vector<std::uint64_t>{7, 0});

    RandomWord twos(std::vector<std::uint32_t>(7, 2), 1);
    auto rev = word_to_permutation(twos);
    for (std::size_t i = 0; i < 7; ++i) CHECK(rev[i] == 7 - i);
}

TEST_CASE("outputs are bijections and construction is deterministic") {
    SplitMix64 rng(99);
    for (int trial = 0; trial < 500; ++trial) {
        std::uint32_t m = static_cast<std::uint32_t>(rng.next() % 6) + 1;
        std::uint64_t n = rng.next() % 80 + 1;
        RandomWord w = random_word(rng, n, m);
        Permutation p = word_to_permutation(w);
        CHECK(Permutation::is_valid_one_line(p.one_line()));
        CHECK(word_to_permutation(w) == p);
    }
}

TEST_CASE("permutation validation") {
    CHECK_THROWS_AS(Permutation::from_one_line({1, 1, 3}), std::invalid_argument);
    CHECK_THROWS_AS(Permutation::from_one_line({0, 1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(Permutation::from_one_line({2, 3, 4}), std::invalid_argument);
    CHECK_NOTHROW(Permutation::from_one_line({2, 3, 1}));
}

TEST_CASE("invert") {
    CHECK(invert(Permutation::identity(6)) == Permutation::identity(6));
    CHECK(invert(Permutation::from_one_line({2, 3, 1})) == Permutation::from_one_line({3, 1, 2}));
    SplitMix64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        std::uint32_t m = static_cast<std::uint32_t>(rng.next() % 4) + 1;
        RandomWord w = random_word(rng, rng.next() % 50 + 1, m);
        Permutation p = word_to_permutation(w);
        CHECK(invert(invert(p)) == p);
        // q[p[i]] = i, 1-based
        Permutation q = invert(p);
        for (std::size_t i = 0; i < p.size(); ++i) {
            CHECK(q[p[i] - 1] == i + 1);
        }
    }
}

TEST_CASE("is_unimodal") {
    CHECK(is_unimodal(Permutation::from_one_line({1, 3, 2})));
    CHECK(!is_unimodal(Permutation::from_one_line({2, 1, 3})));
    CHECK(is_unimodal(Permutation::identity(1)));
    CHECK(is_unimodal(Permutation::from_one_line({2, 1})));
}

TEST_CASE("every 1-shelf shuffle is unimodal, exhaustively to n = 10") {
    for (std::uint64_t n = 1; n <= 10; ++n) {
        for (std::uint64_t bits = 0; bits < (1ull << n); ++bits) {
            std::vector<std::uint32_t> letters(n);
            for (std::uint64_t i = 0; i < n; ++i) {
                letters[i] = ((bits >> i) & 1) ? 2 : 1;
            }
            CHECK(is_unimodal(word_to_permutation(RandomWord(letters, 1))));
        }
    }
}
