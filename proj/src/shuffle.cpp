#include "shelflab/shuffle.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace shelflab {

ShuffleSpec::ShuffleSpec(std::uint64_t n, std::uint32_t m) : n_(n), m_(m) { validate(); }

ShuffleSpec::ShuffleSpec(std::uint64_t n, std::uint32_t m, std::vector<Rational> pile_probs)
    : n_(n), m_(m), pile_probs_(std::move(pile_probs)) {
    validate();
}

void ShuffleSpec::validate() const {
    if (n_ < 1) throw std::invalid_argument("ShuffleSpec: n must be at least 1");
    if (n_ > kMaxDeckSize) throw std::invalid_argument("ShuffleSpec: n exceeds supported deck size");
    if (m_ < 1) throw std::invalid_argument("ShuffleSpec: m must be at least 1");
    if (m_ > (1u << 30)) throw std::invalid_argument("ShuffleSpec: m too large");
    if (!pile_probs_) return;
    const auto& p = *pile_probs_;
    if (p.size() != pile_count()) {
        throw std::invalid_argument("ShuffleSpec: pile_probs has " + std::to_string(p.size()) +
                                    " entries, expected " + std::to_string(pile_count()));
    }
    Rational sum;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i].is_negative()) {
            throw std::invalid_argument("ShuffleSpec: pile_probs[" + std::to_string(i + 1) +
                                        "] = " + p[i].to_string() + " is negative");
        }
        sum += p[i];
    }
    if (sum != Rational(1)) {
        throw std::invalid_argument("ShuffleSpec: pile_probs sum to " + sum.to_string() +
                                    ", expected exactly 1");
    }
}

Rational ShuffleSpec::pile_prob(std::uint32_t k) const {
    if (k < 1 || k > pile_count()) throw std::out_of_range("ShuffleSpec: pile index out of range");
    if (pile_probs_) return (*pile_probs_)[k - 1];
    return Rational(1, static_cast<std::int64_t>(pile_count()));
}

RandomWord::RandomWord(std::vector<std::uint32_t> letters_in, std::uint32_t m_in)
    : letters(std::move(letters_in)), m(m_in) {
    if (m < 1) throw std::invalid_argument("RandomWord: m must be at least 1");
    if (letters.empty()) throw std::invalid_argument("RandomWord: empty word");
    for (std::uint32_t x : letters) {
        if (x < 1 || x > 2 * m) {
            throw std::invalid_argument("RandomWord: letter " + std::to_string(x) +
                                        " outside [1, " + std::to_string(2 * m) + "]");
        }
    }
}

bool Permutation::is_valid_one_line(const std::vector<std::uint32_t>& v) {
    const std::size_t n = v.size();
    std::vector<bool> seen(n, false);
    for (std::uint32_t label : v) {
        if (label < 1 || label > n || seen[label - 1]) return false;
        seen[label - 1] = true;
    }
    return true;
}

Permutation Permutation::from_one_line(std::vector<std::uint32_t> one_line) {
    if (!is_valid_one_line(one_line)) {
        throw std::invalid_argument("Permutation: not a bijection of 1..n");
    }
    return Permutation(std::move(one_line));
}

Permutation Permutation::identity(std::uint64_t n) {
    std::vector<std::uint32_t> v(n);
    for (std::uint64_t i = 0; i < n; ++i) v[i] = static_cast<std::uint32_t>(i + 1);
    return Permutation(std::move(v));
}

Permutation Permutation::trusted(std::vector<std::uint32_t> one_line) {
    return Permutation(std::move(one_line));
}

LetterSampler::LetterSampler(const ShuffleSpec& spec) {
    const std::uint32_t piles = spec.pile_count();
    thresholds_.resize(piles);
    const unsigned __int128 two64 = static_cast<unsigned __int128>(1) << 64;
    Rational cum;
    for (std::uint32_t k = 1; k <= piles; ++k) {
        cum += spec.pile_prob(k);
        // floor(2^64 * cum) computed exactly
        BigInt scaled = BigInt::divmod(cum.num() << 64, cum.den()).first;
        thresholds_[k - 1] = scaled.to_uint128();
    }
    thresholds_[piles - 1] = two64;  // cum is exactly 1 here; pin the top
}

std::uint32_t LetterSampler::letter_for_raw(std::uint64_t r) const {
    const unsigned __int128 rv = r;
    auto it = std::upper_bound(thresholds_.begin(), thresholds_.end(), rv);
    return static_cast<std::uint32_t>(it - thresholds_.begin()) + 1;
}

std::uint32_t LetterSampler::draw(RandomSource& source) const {
    return letter_for_raw(source.next_u64());
}

std::uint64_t LetterSampler::raw_for_letter(std::uint32_t k) const {
    if (k < 1 || k > thresholds_.size()) throw std::out_of_range("LetterSampler: bad letter");
    const unsigned __int128 lo = k == 1 ? 0 : thresholds_[k - 2];
    if (lo >= thresholds_[k - 1]) {
        throw std::invalid_argument("LetterSampler: letter has zero probability");
    }
    return static_cast<std::uint64_t>(lo);
}

RandomWord sample_word(const ShuffleSpec& spec, RandomSource& source) {
    LetterSampler sampler(spec);
    std::vector<std::uint32_t> letters(spec.n());
    for (auto& x : letters) x = sampler.draw(source);
    return RandomWord(std::move(letters), spec.m());
}

namespace detail {

void build_permutation(const std::vector<std::uint32_t>& letters, std::uint32_t m,
                       std::vector<std::uint32_t>& perm, std::vector<std::uint64_t>& counts,
                       std::vector<std::uint64_t>& block_starts) {
    const std::size_t n = letters.size();
    const std::uint32_t piles = 2 * m;
    counts.assign(piles, 0);
    for (std::uint32_t x : letters) ++counts[x - 1];

    // Cursor per pile: odd piles fill forward (ascending card labels), even
    // piles fill backward from the end of their block (descending).
    std::vector<std::uint64_t> cursor(piles);
    block_starts.clear();
    std::uint64_t offset = 0;
    for (std::uint32_t k = 0; k < piles; ++k) {
        if (counts[k] > 0) block_starts.push_back(offset);
        cursor[k] = (k % 2 == 0) ? offset : offset + counts[k] - 1;
        offset += counts[k];
    }

    perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint32_t k = letters[i] - 1;
        const std::uint32_t card = static_cast<std::uint32_t>(i + 1);
        if (k % 2 == 0) {
            perm[cursor[k]++] = card;
        } else {
            perm[cursor[k]--] = card;
        }
    }
}

}  // namespace detail

Permutation word_to_permutation(const RandomWord& word) {
    std::vector<std::uint32_t> perm;
    std::vector<std::uint64_t> counts, block_starts;
    detail::build_permutation(word.letters, word.m, perm, counts, block_starts);
    return Permutation::trusted(std::move(perm));
}

std::vector<std::uint64_t> pile_counts(const RandomWord& word) {
    std::vector<std::uint64_t> counts(2 * word.m, 0);
    for (std::uint32_t x : word.letters) ++counts[x - 1];
    return counts;
}

Permutation invert(const Permutation& p) {
    std::vector<std::uint32_t> q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        q[p[i] - 1] = static_cast<std::uint32_t>(i + 1);
    }
    return Permutation::trusted(std::move(q));
}

bool is_unimodal(const Permutation& p) {
    for (std::size_t i = 1; i + 1 < p.size(); ++i) {
        if (p[i - 1] > p[i] && p[i + 1] > p[i]) return false;
    }
    return true;
}

}  // namespace shelflab
