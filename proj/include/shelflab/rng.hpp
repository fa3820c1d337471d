#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace shelflab {

// Reproducibility contract
// ------------------------
// Every random draw in this project comes from a xoshiro256++ engine whose
// 256-bit state is filled by four outputs of a SplitMix64 generator. The
// SplitMix64 start state for chunk i of a run with seed s is
//
//     substream_seed(s, i) = mix64(s ^ mix64(i + 0x9E3779B97F4A7C15))
//
// where mix64 is the SplitMix64 output finalizer. Chunked runs are therefore
// reproducible bit for bit regardless of how chunks are assigned to threads,
// and the same construction can be reimplemented elsewhere to replay a run.

constexpr std::uint64_t kGolden64 = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t chunk_index) {
    return mix64(seed ^ mix64(chunk_index + kGolden64));
}

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t state) : state_(state) {}
    std::uint64_t next() {
        std::uint64_t z = (state_ += kGolden64);
        return mix64(z);
    }

private:
    std::uint64_t state_;
};

// xoshiro256++ (Blackman & Vigna, public domain reference implementation).
class Xoshiro256PlusPlus {
public:
    explicit Xoshiro256PlusPlus(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& w : s_) w = sm.next();
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = kGolden64;
    }

    std::uint64_t next() {
        const std::uint64_t result = std::rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = std::rotl(s_[3], 45);
        return result;
    }

private:
    std::array<std::uint64_t, 4> s_;
};

// Source of raw 64-bit draws. Samplers consume a fixed number of draws per
// output so that substituting a replay source reproduces a run exactly.
class RandomSource {
public:
    virtual ~RandomSource() = default;
    virtual std::uint64_t next_u64() = 0;
};

class EngineSource final : public RandomSource {
public:
    explicit EngineSource(std::uint64_t seed) : engine_(seed) {}
    explicit EngineSource(Xoshiro256PlusPlus engine) : engine_(engine) {}
    std::uint64_t next_u64() override { return engine_.next(); }

private:
    Xoshiro256PlusPlus engine_;
};

// Replays a fixed sequence of draws; used by tests to drive samplers along a
// prescribed path.
class ReplaySource final : public RandomSource {
public:
    explicit ReplaySource(std::vector<std::uint64_t> values) : values_(std::move(values)) {}
    std::uint64_t next_u64() override {
        if (pos_ >= values_.size()) throw std::out_of_range("ReplaySource exhausted");
        return values_[pos_++];
    }

private:
    std::vector<std::uint64_t> values_;
    std::size_t pos_ = 0;
};

// Maps a raw draw to the open interval (0,1) using the top 53 bits, offset by
// half an ulp so 0 and 1 are never produced.
inline double unit_open(std::uint64_t r) {
    return (static_cast<double>(r >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace shelflab
