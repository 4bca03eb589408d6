#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace fgc {

// Source of 64-bit draws for the randomized procedures. Sampling code only
// ever calls next(), so tests can script exact draw sequences.
class DrawSource {
public:
    virtual ~DrawSource() = default;
    virtual std::uint64_t next() = 0;

    // Value in [0, n). Plain modulo; the bias is irrelevant at these ranges and
    // keeps the mapping bit-exact across implementations.
    std::uint64_t below(std::uint64_t n) { return next() % n; }
};

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// One splitmix64 step from `state`: the first output of Prg(state).
constexpr std::uint64_t splitmix64(std::uint64_t state) { return splitmix64_mix(state + kGoldenGamma); }

class Prg final : public DrawSource {
public:
    using result_type = std::uint64_t;

    explicit Prg(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() override {
        state_ += kGoldenGamma;
        return splitmix64_mix(state_);
    }

    std::uint64_t operator()() { return next(); }
    static constexpr std::uint64_t min() { return 0; }
    static constexpr std::uint64_t max() { return std::numeric_limits<std::uint64_t>::max(); }

    std::uint64_t state() const { return state_; }

private:
    std::uint64_t state_;
};

// Replays a fixed list of draws, then repeats the last one.
class ScriptedDraws final : public DrawSource {
public:
    explicit ScriptedDraws(std::vector<std::uint64_t> draws) : draws_(std::move(draws)) {}

    std::uint64_t next() override {
        if (draws_.empty()) return 0;
        std::uint64_t v = draws_[pos_ < draws_.size() ? pos_ : draws_.size() - 1];
        ++pos_;
        return v;
    }

    std::size_t consumed() const { return pos_; }

private:
    std::vector<std::uint64_t> draws_;
    std::size_t pos_ = 0;
};

}  // namespace fgc
