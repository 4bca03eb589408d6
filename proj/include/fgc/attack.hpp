#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fgc/matrix.hpp"
#include "fgc/nielsen.hpp"
#include "fgc/word.hpp"

namespace fgc {

inline constexpr std::size_t kBallCap = 100000;
inline constexpr std::uint64_t kSubsetCap = 10000000;

// All non-trivial reduced words of length <= L over rank generators, sorted
// shortlex. Throws CapExceeded (naming the required size) above `cap`.
std::vector<Word> enumerate_ball(int rank, std::size_t L, std::size_t cap = kBallCap);

// Sum_{k=1..L} 2q (2q-1)^(k-1).
BigInt ball_size(int rank, std::size_t L);
BigInt binomial(const BigInt& n, std::size_t k);

struct AttackConfig {
    std::size_t L = 2;  // ball radius
    std::size_t N = 2;  // target rank
    std::size_t K = 2;  // subset size
    std::uint64_t max_subsets = kSubsetCap;

    // Throws PreconditionError unless K >= N >= 2 and L >= 1, CapExceeded when
    // max_subsets is above kSubsetCap.
    void validate() const;
};

struct AttackCandidate {
    GeneratingTuple basis;     // canonical minimal basis
    std::uint64_t first_seen;  // 1-based subset index
};

struct AttackReport {
    std::size_t ball = 0;
    BigInt total_subsets;
    std::uint64_t subsets_examined = 0;
    bool complete = false;
    std::vector<AttackCandidate> candidates;  // ordered by first_seen
    bool oracle_given = false;
    std::optional<std::uint64_t> hit_index;  // subsets examined at the first hit
    std::chrono::milliseconds elapsed{0};
};

// Runs through K-subsets of the ball in colex order, Nielsen-reduces each and
// keeps every size-N result. With `known`, reports where its canonical basis
// first showed up.
AttackReport subset_attack(int rank, const AttackConfig& cfg, const std::optional<GeneratingTuple>& known = std::nullopt,
                           unsigned jobs = 1);

// Report text without timing, so repeated runs compare byte for byte.
std::string format_report(const AttackReport& report, const Alphabet& alphabet);

// Lower bound on the number of primitive elements of length k in F_2:
// 8 * 3^((k-3)/2) for odd k, 4 * 3^((k-2)/2) for even k, 8/3 for k = 1.
Rational primitive_lower_bound_rank2(std::size_t k);

// Exponential bases (2q-3, 2q-2) bracketing the primitive count for q >= 3.
// The constants in front are unknown, so only the bases are returned.
std::pair<int, int> primitive_growth_rates(int rank);

struct CostEstimate {
    BigInt ball;
    BigInt subsets;
    BigInt per_subset;  // L^2
};

CostEstimate attack_cost_estimate(int rank, const AttackConfig& cfg);
std::string format_estimate(const CostEstimate& e);

}  // namespace fgc
