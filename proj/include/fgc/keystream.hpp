#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fgc/automorphism.hpp"
#include "fgc/word.hpp"

namespace fgc {

using u128 = unsigned __int128;

std::string to_decimal(u128 v);
// Throws ParseError on anything but a non-negative decimal below 2^128.
u128 parse_decimal_u128(std::string_view s);
std::string to_hex64(std::uint64_t v);
std::uint64_t parse_hex64(std::string_view s);

// x -> beta x + gamma on Z / 2^m, 1 <= m <= 128.
struct LcgParams {
    unsigned m = 128;
    u128 beta = 5;
    u128 gamma = 3;

    LcgParams() = default;
    LcgParams(unsigned m, u128 beta, u128 gamma);

    u128 mask() const { return m >= 128 ? ~u128{0} : ((u128{1} << m) - 1); }
    u128 reduce(u128 x) const { return x & mask(); }
};

u128 lcg_next(const LcgParams& p, u128 x);

// Maximal period 2^m iff beta odd, beta = 1 mod 4 when m >= 2, gamma odd.
bool has_max_period(const LcgParams& p);

// x_1 = alpha, x_{k+1} = lcg_next(x_k); returns (x_1, ..., x_z).
std::vector<u128> keystream(const LcgParams& p, u128 alpha, std::size_t z);

// Lazily indexed family of automorphisms: member i is a pure function of
// (master_seed, i). Nothing is materialized.
struct AutFamily {
    std::uint64_t master_seed = 0;
    int rank = 2;
    unsigned m = 128;

    std::uint64_t member_seed(u128 index) const;
};

FactoredAutomorphism derive_automorphism(const AutFamily& fam, u128 index);

// "m = ", "beta = ", "gamma = ", "seed = " lines.
std::string format_lcg_params(const LcgParams& p, std::uint64_t seed);

}  // namespace fgc
