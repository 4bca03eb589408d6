#include "fgc/keystream.hpp"

#include <algorithm>
#include <cctype>

#include "fgc/error.hpp"

namespace fgc {

std::string to_decimal(u128 v) {
    if (v == 0) return "0";
    std::string out;
    while (v > 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

u128 parse_decimal_u128(std::string_view s) {
    if (s.empty()) throw ParseError("expected a decimal integer", 0);
    const u128 limit = ~u128{0};
    u128 v = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("expected a decimal digit", i);
        auto d = static_cast<unsigned>(c - '0');
        if (v > (limit - d) / 10) throw ParseError("integer does not fit in 128 bits", i);
        v = v * 10 + d;
    }
    return v;
}

std::string to_hex64(std::uint64_t v) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out = "0x";
    for (int shift = 60; shift >= 0; shift -= 4) out.push_back(digits[(v >> shift) & 0xF]);
    return out;
}

std::uint64_t parse_hex64(std::string_view s) {
    if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) s.remove_prefix(2);
    if (s.empty() || s.size() > 16) throw ParseError("expected up to 16 hex digits", 0);
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = static_cast<char>(std::tolower(static_cast<unsigned char>(s[i])));
        int d;
        if (c >= '0' && c <= '9')
            d = c - '0';
        else if (c >= 'a' && c <= 'f')
            d = c - 'a' + 10;
        else
            throw ParseError("expected a hex digit", i);
        v = (v << 4) | static_cast<std::uint64_t>(d);
    }
    return v;
}

LcgParams::LcgParams(unsigned m_, u128 beta_, u128 gamma_) : m(m_) {
    if (m < 1 || m > 128) throw PreconditionError("modulus exponent must be in [1, 128]");
    beta = reduce(beta_);
    gamma = reduce(gamma_);
}

u128 lcg_next(const LcgParams& p, u128 x) { return p.reduce(p.beta * x + p.gamma); }

bool has_max_period(const LcgParams& p) {
    bool beta_odd = (p.beta & 1) == 1;
    bool beta_mod4 = p.m < 2 || (p.beta & 3) == 1;
    bool gamma_odd = (p.gamma & 1) == 1;
    return beta_odd && beta_mod4 && gamma_odd;
}

std::vector<u128> keystream(const LcgParams& p, u128 alpha, std::size_t z) {
    std::vector<u128> out;
    out.reserve(z);
    u128 x = p.reduce(alpha);
    for (std::size_t k = 0; k < z; ++k) {
        out.push_back(x);
        x = lcg_next(p, x);
    }
    return out;
}

std::uint64_t AutFamily::member_seed(u128 index) const {
    auto lo = static_cast<std::uint64_t>(index);
    auto hi = static_cast<std::uint64_t>(index >> 64);
    std::uint64_t rotated = (hi << 32) | (hi >> 32);
    return splitmix64(master_seed ^ lo ^ rotated);
}

FactoredAutomorphism derive_automorphism(const AutFamily& fam, u128 index) {
    Prg prg(fam.member_seed(index));
    return random_whitehead_automorphism(prg, fam.rank);
}

std::string format_lcg_params(const LcgParams& p, std::uint64_t seed) {
    return "m = " + std::to_string(p.m) + "\nbeta = " + to_decimal(p.beta) + "\ngamma = " + to_decimal(p.gamma) +
           "\nseed = " + to_hex64(seed) + "\n";
}

}  // namespace fgc
