#include "fgc/otp.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "fgc/error.hpp"
#include "parallel.hpp"
#include "text_util.hpp"

namespace fgc {

namespace {

Word random_reduced_word(DrawSource& src, int rank, std::size_t length) {
    std::vector<Letter> letters;
    auto choices = static_cast<std::uint64_t>(2 * rank);
    while (letters.size() < length) {
        auto pick = src.below(letters.empty() ? choices : choices - 1);
        // Letters enumerated as x1, x1^-1, x2, ...; skip the inverse of the
        // previous letter.
        if (!letters.empty()) {
            auto forbidden = static_cast<std::uint64_t>(letters.back().inverse().rank_key());
            if (pick >= forbidden) ++pick;
        }
        letters.emplace_back(static_cast<int>(pick / 2) + 1, (pick & 1U) ? -1 : 1);
    }
    return Word(letters);
}

std::size_t locate(const GeneratingTuple& basis, const Word& w) {
    auto it = std::find(basis.begin(), basis.end(), w);
    return it == basis.end() ? basis.size() : static_cast<std::size_t>(it - basis.begin());
}

void check_schedule(const Schedule& schedule, std::size_t z, int rank) {
    if (schedule.size() < z)
        throw PreconditionError("schedule has " + std::to_string(schedule.size()) + " automorphisms but " +
                                std::to_string(z) + " positions need one");
    for (const auto& f : schedule)
        if (f.rank() != rank) throw PreconditionError("schedule automorphism rank differs from the alphabet");
}

}  // namespace

void CipherPublicParams::validate() const {
    if (alphabet.rank() < 2) throw PreconditionError("the free group needs rank at least 2");
    if (plaintext_alphabet.size() < 2) throw PreconditionError("the plaintext alphabet needs at least 2 symbols");
    for (std::size_t i = 0; i < plaintext_alphabet.size(); ++i) {
        char c = plaintext_alphabet[i];
        if (std::isspace(static_cast<unsigned char>(c)))
            throw PreconditionError("plaintext symbols must not be whitespace");
        if (plaintext_alphabet.find(c, i + 1) != std::string::npos)
            throw PreconditionError(std::string("duplicate plaintext symbol '") + c + "'");
    }
    if (family.rank != alphabet.rank()) throw PreconditionError("automorphism family rank differs from alphabet");
    if (!has_max_period(lcg)) throw PreconditionError("the linear congruence generator lacks maximal period");
}

std::optional<std::size_t> CipherPublicParams::symbol_index(char c) const {
    auto pos = plaintext_alphabet.find(c);
    if (pos == std::string::npos) return std::nullopt;
    return pos;
}

void CipherPrivateKey::validate(const CipherPublicParams& pub) const {
    if (basis.size() != pub.symbol_count())
        throw PreconditionError("key has " + std::to_string(basis.size()) + " basis words for " +
                                std::to_string(pub.symbol_count()) + " plaintext symbols");
    for (const auto& u : basis) {
        if (u.is_identity()) throw PreconditionError("key basis contains the identity");
        check_alphabet(u, pub.alphabet);
    }
    if (!is_nielsen_reduced(basis)) throw PreconditionError("key basis is not Nielsen reduced");
}

std::size_t Ciphertext::visible_length() const {
    std::size_t n = 0;
    for (const auto& u : units) n += u.length();
    return n;
}

std::vector<std::size_t> encode_plaintext(const CipherPublicParams& pub, std::string_view text) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        auto k = pub.symbol_index(c);
        if (!k) throw EncodingError(std::string("symbol '") + c + "' at position " + std::to_string(i) +
                                    " is not in the plaintext alphabet");
        out.push_back(*k);
    }
    return out;
}

Schedule derive_schedule(const CipherPublicParams& pub, const CipherPrivateKey& key, std::size_t z) {
    Schedule out;
    out.reserve(z);
    for (u128 x : keystream(pub.lcg, key.alpha, z)) out.push_back(derive_automorphism(pub.family, x));
    return out;
}

CipherPrivateKey keygen(const CipherPublicParams& pub, DrawSource& src) {
    pub.validate();
    const std::size_t n = pub.symbol_count();
    GeneratingTuple basis;
    while (true) {
        GeneratingTuple raw;
        for (std::size_t k = 0; k < n; ++k)
            raw.push_back(random_reduced_word(src, pub.alphabet.rank(), 2 + static_cast<std::size_t>(src.below(7))));
        auto reduced = nielsen_reduce(raw).tuple;
        if (reduced.size() != n) continue;
        basis = canonical_minimal_basis(reduced);
        if (basis.size() == n && is_nielsen_reduced(basis)) break;
    }
    u128 hi = src.next();
    u128 lo = src.next();
    return CipherPrivateKey{std::move(basis), pub.lcg.reduce((hi << 64) | lo)};
}

Ciphertext encrypt(const CipherPublicParams& pub, const CipherPrivateKey& key, std::string_view plaintext,
                   unsigned jobs) {
    auto symbols = encode_plaintext(pub, plaintext);
    return encrypt_with(pub, key, plaintext, derive_schedule(pub, key, symbols.size()), jobs);
}

Ciphertext encrypt_with(const CipherPublicParams& pub, const CipherPrivateKey& key, std::string_view plaintext,
                        const Schedule& schedule, unsigned jobs) {
    key.validate(pub);
    auto symbols = encode_plaintext(pub, plaintext);
    check_schedule(schedule, symbols.size(), pub.alphabet.rank());
    Ciphertext out;
    out.units.resize(symbols.size());
    detail::parallel_for(symbols.size(), jobs,
                         [&](std::size_t i) { out.units[i] = schedule[i].apply(key.basis[symbols[i]]); });
    return out;
}

std::string decrypt(const CipherPublicParams& pub, const CipherPrivateKey& key, const Ciphertext& c,
                    unsigned jobs) {
    return decrypt_with(pub, key, c, derive_schedule(pub, key, c.units.size()), jobs);
}

std::string decrypt_with(const CipherPublicParams& pub, const CipherPrivateKey& key, const Ciphertext& c,
                         const Schedule& schedule, unsigned jobs) {
    key.validate(pub);
    check_schedule(schedule, c.units.size(), pub.alphabet.rank());
    std::string out(c.units.size(), '\0');
    detail::parallel_for(c.units.size(), jobs, [&](std::size_t i) {
        Word w = inverse(schedule[i]).apply(c.units[i]);
        std::size_t k = locate(key.basis, w);
        if (k == key.basis.size())
            throw DecryptionFailure("unit " + std::to_string(i + 1) + " does not decrypt to a basis word", i);
        out[i] = pub.plaintext_alphabet[k];
    });
    return out;
}

CipherTable build_cipher_table(const CipherPrivateKey& key, const Schedule& schedule) {
    CipherTable table(key.basis.size());
    for (std::size_t k = 0; k < key.basis.size(); ++k) {
        table[k].reserve(schedule.size());
        for (const auto& f : schedule) table[k].push_back(f.apply(key.basis[k]));
    }
    return table;
}

std::string decrypt_with_table(const CipherPublicParams& pub, const CipherTable& table, const Ciphertext& c) {
    std::string out;
    for (std::size_t i = 0; i < c.units.size(); ++i) {
        std::optional<std::size_t> hit;
        for (std::size_t k = 0; k < table.size() && !hit; ++k)
            if (i < table[k].size() && table[k][i] == c.units[i]) hit = k;
        if (!hit) throw DecryptionFailure("unit " + std::to_string(i + 1) + " is not in its table column", i);
        out.push_back(pub.plaintext_alphabet[*hit]);
    }
    return out;
}

std::string format_ciphertext(const Ciphertext& c, const Alphabet& alphabet) {
    std::string out;
    for (std::size_t i = 0; i < c.units.size(); ++i) {
        if (i > 0) out += " | ";
        out += format_word(c.units[i], alphabet);
    }
    return out + "\n";
}

Ciphertext parse_ciphertext(std::string_view text, const Alphabet& alphabet) {
    Ciphertext out;
    std::string_view body = detail::trim(text);
    if (body.empty()) return out;
    std::size_t start = 0;
    while (true) {
        auto bar = body.find('|', start);
        std::string_view unit = detail::trim(body.substr(start, bar == std::string_view::npos ? bar : bar - start));
        try {
            out.units.push_back(parse_word(unit, alphabet));
        } catch (const ParseError& e) {
            throw ParseError("ciphertext unit " + std::to_string(out.units.size() + 1) + ": " + e.what(),
                             out.units.size() + 1);
        }
        if (bar == std::string_view::npos) break;
        start = bar + 1;
    }
    return out;
}

std::string format_key_file(const CipherPublicParams& pub, const CipherPrivateKey& key) {
    std::string symbols;
    for (char c : pub.plaintext_alphabet) {
        if (!symbols.empty()) symbols += ' ';
        symbols += c;
    }
    std::string out = "alphabet = " + pub.alphabet.to_string() + "\n";
    out += "N = " + std::to_string(pub.symbol_count()) + "\n";
    out += "plaintext_alphabet = " + symbols + "\n";
    out += "alpha = " + to_decimal(key.alpha) + "\n";
    out += format_lcg_params(pub.lcg, pub.family.master_seed);
    out += format_tuple(key.basis, pub.alphabet);
    return out;
}

KeyFile parse_key_file(std::string_view text) {
    std::map<std::string, std::string> fields;
    auto lines = detail::split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::string_view line = detail::trim(lines[i]);
        if (line == "begin tuple") break;
        if (line.empty() || line.front() == '#') continue;
        auto kv = detail::split_key_value(line);
        if (!kv) throw ParseError("expected 'key = value' on line " + std::to_string(i + 1), i + 1);
        fields[kv->first] = kv->second;
    }
    auto field = [&](const std::string& name) -> const std::string& {
        auto it = fields.find(name);
        if (it == fields.end()) throw ParseError("key file is missing '" + name + "'", 0);
        return it->second;
    };
    KeyFile out;
    out.pub.alphabet = Alphabet::parse(field("alphabet"));
    for (const auto& s : detail::split_ws(field("plaintext_alphabet"))) {
        if (s.size() != 1) throw ParseError("plaintext symbols must be single characters ('" + s + "')", 0);
        out.pub.plaintext_alphabet += s;
    }
    auto n = detail::parse_unsigned(field("N"));
    if (!n || *n != out.pub.plaintext_alphabet.size())
        throw ParseError("N does not match the plaintext alphabet size", 0);
    auto m = detail::parse_unsigned(field("m"));
    if (!m) throw ParseError("bad modulus exponent", 0);
    out.pub.lcg = LcgParams(static_cast<unsigned>(*m), parse_decimal_u128(field("beta")),
                            parse_decimal_u128(field("gamma")));
    out.pub.family = AutFamily{parse_hex64(field("seed")), out.pub.alphabet.rank(), out.pub.lcg.m};
    out.key.alpha = out.pub.lcg.reduce(parse_decimal_u128(field("alpha")));
    out.key.basis = parse_tuple(text, out.pub.alphabet);
    if (auto it = fields.find("schedule"); it != fields.end()) out.schedule = detail::split_ws(it->second);
    out.pub.validate();
    out.key.validate(out.pub);
    return out;
}

}  // namespace fgc
