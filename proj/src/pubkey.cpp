#include "fgc/pubkey.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "fgc/error.hpp"
#include "text_util.hpp"

namespace fgc {

namespace {

void check_exponent(const PubkeyParams& params, unsigned k, const char* name) {
    if (k < 1) throw PreconditionError(std::string(name) + " must be at least 1");
    if (k > params.max_exponent)
        throw PreconditionError(std::string(name) + " = " + std::to_string(k) + " exceeds the exponent cap " +
                                std::to_string(params.max_exponent));
}

std::map<std::string, std::string> read_fields(std::string_view text) {
    std::map<std::string, std::string> fields;
    auto lines = detail::split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::string_view line = detail::trim(lines[i]);
        if (line.empty() || line.front() == '#') continue;
        auto kv = detail::split_key_value(line);
        if (!kv) throw ParseError("expected 'key = value' on line " + std::to_string(i + 1), i + 1);
        fields[kv->first] = kv->second;
    }
    return fields;
}

const std::string& required(const std::map<std::string, std::string>& fields, const std::string& name) {
    auto it = fields.find(name);
    if (it == fields.end()) throw ParseError("missing '" + name + "'", 0);
    return it->second;
}

}  // namespace

void PubkeyParams::validate() const {
    if (a.is_identity()) throw PreconditionError("a must not be the identity");
    check_alphabet(a, alphabet);
    if (f.rank() != alphabet.rank()) throw PreconditionError("automorphism rank differs from the alphabet");
    if (f.is_identity()) throw PreconditionError("f must not be the identity automorphism");
    if (spec && spec->rank() != alphabet.rank()) throw PreconditionError("representation rank differs from the alphabet");
}

std::optional<unsigned> finite_order_witness(const FactoredAutomorphism& f, unsigned limit) {
    // f^k = id only if A^k = I for the induced map A on the abelianization.
    const auto n = static_cast<std::size_t>(f.rank());
    using IntMatrix = std::vector<std::vector<BigInt>>;
    IntMatrix a(n, std::vector<BigInt>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (Letter l : f.images()[i].letters()) a[static_cast<std::size_t>(l.index() - 1)][i] += l.sign();
    auto is_unit = [n](const IntMatrix& m) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (m[i][j] != (i == j ? 1 : 0)) return false;
        return true;
    };
    IntMatrix p = a;
    for (unsigned k = 1; k <= limit; ++k) {
        if (is_unit(p) && power(f, k).is_identity()) return k;
        IntMatrix next(n, std::vector<BigInt>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t t = 0; t < n; ++t) next[i][j] += a[i][t] * p[t][j];
        p = std::move(next);
    }
    return std::nullopt;
}

Word alice_keygen(const PubkeyParams& params, unsigned n) {
    params.validate();
    check_exponent(params, n, "n");
    return power(params.f, n).apply(params.a);
}

CipherPair bob_encrypt(const PubkeyParams& params, const Word& c, const Word& m, unsigned t) {
    params.validate();
    check_exponent(params, t, "t");
    check_alphabet(c, params.alphabet);
    check_alphabet(m, params.alphabet);
    auto ft = power(params.f, t);
    return CipherPair{m * ft.apply(c), ft.apply(params.a)};
}

Word alice_decrypt(const PubkeyParams& params, unsigned n, const CipherPair& pair) {
    params.validate();
    check_exponent(params, n, "n");
    return pair.c1 * power(params.f, n).apply(pair.c2).inverse();
}

MatrixCipherPair bob_encrypt_matrix(const PubkeyParams& params, const Word& c, const Word& m, unsigned t) {
    if (!params.spec) throw PreconditionError("the matrix variant needs a representation");
    auto pair = bob_encrypt(params, c, Word{}, t);
    return MatrixCipherPair{word_to_matrix(*params.spec, m) * word_to_matrix(*params.spec, pair.c1), pair.c2};
}

Mat2Q alice_unmask_matrix(const PubkeyParams& params, unsigned n, const MatrixCipherPair& pair) {
    if (!params.spec) throw PreconditionError("the matrix variant needs a representation");
    params.validate();
    check_exponent(params, n, "n");
    return pair.c1 * mat_inv(word_to_matrix(*params.spec, power(params.f, n).apply(pair.c2)));
}

Word alice_decrypt_matrix(const PubkeyParams& params, unsigned n, const MatrixCipherPair& pair, std::size_t max_len) {
    Mat2Q g = alice_unmask_matrix(params, n, pair);
    if (mat_det(g) != 1) throw DecryptionFailure("unmasked matrix does not have determinant 1", 0);
    auto w = matrix_to_word(*params.spec, g, max_len);
    if (!w)
        throw DecryptionFailure("no word of length at most " + std::to_string(max_len) + " maps to the unmasked matrix",
                                0);
    return *w;
}

PubkeyParams parse_pubkey_params(std::string_view text, const std::filesystem::path& base_dir) {
    auto fields = read_fields(text);
    PubkeyParams p;
    p.alphabet = Alphabet::parse(required(fields, "alphabet"));
    p.a = parse_word(required(fields, "a"), p.alphabet);
    std::filesystem::path aut = required(fields, "automorphism");
    if (aut.is_relative()) aut = base_dir / aut;
    p.f = parse_automorphism(read_text_file(aut), p.alphabet);
    if (auto it = fields.find("representation"); it != fields.end()) {
        if (it->second == "default")
            p.spec = default_representation(p.alphabet.rank());
        else if (it->second == "demo")
            p.spec = demo_representation();
        else
            throw ParseError("unknown representation '" + it->second + "' (expected default or demo)", 0);
    }
    if (auto it = fields.find("max_exponent"); it != fields.end()) {
        auto v = detail::parse_unsigned(it->second);
        if (!v || *v == 0 || *v > 1000) throw ParseError("bad max_exponent '" + it->second + "'", 0);
        p.max_exponent = static_cast<unsigned>(*v);
    }
    p.validate();
    return p;
}

PubkeyParams load_pubkey_params(const std::filesystem::path& path) {
    return parse_pubkey_params(read_text_file(path), path.parent_path());
}

std::string format_pair(const CipherPair& pair, const Alphabet& alphabet) {
    return "c1 = " + format_word(pair.c1, alphabet) + "\nc2 = " + format_word(pair.c2, alphabet) + "\n";
}

CipherPair parse_pair(std::string_view text, const Alphabet& alphabet) {
    auto fields = read_fields(text);
    return CipherPair{parse_word(required(fields, "c1"), alphabet), parse_word(required(fields, "c2"), alphabet)};
}

std::string format_matrix_pair(const MatrixCipherPair& pair, const Alphabet& alphabet) {
    return "c1 = " + format_matrix(pair.c1) + "\nc2 = " + format_word(pair.c2, alphabet) + "\n";
}

MatrixCipherPair parse_matrix_pair(std::string_view text, const Alphabet& alphabet) {
    auto fields = read_fields(text);
    return MatrixCipherPair{parse_matrix(required(fields, "c1")), parse_word(required(fields, "c2"), alphabet)};
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PreconditionError("cannot read '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace fgc
