// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "fgc/attack.hpp"
#include "fgc/error.hpp"
#include "fgc/keystream.hpp"
#include "fgc/matrix.hpp"
#include "fgc/otp.hpp"
#include "fgc/pubkey.hpp"
#include "support/common.hpp"
#include "support/oracles.hpp"

using namespace fgc;
using namespace testsupport;

namespace {

const std::string kData = FGC_TEST_DATA;

std::string slurp(const std::string& rel) {
    std::ifstream in(kData + "/" + rel);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Outcome {
    bool ok = true;
    std::string note;

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) note = what;
        ok = ok && cond;
    }
};

Schedule example_schedule() {
    Schedule out;
    for (int k = 1; k <= 8; ++k) out.push_back(parse_automorphism(slurp("example1/f" + std::to_string(k) + ".aut"), abcd()));
    return out;
}

const std::vector<const char*> kUnits{
    "dc^{-1}d^{-1}a^{-1}d^{-2}a^{-1}c^{-1}",
    "d^{-1}bcabd^{-1}a^{-1}cadb^{-1}d",
    "(ba^{-1}d^{-1})^2(a^{-1}d^{-1}c)^2",
    "(ca^2)^2b^{-1}a^3daca^2",
    "cb^{-1}a^{-1}bdc^{-2}",
    "bca(dc^{-1}b^{-1})^3ac^{-1}",
    "a^{-1} (a^{-2} b^{-1})^2 d c^{-3}",
    "(ab^{-1})^3adc^{-1}d^2",
};

Outcome keystream_indices() {
    Outcome o;
    std::vector<u128> expected{93, 468, 2343, 11718, 58593, 292968, 1464843, 7324218};
    o.expect(keystream(LcgParams(128, 5, 3), 93, 8) == expected, "keystream differs");
    return o;
}

Outcome schedule_images() {
    Outcome o;
    std::vector<std::vector<const char*>> images{
        {"ad^2c^{-1}", "bc^{-1}", "cad^2c^{-1}", "dc^{-1}"},
        {"d^{-1}a^{-1}cad", "d^{-1}b", "d^{-1}a^{-1}c^{-1}", "d(cad)^2"},
        {"ab^3", "a^{-1}d^{-1}", "c^{-1}da", "ba^{-1}d^{-1}"},
        {"aca^2", "b^{-1}a^3d", "ca^2", "db^{-1}a^3d"},
        {"b^{-1}a^{-1}b", "b^{-1}dc^{-2}", "cb^{-1}a^{-1}b", "dc^{-2}"},
        {"a^{-1}c^{-1}b^{-1}", "c^{-1}b^{-1}", "ca^{-1}", "dc^{-1}b^{-1}"},
        {"a^{-1}ba^{3}", "a^{-3}b^{-1}dc^{-3}", "c^{-1}a^{-1}ba^3", "dc^{-3}"},
        {"d^{-1}a^{-1}", "b^{-1}ad", "d^{-2}c", "d^{-1}b^{-1}ad"},
    };
    auto schedule = example_schedule();
    for (std::size_t k = 0; k < 8; ++k)
        for (std::size_t i = 0; i < 4; ++i)
            o.expect(schedule[k].images()[i] == expr(images[k][i], abcd()),
                     "f" + std::to_string(k + 1) + " image " + std::to_string(i + 1));
    return o;
}

Outcome example_encryption() {
    Outcome o;
    auto kf = parse_key_file(slurp("example1/key.txt"));
    auto schedule = example_schedule();
    auto c = encrypt_with(kf.pub, kf.key, "ILIKEBOB", schedule);
    o.expect(c.units.size() == 8, "unit count");
    for (std::size_t i = 0; i < c.units.size() && i < 8; ++i)
        o.expect(c.units[i] == expr(kUnits[i], abcd()), "unit " + std::to_string(i + 1));
    o.expect(decrypt_with(kf.pub, kf.key, c, schedule) == "ILIKEBOB", "inverse decryption");
    o.expect(decrypt_with_table(kf.pub, build_cipher_table(kf.key, schedule), c) == "ILIKEBOB", "table decryption");
    return o;
}

Outcome table_spot_checks() {
    Outcome o;
    struct Entry {
        char symbol;
        std::size_t column;
        const char* text;
    };
    const std::vector<Entry> entries{
        {'K', 1, "c(ad^2)^2c^{-1}bc^{-1}ad^2c^{-1}"},
        {'B', 8, "(ab^{-1})^3adc^{-1}d^2"},
        {'U', 1, "(ad^2c^{-1})^3ad^2b^{-1}"},
        {'N', 2, "d^{-1} a^{-1} c^2 a d (d c a)^2 b d^{-1} b (d^{-1} a^{-1} c^{-1})^2 d^{-1}"},
        {'T', 3, "(a^{-1}d^{-1})^3(b^{-3}a^{-1})^2"},
        {'L', 4, "b^{-1}a^3da^{-2}c^{-1}b^{-1}a^3daca^2d^{-1}a^{-3}b"},
        {'Y', 5, "(cb^{-1}a^{-1}b)^2dc^{-2}b^{-1}a^{-1}bc^2d^{-1}b"},
        {'M', 6, "c^{-1} b^{-1} (c a^{-1})^3"},
        {'L', 7, "a^{-3} b^{-1} d c^{-3} a^{-3} b^{-1} a c a^{-3} b^{-1} d c^{-3} a^{-1} b a^3 c^3 d^{-1} b a^3"},
        {'T', 8, "(b^{-1} a d)^3 a d a d"},
        {'I', 2, "((d c a)^2 d)^2 c a d c a d"},
        {'A', 7, "a^{-3} b^{-1} d c^{-3} a^{-1} (b a^2)^2 a"},
    };
    auto kf = parse_key_file(slurp("example1/key.txt"));
    auto table = build_cipher_table(kf.key, example_schedule());
    for (const auto& e : entries) {
        auto k = kf.pub.symbol_index(e.symbol);
        o.expect(k && table[*k][e.column - 1] == expr(e.text, abcd()),
                 std::string("row ") + e.symbol + " column " + std::to_string(e.column));
    }
    std::istringstream all(slurp("example1/table.txt"));
    std::string line;
    std::size_t checked = 0;
    while (std::getline(all, line)) {
        if (line.empty()) continue;
        auto k = kf.pub.symbol_index(line[0]);
        auto units = parse_ciphertext(line.substr(line.find('=') + 1), abcd()).units;
        for (std::size_t i = 0; i < units.size(); ++i, ++checked)
            o.expect(k && table[*k][i] == units[i], std::string("table file row ") + line[0]);
    }
    o.expect(checked == 96, "table file size");
    o.note = o.ok ? std::to_string(entries.size()) + " spot entries, " + std::to_string(checked) + " table entries"
                  : o.note;
    return o;
}

Outcome matrix_ciphertext() {
    Outcome o;
    auto spec = demo_representation();
    const std::vector<const char*> phi{
        "[[75/2, -1111/4],[-11, 163/2]]",
        "[[-1189, 3990],[104, -349]]",
        "[[-2681, 19966],[360, -2681]]",
        "[[15, -109],[4, -29]]",
    };
    for (std::size_t i = 0; i < 4; ++i)
        o.expect(spec.generator_matrices()[i] == parse_matrix(phi[i]), "phi of generator " + std::to_string(i + 1));
    auto expected = parse_matrices(slurp("example1/matrices.txt"));
    o.expect(expected.size() == 8, "matrix count");
    for (std::size_t i = 0; i < 8 && i < expected.size(); ++i)
        o.expect(word_to_matrix(spec, expr(kUnits[i], abcd())) == expected[i], "matrix " + std::to_string(i + 1));
    o.expect(expected.size() > 3 && expected[3].a12.get_num().get_str().size() == 37, "36-digit entry");
    return o;
}

Outcome public_key_example() {
    Outcome o;
    auto params = load_pubkey_params(kData + "/pubkey/params.txt");
    auto X = [](const char* t) { return expr(t, x3()); };
    std::vector<Word> f7{X("x_1x_2^2x_3^{-1}x_2(x_2x_3)^2(x_3x_2x_3^2x_2)^2x_3x_2"),
                         X("x_2^{-1}((x_3^{-1}x_2^{-1}x_3^{-1})^2x_2^{-1}x_3^{-1})^2x_3^{-1}x_2^{-1}x_3^{-2}"),
                         X("(((x_2^{-1}x_3^{-1})^2x_3^{-1})^2x_2^{-1}x_3^{-2})^2x_2^{-1}(x_3^{-1}x_2^{-1}x_3^{-1})^2x_3^{-1}")};
    std::vector<Word> f5{X("x_1x_2^2x_3^{-1}x_2^2x_3(x_3x_2)^2"), X("x_2^{-1}(x_3^{-1}x_2^{-1}x_3^{-1})^2x_3^{-1}"),
                         X("((x_2^{-1}x_3^{-1})^2x_3^{-1})^2x_2^{-1}x_3^{-2}")};
    o.expect(power(params.f, 7).images() == f7, "f^7 images");
    o.expect(power(params.f, 5).images() == f5, "f^5 images");
    Word c = alice_keygen(params, 7);
    o.expect(c == X("(x_1x_2^2x_3^{-1}x_2(x_2x_3)^2(x_3x_2x_3^2x_2)^2x_3x_2)^2(x_3^2x_2)^2((x_3x_2x_3)^2x_2x_3)^2"
                    "x_3x_2x_3^2x_2x_3^{-1}"),
             "public key c");
    Word m = X("x_3^{-2}x_2^2x_3x_1^2x_2^{-1}x_1^{-1}");
    auto pair = bob_encrypt(params, c, m, 5);
    o.expect(pair.c2 == X("(x_1x_2^2x_3^{-1}x_2^2x_3(x_3x_2)^2)^2x_3^2x_2(x_3x_2x_3)^2x_3x_2x_3^{-1}"), "c2");
    o.expect(alice_decrypt(params, 7, pair) == m, "decrypted message");
    return o;
}

Outcome property_suite() {
    Outcome o;
    Prg prg(0xACCE55);
    std::size_t disagreements = 0;
    for (int k = 0; k < 10000; ++k) {
        int q = 2 + static_cast<int>(prg.below(2));
        auto t = random_tuple(prg, q, 1 + prg.below(4), 6);
        if (is_nielsen_reduced(t) != is_nielsen_reduced_segments(t)) ++disagreements;
    }
    o.expect(disagreements == 0, "predicate disagreement");

    std::size_t lcg_bad = 0;
    for (unsigned m = 1; m <= 10; ++m)
        for (int k = 0; k < 200; ++k) {
            std::uint64_t mod = std::uint64_t{1} << m, beta = prg.below(mod), gamma = prg.below(mod);
            if (has_max_period(LcgParams(m, beta, gamma)) != (lcg_orbit_period(m, beta, gamma) == mod)) ++lcg_bad;
        }
    o.expect(lcg_bad == 0, "lcg counterexample");

    int otp_ok = 0;
    for (int trial = 0; trial < 500; ++trial) {
        CipherPublicParams pub;
        pub.alphabet = Alphabet(3 + trial % 2);
        pub.plaintext_alphabet = "ABCDEF";
        pub.lcg = LcgParams(64, 5, 3);
        pub.family = AutFamily{prg.next(), pub.alphabet.rank(), 64};
        auto key = keygen(pub, prg);
        std::string msg;
        for (std::size_t i = prg.below(65); i > 0; --i) msg += pub.plaintext_alphabet[prg.below(6)];
        if (decrypt(pub, key, encrypt(pub, key, msg)) == msg) ++otp_ok;
    }
    o.expect(otp_ok == 500, "otp round trip " + std::to_string(otp_ok) + "/500");

    auto params = load_pubkey_params(kData + "/pubkey/params.txt");
    int word_ok = 0, matrix_ok = 0, unmask_ok = 0;
    for (int trial = 0; trial < 200; ++trial) {
        unsigned n = 1 + static_cast<unsigned>(prg.below(6)), t = 1 + static_cast<unsigned>(prg.below(6));
        Word m = random_word(prg, 3, prg.below(11));
        Word c = alice_keygen(params, n);
        if (alice_decrypt(params, n, bob_encrypt(params, c, m, t)) == m) ++word_ok;
        auto mp = bob_encrypt_matrix(params, c, m, t);
        if (alice_unmask_matrix(params, n, mp) == word_to_matrix(*params.spec, m)) ++unmask_ok;
        if (alice_decrypt_matrix(params, n, mp, 10) == m) ++matrix_ok;
    }
    o.expect(word_ok == 200 && matrix_ok == 200 && unmask_ok == 200, "pubkey round trip");

    std::size_t rep_words = 0, rep_ok = 0;
    auto rank2 = default_representation(2);
    for (const auto& seq : reduced_sequences(2, 8)) {
        Word w(seq);
        ++rep_words;
        if (matrix_to_word(rank2, word_to_matrix(rank2, w), w.length()) == w) ++rep_ok;
    }
    auto demo = demo_representation();
    for (int k = 0; k < 3000; ++k) {
        Word w = random_word(prg, 4, prg.below(9));
        ++rep_words;
        if (matrix_to_word(demo, word_to_matrix(demo, w), w.length()) == w) ++rep_ok;
    }
    o.expect(rep_ok == rep_words, "representation round trip");

    AttackConfig cfg;
    cfg.L = 2;
    cfg.N = 2;
    cfg.K = 2;
    auto report = subset_attack(2, cfg, tuple_of({"a", "b"}, Alphabet::parse("a b")));
    bool found = false;
    for (const auto& cand : report.candidates) found = found || cand.basis == tuple_of({"a", "b"}, Alphabet::parse("a b"));
    o.expect(report.hit_index.has_value() && found, "planted basis not recovered");

    if (o.ok)
        o.note = "10000 tuples, 2000 LCGs, 500 OTP, 200+200 pubkey, " + std::to_string(rep_words) +
                 " representation words, planted hit at subset " + std::to_string(*report.hit_index);
    return o;
}

Outcome growth_demonstration() {
    Outcome o;
    AttackConfig cfg;
    cfg.N = 12;
    cfg.K = 12;
    BigInt previous = 0;
    for (std::size_t L = 2; L <= 7; ++L) {
        cfg.L = L;
        auto e = attack_cost_estimate(4, cfg);
        BigInt exact = 1;
        for (unsigned i = 0; i < 12; ++i) exact = exact * (e.ball - i) / (i + 1);
        o.expect(e.subsets == exact, "binomial at L = " + std::to_string(L));
        o.expect(e.subsets > previous * 1000, "growth at L = " + std::to_string(L));
        previous = e.subsets;
    }
    if (o.ok) o.note = "q=4, K=12, L=7: " + std::to_string(previous.get_str().size()) + "-digit subset count";
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit_ms;  // 0: no time limit
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "keystream indices", 1, keystream_indices},
        {2, "schedule automorphism images", 10, schedule_images},
        {3, "ILIKEBOB encryption and both decryptions", 100, example_encryption},
        {4, "substitution table entries", 0, table_spot_checks},
        {5, "SL(2,Q) generator images and ciphertext matrices", 1000, matrix_ciphertext},
        {6, "public-key exchange", 1000, public_key_example},
        {7, "property suite", 300000, property_suite},
        {8, "exponential subset growth with exact counts", 0, growth_demonstration},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.note = std::string("exception: ") + e.what();
        }
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        if (o.ok && c.limit_ms > 0 && ms > c.limit_ms) {
            o.ok = false;
            o.note = "over the time limit";
        }
        failures += o.ok ? 0 : 1;
        std::printf("%s criterion %d: %s (%.3f ms)%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, ms,
                    o.note.empty() ? "" : " - ", o.note.c_str());
    }
    return failures == 0 ? 0 : 1;
}
