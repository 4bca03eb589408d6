#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fgc/attack.hpp"
#include "fgc/automorphism.hpp"
#include "fgc/error.hpp"
#include "fgc/keystream.hpp"
#include "fgc/matrix.hpp"
#include "fgc/nielsen.hpp"
#include "fgc/otp.hpp"
#include "fgc/pubkey.hpp"

namespace fs = std::filesystem;
using namespace fgc;

namespace {

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw PreconditionError("cannot write '" + path + "'");
    out << text;
}

std::string read_input(const std::string& path) {
    if (path.empty() || path == "-") {
        std::string all, line;
        while (std::getline(std::cin, line)) all += line + "\n";
        return all;
    }
    return read_text_file(path);
}

std::string trimmed(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return std::string(s);
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::string line;
    std::istringstream in(text);
    while (std::getline(in, line)) {
        auto t = trimmed(line);
        if (!t.empty() && t.front() != '#') out.push_back(t);
    }
    return out;
}

// "key = value" lines up to the first "begin" block.
std::map<std::string, std::string> header_fields(const std::string& text) {
    std::map<std::string, std::string> out;
    for (const auto& line : lines_of(text)) {
        if (line.rfind("begin", 0) == 0) break;
        auto eq = line.find('=');
        if (eq != std::string::npos) out[trimmed(line.substr(0, eq))] = trimmed(line.substr(eq + 1));
    }
    return out;
}

struct AlphabetOpts {
    std::string names;
    int rank = 0;

    void add(CLI::App* cmd) {
        cmd->add_option("--alphabet", names, "Generator names, e.g. \"a b c d\"");
        cmd->add_option("--rank", rank, "Use generators x1..xq")->check(CLI::Range(1, 1000));
    }

    Alphabet resolve(const std::map<std::string, std::string>& fields = {}) const {
        if (!names.empty()) return Alphabet::parse(names);
        if (rank > 0) return Alphabet(rank);
        if (auto it = fields.find("alphabet"); it != fields.end()) return Alphabet::parse(it->second);
        throw CLI::ValidationError("--alphabet", "an alphabet is required (--alphabet or --rank)");
    }
};

std::uint64_t seed_value(const std::string& s) { return parse_hex64(s); }

const auto hex_check = CLI::Validator(
    [](std::string& s) -> std::string {
        try {
            parse_hex64(s);
            return {};
        } catch (const Error&) {
            return "expected a 64-bit hex value such as 0x1f";
        }
    },
    "HEX64");

Schedule load_schedule(const std::vector<std::string>& files, const fs::path& base, const Alphabet& alphabet) {
    Schedule out;
    for (const auto& f : files) {
        fs::path p = f;
        if (p.is_relative() && !base.empty()) p = base / p;
        out.push_back(parse_automorphism(read_text_file(p), alphabet));
    }
    return out;
}

Schedule resolve_schedule(const KeyFile& kf, const std::vector<std::string>& aut_files, const fs::path& key_path,
                          std::size_t z) {
    if (!aut_files.empty()) return load_schedule(aut_files, {}, kf.pub.alphabet);
    if (!kf.schedule.empty()) return load_schedule(kf.schedule, key_path.parent_path(), kf.pub.alphabet);
    return derive_schedule(kf.pub, kf.key, z);
}

std::string format_word_lines(const std::vector<Word>& ws, const Alphabet& alphabet) {
    std::string out;
    for (const auto& w : ws) out += format_word(w, alphabet) + "\n";
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Free-group cryptosystems: Nielsen one-time pad and automorphism ElGamal"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    std::string in_path, out_path;
    unsigned jobs = 1;
    std::vector<std::string> aut_files;

    // otp-keygen
    auto* otp_keygen = app.add_subcommand("otp-keygen", "Generate a private key and public parameters");
    AlphabetOpts kg_alpha;
    kg_alpha.add(otp_keygen);
    std::string kg_symbols, kg_seed;
    unsigned kg_m = 128;
    std::string kg_beta = "5", kg_gamma = "3";
    otp_keygen->add_option("--symbols", kg_symbols, "Plaintext symbols, one character each")->required();
    otp_keygen->add_option("--modulus-exponent", kg_m, "LCG modulus 2^m")->check(CLI::Range(1, 128));
    otp_keygen->add_option("--beta", kg_beta, "LCG multiplier");
    otp_keygen->add_option("--gamma", kg_gamma, "LCG increment");
    otp_keygen->add_option("--seed", kg_seed, "Randomness seed")->required()->check(hex_check);
    otp_keygen->add_option("--out", out_path, "Key file");

    // otp-encrypt / otp-decrypt / otp-table
    std::string key_path;
    auto* otp_encrypt = app.add_subcommand("otp-encrypt", "Encrypt a plaintext file");
    auto* otp_decrypt = app.add_subcommand("otp-decrypt", "Decrypt a ciphertext file");
    auto* otp_table = app.add_subcommand("otp-table", "Print the substitution table for a schedule");
    bool use_table = false;
    std::size_t table_len = 0;
    for (auto* cmd : {otp_encrypt, otp_decrypt, otp_table}) {
        cmd->add_option("--key", key_path, "Key file")->required()->check(CLI::ExistingFile);
        cmd->add_option("--aut", aut_files, "Automorphism DSL file for the next position (repeatable)")
            ->check(CLI::ExistingFile);
        cmd->add_option("--out", out_path, "Output file");
    }
    for (auto* cmd : {otp_encrypt, otp_decrypt}) {
        cmd->add_option("--in", in_path, "Input file");
        cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1U, 1024U));
    }
    otp_decrypt->add_flag("--table", use_table, "Decrypt by table lookup instead of inverse automorphisms");
    otp_table->add_option("--length", table_len, "Number of positions (defaults to the --aut count)");

    // pubkey
    std::string params_path, public_path, pair_path;
    unsigned pk_n = 0, pk_t = 0;
    bool matrix_variant = false;
    std::size_t max_len = 64;
    auto* pk_keygen = app.add_subcommand("pubkey-keygen", "Publish c = f^n(a)");
    auto* pk_encrypt = app.add_subcommand("pubkey-encrypt", "Encrypt a message word");
    auto* pk_decrypt = app.add_subcommand("pubkey-decrypt", "Decrypt a ciphertext pair");
    for (auto* cmd : {pk_keygen, pk_encrypt, pk_decrypt}) {
        cmd->add_option("--params", params_path, "Parameter file")->required()->check(CLI::ExistingFile);
        cmd->add_option("--out", out_path, "Output file");
    }
    pk_keygen->add_option("--n", pk_n, "Private exponent")->required()->check(CLI::Range(1U, 100000U));
    pk_encrypt->add_option("--public", public_path, "File with 'c = ...'")->required()->check(CLI::ExistingFile);
    pk_encrypt->add_option("--in", in_path, "File holding the message word");
    pk_encrypt->add_option("--t", pk_t, "Ephemeral exponent")->required()->check(CLI::Range(1U, 100000U));
    pk_encrypt->add_flag("--matrix", matrix_variant, "Send c1 as a matrix");
    pk_decrypt->add_option("--n", pk_n, "Private exponent")->required()->check(CLI::Range(1U, 100000U));
    pk_decrypt->add_option("--pair", pair_path, "Ciphertext pair file")->required()->check(CLI::ExistingFile);
    pk_decrypt->add_flag("--matrix", matrix_variant, "c1 is a matrix");
    pk_decrypt->add_option("--max-len", max_len, "Longest message word the decoder accepts");

    // nielsen-reduce
    auto* reduce_cmd = app.add_subcommand("nielsen-reduce", "Nielsen-reduce a tuple file");
    AlphabetOpts nr_alpha;
    nr_alpha.add(reduce_cmd);
    std::string moves_path;
    bool canonical = false;
    reduce_cmd->add_option("--in", in_path, "Tuple file");
    reduce_cmd->add_option("--out", out_path, "Output tuple file");
    reduce_cmd->add_option("--moves", moves_path, "Also write the applied moves here");
    reduce_cmd->add_flag("--canonical", canonical, "Output the canonical minimal basis");

    // aut-apply / aut-invert
    std::string aut_path, word_text;
    unsigned aut_power = 1;
    bool aut_inverse = false;
    auto* aut_apply = app.add_subcommand("aut-apply", "Apply an automorphism to words");
    auto* aut_invert = app.add_subcommand("aut-invert", "Write the inverse of an automorphism");
    AlphabetOpts aut_alpha;
    for (auto* cmd : {aut_apply, aut_invert}) {
        cmd->add_option("--aut", aut_path, "Automorphism DSL file")->required()->check(CLI::ExistingFile);
        cmd->add_option("--out", out_path, "Output file");
    }
    aut_alpha.add(aut_apply);
    aut_alpha.add(aut_invert);
    aut_apply->add_option("--word", word_text, "Word to map");
    aut_apply->add_option("--in", in_path, "File with one word per line");
    aut_apply->add_option("--power", aut_power, "Apply f^k")->check(CLI::Range(0U, 1000U));
    aut_apply->add_flag("--inverse", aut_inverse, "Apply the inverse");

    // rep-eval / rep-decode
    std::string rep_name = "default";
    auto* rep_eval = app.add_subcommand("rep-eval", "Map words to SL(2,Q) matrices");
    auto* rep_decode = app.add_subcommand("rep-decode", "Recover words from matrices");
    AlphabetOpts rep_alpha;
    for (auto* cmd : {rep_eval, rep_decode}) {
        rep_alpha.add(cmd);
        cmd->add_option("--rep", rep_name, "Representation: default or demo")
            ->check(CLI::IsMember({"default", "demo"}));
        cmd->add_option("--in", in_path, "Input file, units separated by ' | '");
        cmd->add_option("--out", out_path, "Output file");
    }
    rep_decode->add_option("--max-len", max_len, "Longest word accepted");

    // attack
    auto* attack_cmd = app.add_subcommand("attack", "Subset search for a hidden basis");
    int atk_rank = 2;
    AttackConfig cfg;
    std::string known_path;
    bool estimate_only = false;
    attack_cmd->add_option("--rank", atk_rank, "Rank of the free group")->check(CLI::Range(1, 64));
    attack_cmd->add_option("--L", cfg.L, "Ball radius");
    attack_cmd->add_option("--N", cfg.N, "Target rank");
    attack_cmd->add_option("--K", cfg.K, "Subset size");
    attack_cmd->add_option("--max-subsets", cfg.max_subsets, "Stop after this many subsets");
    attack_cmd->add_option("--known", known_path, "Planted tuple file to look for")->check(CLI::ExistingFile);
    attack_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1U, 1024U));
    attack_cmd->add_flag("--estimate", estimate_only, "Only print the cost estimate");
    attack_cmd->add_option("--out", out_path, "Report file");

    // lcg-check
    auto* lcg_cmd = app.add_subcommand("lcg-check", "Check the LCG period conditions and print its orbit");
    unsigned lc_m = 128;
    std::string lc_beta = "5", lc_gamma = "3", lc_alpha;
    std::size_t lc_count = 0;
    lcg_cmd->add_option("--modulus-exponent", lc_m, "Modulus 2^m")->check(CLI::Range(1, 128));
    lcg_cmd->add_option("--beta", lc_beta, "Multiplier");
    lcg_cmd->add_option("--gamma", lc_gamma, "Increment");
    lcg_cmd->add_option("--alpha", lc_alpha, "Start value");
    lcg_cmd->add_option("--count", lc_count, "Orbit values to print");
    lcg_cmd->add_option("--out", out_path, "Output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*otp_keygen) {
            CipherPublicParams pub;
            pub.alphabet = kg_alpha.resolve();
            for (char c : kg_symbols)
                if (!std::isspace(static_cast<unsigned char>(c))) pub.plaintext_alphabet += c;
            pub.lcg = LcgParams(kg_m, parse_decimal_u128(kg_beta), parse_decimal_u128(kg_gamma));
            Prg prg(seed_value(kg_seed));
            pub.family = AutFamily{prg.next(), pub.alphabet.rank(), pub.lcg.m};
            auto key = keygen(pub, prg);
            write_output(out_path, format_key_file(pub, key));
        } else if (*otp_encrypt || *otp_decrypt || *otp_table) {
            auto kf = parse_key_file(read_text_file(key_path));
            if (*otp_encrypt) {
                std::string text = read_input(in_path);
                std::size_t z = encode_plaintext(kf.pub, text).size();
                auto schedule = resolve_schedule(kf, aut_files, key_path, z);
                write_output(out_path,
                             format_ciphertext(encrypt_with(kf.pub, kf.key, text, schedule, jobs), kf.pub.alphabet));
            } else if (*otp_decrypt) {
                auto c = parse_ciphertext(read_input(in_path), kf.pub.alphabet);
                auto schedule = resolve_schedule(kf, aut_files, key_path, c.units.size());
                std::string plain = use_table ? decrypt_with_table(kf.pub, build_cipher_table(kf.key, schedule), c)
                                              : decrypt_with(kf.pub, kf.key, c, schedule, jobs);
                write_output(out_path, plain + "\n");
            } else {
                std::size_t z = table_len ? table_len : (aut_files.empty() ? kf.schedule.size() : aut_files.size());
                if (z == 0) throw CLI::ValidationError("--length", "give --length or --aut files");
                auto schedule = resolve_schedule(kf, aut_files, key_path, z);
                if (schedule.size() > z) schedule.erase(schedule.begin() + static_cast<long>(z), schedule.end());
                auto table = build_cipher_table(kf.key, schedule);
                std::string out;
                for (std::size_t k = 0; k < table.size(); ++k) {
                    out += std::string(1, kf.pub.plaintext_alphabet[k]) + " =";
                    for (std::size_t i = 0; i < table[k].size(); ++i)
                        out += (i ? " | " : " ") + format_word(table[k][i], kf.pub.alphabet);
                    out += "\n";
                }
                write_output(out_path, out);
            }
        } else if (*pk_keygen) {
            auto params = load_pubkey_params(params_path);
            if (auto k = finite_order_witness(params.f))
                std::cerr << "warning: f has finite order " << *k << "\n";
            write_output(out_path, "c = " + format_word(alice_keygen(params, pk_n), params.alphabet) + "\n");
        } else if (*pk_encrypt) {
            auto params = load_pubkey_params(params_path);
            auto fields = header_fields(read_text_file(public_path));
            auto it = fields.find("c");
            if (it == fields.end()) throw ParseError("public file has no 'c = ...' line", 0);
            Word c = parse_word(it->second, params.alphabet);
            Word m = parse_word(trimmed(read_input(in_path)), params.alphabet);
            if (matrix_variant)
                write_output(out_path, format_matrix_pair(bob_encrypt_matrix(params, c, m, pk_t), params.alphabet));
            else
                write_output(out_path, format_pair(bob_encrypt(params, c, m, pk_t), params.alphabet));
        } else if (*pk_decrypt) {
            auto params = load_pubkey_params(params_path);
            std::string text = read_text_file(pair_path);
            Word m = matrix_variant
                         ? alice_decrypt_matrix(params, pk_n, parse_matrix_pair(text, params.alphabet), max_len)
                         : alice_decrypt(params, pk_n, parse_pair(text, params.alphabet));
            write_output(out_path, format_word(m, params.alphabet) + "\n");
        } else if (*reduce_cmd) {
            std::string text = read_input(in_path);
            auto alphabet = nr_alpha.resolve(header_fields(text));
            auto r = nielsen_reduce(parse_tuple(text, alphabet));
            auto tuple = canonical ? canonical_minimal_basis(r.tuple) : r.tuple;
            write_output(out_path, "alphabet = " + alphabet.to_string() + "\n" + format_tuple(tuple, alphabet));
            if (!moves_path.empty()) write_output(moves_path, format_moves(r.moves));
        } else if (*aut_apply) {
            std::string aut_text = read_text_file(aut_path);
            auto alphabet = aut_alpha.resolve();
            auto f = parse_automorphism(aut_text, alphabet);
            if (aut_inverse) f = inverse(f);
            f = power(f, aut_power);
            std::vector<std::string> inputs;
            if (!word_text.empty())
                inputs.push_back(word_text);
            else
                inputs = lines_of(read_input(in_path));
            std::vector<Word> out;
            for (const auto& s : inputs) out.push_back(f.apply(parse_word(s, alphabet)));
            write_output(out_path, format_word_lines(out, alphabet));
        } else if (*aut_invert) {
            std::string aut_text = read_text_file(aut_path);
            auto alphabet = aut_alpha.resolve();
            write_output(out_path, format_automorphism(inverse(parse_automorphism(aut_text, alphabet)), alphabet));
        } else if (*rep_eval || *rep_decode) {
            RepSpec spec = rep_name == "demo" ? demo_representation() : RepSpec{};
            std::string text = read_input(in_path);
            std::string out;
            if (*rep_eval) {
                auto alphabet = rep_alpha.resolve();
                if (rep_name != "demo") spec = default_representation(alphabet.rank());
                if (spec.rank() != alphabet.rank())
                    throw PreconditionError("representation rank differs from the alphabet");
                for (const auto& line : lines_of(text)) {
                    std::vector<Mat2Q> ms;
                    for (const auto& w : parse_ciphertext(line, alphabet).units) ms.push_back(word_to_matrix(spec, w));
                    out += format_matrices(ms) + "\n";
                }
            } else {
                auto alphabet = rep_alpha.resolve();
                if (rep_name != "demo") spec = default_representation(alphabet.rank());
                if (spec.rank() != alphabet.rank())
                    throw PreconditionError("representation rank differs from the alphabet");
                for (const auto& line : lines_of(text)) {
                    Ciphertext c;
                    auto ms = parse_matrices(line);
                    for (std::size_t i = 0; i < ms.size(); ++i) {
                        auto w = matrix_to_word(spec, ms[i], max_len);
                        if (!w)
                            throw DecryptionFailure("matrix " + std::to_string(i + 1) + " has no preimage of length at most " +
                                                        std::to_string(max_len),
                                                    i);
                        c.units.push_back(*w);
                    }
                    out += format_ciphertext(c, alphabet);
                }
            }
            write_output(out_path, out);
        } else if (*attack_cmd) {
            cfg.validate();
            if (estimate_only) {
                write_output(out_path, format_estimate(attack_cost_estimate(atk_rank, cfg)));
            } else {
                Alphabet alphabet(atk_rank);
                std::optional<GeneratingTuple> known;
                if (!known_path.empty()) {
                    std::string text = read_text_file(known_path);
                    auto fields = header_fields(text);
                    if (fields.count("alphabet")) alphabet = Alphabet::parse(fields["alphabet"]);
                    known = parse_tuple(text, alphabet);
                }
                if (alphabet.rank() != atk_rank) throw PreconditionError("--known alphabet rank differs from --rank");
                auto report = subset_attack(atk_rank, cfg, known, jobs);
                write_output(out_path, format_report(report, alphabet));
                std::cerr << "elapsed_ms = " << report.elapsed.count() << "\n";
            }
        } else if (*lcg_cmd) {
            LcgParams p(lc_m, parse_decimal_u128(lc_beta), parse_decimal_u128(lc_gamma));
            std::string out = format_lcg_params(p, 0);
            out = out.substr(0, out.rfind("seed = "));
            out += std::string("max_period = ") + (has_max_period(p) ? "true" : "false") + "\n";
            if (!lc_alpha.empty()) {
                auto xs = keystream(p, p.reduce(parse_decimal_u128(lc_alpha)), lc_count);
                for (std::size_t i = 0; i < xs.size(); ++i)
                    out += "x" + std::to_string(i + 1) + " = " + to_decimal(xs[i]) + "\n";
            }
            write_output(out_path, out);
        }
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
