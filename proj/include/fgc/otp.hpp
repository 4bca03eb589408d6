#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fgc/automorphism.hpp"
#include "fgc/keystream.hpp"
#include "fgc/nielsen.hpp"
#include "fgc/prg.hpp"

namespace fgc {

// Per-letter cipher: symbol a_t at position i becomes f_{x_i}(u_t), where
// x_1, x_2, ... is the LCG orbit of the private start alpha.
struct CipherPublicParams {
    Alphabet alphabet{2};
    std::string plaintext_alphabet;  // N distinct single-character symbols
    AutFamily family;
    LcgParams lcg;

    // Throws PreconditionError unless q >= 2, N >= 2, symbols are distinct
    // and non-blank, and the LCG has maximal period.
    void validate() const;

    std::size_t symbol_count() const { return plaintext_alphabet.size(); }
    std::optional<std::size_t> symbol_index(char c) const;
};

struct CipherPrivateKey {
    GeneratingTuple basis;  // entry k encrypts plaintext symbol k
    u128 alpha = 0;

    // Throws PreconditionError unless the basis has N non-trivial entries and
    // is Nielsen reduced.
    void validate(const CipherPublicParams& pub) const;
};

struct Ciphertext {
    std::vector<Word> units;

    // Total letters over all units; units are never cancelled against each
    // other, so this is what an eavesdropper sees.
    std::size_t visible_length() const;

    friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
};

using Schedule = std::vector<FactoredAutomorphism>;

// Whitespace is dropped; any other symbol outside the plaintext alphabet is an
// EncodingError naming it and its position.
std::vector<std::size_t> encode_plaintext(const CipherPublicParams& pub, std::string_view text);

// Automorphisms f_{x_1..x_z} drawn from the family along the keystream.
Schedule derive_schedule(const CipherPublicParams& pub, const CipherPrivateKey& key, std::size_t z);

CipherPrivateKey keygen(const CipherPublicParams& pub, DrawSource& src);

Ciphertext encrypt(const CipherPublicParams& pub, const CipherPrivateKey& key, std::string_view plaintext,
                   unsigned jobs = 1);
// Same with an explicit schedule (one automorphism per position).
Ciphertext encrypt_with(const CipherPublicParams& pub, const CipherPrivateKey& key, std::string_view plaintext,
                        const Schedule& schedule, unsigned jobs = 1);

// Inverse-automorphism decryption. A unit that does not map back into the
// basis raises DecryptionFailure with its index; nothing partial is returned.
std::string decrypt(const CipherPublicParams& pub, const CipherPrivateKey& key, const Ciphertext& c,
                    unsigned jobs = 1);
std::string decrypt_with(const CipherPublicParams& pub, const CipherPrivateKey& key, const Ciphertext& c,
                         const Schedule& schedule, unsigned jobs = 1);

// table[k][i] = f_{x_i}(u_k).
using CipherTable = std::vector<std::vector<Word>>;

CipherTable build_cipher_table(const CipherPrivateKey& key, const Schedule& schedule);
std::string decrypt_with_table(const CipherPublicParams& pub, const CipherTable& table, const Ciphertext& c);

// Units separated by " | ", each in word grammar, on one line.
std::string format_ciphertext(const Ciphertext& c, const Alphabet& alphabet);
Ciphertext parse_ciphertext(std::string_view text, const Alphabet& alphabet);

struct KeyFile {
    CipherPublicParams pub;
    CipherPrivateKey key;
    // Optional "schedule = f1.aut f2.aut ..." line: explicit automorphism
    // files, relative to the key file, used instead of the derived family.
    std::vector<std::string> schedule;
};

std::string format_key_file(const CipherPublicParams& pub, const CipherPrivateKey& key);
KeyFile parse_key_file(std::string_view text);

}  // namespace fgc
