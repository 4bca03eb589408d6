#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "fgc/automorphism.hpp"
#include "fgc/matrix.hpp"
#include "fgc/word.hpp"

namespace fgc {

// Public data: base word a and automorphism f. Alice's secret is n, Bob's
// ephemeral exponent t. Exponents above max_exponent are refused because
// image lengths can grow exponentially in them.
struct PubkeyParams {
    Alphabet alphabet{2};
    Word a;
    FactoredAutomorphism f = FactoredAutomorphism::identity(2);
    std::optional<RepSpec> spec;
    unsigned max_exponent = 32;

    // Throws PreconditionError when a = 1, f = id or the ranks disagree.
    void validate() const;
};

struct CipherPair {
    Word c1;
    Word c2;
    friend bool operator==(const CipherPair&, const CipherPair&) = default;
};

struct MatrixCipherPair {
    Mat2Q c1;
    Word c2;
};

// Smallest k <= limit with f^k = id, if any.
std::optional<unsigned> finite_order_witness(const FactoredAutomorphism& f, unsigned limit = 12);

// c = f^n(a).
Word alice_keygen(const PubkeyParams& params, unsigned n);

// c1 = m f^t(c), c2 = f^t(a).
CipherPair bob_encrypt(const PubkeyParams& params, const Word& c, const Word& m, unsigned t);

// c1 f^n(c2)^-1. A wrong n gives a wrong word, not an error.
Word alice_decrypt(const PubkeyParams& params, unsigned n, const CipherPair& pair);

// c1 = g(m) g(f^t(c)) with g the representation in params.spec.
MatrixCipherPair bob_encrypt_matrix(const PubkeyParams& params, const Word& c, const Word& m, unsigned t);

// c1 g(f^n(c2))^-1, before decoding.
Mat2Q alice_unmask_matrix(const PubkeyParams& params, unsigned n, const MatrixCipherPair& pair);

// Throws DecryptionFailure when no word of length <= max_len has the
// unmasked matrix as its image.
Word alice_decrypt_matrix(const PubkeyParams& params, unsigned n, const MatrixCipherPair& pair, std::size_t max_len);

// Params file:
//   alphabet = x1 x2 x3
//   a = <word>
//   automorphism = <path to DSL file, relative to the params file>
//   representation = default | demo        (optional)
//   max_exponent = 32                      (optional)
PubkeyParams parse_pubkey_params(std::string_view text, const std::filesystem::path& base_dir);
PubkeyParams load_pubkey_params(const std::filesystem::path& path);

// "c1 = ...", "c2 = ..." lines.
std::string format_pair(const CipherPair& pair, const Alphabet& alphabet);
CipherPair parse_pair(std::string_view text, const Alphabet& alphabet);
std::string format_matrix_pair(const MatrixCipherPair& pair, const Alphabet& alphabet);
MatrixCipherPair parse_matrix_pair(std::string_view text, const Alphabet& alphabet);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace fgc
