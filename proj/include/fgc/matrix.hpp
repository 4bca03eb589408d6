#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fgc/nielsen.hpp"
#include "fgc/word.hpp"

namespace fgc {

// Arbitrary-precision rationals, always canonical (lowest terms, positive
// denominator).
using Rational = mpq_class;
using BigInt = mpz_class;

Rational make_rational(long num, long den = 1);

struct Mat2Q {
    Rational a11{1}, a12{0}, a21{0}, a22{1};

    static Mat2Q identity() { return {}; }

    friend bool operator==(const Mat2Q&, const Mat2Q&) = default;
};

Mat2Q mat_mul(const Mat2Q& a, const Mat2Q& b);
Rational mat_det(const Mat2Q& a);
// Throws PreconditionError on a singular matrix.
Mat2Q mat_inv(const Mat2Q& a);

inline Mat2Q operator*(const Mat2Q& a, const Mat2Q& b) { return mat_mul(a, b); }

// [[-r, r^2 - 1], [1, -r]]; determinant 1 for every r.
Mat2Q tl_generator(const Rational& r);

// Faithful representation of the free group on `alphabet` into SL(2, Q).
// Generator x_i maps to a word in auxiliary generators M_1..M_p,
// M_j = tl_generator(r_j) with r_1 >= 2 and r_{j+1} - r_j >= 3. Without
// explicit words, x_i maps to M_i.
class RepSpec {
public:
    int rank() const { return static_cast<int>(generator_matrices_.size()); }
    const std::vector<Rational>& parameters() const { return r_; }
    const GeneratingTuple& generator_words() const { return words_; }
    const std::vector<Mat2Q>& generator_matrices() const { return generator_matrices_; }
    const std::vector<Mat2Q>& inverse_matrices() const { return inverse_matrices_; }

    // Nielsen-reduced form of the generator words and, for each reduced
    // entry, the word over the original generators it equals.
    const GeneratingTuple& reduced_words() const { return reduced_; }
    const GeneratingTuple& reduced_in_generators() const { return reduced_in_generators_; }

private:
    friend RepSpec make_representation(int, std::vector<Rational>, std::optional<GeneratingTuple>);

    std::vector<Rational> r_;
    GeneratingTuple words_;
    std::vector<Mat2Q> tl_;
    std::vector<Mat2Q> tl_inverse_;
    std::vector<Mat2Q> generator_matrices_;
    std::vector<Mat2Q> inverse_matrices_;
    GeneratingTuple reduced_;
    GeneratingTuple reduced_in_generators_;

    friend std::optional<Word> matrix_to_word(const RepSpec&, const Mat2Q&, std::size_t);
};

// Throws PreconditionError when the parameters break r_1 >= 2 or the gap
// condition, when a word uses an auxiliary generator beyond r.size(), or when
// the words are not a free basis of the subgroup they generate.
RepSpec make_representation(int rank, std::vector<Rational> r, std::optional<GeneratingTuple> gen_words = std::nullopt);

// r_j = 2 + 3(j - 1), x_i -> M_i.
RepSpec default_representation(int rank);

// Rank-4 preset over three auxiliary generators with r = 7/2, 15/2, 23/2 and
// a -> M1 M2, b -> M3 M1^2, c -> M2 M3 M2, d -> M1^-1 M2.
RepSpec demo_representation();

Mat2Q word_to_matrix(const RepSpec& spec, const Word& w);

// Shortest word w with |w| <= max_len and word_to_matrix(w) == m, or nullopt.
// Decodes by ping-pong on the auxiliary generators, then expresses the result
// in the generator words. Throws PreconditionError when det(m) != 1.
std::optional<Word> matrix_to_word(const RepSpec& spec, const Mat2Q& m, std::size_t max_len);

// "[[n/d, n/d],[n/d, n/d]]"
std::string format_matrix(const Mat2Q& m);
Mat2Q parse_matrix(std::string_view text);

// Matrices separated by " | ".
std::string format_matrices(const std::vector<Mat2Q>& ms);
std::vector<Mat2Q> parse_matrices(std::string_view text);

}  // namespace fgc
