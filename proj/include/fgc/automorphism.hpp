#pragma once

#include <string>
#include <variant>
#include <vector>

#include "fgc/nielsen.hpp"
#include "fgc/prg.hpp"
#include "fgc/word.hpp"

namespace fgc {

// Whitehead automorphism: either the inversion i_a or W_(a,L,R,M) with
// b -> ab (b in L), b -> b a^-1 (b in R), b -> a b a^-1 (b in M), b -> b
// otherwise. Generator indices are 1-based and kept sorted.
struct WhiteheadMove {
    enum class Kind { Inv, Multi };

    Kind kind = Kind::Inv;
    int a = 1;
    std::vector<int> left, right, middle;  // middle always contains a for Multi

    static WhiteheadMove inversion(int a) { return {Kind::Inv, a, {}, {}, {}}; }
    static WhiteheadMove multi(int a, std::vector<int> left, std::vector<int> right, std::vector<int> middle);

    // Throws PreconditionError on overlapping sets, a outside M, a in L or R,
    // an identity W, or an index outside [1, rank].
    void validate(int rank) const;

    // Images of x_1..x_rank.
    std::vector<Word> images(int rank) const;

    friend bool operator==(const WhiteheadMove&, const WhiteheadMove&) = default;
};

// A factor acts on a q-tuple by substitution: U_i <- phi(x_i)[x := U]. For a
// Nielsen move this is exactly the move on the tuple.
using AutFactor = std::variant<ElementaryMove, WhiteheadMove>;

// Automorphism of the free group of rank q stored as its factor list plus the
// cached images of the generators. The factors are applied left to right to
// the basis tuple (x_1, ..., x_q); the final tuple is the list of images.
class FactoredAutomorphism {
public:
    static FactoredAutomorphism identity(int rank);
    static FactoredAutomorphism from_factors(std::vector<AutFactor> factors, int rank);

    int rank() const { return rank_; }
    const std::vector<AutFactor>& factors() const { return factors_; }
    const std::vector<Word>& images() const { return images_; }
    bool is_identity() const;

    Word apply(const Word& w) const;

private:
    FactoredAutomorphism(int rank, std::vector<AutFactor> factors, std::vector<Word> images)
        : rank_(rank), factors_(std::move(factors)), images_(std::move(images)) {}

    friend FactoredAutomorphism compose(const FactoredAutomorphism&, const FactoredAutomorphism&);

    int rank_ = 0;
    std::vector<AutFactor> factors_;
    std::vector<Word> images_;
};

// Substitute images[i] for x_i (inverted for x_i^-1) and reduce.
Word substitute(const std::vector<Word>& images, const Word& w);

// Throws IllegalMove when the sequence contains T3.
FactoredAutomorphism from_nielsen_sequence(const MoveList& moves, int rank);
FactoredAutomorphism from_whitehead_sequence(const std::vector<WhiteheadMove>& moves, int rank);

inline Word apply(const FactoredAutomorphism& f, const Word& w) { return f.apply(w); }

// w -> f(g(w)).
FactoredAutomorphism compose(const FactoredAutomorphism& f, const FactoredAutomorphism& g);
FactoredAutomorphism power(const FactoredAutomorphism& f, unsigned n);
// Factor-wise: reversed order, each factor replaced by its inverse sequence.
FactoredAutomorphism inverse(const FactoredAutomorphism& f);

// One translated entry of the 0-1 sequence: a zero gives an inversion i_{x_z},
// a one a W_(a,L,R,M) with set sizes drawn as z1, z2, z3.
WhiteheadMove draw_whitehead_factor(DrawSource& src, bool multi, int rank);

// Random non-identity automorphism built from a 0-1 sequence of length
// 4 + (draw mod 13). Adjacent pairs i_a i_a, W W^-1 and W^-1 W are redrawn,
// as is the last factor while the composite is the identity.
FactoredAutomorphism random_whitehead_automorphism(DrawSource& src, int rank);

// Text DSL, one factor per line: "T1 i", "T2 i j", "INV a",
// "W a ; L = ... ; R = ... ; M = ...". Generator names come from the alphabet.
FactoredAutomorphism parse_automorphism(std::string_view text, const Alphabet& alphabet);
std::string format_automorphism(const FactoredAutomorphism& f, const Alphabet& alphabet);

}  // namespace fgc
