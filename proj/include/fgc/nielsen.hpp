#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fgc/word.hpp"

namespace fgc {

// Ordered tuple of words; the set U of the Nielsen literature with an index
// attached to every entry so that moves can address it.
using GeneratingTuple = std::vector<Word>;

// Elementary Nielsen transformation. Indices are 0-based here and 1-based in
// the text format.
struct ElementaryMove {
    enum class Kind { T1, T2, T3 };

    Kind kind = Kind::T1;
    std::size_t i = 0;
    std::size_t j = 0;  // T2 only

    static ElementaryMove t1(std::size_t i) { return {Kind::T1, i, 0}; }
    static ElementaryMove t2(std::size_t i, std::size_t j) { return {Kind::T2, i, j}; }
    static ElementaryMove t3(std::size_t i) { return {Kind::T3, i, 0}; }

    bool regular() const { return kind != Kind::T3; }

    friend bool operator==(const ElementaryMove&, const ElementaryMove&) = default;
};

using MoveList = std::vector<ElementaryMove>;

GeneratingTuple apply_move(GeneratingTuple tuple, const ElementaryMove& m);
GeneratingTuple apply_moves(GeneratingTuple tuple, const MoveList& moves);

// Conditions N0, N1, N2 checked over all triples of U^{+-1}. "v1 v2 != 1" is
// read at the symbol level: v2 is not the formal inverse of v1.
bool is_nielsen_reduced(const GeneratingTuple& tuple);

// Characterization by isolated major segments and halves. Requires every entry
// to be non-trivial (PreconditionError otherwise).
bool is_nielsen_reduced_segments(const GeneratingTuple& tuple);

struct Reduction {
    GeneratingTuple tuple;
    MoveList moves;
};

// Deterministic Nielsen reduction. Replaying `moves` on the input yields
// `tuple` exactly.
Reduction nielsen_reduce(const GeneratingTuple& tuple);

// Nielsen-reduced basis with entries replaced by min(u, u^-1), sorted, and
// minimized over all Nielsen-reduced bases reachable by length-preserving
// replacements. `state_cap` bounds that search.
GeneratingTuple canonical_minimal_basis(const GeneratingTuple& tuple, std::size_t state_cap = 20000);

// One factor of a membership expression: basis entry `index` (0-based) raised
// to `sign`.
struct BasisLetter {
    std::size_t index = 0;
    int sign = 1;
    friend bool operator==(const BasisLetter&, const BasisLetter&) = default;
};

using BasisExpression = std::vector<BasisLetter>;

// Constructive membership for a Nielsen-reduced basis. Returns the expression
// whose expansion reduces to w, or nullopt when w is not in the subgroup.
std::optional<BasisExpression> subgroup_membership(const GeneratingTuple& basis, const Word& w);

Word expand(const GeneratingTuple& basis, const BasisExpression& expr);

// Canonical-form comparison.
bool same_subgroup(const GeneratingTuple& s1, const GeneratingTuple& s2);
// Mutual membership after reducing both sides; must agree with same_subgroup.
bool same_subgroup_by_membership(const GeneratingTuple& s1, const GeneratingTuple& s2);

std::size_t total_length(const GeneratingTuple& tuple);

// "begin tuple" / one word per line / "end tuple".
std::string format_tuple(const GeneratingTuple& tuple, const Alphabet& alphabet);
GeneratingTuple parse_tuple(std::string_view text, const Alphabet& alphabet);

// "T1 i", "T2 i j", "T3 i", one per line, 1-based.
std::string format_moves(const MoveList& moves);
MoveList parse_moves(std::string_view text);

}  // namespace fgc
