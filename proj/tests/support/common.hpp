#pragma once

#include <string>
#include <string_view>

#include "fgc/nielsen.hpp"
#include "fgc/word.hpp"
#include "expr.hpp"

namespace testsupport {

inline const fgc::Alphabet& abcd() {
    static const fgc::Alphabet a = fgc::Alphabet::parse("a b c d");
    return a;
}

inline const fgc::Alphabet& x3() {
    static const fgc::Alphabet a(3);
    return a;
}

inline fgc::Word W(std::string_view text, const fgc::Alphabet& alphabet = abcd()) {
    return fgc::parse_word(text, alphabet);
}

inline fgc::GeneratingTuple tuple_of(std::initializer_list<const char*> words, const fgc::Alphabet& alphabet = abcd()) {
    fgc::GeneratingTuple out;
    for (const char* w : words) out.push_back(fgc::parse_word(w, alphabet));
    return out;
}

// The twelve words of the example key, in key order A E I O U T M L K Y B N.
inline fgc::GeneratingTuple example_key_basis() {
    return tuple_of({"b a^2", "c d", "d^2 c^-2", "a^-1 b", "a^4 b^-1", "b^3 a^-2", "b c^3", "b c^-1 b a b^-1",
                     "c^2 b a", "c^2 d a b^-1", "a^-1 d^3 c^-1", "a^2 d b^2 d^-1"});
}

}  // namespace testsupport
