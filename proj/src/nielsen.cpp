#include "fgc/nielsen.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "fgc/error.hpp"
#include "text_util.hpp"

namespace fgc {

namespace {

// Symbols of U^{+-1}: symbol 2i is u_i, symbol 2i+1 is u_i^-1.
std::vector<Word> symbols_of(const GeneratingTuple& tuple) {
    std::vector<Word> out;
    out.reserve(tuple.size() * 2);
    for (const auto& u : tuple) {
        out.push_back(u);
        out.push_back(u.inverse());
    }
    return out;
}

constexpr std::size_t inverse_symbol(std::size_t s) { return s ^ 1U; }

void check_index(const GeneratingTuple& tuple, std::size_t i) {
    if (i >= tuple.size())
        throw IllegalMove("move index " + std::to_string(i + 1) + " outside tuple of length " +
                          std::to_string(tuple.size()));
}

struct Violation {
    std::size_t s1, s2, s3;
};

bool n1_holds(const std::vector<Word>& sym) {
    for (std::size_t a = 0; a < sym.size(); ++a)
        for (std::size_t b = 0; b < sym.size(); ++b) {
            if (b == inverse_symbol(a)) continue;
            std::size_t len = product_length(sym[a], sym[b]);
            if (len < sym[a].length() || len < sym[b].length()) return false;
        }
    return true;
}

// First N2 violation in symbol order, assuming N0 and N1 hold.
std::optional<Violation> first_n2_violation(const std::vector<Word>& sym) {
    for (std::size_t s2 = 0; s2 < sym.size(); ++s2) {
        const Word& v2 = sym[s2];
        for (std::size_t s1 = 0; s1 < sym.size(); ++s1) {
            if (s1 == inverse_symbol(s2)) continue;
            std::size_t c12 = cancellation(sym[s1], v2);
            for (std::size_t s3 = 0; s3 < sym.size(); ++s3) {
                if (s3 == inverse_symbol(s2)) continue;
                std::size_t c23 = cancellation(v2, sym[s3]);
                // With N1 in force each cancellation is at most |v2|/2, so the
                // middle word survives unless both halves cancel.
                if (c12 + c23 < v2.length()) continue;
                long long lhs = static_cast<long long>((sym[s1] * v2 * sym[s3]).length());
                long long rhs = static_cast<long long>(sym[s1].length()) - static_cast<long long>(v2.length()) +
                                static_cast<long long>(sym[s3].length());
                if (lhs <= rhs) return Violation{s1, s2, s3};
            }
        }
    }
    return std::nullopt;
}

class Reducer {
public:
    explicit Reducer(GeneratingTuple t) : tuple_(std::move(t)) {}

    void push(const ElementaryMove& m) {
        tuple_ = apply_move(std::move(tuple_), m);
        moves_.push_back(m);
    }

    // u_i <- u_i u_j^sign (right) or u_j^sign u_i (left), via T1/T2 only.
    void replace(std::size_t i, std::size_t j, bool left, int sign) {
        using M = ElementaryMove;
        if (!left && sign > 0) {
            push(M::t2(i, j));
        } else if (!left) {
            push(M::t1(j));
            push(M::t2(i, j));
            push(M::t1(j));
        } else if (sign > 0) {
            push(M::t1(i));
            push(M::t1(j));
            push(M::t2(i, j));
            push(M::t1(j));
            push(M::t1(i));
        } else {
            push(M::t1(i));
            push(M::t2(i, j));
            push(M::t1(i));
        }
    }

    bool delete_identity() {
        for (std::size_t i = 0; i < tuple_.size(); ++i)
            if (tuple_[i].is_identity()) {
                push(ElementaryMove::t3(i));
                return true;
            }
        return false;
    }

    bool shorten() {
        for (std::size_t i = 0; i < tuple_.size(); ++i)
            for (std::size_t j = 0; j < tuple_.size(); ++j) {
                if (i == j) continue;
                for (bool left : {false, true})
                    for (int sign : {1, -1}) {
                        Word uj = sign > 0 ? tuple_[j] : tuple_[j].inverse();
                        std::size_t len = left ? product_length(uj, tuple_[i]) : product_length(tuple_[i], uj);
                        if (len < tuple_[i].length()) {
                            replace(i, j, left, sign);
                            return true;
                        }
                    }
            }
        return false;
    }

    // For a violation v1 = x p^-1, v2 = p q, v3 = q^-1 y either v1 -> v1 v2 or
    // v3 -> v2 v3 lowers the pair {L(w), L(w^-1)} of left halves of the
    // replaced entry while keeping its length; which one depends on p vs q^-1.
    bool resolve_n2() {
        auto sym = symbols_of(tuple_);
        auto v = first_n2_violation(sym);
        if (!v) return false;
        const Word& v2 = sym[v->s2];
        std::size_t k = v2.length() / 2;
        Word p = v2.prefix(k);
        Word q_inv = v2.suffix(k).inverse();
        std::size_t i2 = v->s2 / 2;
        int d2 = (v->s2 & 1U) ? -1 : 1;
        if (q_inv < p) {
            std::size_t i1 = v->s1 / 2;
            bool inverted = (v->s1 & 1U) != 0;
            if (!inverted)
                replace(i1, i2, false, d2);
            else
                replace(i1, i2, true, -d2);
        } else {
            std::size_t i3 = v->s3 / 2;
            bool inverted = (v->s3 & 1U) != 0;
            if (!inverted)
                replace(i3, i2, true, d2);
            else
                replace(i3, i2, false, -d2);
        }
        return true;
    }

    Reduction run() && {
        while (true) {
            if (delete_identity()) continue;
            if (shorten()) continue;
            if (resolve_n2()) continue;
            break;
        }
        return Reduction{std::move(tuple_), std::move(moves_)};
    }

private:
    GeneratingTuple tuple_;
    MoveList moves_;
};

Word normalize(const Word& w) {
    Word inv = w.inverse();
    return inv < w ? inv : w;
}

GeneratingTuple normalized(GeneratingTuple t) {
    for (auto& w : t) w = normalize(w);
    std::sort(t.begin(), t.end());
    return t;
}

std::string trim(std::string_view s) { return std::string(detail::trim(s)); }

}  // namespace

GeneratingTuple apply_move(GeneratingTuple tuple, const ElementaryMove& m) {
    check_index(tuple, m.i);
    switch (m.kind) {
        case ElementaryMove::Kind::T1:
            tuple[m.i] = tuple[m.i].inverse();
            break;
        case ElementaryMove::Kind::T2:
            check_index(tuple, m.j);
            if (m.i == m.j) throw IllegalMove("T2 requires distinct indices");
            tuple[m.i] *= tuple[m.j];
            break;
        case ElementaryMove::Kind::T3:
            if (!tuple[m.i].is_identity())
                throw IllegalMove("T3 at index " + std::to_string(m.i + 1) + " on a non-identity entry");
            tuple.erase(tuple.begin() + static_cast<std::ptrdiff_t>(m.i));
            break;
    }
    return tuple;
}

GeneratingTuple apply_moves(GeneratingTuple tuple, const MoveList& moves) {
    for (const auto& m : moves) tuple = apply_move(std::move(tuple), m);
    return tuple;
}

bool is_nielsen_reduced(const GeneratingTuple& tuple) {
    for (const auto& u : tuple)
        if (u.is_identity()) return false;
    auto sym = symbols_of(tuple);
    if (!n1_holds(sym)) return false;
    return !first_n2_violation(sym).has_value();
}

bool is_nielsen_reduced_segments(const GeneratingTuple& tuple) {
    for (std::size_t i = 0; i < tuple.size(); ++i)
        if (tuple[i].is_identity())
            throw PreconditionError("segment criterion needs non-identity entries (entry " + std::to_string(i + 1) +
                                    ")");
    auto sym = symbols_of(tuple);
    auto isolated_initial = [&](std::size_t owner, const Word& seg) {
        for (std::size_t s = 0; s < sym.size(); ++s)
            if (s != owner && sym[s].starts_with(seg)) return false;
        return true;
    };
    for (std::size_t s = 0; s < sym.size(); ++s) {
        const Word& w = sym[s];
        std::size_t n = w.length();
        // Major terminal segment of w is the inverse of the major initial
        // segment of the partner symbol, so initial checks cover both.
        if (!isolated_initial(s, w.prefix(n / 2 + 1))) return false;
        if (n % 2 == 0 && (s & 1U) == 0) {
            bool left = isolated_initial(s, w.prefix(n / 2));
            bool right = isolated_initial(inverse_symbol(s), sym[inverse_symbol(s)].prefix(n / 2));
            if (!left && !right) return false;
        }
    }
    return true;
}

Reduction nielsen_reduce(const GeneratingTuple& tuple) { return Reducer(tuple).run(); }

GeneratingTuple canonical_minimal_basis(const GeneratingTuple& tuple, std::size_t state_cap) {
    GeneratingTuple start = normalized(nielsen_reduce(tuple).tuple);
    std::set<GeneratingTuple> seen{start};
    std::deque<GeneratingTuple> queue{start};
    GeneratingTuple best = start;
    while (!queue.empty() && seen.size() < state_cap) {
        GeneratingTuple cur = std::move(queue.front());
        queue.pop_front();
        if (cur < best && is_nielsen_reduced(cur)) best = cur;
        for (std::size_t i = 0; i < cur.size(); ++i)
            for (std::size_t j = 0; j < cur.size(); ++j) {
                if (i == j) continue;
                for (bool left : {false, true})
                    for (int sign : {1, -1}) {
                        Word uj = sign > 0 ? cur[j] : cur[j].inverse();
                        Word w = left ? uj * cur[i] : cur[i] * uj;
                        if (w.length() != cur[i].length()) continue;
                        GeneratingTuple next = cur;
                        next[i] = normalize(w);
                        std::sort(next.begin(), next.end());
                        if (seen.insert(next).second) queue.push_back(std::move(next));
                    }
            }
    }
    return best;
}

std::optional<BasisExpression> subgroup_membership(const GeneratingTuple& basis, const Word& w) {
    if (!is_nielsen_reduced(basis)) throw PreconditionError("membership basis is not Nielsen reduced");
    auto sym = symbols_of(basis);
    // Each factor of a reduced product keeps at least its major initial
    // segment, or its left half when that half is isolated.
    std::vector<Word> major(sym.size());
    std::vector<std::optional<Word>> half(sym.size());
    for (std::size_t s = 0; s < sym.size(); ++s) {
        std::size_t n = sym[s].length();
        major[s] = sym[s].prefix(n / 2 + 1);
        if (n % 2 == 0) {
            Word lh = sym[s].prefix(n / 2);
            bool isolated = true;
            for (std::size_t o = 0; o < sym.size() && isolated; ++o)
                if (o != s && sym[o].starts_with(lh)) isolated = false;
            if (isolated) half[s] = lh;
        }
    }
    BasisExpression expr;
    Word rest = w;
    std::size_t budget = w.length() + 1;
    while (!rest.is_identity()) {
        if (budget-- == 0) return std::nullopt;
        std::optional<std::size_t> pick;
        for (std::size_t s = 0; s < sym.size() && !pick; ++s)
            if (rest.starts_with(major[s]) || (half[s] && rest.starts_with(*half[s]))) pick = s;
        if (!pick) return std::nullopt;
        std::size_t s = *pick;
        rest = sym[inverse_symbol(s)] * rest;
        BasisLetter bl{s / 2, (s & 1U) ? -1 : 1};
        if (!expr.empty() && expr.back().index == bl.index && expr.back().sign == -bl.sign)
            expr.pop_back();
        else
            expr.push_back(bl);
    }
    return expr;
}

Word expand(const GeneratingTuple& basis, const BasisExpression& expr) {
    Word out;
    for (const auto& bl : expr) out *= bl.sign > 0 ? basis.at(bl.index) : basis.at(bl.index).inverse();
    return out;
}

bool same_subgroup(const GeneratingTuple& s1, const GeneratingTuple& s2) {
    return canonical_minimal_basis(s1) == canonical_minimal_basis(s2);
}

bool same_subgroup_by_membership(const GeneratingTuple& s1, const GeneratingTuple& s2) {
    auto r1 = nielsen_reduce(s1).tuple;
    auto r2 = nielsen_reduce(s2).tuple;
    for (const auto& u : s1)
        if (!subgroup_membership(r2, u)) return false;
    for (const auto& u : s2)
        if (!subgroup_membership(r1, u)) return false;
    return true;
}

std::size_t total_length(const GeneratingTuple& tuple) {
    std::size_t n = 0;
    for (const auto& u : tuple) n += u.length();
    return n;
}

std::string format_tuple(const GeneratingTuple& tuple, const Alphabet& alphabet) {
    std::string out = "begin tuple\n";
    for (const auto& u : tuple) out += format_word(u, alphabet) + "\n";
    out += "end tuple\n";
    return out;
}

GeneratingTuple parse_tuple(std::string_view text, const Alphabet& alphabet) {
    auto lines = detail::split_lines(text);
    std::size_t i = 0;
    while (i < lines.size() && trim(lines[i]) != "begin tuple") ++i;
    if (i == lines.size()) throw ParseError("missing 'begin tuple'", 0);
    GeneratingTuple out;
    for (++i; i < lines.size(); ++i) {
        std::string line = trim(lines[i]);
        if (line == "end tuple") return out;
        if (line.empty() || line.front() == '#') continue;
        try {
            out.push_back(parse_word(line, alphabet));
        } catch (const ParseError& e) {
            throw ParseError("tuple line " + std::to_string(i + 1) + ": " + e.what(), i + 1);
        }
    }
    throw ParseError("missing 'end tuple'", lines.size());
}

std::string format_moves(const MoveList& moves) {
    std::ostringstream out;
    for (const auto& m : moves) {
        switch (m.kind) {
            case ElementaryMove::Kind::T1: out << "T1 " << m.i + 1 << '\n'; break;
            case ElementaryMove::Kind::T2: out << "T2 " << m.i + 1 << ' ' << m.j + 1 << '\n'; break;
            case ElementaryMove::Kind::T3: out << "T3 " << m.i + 1 << '\n'; break;
        }
    }
    return out.str();
}

MoveList parse_moves(std::string_view text) {
    MoveList out;
    auto lines = detail::split_lines(text);
    for (std::size_t n = 0; n < lines.size(); ++n) {
        std::string line = trim(lines[n]);
        if (line.empty() || line.front() == '#') continue;
        auto tok = detail::split_ws(line);
        auto index = [&](std::size_t k) {
            auto v = detail::parse_unsigned(tok[k]);
            if (!v || *v == 0) throw ParseError("bad move index '" + tok[k] + "' on line " + std::to_string(n + 1), n + 1);
            return static_cast<std::size_t>(*v - 1);
        };
        if (tok[0] == "T1" && tok.size() == 2)
            out.push_back(ElementaryMove::t1(index(1)));
        else if (tok[0] == "T2" && tok.size() == 3)
            out.push_back(ElementaryMove::t2(index(1), index(2)));
        else if (tok[0] == "T3" && tok.size() == 2)
            out.push_back(ElementaryMove::t3(index(1)));
        else
            throw ParseError("unrecognized move '" + line + "' on line " + std::to_string(n + 1), n + 1);
    }
    return out;
}

}  // namespace fgc
