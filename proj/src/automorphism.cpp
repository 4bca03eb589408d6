#include "fgc/automorphism.hpp"

#include <algorithm>
#include <sstream>

#include "fgc/error.hpp"
#include "text_util.hpp"

namespace fgc {

namespace {

std::vector<Word> basis(int rank) {
    std::vector<Word> out;
    out.reserve(static_cast<std::size_t>(rank));
    for (int i = 1; i <= rank; ++i) out.push_back(Word::generator(i));
    return out;
}

void check_factor(const AutFactor& f, int rank) {
    if (const auto* m = std::get_if<ElementaryMove>(&f)) {
        if (!m->regular()) throw IllegalMove("T3 is not allowed in an automorphism");
        auto in_range = [&](std::size_t i) { return i < static_cast<std::size_t>(rank); };
        if (!in_range(m->i) || (m->kind == ElementaryMove::Kind::T2 && (!in_range(m->j) || m->i == m->j)))
            throw IllegalMove("Nielsen move index outside rank " + std::to_string(rank));
    } else {
        std::get<WhiteheadMove>(f).validate(rank);
    }
}

// Tuple <- tuple o factor.
std::vector<Word> act(std::vector<Word> tuple, const AutFactor& f) {
    if (const auto* m = std::get_if<ElementaryMove>(&f)) return apply_move(std::move(tuple), *m);
    auto img = std::get<WhiteheadMove>(f).images(static_cast<int>(tuple.size()));
    std::vector<Word> out;
    out.reserve(tuple.size());
    for (const auto& w : img) out.push_back(substitute(tuple, w));
    return out;
}

std::vector<AutFactor> inverse_factor(const AutFactor& f) {
    if (const auto* m = std::get_if<ElementaryMove>(&f)) {
        if (m->kind == ElementaryMove::Kind::T1) return {*m};
        return {ElementaryMove::t1(m->j), *m, ElementaryMove::t1(m->j)};
    }
    const auto& w = std::get<WhiteheadMove>(f);
    if (w.kind == WhiteheadMove::Kind::Inv) return {w};
    auto ia = WhiteheadMove::inversion(w.a);
    return {ia, w, ia};
}

std::vector<int> sorted_unique(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

// True when appending `next` closes i_a i_a, W (i_a W i_a) or (i_a W i_a) W.
bool closes_cancelling_tail(const std::vector<WhiteheadMove>& seq, const WhiteheadMove& next) {
    std::size_t n = seq.size();
    if (next.kind == WhiteheadMove::Kind::Inv && n >= 1 && seq[n - 1] == next) return true;
    if (n >= 3) {
        const auto& x = seq[n - 3];
        const auto& y = seq[n - 2];
        const auto& z = seq[n - 1];
        if (next.kind == WhiteheadMove::Kind::Inv && x.kind == WhiteheadMove::Kind::Multi && x == z &&
            y == next && y == WhiteheadMove::inversion(x.a))
            return true;
        if (next.kind == WhiteheadMove::Kind::Multi && y == next && x == z && x == WhiteheadMove::inversion(next.a))
            return true;
    }
    return false;
}

}  // namespace

WhiteheadMove WhiteheadMove::multi(int a, std::vector<int> left, std::vector<int> right, std::vector<int> middle) {
    middle.push_back(a);
    return {Kind::Multi, a, sorted_unique(std::move(left)), sorted_unique(std::move(right)),
            sorted_unique(std::move(middle))};
}

void WhiteheadMove::validate(int rank) const {
    auto in_range = [&](int i) { return i >= 1 && i <= rank; };
    if (!in_range(a)) throw PreconditionError("Whitehead pivot outside rank " + std::to_string(rank));
    if (kind == Kind::Inv) return;
    std::vector<int> all;
    for (const auto* set : {&left, &right, &middle})
        for (int b : *set) {
            if (!in_range(b)) throw PreconditionError("Whitehead set member outside rank " + std::to_string(rank));
            all.push_back(b);
        }
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end())
        throw PreconditionError("Whitehead sets L, R, M must be pairwise disjoint");
    if (!contains(middle, a)) throw PreconditionError("Whitehead pivot must belong to M");
    if (left.empty() && right.empty() && middle.size() == 1)
        throw PreconditionError("Whitehead move is the identity");
}

std::vector<Word> WhiteheadMove::images(int rank) const {
    std::vector<Word> out = basis(rank);
    Word pivot = Word::generator(a);
    if (kind == Kind::Inv) {
        out[static_cast<std::size_t>(a - 1)] = pivot.inverse();
        return out;
    }
    for (int b : left) out[static_cast<std::size_t>(b - 1)] = pivot * Word::generator(b);
    for (int b : right) out[static_cast<std::size_t>(b - 1)] = Word::generator(b) * pivot.inverse();
    for (int b : middle)
        if (b != a) out[static_cast<std::size_t>(b - 1)] = pivot * Word::generator(b) * pivot.inverse();
    return out;
}

Word substitute(const std::vector<Word>& images, const Word& w) {
    Word out;
    for (Letter l : w.letters()) {
        if (l.index() > static_cast<int>(images.size()))
            throw InvalidLetter("generator " + std::to_string(l.index()) + " outside automorphism rank " +
                                std::to_string(images.size()));
        const Word& img = images[static_cast<std::size_t>(l.index() - 1)];
        out *= l.sign() > 0 ? img : img.inverse();
    }
    return out;
}

FactoredAutomorphism FactoredAutomorphism::identity(int rank) {
    if (rank < 1) throw PreconditionError("automorphism rank must be at least 1");
    return FactoredAutomorphism(rank, {}, basis(rank));
}

FactoredAutomorphism FactoredAutomorphism::from_factors(std::vector<AutFactor> factors, int rank) {
    auto images = basis(rank);
    for (const auto& f : factors) {
        check_factor(f, rank);
        images = act(std::move(images), f);
    }
    return FactoredAutomorphism(rank, std::move(factors), std::move(images));
}

bool FactoredAutomorphism::is_identity() const { return images_ == basis(rank_); }

Word FactoredAutomorphism::apply(const Word& w) const { return substitute(images_, w); }

FactoredAutomorphism from_nielsen_sequence(const MoveList& moves, int rank) {
    return FactoredAutomorphism::from_factors(std::vector<AutFactor>(moves.begin(), moves.end()), rank);
}

FactoredAutomorphism from_whitehead_sequence(const std::vector<WhiteheadMove>& moves, int rank) {
    return FactoredAutomorphism::from_factors(std::vector<AutFactor>(moves.begin(), moves.end()), rank);
}

FactoredAutomorphism compose(const FactoredAutomorphism& f, const FactoredAutomorphism& g) {
    if (f.rank() != g.rank()) throw PreconditionError("cannot compose automorphisms of different rank");
    std::vector<AutFactor> factors = f.factors();
    factors.insert(factors.end(), g.factors().begin(), g.factors().end());
    std::vector<Word> images;
    images.reserve(g.images().size());
    for (const auto& w : g.images()) images.push_back(f.apply(w));
    return FactoredAutomorphism(f.rank(), std::move(factors), std::move(images));
}

FactoredAutomorphism power(const FactoredAutomorphism& f, unsigned n) {
    FactoredAutomorphism out = FactoredAutomorphism::identity(f.rank());
    FactoredAutomorphism base = f;
    while (n > 0) {
        if (n & 1U) out = compose(out, base);
        n >>= 1U;
        if (n > 0) base = compose(base, base);
    }
    return out;
}

FactoredAutomorphism inverse(const FactoredAutomorphism& f) {
    std::vector<AutFactor> factors;
    for (auto it = f.factors().rbegin(); it != f.factors().rend(); ++it) {
        auto inv = inverse_factor(*it);
        factors.insert(factors.end(), inv.begin(), inv.end());
    }
    return FactoredAutomorphism::from_factors(std::move(factors), f.rank());
}

WhiteheadMove draw_whitehead_factor(DrawSource& src, bool multi, int rank) {
    auto q = static_cast<std::uint64_t>(rank);
    int z = 1 + static_cast<int>(src.below(q));
    if (!multi) return WhiteheadMove::inversion(z);

    auto z1 = src.below(q);
    auto z2 = src.below(q - z1);
    auto z3 = src.below(q - z1 - z2);
    std::vector<int> pool;
    for (int i = 1; i <= rank; ++i)
        if (i != z) pool.push_back(i);

    std::vector<int> left, right, middle;
    if (z1 == 0 && z2 == 0 && z3 == 0) {
        int extra = pool[src.below(pool.size())];
        switch (src.below(3)) {
            case 0: left.push_back(extra); break;
            case 1: right.push_back(extra); break;
            default: middle.push_back(extra); break;
        }
        return WhiteheadMove::multi(z, left, right, middle);
    }
    auto take = [&](std::uint64_t count, std::vector<int>& into) {
        for (std::uint64_t k = 0; k < count; ++k) {
            auto pick = src.below(pool.size());
            into.push_back(pool[pick]);
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
        }
    };
    take(z1, left);
    take(z2, right);
    take(z3, middle);
    return WhiteheadMove::multi(z, left, right, middle);
}

FactoredAutomorphism random_whitehead_automorphism(DrawSource& src, int rank) {
    if (rank < 2) throw PreconditionError("random automorphisms need rank at least 2");
    std::size_t length = 4 + static_cast<std::size_t>(src.below(13));
    std::vector<bool> bits(length);
    for (std::size_t k = 0; k < length; ++k) bits[k] = (src.next() & 1U) != 0;

    std::vector<WhiteheadMove> seq;
    seq.reserve(length);
    for (std::size_t k = 0; k < length; ++k) {
        WhiteheadMove m = draw_whitehead_factor(src, bits[k], rank);
        while (closes_cancelling_tail(seq, m)) m = draw_whitehead_factor(src, bits[k], rank);
        seq.push_back(m);
    }
    auto f = from_whitehead_sequence(seq, rank);
    while (f.is_identity()) {
        seq.pop_back();
        bool multi = (src.next() & 1U) != 0;
        WhiteheadMove m = draw_whitehead_factor(src, multi, rank);
        while (closes_cancelling_tail(seq, m)) m = draw_whitehead_factor(src, multi, rank);
        seq.push_back(m);
        f = from_whitehead_sequence(seq, rank);
    }
    return f;
}

namespace {

int generator_index(const std::string& name, const Alphabet& alphabet, std::size_t line) {
    auto idx = alphabet.index_of(name);
    if (!idx) throw ParseError("unknown generator '" + name + "' on line " + std::to_string(line), line);
    return *idx;
}

WhiteheadMove parse_multi(const std::string& line, const Alphabet& alphabet, std::size_t n) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        auto semi = line.find(';', start);
        parts.emplace_back(detail::trim(std::string_view(line).substr(start, semi - start)));
        if (semi == std::string::npos) break;
        start = semi + 1;
    }
    auto head = detail::split_ws(parts[0]);
    if (parts.size() != 4 || head.size() != 2 || head[0] != "W")
        throw ParseError("expected 'W a ; L = ... ; R = ... ; M = ...' on line " + std::to_string(n), n);
    int a = generator_index(head[1], alphabet, n);
    std::vector<int> sets[3];
    const char* keys[3] = {"L", "R", "M"};
    for (int k = 0; k < 3; ++k) {
        auto kv = detail::split_key_value(parts[static_cast<std::size_t>(k + 1)]);
        if (!kv || kv->first != keys[k])
            throw ParseError(std::string("expected '") + keys[k] + " = ...' on line " + std::to_string(n), n);
        for (const auto& name : detail::split_ws(kv->second)) sets[k].push_back(generator_index(name, alphabet, n));
    }
    WhiteheadMove m{WhiteheadMove::Kind::Multi, a, sorted_unique(sets[0]), sorted_unique(sets[1]),
                    sorted_unique(sets[2])};
    m.validate(alphabet.rank());
    return m;
}

std::string join_names(const std::vector<int>& idx, const Alphabet& alphabet) {
    std::string out;
    for (int i : idx) out += " " + alphabet.name(i);
    return out;
}

}  // namespace

FactoredAutomorphism parse_automorphism(std::string_view text, const Alphabet& alphabet) {
    std::vector<AutFactor> factors;
    auto lines = detail::split_lines(text);
    for (std::size_t k = 0; k < lines.size(); ++k) {
        std::size_t n = k + 1;
        std::string line(detail::trim(lines[k]));
        if (line.empty() || line.front() == '#') continue;
        auto tok = detail::split_ws(line);
        if (tok[0] == "T1" || tok[0] == "T2" || tok[0] == "T3") {
            auto moves = parse_moves(line);
            if (!moves.front().regular())
                throw ParseError("T3 is not allowed in an automorphism (line " + std::to_string(n) + ")", n);
            factors.emplace_back(moves.front());
        } else if (tok[0] == "INV" && tok.size() == 2) {
            factors.emplace_back(WhiteheadMove::inversion(generator_index(tok[1], alphabet, n)));
        } else if (tok[0] == "W") {
            factors.emplace_back(parse_multi(line, alphabet, n));
        } else {
            throw ParseError("unrecognized automorphism factor '" + line + "' on line " + std::to_string(n), n);
        }
    }
    return FactoredAutomorphism::from_factors(std::move(factors), alphabet.rank());
}

std::string format_automorphism(const FactoredAutomorphism& f, const Alphabet& alphabet) {
    std::ostringstream out;
    for (const auto& factor : f.factors()) {
        if (const auto* m = std::get_if<ElementaryMove>(&factor)) {
            out << format_moves({*m});
            continue;
        }
        const auto& w = std::get<WhiteheadMove>(factor);
        if (w.kind == WhiteheadMove::Kind::Inv) {
            out << "INV " << alphabet.name(w.a) << '\n';
        } else {
            out << "W " << alphabet.name(w.a) << " ; L =" << join_names(w.left, alphabet)
                << " ; R =" << join_names(w.right, alphabet) << " ; M =" << join_names(w.middle, alphabet) << '\n';
        }
    }
    return out.str();
}

}  // namespace fgc
