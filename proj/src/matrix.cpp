#include "fgc/matrix.hpp"

#include <algorithm>
#include <cctype>

#include "fgc/error.hpp"
#include "text_util.hpp"

namespace fgc {

namespace {

bool inside_open(const Rational& z, const Rational& centre) {
    Rational d = z - centre;
    return abs(d) < 1;
}

Mat2Q negated_identity() { return Mat2Q{Rational(-1), Rational(0), Rational(0), Rational(-1)}; }

Mat2Q evaluate(const std::vector<Mat2Q>& gens, const std::vector<Mat2Q>& inv, const Word& w) {
    Mat2Q out;
    for (Letter l : w.letters()) {
        auto k = static_cast<std::size_t>(l.index() - 1);
        if (k >= gens.size())
            throw InvalidLetter("generator " + std::to_string(l.index()) + " outside representation rank " +
                                std::to_string(gens.size()));
        out = out * (l.sign() > 0 ? gens[k] : inv[k]);
    }
    return out;
}

std::string format_rational(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(std::string_view s, std::size_t pos) {
    s = detail::trim(s);
    std::string text(s);
    auto ok_int = [](std::string_view t) {
        if (!t.empty() && (t.front() == '-' || t.front() == '+')) t.remove_prefix(1);
        return !t.empty() && std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); });
    };
    auto slash = s.find('/');
    std::string_view num = s.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
    if (!ok_int(num) || !ok_int(den) || den.front() == '-' || den.front() == '+')
        throw ParseError("malformed rational '" + text + "'", pos);
    std::string n(num.front() == '+' ? num.substr(1) : num);
    BigInt dn{std::string(den)};
    if (dn == 0) throw ParseError("zero denominator", pos);
    Rational r{BigInt{n}, dn};
    r.canonicalize();
    return r;
}

}  // namespace

Rational make_rational(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Mat2Q mat_mul(const Mat2Q& a, const Mat2Q& b) {
    return Mat2Q{a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22, a.a21 * b.a11 + a.a22 * b.a21,
                 a.a21 * b.a12 + a.a22 * b.a22};
}

Rational mat_det(const Mat2Q& a) { return Rational(a.a11 * a.a22 - a.a12 * a.a21); }

Mat2Q mat_inv(const Mat2Q& a) {
    Rational det = mat_det(a);
    if (det == 0) throw PreconditionError("singular matrix has no inverse");
    return Mat2Q{Rational(a.a22 / det), Rational(-a.a12 / det), Rational(-a.a21 / det), Rational(a.a11 / det)};
}

Mat2Q tl_generator(const Rational& r) { return Mat2Q{Rational(-r), Rational(r * r - 1), Rational(1), Rational(-r)}; }

RepSpec make_representation(int rank, std::vector<Rational> r, std::optional<GeneratingTuple> gen_words) {
    if (rank < 1) throw PreconditionError("representation rank must be at least 1");
    if (r.empty()) throw PreconditionError("representation needs at least one parameter");
    if (r.front() < 2) throw PreconditionError("first parameter must be at least 2");
    for (std::size_t j = 1; j < r.size(); ++j)
        if (r[j] - r[j - 1] < 3) throw PreconditionError("consecutive parameters must differ by at least 3");

    RepSpec spec;
    spec.r_ = std::move(r);
    for (const auto& rj : spec.r_) {
        spec.tl_.push_back(tl_generator(rj));
        spec.tl_inverse_.push_back(mat_inv(spec.tl_.back()));
    }
    if (gen_words) {
        if (gen_words->size() != static_cast<std::size_t>(rank))
            throw PreconditionError("need one generator word per generator");
        spec.words_ = std::move(*gen_words);
    } else {
        if (static_cast<std::size_t>(rank) > spec.r_.size())
            throw PreconditionError("need one parameter per generator");
        for (int i = 1; i <= rank; ++i) spec.words_.push_back(Word::generator(i));
    }
    for (const auto& w : spec.words_) {
        if (w.is_identity()) throw PreconditionError("generator word is the identity");
        if (w.max_index() > static_cast<int>(spec.r_.size()))
            throw PreconditionError("generator word uses an auxiliary generator without a parameter");
    }
    auto reduction = nielsen_reduce(spec.words_);
    if (reduction.tuple.size() != spec.words_.size())
        throw PreconditionError("generator words are not a free basis of the subgroup they generate");
    spec.reduced_ = reduction.tuple;
    GeneratingTuple gens;
    for (int i = 1; i <= rank; ++i) gens.push_back(Word::generator(i));
    spec.reduced_in_generators_ = apply_moves(gens, reduction.moves);

    for (const auto& w : spec.words_) {
        spec.generator_matrices_.push_back(evaluate(spec.tl_, spec.tl_inverse_, w));
        spec.inverse_matrices_.push_back(mat_inv(spec.generator_matrices_.back()));
    }
    return spec;
}

RepSpec default_representation(int rank) {
    std::vector<Rational> r;
    for (int j = 0; j < rank; ++j) r.emplace_back(2 + 3 * j);
    return make_representation(rank, std::move(r));
}

RepSpec demo_representation() {
    std::vector<Rational> r{make_rational(7, 2), make_rational(15, 2), make_rational(23, 2)};
    auto g = [](int i, int s = 1) { return Letter(i, s); };
    GeneratingTuple words{
        Word{g(1), g(2)},
        Word{g(3), g(1), g(1)},
        Word{g(2), g(3), g(2)},
        Word{g(1, -1), g(2)},
    };
    return make_representation(4, std::move(r), std::move(words));
}

Mat2Q word_to_matrix(const RepSpec& spec, const Word& w) {
    return evaluate(spec.generator_matrices(), spec.inverse_matrices(), w);
}

std::optional<Word> matrix_to_word(const RepSpec& spec, const Mat2Q& m, std::size_t max_len) {
    if (mat_det(m) != 1) throw PreconditionError("matrix does not have determinant 1");

    // Ping-pong: M_j sends everything outside (r_j - 1, r_j + 1) into
    // (-r_j - 1, -r_j + 1) and M_j^-1 the reverse, so the image of 0 under a
    // reduced product lies in the interval of its first letter.
    std::size_t longest = 0;
    for (const auto& w : spec.words_) longest = std::max(longest, w.length());
    const std::size_t step_cap = max_len * longest;

    std::vector<Letter> aux;
    Mat2Q rest = m;
    const Mat2Q id = Mat2Q::identity();
    const Mat2Q neg = negated_identity();
    while (rest != id) {
        if (rest == neg || aux.size() >= step_cap || rest.a22 == 0) return std::nullopt;
        Rational z = rest.a12 / rest.a22;
        std::optional<Letter> first;
        for (std::size_t j = 0; j < spec.r_.size() && !first; ++j) {
            if (inside_open(z, Rational(-spec.r_[j])))
                first = Letter(static_cast<int>(j + 1), 1);
            else if (inside_open(z, spec.r_[j]))
                first = Letter(static_cast<int>(j + 1), -1);
        }
        if (!first) return std::nullopt;
        auto k = static_cast<std::size_t>(first->index() - 1);
        rest = (first->sign() > 0 ? spec.tl_inverse_[k] : spec.tl_[k]) * rest;
        aux.push_back(*first);
    }
    Word aux_word(aux);

    auto expr = subgroup_membership(spec.reduced_, aux_word);
    if (!expr) return std::nullopt;
    Word w = expand(spec.reduced_in_generators_, *expr);
    if (w.length() > max_len) return std::nullopt;
    if (word_to_matrix(spec, w) != m) return std::nullopt;
    return w;
}

std::string format_matrix(const Mat2Q& m) {
    return "[[" + format_rational(m.a11) + ", " + format_rational(m.a12) + "],[" + format_rational(m.a21) + ", " +
           format_rational(m.a22) + "]]";
}

Mat2Q parse_matrix(std::string_view text) {
    std::string compact;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
    if (compact.size() < 4 || compact.rfind("[[", 0) != 0 || compact.substr(compact.size() - 2) != "]]")
        throw ParseError("matrix must look like [[a, b],[c, d]]", 0);
    auto mid = compact.find("],[");
    if (mid == std::string::npos) throw ParseError("matrix rows must be separated by '],['", 0);
    auto row = [&](std::string_view r, std::size_t pos) {
        auto comma = r.find(',');
        if (comma == std::string_view::npos || r.find(',', comma + 1) != std::string_view::npos)
            throw ParseError("matrix row needs exactly two entries", pos);
        return std::pair{parse_rational(r.substr(0, comma), pos), parse_rational(r.substr(comma + 1), pos)};
    };
    std::string_view body(compact);
    auto [a11, a12] = row(body.substr(2, mid - 2), 2);
    auto [a21, a22] = row(body.substr(mid + 3, compact.size() - 2 - (mid + 3)), mid + 3);
    return Mat2Q{a11, a12, a21, a22};
}

std::string format_matrices(const std::vector<Mat2Q>& ms) {
    std::string out;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        if (i > 0) out += " | ";
        out += format_matrix(ms[i]);
    }
    return out;
}

std::vector<Mat2Q> parse_matrices(std::string_view text) {
    std::vector<Mat2Q> out;
    std::string_view body = detail::trim(text);
    if (body.empty()) return out;
    std::size_t start = 0;
    while (true) {
        auto bar = body.find('|', start);
        out.push_back(parse_matrix(body.substr(start, bar == std::string_view::npos ? bar : bar - start)));
        if (bar == std::string_view::npos) break;
        start = bar + 1;
    }
    return out;
}

}  // namespace fgc
