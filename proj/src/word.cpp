#include "fgc/word.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <unordered_set>

#include "fgc/error.hpp"

namespace fgc {

namespace {

bool is_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

void validate_name(const std::string& name) {
    if (name.empty()) throw PreconditionError("empty generator name");
    for (unsigned char c : name) {
        if (std::isspace(c) || c == '^' || c == '|' || c == '(' || c == ')' || c == ',' || c == ';' || c == '=')
            throw PreconditionError("generator name '" + name + "' contains a reserved character");
    }
    if (is_digits(name)) throw PreconditionError("generator name '" + name + "' is all digits");
}

// In-place stack reduction; the vector is used as the stack.
void reduce_into(std::vector<Letter>& out, Letter l) {
    if (!out.empty() && out.back() == l.inverse())
        out.pop_back();
    else
        out.push_back(l);
}

}  // namespace

Alphabet::Alphabet(int rank) {
    if (rank < 1) throw PreconditionError("alphabet rank must be at least 1");
    for (int i = 1; i <= rank; ++i) names_.push_back("x" + std::to_string(i));
}

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw PreconditionError("alphabet rank must be at least 1");
    std::unordered_set<std::string> seen;
    for (const auto& n : names_) {
        validate_name(n);
        if (!seen.insert(n).second) throw PreconditionError("duplicate generator name '" + n + "'");
    }
}

Alphabet Alphabet::parse(std::string_view text) {
    std::vector<std::string> names;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        if (j > i) names.emplace_back(text.substr(i, j - i));
        i = j;
    }
    return Alphabet(std::move(names));
}

std::optional<int> Alphabet::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<int>(i + 1);
    return std::nullopt;
}

std::string Alphabet::to_string() const {
    std::string out;
    for (const auto& n : names_) {
        if (!out.empty()) out += ' ';
        out += n;
    }
    return out;
}

Word::Word(std::span<const Letter> raw) {
    letters_.reserve(raw.size());
    for (Letter l : raw) {
        if (l.code() == 0) throw InvalidLetter("letter with generator index 0");
        reduce_into(letters_, l);
    }
}

Word::Word(std::initializer_list<Letter> raw) : Word(std::span<const Letter>(raw.begin(), raw.size())) {}

Word Word::inverse() const {
    std::vector<Letter> out(letters_.size());
    std::transform(letters_.rbegin(), letters_.rend(), out.begin(), [](Letter l) { return l.inverse(); });
    return Word(Reduced{}, std::move(out));
}

Word Word::prefix(std::size_t n) const {
    n = std::min(n, letters_.size());
    return Word(Reduced{}, std::vector<Letter>(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(n)));
}

Word Word::suffix(std::size_t n) const {
    n = std::min(n, letters_.size());
    return Word(Reduced{}, std::vector<Letter>(letters_.end() - static_cast<std::ptrdiff_t>(n), letters_.end()));
}

bool Word::starts_with(const Word& p) const {
    return p.length() <= length() && std::equal(p.letters_.begin(), p.letters_.end(), letters_.begin());
}

bool Word::ends_with(const Word& s) const {
    return s.length() <= length() && std::equal(s.letters_.rbegin(), s.letters_.rend(), letters_.rbegin());
}

int Word::max_index() const {
    int m = 0;
    for (Letter l : letters_) m = std::max(m, l.index());
    return m;
}

Word& Word::operator*=(const Word& rhs) {
    std::size_t c = cancellation(*this, rhs);
    letters_.resize(letters_.size() - c);
    letters_.insert(letters_.end(), rhs.letters_.begin() + static_cast<std::ptrdiff_t>(c), rhs.letters_.end());
    return *this;
}

std::strong_ordering operator<=>(const Word& u, const Word& v) {
    if (auto c = u.length() <=> v.length(); c != 0) return c;
    return std::lexicographical_compare_three_way(u.letters_.begin(), u.letters_.end(), v.letters_.begin(),
                                                  v.letters_.end());
}

std::size_t cancellation(const Word& u, const Word& v) {
    auto a = u.letters();
    auto b = v.letters();
    std::size_t c = 0;
    std::size_t n = std::min(a.size(), b.size());
    while (c < n && a[a.size() - 1 - c] == b[c].inverse()) ++c;
    return c;
}

Word free_reduce(std::span<const Letter> raw, const Alphabet& alphabet) {
    for (std::size_t i = 0; i < raw.size(); ++i)
        if (!alphabet.contains(raw[i]))
            throw InvalidLetter("letter " + std::to_string(i) + " has generator index " +
                                std::to_string(raw[i].index()) + " outside rank " + std::to_string(alphabet.rank()));
    return Word(raw);
}

Word free_reduce(std::span<const Letter> raw) { return Word(raw); }

Word power(const Word& w, long long exponent) {
    Word base = exponent < 0 ? w.inverse() : w;
    unsigned long long n = exponent < 0 ? 0ULL - static_cast<unsigned long long>(exponent)
                                        : static_cast<unsigned long long>(exponent);
    Word out;
    while (n > 0) {
        if (n & 1) out *= base;
        n >>= 1;
        if (n > 0) base *= base;
    }
    return out;
}

void check_alphabet(const Word& w, const Alphabet& alphabet) {
    if (w.max_index() > alphabet.rank())
        throw InvalidLetter("word uses generator " + std::to_string(w.max_index()) + " outside rank " +
                            std::to_string(alphabet.rank()));
}

namespace {
constexpr long long kMaxExponent = 1 << 20;
}

Word parse_word(std::string_view text, const Alphabet& alphabet) {
    std::size_t pos = 0;
    auto skip_spaces = [&] {
        while (pos < text.size() && text[pos] == ' ') ++pos;
    };
    skip_spaces();
    std::size_t end = text.size();
    while (end > pos && text[end - 1] == ' ') --end;
    std::string_view body = text.substr(0, end);
    if (pos >= body.size()) throw ParseError("empty word (use \"1\" for the identity)", pos);
    if (body.substr(pos) == "1") return Word{};

    std::vector<Letter> raw;
    while (pos < body.size()) {
        std::size_t start = pos;
        while (pos < body.size() && body[pos] != ' ' && body[pos] != '^') ++pos;
        std::string_view name = body.substr(start, pos - start);
        if (name.empty()) throw ParseError("expected generator name", start);
        auto index = alphabet.index_of(name);
        if (!index) throw ParseError("unknown generator '" + std::string(name) + "'", start);
        long long exponent = 1;
        if (pos < body.size() && body[pos] == '^') {
            ++pos;
            std::size_t num_start = pos;
            if (pos < body.size() && (body[pos] == '-' || body[pos] == '+')) ++pos;
            while (pos < body.size() && std::isdigit(static_cast<unsigned char>(body[pos]))) ++pos;
            std::string_view digits = body.substr(num_start, pos - num_start);
            if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
            auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), exponent);
            if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty())
                throw ParseError("malformed exponent", num_start);
            if (exponent == 0) throw ParseError("exponent must be nonzero", num_start);
            if (exponent > kMaxExponent || exponent < -kMaxExponent) throw ParseError("exponent too large", num_start);
        }
        Letter l(*index, exponent < 0 ? -1 : 1);
        for (long long k = 0; k < (exponent < 0 ? -exponent : exponent); ++k) raw.push_back(l);
        if (pos < body.size()) {
            if (body[pos] != ' ') throw ParseError("expected space between units", pos);
            ++pos;
            if (pos < body.size() && body[pos] == ' ') throw ParseError("units must be separated by one space", pos);
        }
    }
    return Word(raw);
}

std::string format_word(const Word& w, const Alphabet& alphabet) {
    if (w.is_identity()) return "1";
    check_alphabet(w, alphabet);
    std::string out;
    auto letters = w.letters();
    std::size_t i = 0;
    while (i < letters.size()) {
        std::size_t j = i;
        while (j < letters.size() && letters[j] == letters[i]) ++j;
        long long run = static_cast<long long>(j - i) * letters[i].sign();
        if (!out.empty()) out += ' ';
        out += alphabet.name(letters[i].index());
        if (run != 1) out += "^" + std::to_string(run);
        i = j;
    }
    return out;
}

}  // namespace fgc
