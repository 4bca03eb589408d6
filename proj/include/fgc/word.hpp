#pragma once

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fgc {

// A generator x_i (index >= 1) or its inverse, packed as +i / -i.
class Letter {
public:
    constexpr Letter() = default;
    constexpr Letter(int index, int sign) : code_(sign < 0 ? -index : index) {}

    static constexpr Letter from_code(std::int32_t code) {
        Letter l;
        l.code_ = code;
        return l;
    }

    constexpr int index() const { return code_ < 0 ? -code_ : code_; }
    constexpr int sign() const { return code_ < 0 ? -1 : 1; }
    constexpr std::int32_t code() const { return code_; }
    constexpr Letter inverse() const { return from_code(-code_); }

    // x1 < x1^-1 < x2 < x2^-1 < ...
    constexpr int rank_key() const { return 2 * (index() - 1) + (code_ < 0 ? 1 : 0); }

    friend constexpr bool operator==(Letter, Letter) = default;
    friend constexpr std::strong_ordering operator<=>(Letter a, Letter b) {
        return a.rank_key() <=> b.rank_key();
    }

private:
    std::int32_t code_ = 0;
};

class Alphabet {
public:
    // Generators named x1..xq.
    explicit Alphabet(int rank);
    explicit Alphabet(std::vector<std::string> names);

    // Whitespace separated generator names, e.g. "a b c d".
    static Alphabet parse(std::string_view names);

    int rank() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(int index) const { return names_.at(static_cast<std::size_t>(index - 1)); }
    std::optional<int> index_of(std::string_view name) const;
    bool contains(Letter l) const { return l.index() >= 1 && l.index() <= rank(); }

    std::string to_string() const;

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    std::vector<std::string> names_;
};

// A freely reduced word. Construction always reduces, so no value of this type
// ever holds an adjacent inverse pair.
class Word {
public:
    Word() = default;
    explicit Word(std::span<const Letter> raw);
    Word(std::initializer_list<Letter> raw);

    static Word generator(int index, int sign = 1) { return Word{Letter(index, sign)}; }

    std::size_t length() const { return letters_.size(); }
    bool is_identity() const { return letters_.empty(); }
    std::span<const Letter> letters() const { return letters_; }
    Letter operator[](std::size_t i) const { return letters_[i]; }
    Letter front() const { return letters_.front(); }
    Letter back() const { return letters_.back(); }

    Word inverse() const;
    Word prefix(std::size_t n) const;
    Word suffix(std::size_t n) const;
    bool starts_with(const Word& p) const;
    bool ends_with(const Word& s) const;

    int max_index() const;

    Word& operator*=(const Word& rhs);
    friend Word operator*(Word lhs, const Word& rhs) {
        lhs *= rhs;
        return lhs;
    }

    friend bool operator==(const Word&, const Word&) = default;
    friend std::strong_ordering operator<=>(const Word& u, const Word& v);

private:
    struct Reduced {};
    Word(Reduced, std::vector<Letter> letters) : letters_(std::move(letters)) {}

    std::vector<Letter> letters_;
};

// Unique freely reduced form of an arbitrary letter sequence. Throws
// InvalidLetter when a letter is outside the alphabet.
Word free_reduce(std::span<const Letter> raw, const Alphabet& alphabet);
Word free_reduce(std::span<const Letter> raw);

inline Word concat(const Word& u, const Word& v) { return u * v; }
inline Word invert(const Word& u) { return u.inverse(); }

// Shortlex order with x1 < x1^-1 < x2 < x2^-1 < ...
inline std::strong_ordering compare_words(const Word& u, const Word& v) { return u <=> v; }

// Length of the cancellation when forming u*v.
std::size_t cancellation(const Word& u, const Word& v);

// |u v| without building the product.
inline std::size_t product_length(const Word& u, const Word& v) {
    return u.length() + v.length() - 2 * cancellation(u, v);
}

Word power(const Word& w, long long exponent);

// Textual form: "1" or units "name" / "name^k" separated by single spaces.
Word parse_word(std::string_view text, const Alphabet& alphabet);
std::string format_word(const Word& w, const Alphabet& alphabet);

// Throws InvalidLetter when w uses a generator outside the alphabet.
void check_alphabet(const Word& w, const Alphabet& alphabet);

}  // namespace fgc
