#pragma once

// Reader for the compact notation used in the fixtures, e.g.
// "(ca^2)^2b^{-1}a^3daca^2" or "x_3^{-2}x_2(x_2x_3)^2". Single-letter
// generator names, or x_i / x_{i} when the alphabet is x1..xq. Reduction is
// done here with its own stack, not through fgc::Word.

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fgc/word.hpp"

namespace testsupport {

class ExprReader {
public:
    ExprReader(std::string_view text, const fgc::Alphabet& alphabet) : alphabet_(alphabet) {
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c)) && c != '\\') s_.push_back(c);
    }

    fgc::Word read() {
        auto letters = sequence();
        if (pos_ != s_.size()) throw std::runtime_error("trailing input in '" + s_ + "'");
        std::vector<fgc::Letter> stack;
        for (auto l : letters) {
            if (!stack.empty() && stack.back().index() == l.index() && stack.back().sign() == -l.sign())
                stack.pop_back();
            else
                stack.push_back(l);
        }
        return fgc::Word(stack);
    }

private:
    std::vector<fgc::Letter> sequence() {
        std::vector<fgc::Letter> out;
        while (pos_ < s_.size() && s_[pos_] != ')' && s_[pos_] != '}') {
            std::vector<fgc::Letter> item;
            if (s_[pos_] == '(' || s_[pos_] == '{') {
                char close = s_[pos_] == '(' ? ')' : '}';
                ++pos_;
                item = sequence();
                if (pos_ >= s_.size() || s_[pos_] != close) throw std::runtime_error("unbalanced bracket");
                ++pos_;
            } else {
                item.push_back(fgc::Letter(generator(), 1));
            }
            long e = exponent();
            if (e < 0) {
                std::vector<fgc::Letter> inv;
                for (auto it = item.rbegin(); it != item.rend(); ++it) inv.push_back(fgc::Letter(it->index(), -it->sign()));
                item = inv;
                e = -e;
            }
            for (long k = 0; k < e; ++k) out.insert(out.end(), item.begin(), item.end());
        }
        return out;
    }

    int generator() {
        if (s_[pos_] == 'x' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '_') {
            pos_ += 2;
            bool braced = s_[pos_] == '{';
            if (braced) ++pos_;
            int v = number();
            if (braced) ++pos_;
            return v;
        }
        auto idx = alphabet_.index_of(std::string(1, s_[pos_]));
        if (!idx) throw std::runtime_error(std::string("unknown generator '") + s_[pos_] + "'");
        ++pos_;
        return *idx;
    }

    long exponent() {
        if (pos_ >= s_.size() || s_[pos_] != '^') return 1;
        ++pos_;
        bool braced = s_[pos_] == '{';
        if (braced) ++pos_;
        bool neg = s_[pos_] == '-';
        if (neg) ++pos_;
        long v = number();
        if (braced) ++pos_;
        return neg ? -v : v;
    }

    int number() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) throw std::runtime_error("expected a number");
        return std::stoi(s_.substr(start, pos_ - start));
    }

    std::string s_;
    std::size_t pos_ = 0;
    const fgc::Alphabet& alphabet_;
};

inline fgc::Word expr(std::string_view text, const fgc::Alphabet& alphabet) { return ExprReader(text, alphabet).read(); }

}  // namespace testsupport
