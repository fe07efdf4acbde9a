#pragma once

#include <cctype>
#include <string>

#include "poly.hpp"

namespace apolar {

// Recursive-descent parser for polynomial expressions.
// Grammar: variables <prefix>1..<prefix>n (x for polynomials, a for operators),
// integer and rational literals, + - * / ^, parentheses; '/' only by constants,
// '^' only with a nonnegative integer exponent.
template <class R>
class PolyParser {
  public:
    PolyParser(const R& F, std::string text, int n, char prefix)
        : F_(F), s_(std::move(text)), n_(n), prefix_(prefix) {}

    MPoly<R> parse() {
        auto r = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return r;
    }

  private:
    const R& F_;
    std::string s_;
    std::size_t pos_ = 0;
    int n_;
    char prefix_;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, pos_);
    }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool accept(char c) {
        if (!peek(c)) return false;
        ++pos_;
        return true;
    }

    long integer() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected an integer");
        if (pos_ - start > 18) fail("integer literal too large");
        return std::stol(s_.substr(start, pos_ - start));
    }

    MPoly<R> expr() {
        MPoly<R> r = accept('-') ? poly_neg(F_, term()) : term();
        for (;;) {
            if (accept('+')) r = poly_add(F_, r, term());
            else if (accept('-')) r = poly_sub(F_, r, term());
            else return r;
        }
    }

    MPoly<R> term() {
        MPoly<R> r = factor();
        for (;;) {
            if (accept('*')) r = poly_mul(F_, r, factor());
            else if (accept('/')) {
                std::size_t at = pos_;
                MPoly<R> d = factor();
                auto c = constant_term(F_, d);
                if (d.degree() > 0 || F_.is_zero(c)) {
                    pos_ = at;
                    fail("division is only by nonzero constants");
                }
                r = poly_scale(F_, r, F_.inv(c));
            } else
                return r;
        }
    }

    MPoly<R> factor() {
        MPoly<R> base = atom();
        if (accept('^')) {
            skip_ws();
            if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+'))
                fail("exponent must be a nonnegative integer");
            long e = integer();
            if (e > 256) fail("exponent too large");
            MPoly<R> r = mono_poly<R>(n_, mono_one(n_), F_.one());
            for (long i = 0; i < e; ++i) r = poly_mul(F_, r, base);
            return r;
        }
        return base;
    }

    MPoly<R> atom() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            auto r = expr();
            if (!accept(')')) fail("expected ')'");
            return r;
        }
        if (c == '-') {
            ++pos_;
            return poly_neg(F_, factor());
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return mono_poly<R>(n_, mono_one(n_), F_.from_int(integer()));
        if (std::isalpha(static_cast<unsigned char>(c))) {
            if (c != prefix_) {
                if (c == 'x' || c == 'a')
                    fail(std::string("expected variables named '") + prefix_ + "1'..'" + prefix_ +
                         std::to_string(n_) + "' here");
                fail("unknown symbol");
            }
            ++pos_;
            long i = integer();
            if (i < 1 || i > n_) fail("variable index out of range 1.." + std::to_string(n_));
            return var_poly(F_, n_, static_cast<int>(i) - 1);
        }
        fail("unexpected character");
    }
};

template <class R>
MPoly<R> parse_polynomial(const R& F, const std::string& text, int n, char prefix = 'x') {
    return PolyParser<R>(F, text, n, prefix).parse();
}

// largest variable index mentioned, for inferring --vars when omitted
inline int infer_variable_count(const std::string& text, char prefix) {
    int best = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != prefix) continue;
        std::size_t j = i + 1;
        long v = 0;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])) && v < 1000)
            v = v * 10 + (text[j++] - '0');
        if (j > i + 1) best = std::max(best, static_cast<int>(v));
    }
    return best;
}

} // namespace apolar
