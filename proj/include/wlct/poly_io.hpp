/**
 * @file poly_io.hpp
 * @brief Text grammar for polynomials and the canonical printer.
 *
 *   expr    := term (('+' | '-') term)*
 *   term    := unary (('*' | '/') unary)*        '/' only by nonzero constants
 *   unary   := ('+' | '-') unary | power
 *   power   := primary ('^' integer)?
 *   primary := integer | 'i' | 'z' index | '(' expr ')'
 *
 * Rational literals p/q fall out of the '/' rule. Canonical printing lists
 * terms in increasing monomial order, e.g. `2/3*z1^2*z2 - i*z2^3`.
 */
#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "wlct/polynomial.hpp"

namespace wlct {

namespace detail {

class PolyParser {
public:
    PolyParser(std::string_view text, std::size_t dim) : s_(text), dim_(dim) {}

    Polynomial parse() {
        Polynomial p = expr();
        skip();
        if (pos_ != s_.size())
            throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
        return p;
    }

    /// Highest variable index mentioned in `text` (0 when none).
    static std::size_t max_variable(std::string_view text) {
        std::size_t best = 0;
        for (std::size_t k = 0; k < text.size(); ++k) {
            if (text[k] != 'z')
                continue;
            std::size_t v = 0, j = k + 1;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])) && v < 100000)
                v = v * 10 + static_cast<std::size_t>(text[j++] - '0');
            best = std::max(best, v);
        }
        return best;
    }

private:
    static constexpr int kMaxDepth = 200;
    static constexpr unsigned kMaxPower = 256;

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Polynomial expr() {
        Polynomial acc = term();
        for (;;) {
            if (eat('+'))
                acc = acc + term();
            else if (eat('-'))
                acc = acc - term();
            else
                return acc;
        }
    }

    Polynomial term() {
        Polynomial acc = unary();
        for (;;) {
            if (eat('*')) {
                acc = acc * unary();
            } else if (eat('/')) {
                std::size_t at = pos_;
                Polynomial d = unary();
                if (d.is_zero())
                    throw ParseError("zero denominator", at);
                if (d.size() != 1 || !d.terms().front().exp.is_zero())
                    throw ParseError("division only by nonzero constants", at);
                acc = acc.scale(d.terms().front().coef.inverse());
            } else {
                return acc;
            }
        }
    }

    Polynomial unary() {
        if (++depth_ > kMaxDepth)
            throw ParseError("expression nested too deeply", pos_);
        Polynomial r(dim_);
        if (eat('-'))
            r = -unary();
        else if (eat('+'))
            r = unary();
        else
            r = power();
        --depth_;
        return r;
    }

    Polynomial power() {
        Polynomial base = primary();
        if (eat('^')) {
            skip();
            std::size_t at = pos_;
            unsigned k = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                k = k * 10 + static_cast<unsigned>(s_[pos_++] - '0');
                if (k > kMaxPower)
                    throw ParseError("exponent too large", at);
            }
            if (pos_ == at)
                throw ParseError("expected non-negative integer exponent", at);
            return base.pow(k);
        }
        return base;
    }

    Polynomial primary() {
        skip();
        if (pos_ >= s_.size())
            throw ParseError("unexpected end of input", pos_);
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            if (++depth_ > kMaxDepth)
                throw ParseError("expression nested too deeply", pos_);
            Polynomial p = expr();
            --depth_;
            if (!eat(')'))
                throw ParseError("expected ')'", pos_);
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            mpz_class v(std::string(s_.substr(start, pos_ - start)));
            return Polynomial::constant(dim_, Coefficient(Rational(v)));
        }
        if (c == 'i') {
            ++pos_;
            return Polynomial::constant(dim_, Coefficient::i());
        }
        if (c == 'z') {
            std::size_t start = pos_++;
            std::size_t v = 0, digits = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                if (v < 100000)
                    v = v * 10 + static_cast<std::size_t>(s_[pos_] - '0');
                ++pos_;
                ++digits;
            }
            if (digits == 0)
                throw ParseError("expected variable index after 'z'", pos_);
            if (v == 0 || v > dim_)
                throw ParseError("variable out of range: z" + std::to_string(v) + " with n=" + std::to_string(dim_),
                                 start);
            return Polynomial::variable(dim_, v - 1);
        }
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }

    std::string_view s_;
    std::size_t dim_;
    std::size_t pos_ = 0;
    int depth_ = 0;
};

inline std::string monomial_string(const Exponent& e) {
    std::string s;
    for (std::size_t i = 0; i < e.dim(); ++i) {
        if (e[i] == 0)
            continue;
        if (!s.empty())
            s += '*';
        s += 'z' + std::to_string(i + 1);
        if (e[i] > 1)
            s += '^' + std::to_string(e[i]);
    }
    return s;
}

} // namespace detail

/// Parses `text` in dimension `n`; n = 0 infers it from the highest zK used
/// (at least 1). Throws ParseError with the failing position.
inline Polynomial parse_polynomial(std::string_view text, std::size_t n = 0) {
    if (n == 0)
        n = std::max<std::size_t>(1, detail::PolyParser::max_variable(text));
    return detail::PolyParser(text, n).parse();
}

/// Canonical text form; re-parses to an equal polynomial.
inline std::string to_string(const Polynomial& f) {
    if (f.is_zero())
        return "0";
    std::string out;
    bool first = true;
    for (const auto& t : f.terms()) {
        const auto& c = t.coef;
        std::string mono = detail::monomial_string(t.exp);
        bool negative = false;
        std::string body;
        if (c.is_real() || sgn(c.re()) == 0) {
            // Pure real or pure imaginary: pull the sign out.
            const Rational& part = c.is_real() ? c.re() : c.im();
            negative = sgn(part) < 0;
            Rational mag = abs(part);
            std::string unit = c.is_real() ? "" : "i";
            if (mag == 1)
                body = unit.empty() ? (mono.empty() ? "1" : "") : unit;
            else
                body = mag.get_str() + (unit.empty() ? "" : "*" + unit);
        } else {
            body = "(" + c.to_string() + ")";
        }
        if (!mono.empty())
            body = body.empty() ? mono : body + "*" + mono;
        if (first)
            out += negative ? "-" + body : body;
        else
            out += (negative ? " - " : " + ") + body;
        first = false;
    }
    return out;
}

} // namespace wlct
