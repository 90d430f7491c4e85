/**
 * @file weight_io.hpp
 * @brief Text syntax for weights.
 *
 *     weight := scaled (('+' | '-') real)*
 *     scaled := rational '*' scaled | atom
 *     atom   := 'zero' | 'log|' poly '|' | 'logsumsq(' poly (';' poly)* ')'
 *             | 'logmax(' exponent (',' exponent)* ')' | '(' weight ')'
 *
 * Rationals are p, p/q or decimals such as 1.05 (read exactly).
 */
#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "wlct/weight.hpp"

namespace wlct {

namespace detail {

class WeightParser {
public:
    WeightParser(std::string_view text, std::size_t n) : s_(text), n_(n) {}

    WeightFunction parse() {
        WeightFunction w = weight_expr(0);
        skip();
        if (i_ != s_.size())
            fail("unexpected trailing input");
        return w;
    }

    /// Largest zK index or exponent length mentioned anywhere in the text.
    static std::size_t infer_dim(std::string_view text) {
        std::size_t n = PolyParser::max_variable(text);
        std::size_t depth = 0, len = 0;
        for (char ch : text) {
            if (ch == '(') {
                depth = 1;
                len = 1;
            } else if (ch == ',' && depth) {
                ++len;
            } else if (ch == ')') {
                depth = 0;
            } else if (depth && !std::isdigit(static_cast<unsigned char>(ch)) && ch != ' ') {
                depth = 0;  // not an exponent literal
            }
            if (depth)
                n = std::max(n, len);
        }
        return std::max<std::size_t>(n, 1);
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, i_); }

    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
            ++i_;
    }

    bool accept(std::string_view tok) {
        skip();
        if (s_.substr(i_, tok.size()) == tok) {
            i_ += tok.size();
            return true;
        }
        return false;
    }

    void expect(std::string_view tok) {
        if (!accept(tok))
            fail("expected '" + std::string(tok) + "'");
    }

    WeightFunction weight_expr(int depth) {
        if (depth > 64)
            fail("nesting too deep");
        WeightFunction w = scaled(depth);
        for (;;) {
            skip();
            if (i_ >= s_.size() || (s_[i_] != '+' && s_[i_] != '-'))
                return w;
            const bool neg = s_[i_] == '-';
            ++i_;
            skip();
            std::string tmp(s_.substr(i_));
            char* end = nullptr;
            double v = std::strtod(tmp.c_str(), &end);
            if (end == tmp.c_str())
                fail("expected a real shift");
            i_ += static_cast<std::size_t>(end - tmp.c_str());
            w = WeightFunction::shifted(neg ? -v : v, w);
        }
    }

    WeightFunction scaled(int depth) {
        skip();
        if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
            Rational t = rational();
            expect("*");
            return WeightFunction::scaled(t, scaled(depth + 1));
        }
        return atom(depth);
    }

    Rational rational() {
        const std::size_t start = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
            ++i_;
        std::string num(s_.substr(start, i_ - start));
        Rational r(num);
        if (i_ < s_.size() && s_[i_] == '.') {
            const std::size_t f0 = ++i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
                ++i_;
            if (i_ == f0)
                fail("expected digits after '.'");
            mpz_class scale = 1;
            for (std::size_t k = f0; k < i_; ++k)
                scale *= 10;
            r = Rational(mpz_class(num + std::string(s_.substr(f0, i_ - f0))), scale);
        } else if (i_ < s_.size() && s_[i_] == '/') {
            const std::size_t d0 = ++i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
                ++i_;
            if (i_ == d0)
                fail("expected a denominator");
            mpz_class den(std::string(s_.substr(d0, i_ - d0)));
            if (den == 0)
                fail("zero denominator");
            r = Rational(mpz_class(num), den);
        }
        r.canonicalize();
        return r;
    }

    Polynomial poly_until(std::size_t end) {
        const std::size_t start = i_;
        try {
            Polynomial p = parse_polynomial(std::string(s_.substr(start, end - start)), n_);
            i_ = end;
            return p;
        } catch (const ParseError& e) {
            throw ParseError(e.detail(), start + e.position());
        }
    }

    /// Position of the next top-level ';' or ')' closing the current group.
    std::size_t group_end(std::size_t from) const {
        int depth = 0;
        for (std::size_t k = from; k < s_.size(); ++k) {
            if (s_[k] == '(')
                ++depth;
            else if (s_[k] == ')') {
                if (depth == 0)
                    return k;
                --depth;
            } else if (s_[k] == ';' && depth == 0)
                return k;
        }
        return std::string_view::npos;
    }

    WeightFunction atom(int depth) {
        skip();
        if (accept("zero"))
            return WeightFunction::zero(n_);
        if (accept("log|")) {
            std::size_t bar = s_.find('|', i_);
            if (bar == std::string_view::npos)
                fail("missing closing '|'");
            Polynomial g = poly_until(bar);
            ++i_;
            if (g.is_zero())
                fail("log|0| is not a weight");
            return WeightFunction::log_abs(g);
        }
        if (accept("logsumsq(")) {
            std::vector<Polynomial> gs;
            for (;;) {
                std::size_t end = group_end(i_);
                if (end == std::string_view::npos)
                    fail("unterminated logsumsq(");
                gs.push_back(poly_until(end));
                if (s_[i_++] == ')')
                    break;
            }
            return WeightFunction::log_sum_sq(gs);
        }
        if (accept("logmax(")) {
            std::size_t close = i_;
            int d = 1;
            while (close < s_.size() && d > 0) {
                d += s_[close] == '(' ? 1 : s_[close] == ')' ? -1 : 0;
                ++close;
            }
            if (d != 0)
                fail("unterminated logmax(");
            const std::size_t start = i_;
            std::vector<Exponent> gens;
            try {
                gens = parse_exponent_list(std::string(s_.substr(start, close - 1 - start)));
            } catch (const ParseError& e) {
                throw ParseError(e.detail(), start + e.position());
            }
            i_ = close;
            if (gens.empty())
                fail("logmax needs at least one exponent");
            for (const auto& a : gens)
                if (a.dim() != n_)
                    throw ParseError("exponent has length " + std::to_string(a.dim()) + ", expected " +
                                         std::to_string(n_),
                                     start);
            return WeightFunction::monomial_max(gens);
        }
        if (accept("(")) {
            WeightFunction w = weight_expr(depth + 1);
            expect(")");
            return w;
        }
        fail("expected a weight (zero, log|p|, logsumsq(...), logmax(...))");
    }

    std::string_view s_;
    std::size_t n_;
    std::size_t i_ = 0;
};

} // namespace detail

/// Parses a weight; n = 0 infers the dimension from the text.
inline WeightFunction parse_weight(const std::string& text, std::size_t n = 0) {
    if (n == 0)
        n = detail::WeightParser::infer_dim(text);
    return detail::WeightParser(text, n).parse();
}

} // namespace wlct
