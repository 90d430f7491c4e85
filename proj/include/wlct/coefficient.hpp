/**
 * @file coefficient.hpp
 * @brief Exact rationals (GMP) and Gaussian rationals a + b*i.
 */
#pragma once

#include <complex>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "wlct/error.hpp"

namespace wlct {

using Rational = mpq_class;

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& q) {
    return q.get_str();
}

/// Parses "p", "p/q", "-p/q" or an exact decimal "-1.25". Throws ParseError on malformed input or q = 0.
inline Rational parse_rational(const std::string& text) {
    if (text.empty())
        throw ParseError("empty rational", 0);
    std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    bool seen_digit = false;
    bool seen_slash = false;
    bool digit_after_slash = false;
    bool seen_dot = false;
    bool digit_after_dot = false;
    for (std::size_t k = i; k < text.size(); ++k) {
        char ch = text[k];
        if (ch >= '0' && ch <= '9') {
            seen_digit = true;
            if (seen_slash)
                digit_after_slash = true;
            if (seen_dot)
                digit_after_dot = true;
        } else if (ch == '.' && !seen_dot && !seen_slash && seen_digit) {
            seen_dot = true;
        } else if (ch == '/' && !seen_slash && !seen_dot && seen_digit) {
            seen_slash = true;
        } else {
            throw ParseError("unexpected character in rational '" + text + "'", k);
        }
    }
    if (!seen_digit || (seen_slash && !digit_after_slash) || (seen_dot && !digit_after_dot))
        throw ParseError("malformed rational '" + text + "'", 0);
    std::string body = text[0] == '+' ? text.substr(1) : text;
    Rational q;
    if (seen_slash) {
        auto slash = body.find('/');
        mpz_class den(body.substr(slash + 1));
        if (den == 0)
            throw ParseError("zero denominator", slash + 1);
        q = Rational(mpz_class(body.substr(0, slash)), den);
    } else if (seen_dot) {
        auto dot = body.find('.');
        mpz_class scale = 1;
        for (std::size_t k = dot + 1; k < body.size(); ++k)
            scale *= 10;
        q = Rational(mpz_class(body.substr(0, dot) + body.substr(dot + 1)), scale);
    } else {
        q = Rational(mpz_class(body));
    }
    q.canonicalize();
    return q;
}

/// Element of Q(i). Arithmetic is exact; division by zero throws.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long v) : re_(v) {}  // NOLINT: implicit from integers is intended
    GaussianRational(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    const Rational& re() const noexcept { return re_; }
    const Rational& im() const noexcept { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    GaussianRational conj() const { return {re_, -im_}; }
    /// |z|^2 = re^2 + im^2.
    Rational norm() const { return re_ * re_ + im_ * im_; }

    GaussianRational inverse() const {
        Rational n = norm();
        if (sgn(n) == 0)
            throw PreconditionError("division by zero coefficient");
        return {Rational(re_ / n), Rational(-im_ / n)};
    }

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        if (o.is_real() && is_real()) {
            re_ *= o.re_;
            return *this;
        }
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational m = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(m);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        if (o.is_real()) {
            if (sgn(o.re_) == 0)
                throw PreconditionError("division by zero coefficient");
            re_ /= o.re_;
            im_ /= o.re_;
            return *this;
        }
        return *this *= o.inverse();
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend GaussianRational operator-(const GaussianRational& a) { return {Rational(-a.re_), Rational(-a.im_)}; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

    /// Canonical text: "p/q", "r/s*i", "p/q+r/s*i", "0".
    std::string to_string() const {
        if (is_zero())
            return "0";
        if (sgn(im_) == 0)
            return re_.get_str();
        std::string im_part;
        if (im_ == 1)
            im_part = "i";
        else if (im_ == -1)
            im_part = "-i";
        else
            im_part = im_.get_str() + "*i";
        if (sgn(re_) == 0)
            return im_part;
        return re_.get_str() + (sgn(im_) > 0 ? "+" : "") + im_part;
    }

private:
    Rational re_{0};
    Rational im_{0};
};

using Coefficient = GaussianRational;

} // namespace wlct
