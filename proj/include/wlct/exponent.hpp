/**
 * @file exponent.hpp
 * @brief Multi-indices, the homogeneous lexicographic order, monomial ideals.
 *
 * z^a < z^b iff |a| < |b|, or |a| = |b| and a_i < b_i at the first index
 * where they differ. The order is degree-first and multiplicative, so the
 * initial (minimal) term of a germ is read off its lowest-degree part.
 */
#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "wlct/error.hpp"

namespace wlct {

class Exponent {
public:
    Exponent() = default;
    explicit Exponent(std::size_t dim) : e_(dim, 0) {}
    Exponent(std::initializer_list<std::uint32_t> xs) : e_(xs) {}
    explicit Exponent(std::vector<std::uint32_t> xs) : e_(std::move(xs)) {}

    static Exponent unit(std::size_t dim, std::size_t var) {
        Exponent e(dim);
        e.e_.at(var) = 1;
        return e;
    }

    std::size_t dim() const noexcept { return e_.size(); }
    std::uint32_t operator[](std::size_t i) const { return e_[i]; }
    std::uint32_t& operator[](std::size_t i) { return e_[i]; }
    std::span<const std::uint32_t> entries() const noexcept { return e_; }

    std::uint64_t degree() const {
        return std::accumulate(e_.begin(), e_.end(), std::uint64_t{0});
    }

    bool is_zero() const {
        return std::all_of(e_.begin(), e_.end(), [](auto x) { return x == 0; });
    }

    /// Componentwise <=, i.e. z^this divides z^other.
    bool divides(const Exponent& other) const {
        check_dim(other);
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i] > other.e_[i])
                return false;
        return true;
    }

    Exponent& operator+=(const Exponent& o) {
        check_dim(o);
        for (std::size_t i = 0; i < e_.size(); ++i)
            e_[i] += o.e_[i];
        return *this;
    }
    friend Exponent operator+(Exponent a, const Exponent& b) { return a += b; }

    /// this - o; requires o.divides(*this).
    Exponent quotient(const Exponent& o) const {
        if (!o.divides(*this))
            throw PreconditionError("monomial quotient: divisor does not divide");
        Exponent r = *this;
        for (std::size_t i = 0; i < e_.size(); ++i)
            r.e_[i] -= o.e_[i];
        return r;
    }

    /// Componentwise max (lcm of monomials).
    friend Exponent lcm(const Exponent& a, const Exponent& b) {
        a.check_dim(b);
        Exponent r = a;
        for (std::size_t i = 0; i < r.e_.size(); ++i)
            r.e_[i] = std::max(a.e_[i], b.e_[i]);
        return r;
    }

    friend bool operator==(const Exponent&, const Exponent&) = default;

    /// "(a1,...,an)".
    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < e_.size(); ++i) {
            if (i)
                s += ',';
            s += std::to_string(e_[i]);
        }
        return s + ")";
    }

    void check_dim(const Exponent& o) const {
        if (o.dim() != dim())
            throw DimensionMismatch(dim(), o.dim());
    }

private:
    std::vector<std::uint32_t> e_;
};

enum class Ordering { Less, Equal, Greater };

inline const char* to_string(Ordering o) {
    switch (o) {
    case Ordering::Less:
        return "Less";
    case Ordering::Equal:
        return "Equal";
    case Ordering::Greater:
        return "Greater";
    }
    return "?";
}

/// Homogeneous lexicographic comparison. Throws DimensionMismatch.
inline Ordering cmp_monomials(const Exponent& a, const Exponent& b) {
    a.check_dim(b);
    auto da = a.degree(), db = b.degree();
    if (da != db)
        return da < db ? Ordering::Less : Ordering::Greater;
    for (std::size_t i = 0; i < a.dim(); ++i)
        if (a[i] != b[i])
            return a[i] < b[i] ? Ordering::Less : Ordering::Greater;
    return Ordering::Equal;
}

/// Strict-weak-order functor for sorted containers.
struct MonomialLess {
    bool operator()(const Exponent& a, const Exponent& b) const {
        return cmp_monomials(a, b) == Ordering::Less;
    }
};

/// Parses "(a1,...,an)"; whitespace allowed. Throws ParseError.
inline Exponent parse_exponent(const std::string& text) {
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t'))
            ++i;
    };
    skip();
    if (i >= text.size() || text[i] != '(')
        throw ParseError("expected '(' to open exponent vector", i);
    ++i;
    std::vector<std::uint32_t> xs;
    skip();
    if (i < text.size() && text[i] == ')') {
        ++i;
    } else {
        for (;;) {
            skip();
            std::size_t start = i;
            std::uint64_t v = 0;
            while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
                v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
                if (v > 1'000'000)
                    throw ParseError("exponent entry too large", start);
                ++i;
            }
            if (i == start)
                throw ParseError("expected non-negative integer in exponent vector", i);
            xs.push_back(static_cast<std::uint32_t>(v));
            skip();
            if (i < text.size() && text[i] == ',') {
                ++i;
                continue;
            }
            if (i < text.size() && text[i] == ')') {
                ++i;
                break;
            }
            throw ParseError("expected ',' or ')' in exponent vector", i);
        }
    }
    skip();
    if (i != text.size())
        throw ParseError("trailing characters after exponent vector", i);
    return Exponent(std::move(xs));
}

/// Parses "(..),(..),..." into a list of exponent vectors.
inline std::vector<Exponent> parse_exponent_list(const std::string& text) {
    std::vector<Exponent> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && (text[i] == ' ' || text[i] == ',' || text[i] == ';'))
            ++i;
        if (i >= text.size())
            break;
        auto close = text.find(')', i);
        if (text[i] != '(' || close == std::string::npos)
            throw ParseError("expected exponent vector '(a1,...,an)'", i);
        try {
            out.push_back(parse_exponent(text.substr(i, close - i + 1)));
        } catch (const ParseError& e) {
            throw ParseError(e.detail(), i + e.position());
        }
        i = close + 1;
    }
    if (out.empty())
        throw ParseError("empty exponent list", 0);
    for (const auto& e : out)
        out.front().check_dim(e);
    return out;
}

/// Monomial ideal stored by its minimal generators (an antichain).
class MonomialIdeal {
public:
    explicit MonomialIdeal(std::size_t dim = 0) : dim_(dim) {}

    std::size_t dim() const noexcept { return dim_; }
    const std::vector<Exponent>& gens() const noexcept { return gens_; }
    bool is_zero() const noexcept { return gens_.empty(); }
    bool is_unit() const {
        return gens_.size() == 1 && gens_.front().is_zero();
    }

    bool contains(const Exponent& a) const {
        if (a.dim() != dim_)
            throw DimensionMismatch(dim_, a.dim());
        return std::any_of(gens_.begin(), gens_.end(), [&](const Exponent& g) { return g.divides(a); });
    }

    friend bool operator==(const MonomialIdeal&, const MonomialIdeal&) = default;

    std::string to_string() const {
        std::string s = "<";
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            if (i)
                s += ", ";
            s += gens_[i].to_string();
        }
        return s + ">";
    }

    friend MonomialIdeal minimal_generators(std::span<const Exponent>, std::size_t);

private:
    std::size_t dim_;
    std::vector<Exponent> gens_;  // sorted by cmp_monomials
};

/// Antichain of a finite exponent set, sorted increasingly under cmp_monomials.
/// `dim` is used only when `s` is empty.
inline MonomialIdeal minimal_generators(std::span<const Exponent> s, std::size_t dim = 0) {
    MonomialIdeal ideal(s.empty() ? dim : s.front().dim());
    std::vector<Exponent> sorted(s.begin(), s.end());
    for (const auto& e : sorted)
        if (e.dim() != ideal.dim_)
            throw DimensionMismatch(ideal.dim_, e.dim());
    // A divisor is never greater than its multiple, so scanning in increasing
    // order sees every potential divisor first.
    std::sort(sorted.begin(), sorted.end(), MonomialLess{});
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (auto& e : sorted) {
        bool dominated = std::any_of(ideal.gens_.begin(), ideal.gens_.end(),
                                     [&](const Exponent& g) { return g.divides(e); });
        if (!dominated)
            ideal.gens_.push_back(std::move(e));
    }
    return ideal;
}

inline bool ideal_membership_monomial(const Exponent& a, const MonomialIdeal& ideal) {
    return ideal.contains(a);
}

} // namespace wlct
