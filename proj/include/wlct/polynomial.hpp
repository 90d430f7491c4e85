/**
 * @file polynomial.hpp
 * @brief Sparse polynomials over Q(i) representing (truncated) germs at 0.
 *
 * Terms are kept sorted strictly increasing under cmp_monomials, so the
 * initial term is always `terms().front()`. A polynomial may carry a
 * truncation degree D: terms of degree > D are then semantically unknown
 * and are never stored.
 */
#pragma once

#include <algorithm>
#include <complex>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "wlct/coefficient.hpp"
#include "wlct/exponent.hpp"

namespace wlct {

struct Term {
    Coefficient coef;
    Exponent exp;

    friend bool operator==(const Term&, const Term&) = default;
};

struct InitialData {
    Coefficient ic;
    Exponent im;
    Term it;
};

class Polynomial {
public:
    explicit Polynomial(std::size_t dim = 0, std::optional<std::uint64_t> trunc = std::nullopt)
        : dim_(dim), trunc_(trunc) {}

    static Polynomial constant(std::size_t dim, const Coefficient& c) {
        return monomial(dim, c, Exponent(dim));
    }
    static Polynomial monomial(std::size_t dim, const Coefficient& c, Exponent e) {
        Polynomial p(dim);
        if (e.dim() != dim)
            throw DimensionMismatch(dim, e.dim());
        if (!c.is_zero())
            p.terms_.push_back({c, std::move(e)});
        return p;
    }
    static Polynomial variable(std::size_t dim, std::size_t var) {
        return monomial(dim, Coefficient(1), Exponent::unit(dim, var));
    }

    /// Builds from arbitrary (possibly repeated, unsorted) terms.
    static Polynomial from_terms(std::size_t dim, std::vector<Term> terms,
                                 std::optional<std::uint64_t> trunc = std::nullopt) {
        std::map<Exponent, Coefficient, MonomialLess> acc;
        for (auto& t : terms) {
            if (t.exp.dim() != dim)
                throw DimensionMismatch(dim, t.exp.dim());
            if (trunc && t.exp.degree() > *trunc)
                continue;
            auto [it, inserted] = acc.try_emplace(std::move(t.exp), t.coef);
            if (!inserted)
                it->second += t.coef;
        }
        Polynomial p(dim, trunc);
        for (auto& [e, c] : acc)
            if (!c.is_zero())
                p.terms_.push_back({std::move(c), e});
        return p;
    }

    std::size_t dim() const noexcept { return dim_; }
    std::optional<std::uint64_t> trunc() const noexcept { return trunc_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Highest stored degree; 0 for the zero polynomial.
    std::uint64_t degree() const {
        std::uint64_t d = 0;
        for (const auto& t : terms_)
            d = std::max(d, t.exp.degree());
        return d;
    }

    /// Coefficient of z^e (zero when absent).
    Coefficient coefficient(const Exponent& e) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                                   [](const Term& t, const Exponent& x) { return MonomialLess{}(t.exp, x); });
        if (it != terms_.end() && it->exp == e)
            return it->coef;
        return Coefficient(0);
    }

    InitialData initial_data() const {
        if (terms_.empty())
            throw ZeroGerm();
        const Term& t = terms_.front();
        return {t.coef, t.exp, t};
    }
    const Exponent& initial_monomial() const {
        if (terms_.empty())
            throw ZeroGerm();
        return terms_.front().exp;
    }
    const Coefficient& initial_coefficient() const {
        if (terms_.empty())
            throw ZeroGerm();
        return terms_.front().coef;
    }

    std::vector<Exponent> support() const {
        std::vector<Exponent> s;
        s.reserve(terms_.size());
        for (const auto& t : terms_)
            s.push_back(t.exp);
        return s;
    }

    /// Drops all terms of degree > D and records D (keeping any tighter bound).
    Polynomial truncate(std::uint64_t D) const {
        Polynomial p(dim_, trunc_ ? std::min(*trunc_, D) : D);
        for (const auto& t : terms_)
            if (t.exp.degree() <= *p.trunc_)
                p.terms_.push_back(t);
        return p;
    }

    /// Same terms, truncation marker removed.
    Polynomial without_trunc() const {
        Polynomial p = *this;
        p.trunc_.reset();
        return p;
    }

    Polynomial scale(const Coefficient& c) const {
        Polynomial p(dim_, trunc_);
        if (c.is_zero())
            return p;
        p.terms_.reserve(terms_.size());
        for (const auto& t : terms_)
            p.terms_.push_back({t.coef * c, t.exp});
        return p;
    }

    /// c * z^e * this.
    Polynomial mul_term(const Coefficient& c, const Exponent& e) const {
        check_dim(e.dim());
        Polynomial p(dim_, trunc_);
        if (c.is_zero())
            return p;
        p.terms_.reserve(terms_.size());
        for (const auto& t : terms_) {
            Exponent x = t.exp + e;
            if (p.trunc_ && x.degree() > *p.trunc_)
                continue;
            p.terms_.push_back({t.coef * c, std::move(x)});
        }
        return p;
    }

    /// this + s*other, merged in one pass. The result truncation is the
    /// tighter of the two operands'.
    Polynomial axpy(const Coefficient& s, const Polynomial& other) const {
        check_dim(other.dim_);
        Polynomial p(dim_, min_trunc(trunc_, other.trunc_));
        if (s.is_zero())
            return p.trunc_ ? truncate(*p.trunc_) : *this;
        p.terms_.reserve(terms_.size() + other.terms_.size());
        auto keep = [&](const Exponent& e) { return !p.trunc_ || e.degree() <= *p.trunc_; };
        auto a = terms_.begin(), ae = terms_.end();
        auto b = other.terms_.begin(), be = other.terms_.end();
        while (a != ae || b != be) {
            Ordering o = a == ae   ? Ordering::Greater
                         : b == be ? Ordering::Less
                                   : cmp_monomials(a->exp, b->exp);
            if (o == Ordering::Less) {
                if (keep(a->exp))
                    p.terms_.push_back(*a);
                ++a;
            } else if (o == Ordering::Greater) {
                if (keep(b->exp))
                    p.terms_.push_back({b->coef * s, b->exp});
                ++b;
            } else {
                Coefficient c = a->coef + b->coef * s;
                if (!c.is_zero() && keep(a->exp))
                    p.terms_.push_back({std::move(c), a->exp});
                ++a;
                ++b;
            }
        }
        return p;
    }

    friend Polynomial operator+(const Polynomial& f, const Polynomial& g) { return f.axpy(Coefficient(1), g); }
    friend Polynomial operator-(const Polynomial& f, const Polynomial& g) { return f.axpy(Coefficient(-1), g); }
    friend Polynomial operator-(const Polynomial& f) { return f.scale(Coefficient(-1)); }

    friend Polynomial operator*(const Polynomial& f, const Polynomial& g) {
        f.check_dim(g.dim_);
        auto trunc = min_trunc(f.trunc_, g.trunc_);
        std::map<Exponent, Coefficient, MonomialLess> acc;
        for (const auto& a : f.terms_)
            for (const auto& b : g.terms_) {
                Exponent e = a.exp + b.exp;
                if (trunc && e.degree() > *trunc)
                    continue;
                auto [it, inserted] = acc.try_emplace(std::move(e), a.coef * b.coef);
                if (!inserted)
                    it->second += a.coef * b.coef;
            }
        Polynomial p(f.dim_, trunc);
        for (auto& [e, c] : acc)
            if (!c.is_zero())
                p.terms_.push_back({std::move(c), e});
        return p;
    }

    Polynomial pow(unsigned k) const {
        Polynomial r = constant(dim_, Coefficient(1));
        r.trunc_ = trunc_;
        for (unsigned i = 0; i < k; ++i)
            r = r * *this;
        return r;
    }

    /// Equality of stored terms; truncation markers are ignored.
    friend bool operator==(const Polynomial& f, const Polynomial& g) {
        return f.dim_ == g.dim_ && f.terms_ == g.terms_;
    }

    /// Evaluation at a point of C^n in binary64.
    std::complex<double> evaluate(std::span<const std::complex<double>> z) const {
        if (z.size() != dim_)
            throw DimensionMismatch(dim_, z.size());
        std::complex<double> sum = 0;
        for (const auto& t : terms_) {
            std::complex<double> v = t.coef.to_complex();
            for (std::size_t i = 0; i < dim_; ++i)
                for (std::uint32_t k = 0; k < t.exp[i]; ++k)
                    v *= z[i];
            sum += v;
        }
        return sum;
    }

    /// True when some stored term involves variable `var`.
    bool depends_on(std::size_t var) const {
        return std::any_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.exp[var] > 0; });
    }

    void check_dim(std::size_t d) const {
        if (d != dim_)
            throw DimensionMismatch(dim_, d);
    }

private:
    static std::optional<std::uint64_t> min_trunc(std::optional<std::uint64_t> a, std::optional<std::uint64_t> b) {
        if (a && b)
            return std::min(*a, *b);
        return a ? a : b;
    }

    std::size_t dim_;
    std::optional<std::uint64_t> trunc_;
    std::vector<Term> terms_;
};

inline InitialData initial_data(const Polynomial& f) { return f.initial_data(); }
inline std::vector<Exponent> support(const Polynomial& f) { return f.support(); }
inline Polynomial truncate(const Polynomial& f, std::uint64_t D) { return f.truncate(D); }

} // namespace wlct
