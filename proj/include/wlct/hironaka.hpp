/**
 * @file hironaka.hpp
 * @brief Hironaka division, standard bases and initial-monomial interreduction
 *        in the local ring, certified modulo terms of degree > D.
 *
 * Under the degree-first order, reducing the minimal term of a germ only ever
 * creates larger terms, so quotients are in general infinite power series.
 * Every routine here therefore works in O/m^{D+1}: all products are truncated
 * at degree D and each result is exact modulo degree > D.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "wlct/polynomial.hpp"

namespace wlct {

inline constexpr std::uint64_t kDefaultTruncation = 16;

struct DivisionResult {
    std::vector<Polynomial> quotients;
    Polynomial remainder;
    std::uint64_t trunc;
};

struct StandardBasis {
    std::vector<Polynomial> gens;
    std::uint64_t trunc = kDefaultTruncation;
    MonomialIdeal im_ideal;

    std::vector<Exponent> initial_monomials() const {
        std::vector<Exponent> ims;
        for (const auto& g : gens)
            ims.push_back(g.initial_monomial());
        return ims;
    }
};

namespace detail {

inline void check_divisors(std::span<const Polynomial> gens, std::size_t dim) {
    if (gens.empty())
        throw PreconditionError("division needs at least one divisor");
    for (const auto& g : gens) {
        g.check_dim(dim);
        if (g.is_zero())
            throw PreconditionError("zero divisor polynomial");
    }
}

/// Smallest index whose initial monomial divides `e`.
inline std::optional<std::size_t> first_divisor(std::span<const Polynomial> gens, const Exponent& e) {
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (gens[i].initial_monomial().divides(e))
            return i;
    return std::nullopt;
}

} // namespace detail

/**
 * Division with remainder f = sum h_i g_i + s (mod degree > D).
 *
 * The current minimal term is cancelled with the lowest-index divisor whose
 * initial monomial divides it; otherwise it moves to the remainder. The
 * minimal term strictly increases, and there are finitely many monomials of
 * degree <= D, so the loop terminates.
 */
inline DivisionResult divide(const Polynomial& f, std::span<const Polynomial> gens, std::int64_t D) {
    if (D < 0)
        throw PreconditionError("truncation degree D must be >= 0");
    const auto trunc = static_cast<std::uint64_t>(D);
    detail::check_divisors(gens, f.dim());
    for (const auto& g : gens)
        if (g.truncate(trunc).is_zero())
            throw PreconditionError("divisor vanishes modulo degree > D: " + g.initial_monomial().to_string());

    const std::size_t n = f.dim();
    std::vector<std::vector<Term>> quot(gens.size());
    std::vector<Term> rem;
    std::vector<Polynomial> divisors;
    divisors.reserve(gens.size());
    for (const auto& g : gens)
        divisors.push_back(g.without_trunc().truncate(trunc));

    Polynomial p = f.without_trunc().truncate(trunc);
    while (!p.is_zero()) {
        const Term lead = p.terms().front();
        if (auto i = detail::first_divisor(divisors, lead.exp)) {
            const Polynomial& g = divisors[*i];
            Coefficient c = lead.coef / g.initial_coefficient();
            Exponent m = lead.exp.quotient(g.initial_monomial());
            p = p.axpy(-c, g.mul_term(Coefficient(1), m));
            quot[*i].push_back({std::move(c), std::move(m)});
        } else {
            rem.push_back(lead);
            p = p.axpy(Coefficient(-1), Polynomial::monomial(n, lead.coef, lead.exp));
        }
    }

    DivisionResult r{{}, Polynomial::from_terms(n, std::move(rem)), trunc};
    for (auto& q : quot)
        r.quotients.push_back(Polynomial::from_terms(n, std::move(q)));
    return r;
}

inline DivisionResult divide(const Polynomial& f, const std::vector<Polynomial>& gens, std::int64_t D) {
    return divide(f, std::span<const Polynomial>(gens), D);
}

/// Remainder of f on division by a standard basis; zero iff f is in the
/// ideal modulo degree > D.
inline Polynomial normal_form(const Polynomial& f, const StandardBasis& basis) {
    return divide(f, basis.gens, static_cast<std::int64_t>(basis.trunc)).remainder;
}

namespace detail {

inline Polynomial monic(const Polynomial& g) {
    return g.scale(g.initial_coefficient().inverse());
}

/// s-combination cancelling the initial terms of monic a and b.
inline Polynomial s_combination(const Polynomial& a, const Polynomial& b, std::uint64_t D) {
    Exponent l = lcm(a.initial_monomial(), b.initial_monomial());
    Polynomial sa = a.mul_term(Coefficient(1), l.quotient(a.initial_monomial()));
    Polynomial sb = b.mul_term(b.initial_coefficient().inverse() * a.initial_coefficient(),
                               l.quotient(b.initial_monomial()));
    return (sa - sb).truncate(D);
}

/// Sort by IM, drop elements whose IM is divisible by another IM, make monic,
/// and tail-reduce every element against the others.
inline std::vector<Polynomial> interreduce(std::vector<Polynomial> gens, std::uint64_t D) {
    for (auto& g : gens)
        g = monic(g);
    std::sort(gens.begin(), gens.end(), [](const Polynomial& a, const Polynomial& b) {
        return MonomialLess{}(a.initial_monomial(), b.initial_monomial());
    });
    std::vector<Polynomial> minimal;
    for (auto& g : gens) {
        bool dominated = std::any_of(minimal.begin(), minimal.end(), [&](const Polynomial& h) {
            return h.initial_monomial().divides(g.initial_monomial());
        });
        if (!dominated)
            minimal.push_back(std::move(g));
    }
    // A unit generates everything; its reduced form is 1.
    if (!minimal.empty() && minimal.front().initial_monomial().is_zero())
        return {Polynomial::constant(minimal.front().dim(), Coefficient(1)).truncate(D)};
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Polynomial> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i)
                others.push_back(minimal[j]);
        if (others.empty())
            break;
        // The initial term is irreducible by the others (antichain), so the
        // remainder keeps it and only the tail changes.
        Polynomial r = divide(minimal[i], others, static_cast<std::int64_t>(D)).remainder;
        minimal[i] = monic(r).truncate(D);
    }
    return minimal;
}

} // namespace detail

/**
 * Standard basis of the ideal generated by `gens` in O/m^{D+1}.
 *
 * s-pair completion: every pair is reduced by the current basis and nonzero
 * remainders are appended. Pairs whose lcm has degree > D vanish modulo
 * m^{D+1} and are skipped. The result is interreduced, monic and sorted with
 * strictly increasing initial monomials.
 */
inline StandardBasis standard_basis(const std::vector<Polynomial>& gens, std::int64_t D) {
    if (gens.empty())
        throw PreconditionError("standard basis of an empty generator list");
    if (D < 0)
        throw PreconditionError("truncation degree D must be >= 0");
    const auto trunc = static_cast<std::uint64_t>(D);
    const std::size_t n = gens.front().dim();
    std::vector<Polynomial> inputs;
    for (const auto& g : gens) {
        g.check_dim(n);
        if (g.is_zero())
            throw PreconditionError("zero polynomial among generators");
        Polynomial t = g.without_trunc().truncate(trunc);
        if (t.is_zero())
            throw PreconditionError("generator vanishes modulo degree > D");
        inputs.push_back(std::move(t));
    }

    // Reduce each input by the ones already accepted so the pair queue starts small.
    std::vector<Polynomial> basis;
    for (const auto& t : inputs) {
        Polynomial r = basis.empty() ? t : divide(t, basis, D).remainder;
        if (!r.is_zero())
            basis.push_back(detail::monic(r));
    }

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t j = 1; j < basis.size(); ++j)
        for (std::size_t i = 0; i < j; ++i)
            pairs.emplace_back(i, j);

    while (!pairs.empty()) {
        auto [i, j] = pairs.back();
        pairs.pop_back();
        if (lcm(basis[i].initial_monomial(), basis[j].initial_monomial()).degree() > trunc)
            continue;
        Polynomial s = detail::s_combination(basis[i], basis[j], trunc);
        if (s.is_zero())
            continue;
        Polynomial r = divide(s, basis, D).remainder;
        if (r.is_zero())
            continue;
        basis.push_back(detail::monic(r));
        const std::size_t k = basis.size() - 1;
        for (std::size_t m = 0; m < k; ++m)
            pairs.emplace_back(m, k);
    }

    StandardBasis out;
    out.trunc = trunc;
    out.gens = detail::interreduce(std::move(basis), trunc);
    std::vector<Exponent> ims = out.initial_monomials();
    out.im_ideal = minimal_generators(ims, n);
    return out;
}

/**
 * Structural check plus s-pair confluence: IMs strictly increasing, no IM
 * divides another, and every s-combination reduces to zero modulo degree > D.
 */
inline bool is_standard_basis(const StandardBasis& basis) {
    const auto& g = basis.gens;
    if (g.empty())
        return false;
    for (const auto& p : g)
        if (p.truncate(basis.trunc).is_zero())
            return false;
    for (std::size_t i = 0; i + 1 < g.size(); ++i)
        if (!MonomialLess{}(g[i].initial_monomial(), g[i + 1].initial_monomial()))
            return false;
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j)
            if (i != j && g[i].initial_monomial().divides(g[j].initial_monomial()))
                return false;
    const auto D = static_cast<std::int64_t>(basis.trunc);
    for (std::size_t j = 1; j < g.size(); ++j)
        for (std::size_t i = 0; i < j; ++i) {
            if (lcm(g[i].initial_monomial(), g[j].initial_monomial()).degree() > basis.trunc)
                continue;
            Polynomial a = detail::monic(g[i].without_trunc().truncate(basis.trunc));
            Polynomial b = detail::monic(g[j].without_trunc().truncate(basis.trunc));
            Polynomial s = detail::s_combination(a, b, basis.trunc);
            if (!s.is_zero() && !divide(s, g, D).remainder.is_zero())
                return false;
        }
    return true;
}

struct ShapeReduction {
    /// F'_l with IM(F'_l) = IM(reference_l).
    std::vector<Polynomial> reduced;
    /// multipliers[l][m] = P_{l,m} (m < l) with F'_l = F_l - sum_m P_{l,m} F'_m.
    std::vector<std::vector<Polynomial>> multipliers;
};

/**
 * Rebuilds candidates F_l with IM(F_l) <= IM(f_l) into F'_l whose initial
 * monomials match the reference basis exactly.
 *
 * While IM(F) < IM(f_l), IM(F) lies in the initial ideal and is smaller than
 * f_l, ..., f_k, so some IM(f_m) with m < l divides it; subtracting
 * b z^beta F'_m removes that term and strictly increases IM(F). Only
 * finitely many monomials lie below IM(f_l).
 */
inline ShapeReduction interreduce_to_shape(const std::vector<Polynomial>& candidates,
                                           const StandardBasis& reference, std::int64_t D) {
    if (D < 0)
        throw PreconditionError("truncation degree D must be >= 0");
    const auto trunc = static_cast<std::uint64_t>(D);
    const auto& ref = reference.gens;
    if (candidates.size() != ref.size())
        throw PreconditionError("not reducible to shape: candidate count differs from reference");
    ShapeReduction out;
    for (std::size_t l = 0; l < candidates.size(); ++l) {
        const Exponent& target = ref[l].initial_monomial();
        Polynomial F = candidates[l].without_trunc().truncate(trunc);
        std::vector<std::vector<Term>> mult(l);
        for (;;) {
            if (F.is_zero())
                throw PreconditionError("not reducible to shape: candidate " + std::to_string(l + 1) +
                                        " reduced to zero");
            const Term lead = F.terms().front();
            Ordering o = cmp_monomials(lead.exp, target);
            if (o == Ordering::Equal)
                break;
            if (o == Ordering::Greater)
                throw PreconditionError("not reducible to shape: IM(candidate " + std::to_string(l + 1) +
                                        ") = " + lead.exp.to_string() + " exceeds reference " +
                                        target.to_string());
            if (!reference.im_ideal.contains(lead.exp))
                throw PreconditionError("not reducible to shape: " + lead.exp.to_string() +
                                        " is not in the reference initial ideal");
            std::optional<std::size_t> m;
            for (std::size_t k = 0; k < l; ++k)
                if (out.reduced[k].initial_monomial().divides(lead.exp)) {
                    m = k;
                    break;
                }
            if (!m)
                throw PreconditionError("not reducible to shape: no earlier generator divides " +
                                        lead.exp.to_string());
            const Polynomial& Fm = out.reduced[*m];
            Coefficient b = lead.coef / Fm.initial_coefficient();
            Exponent beta = lead.exp.quotient(Fm.initial_monomial());
            F = F.axpy(-b, Fm.mul_term(Coefficient(1), beta));
            mult[*m].push_back({std::move(b), std::move(beta)});
        }
        out.reduced.push_back(std::move(F));
        std::vector<Polynomial> P;
        for (auto& terms : mult)
            P.push_back(Polynomial::from_terms(ref[l].dim(), std::move(terms)));
        out.multipliers.push_back(std::move(P));
    }
    return out;
}

} // namespace wlct
