/**
 * @file newton_lct.hpp
 * @brief Exact weighted log canonical thresholds for monomial weights.
 *
 * For phi = log max_j |z^{a_j}| and f = z^beta, |f|^2 e^{-2c phi} is locally
 * integrable at 0 iff beta + 1 lies in the interior of c times the Newton
 * polyhedron of {a_j}. The threshold is therefore the LP optimum
 *
 *     max sum_j mu_j   s.t.   sum_j mu_j a_j <= beta + 1,  mu >= 0,
 *
 * solved here in exact rationals. The optimizer mu and the dual facet normal
 * w (with <w, a_j> >= 1 and <w, beta + 1> = value) are returned as a
 * certificate that can be re-checked without trusting the solver.
 */
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wlct/exponent.hpp"
#include "wlct/simplex.hpp"

namespace wlct {

/// phi_a = log max_j |z^{a_j}|, stored as the antichain of its generators.
class MonomialWeight {
public:
    explicit MonomialWeight(const std::vector<Exponent>& gens) {
        if (gens.empty())
            throw PreconditionError("monomial weight needs at least one generator");
        // Dominated generators change phi only by a bounded amount.
        MonomialIdeal ideal = minimal_generators(gens);
        gens_ = ideal.gens();
        dim_ = ideal.dim();
    }

    std::size_t dim() const noexcept { return dim_; }
    const std::vector<Exponent>& gens() const noexcept { return gens_; }

    std::string to_string() const {
        std::string s;
        for (std::size_t j = 0; j < gens_.size(); ++j)
            s += (j ? "," : "") + gens_[j].to_string();
        return s;
    }

private:
    std::size_t dim_ = 0;
    std::vector<Exponent> gens_;
};

struct WeightedLctQuery {
    MonomialWeight weight;
    Exponent beta;
};

struct LctValue {
    bool infinite = false;
    Rational value;
    std::vector<Rational> optimal_mu;
    std::vector<Rational> facet_normal;

    /// "p/q" or "inf".
    std::string to_string() const { return infinite ? "inf" : value.get_str(); }

    friend bool operator>(const LctValue& v, const Rational& c) { return v.infinite || v.value > c; }
};

namespace detail {

/// LP with a rational generator matrix: gens[j] is a_j (length n).
inline LctValue solve_lct_lp(const std::vector<std::vector<Rational>>& gens, const Exponent& beta) {
    const std::size_t k = gens.size();
    const std::size_t n = beta.dim();
    for (const auto& a : gens)
        if (a.size() != n)
            throw DimensionMismatch(n, a.size());
    LctValue out;
    for (const auto& a : gens) {
        bool all_zero = true;
        for (const auto& x : a)
            all_zero = all_zero && sgn(x) == 0;
        if (all_zero) {
            // phi is bounded near 0: integrable for every c.
            out.infinite = true;
            return out;
        }
    }
    std::vector<std::vector<Rational>> A(n, std::vector<Rational>(k));
    std::vector<Rational> b(n), c(k, Rational(1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j)
            A[i][j] = gens[j][i];
        b[i] = Rational(beta[i]) + 1;
    }
    LpSolution sol = solve_lp_max(A, b, c);
    if (sol.status == LpStatus::Unbounded) {
        out.infinite = true;
        return out;
    }
    out.value = sol.value;
    out.optimal_mu = std::move(sol.primal);
    out.facet_normal = std::move(sol.dual);
    return out;
}

inline std::vector<std::vector<Rational>> scaled_matrix(const MonomialWeight& w, const Rational& t) {
    std::vector<std::vector<Rational>> m;
    for (const auto& a : w.gens()) {
        std::vector<Rational> row;
        for (auto x : a.entries())
            row.push_back(t * Rational(x));
        m.push_back(std::move(row));
    }
    return m;
}

} // namespace detail

inline LctValue newton_lct(const WeightedLctQuery& q) {
    if (q.beta.dim() != q.weight.dim())
        throw DimensionMismatch(q.weight.dim(), q.beta.dim());
    return detail::solve_lct_lp(detail::scaled_matrix(q.weight, Rational(1)), q.beta);
}

inline LctValue newton_lct(const MonomialWeight& weight, const Exponent& beta) {
    return newton_lct(WeightedLctQuery{weight, beta});
}

/**
 * Exact re-check of an LctValue against the generator matrix scaled by t:
 * mu >= 0, sum mu_j t a_j <= beta + 1, value = sum mu; and for the dual,
 * w >= 0, <w, t a_j> >= 1, <w, beta + 1> = value.
 */
inline bool verify_certificate(const MonomialWeight& weight, const Exponent& beta, const LctValue& v,
                               const Rational& t = Rational(1)) {
    if (v.infinite) {
        for (const auto& a : weight.gens())
            if (a.is_zero())
                return true;
        return false;
    }
    const auto gens = detail::scaled_matrix(weight, t);
    const std::size_t n = beta.dim(), k = gens.size();
    if (v.optimal_mu.size() != k || v.facet_normal.size() != n)
        return false;
    Rational total = 0;
    for (const auto& m : v.optimal_mu) {
        if (sgn(m) < 0)
            return false;
        total += m;
    }
    if (total != v.value)
        return false;
    for (std::size_t i = 0; i < n; ++i) {
        Rational lhs = 0;
        for (std::size_t j = 0; j < k; ++j)
            lhs += v.optimal_mu[j] * gens[j][i];
        if (lhs > Rational(beta[i]) + 1)
            return false;
    }
    Rational dual_obj = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (sgn(v.facet_normal[i]) < 0)
            return false;
        dual_obj += v.facet_normal[i] * (Rational(beta[i]) + 1);
    }
    for (std::size_t j = 0; j < k; ++j) {
        Rational s = 0;
        for (std::size_t i = 0; i < n; ++i)
            s += v.facet_normal[i] * gens[j][i];
        if (s < 1)
            return false;
    }
    return dual_obj == v.value;
}

/// Calls fn(beta) for every exponent with |beta| <= D, in increasing order.
inline void for_each_exponent(std::size_t n, std::uint64_t D, const std::function<void(const Exponent&)>& fn) {
    Exponent e(n);
    std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t var, std::uint64_t left) {
        if (var == n) {
            fn(e);
            return;
        }
        for (std::uint64_t v = 0; v <= left; ++v) {
            e[var] = static_cast<std::uint32_t>(v);
            rec(var + 1, left - v);
        }
        e[var] = 0;
    };
    rec(0, D);
}

/**
 * Monomial generators of the multiplier ideal I(c phi) among degrees <= D:
 * z^beta belongs iff the weighted threshold at beta is strictly above c.
 */
inline MonomialIdeal multiplier_ideal_monomials(const MonomialWeight& weight, const Rational& c, std::uint64_t D) {
    if (sgn(c) <= 0)
        throw PreconditionError("multiplier ideal needs c > 0");
    std::vector<Exponent> members;
    for_each_exponent(weight.dim(), D, [&](const Exponent& beta) {
        if (newton_lct(weight, beta) > c)
            members.push_back(beta);
    });
    return minimal_generators(members, weight.dim());
}

/**
 * Exact witness for I(c phi) = I_+(c phi) at z^beta: eps > 0 with
 * lct > (1 + eps) c, or nullopt when z^beta is not in I(c phi).
 */
inline std::optional<Rational> openness_witness(const MonomialWeight& weight, const Exponent& beta,
                                                const Rational& c) {
    if (sgn(c) <= 0)
        throw PreconditionError("openness witness needs c > 0");
    LctValue v = newton_lct(weight, beta);
    if (!(v > c))
        return std::nullopt;
    if (v.infinite)
        return Rational(1);
    Rational eps = (v.value / c - 1) / 2;
    eps.canonicalize();
    return eps;
}

struct LctScaling {
    Rational t;
    LctValue original;
    LctValue scaled;  ///< threshold of the weight with generators t * a_j
};

/// Threshold of t*phi computed directly from the LP with generators t*a_j,
/// returned together with the unscaled value so the law lct/t can be checked.
inline LctScaling lct_scaling(const MonomialWeight& weight, const Rational& t, const Exponent& beta) {
    if (sgn(t) <= 0)
        throw PreconditionError("scaling factor t must be > 0");
    if (beta.dim() != weight.dim())
        throw DimensionMismatch(weight.dim(), beta.dim());
    LctScaling s{t, newton_lct(weight, beta), detail::solve_lct_lp(detail::scaled_matrix(weight, t), beta)};
    return s;
}

} // namespace wlct
