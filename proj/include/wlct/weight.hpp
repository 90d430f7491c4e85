/**
 * @file weight.hpp
 * @brief Plurisubharmonic weights phi evaluated in double precision.
 *
 * Supported shapes: log|g|, (1/2) log sum |g_j|^2, log max_j |z^{a_j}|, and the
 * compositions t*phi (t > 0 rational) and phi + s.
 */
#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "wlct/poly_io.hpp"

namespace wlct {

/// Polynomial with binary64 coefficients, for fast pointwise evaluation.
class CompiledPolynomial {
public:
    CompiledPolynomial() = default;
    explicit CompiledPolynomial(const Polynomial& p) : dim_(p.dim()) {
        for (const auto& t : p.terms()) {
            coefs_.push_back(t.coef.to_complex());
            for (auto e : t.exp.entries())
                exps_.push_back(e);
        }
    }

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return coefs_.size(); }

    std::uint32_t degree_in(std::size_t var) const noexcept {
        std::uint32_t d = 0;
        for (std::size_t k = 0; k < coefs_.size(); ++k)
            d = std::max(d, exps_[k * dim_ + var]);
        return d;
    }

    std::complex<double> operator()(std::span<const std::complex<double>> z) const {
        std::complex<double> sum = 0;
        for (std::size_t k = 0; k < coefs_.size(); ++k) {
            std::complex<double> v = coefs_[k];
            const std::uint32_t* e = exps_.data() + k * dim_;
            for (std::size_t i = 0; i < dim_; ++i)
                for (std::uint32_t p = 0; p < e[i]; ++p)
                    v *= z[i];
            sum += v;
        }
        return sum;
    }

    /// Coefficients of the polynomial as a univariate one in z_var, the other
    /// coordinates fixed at z. Entry d is the coefficient of z_var^d.
    std::vector<std::complex<double>> univariate(std::size_t var, std::span<const std::complex<double>> z) const {
        std::vector<std::complex<double>> out;
        for (std::size_t k = 0; k < coefs_.size(); ++k) {
            std::complex<double> v = coefs_[k];
            const std::uint32_t* e = exps_.data() + k * dim_;
            for (std::size_t i = 0; i < dim_; ++i)
                if (i != var)
                    for (std::uint32_t p = 0; p < e[i]; ++p)
                        v *= z[i];
            if (out.size() <= e[var])
                out.resize(e[var] + 1);
            out[e[var]] += v;
        }
        return out;
    }

private:
    std::size_t dim_ = 0;
    std::vector<std::complex<double>> coefs_;
    std::vector<std::uint32_t> exps_;
};

class WeightFunction {
public:
    struct LogAbsHol {
        Polynomial g;
        CompiledPolynomial cg;
    };
    struct LogSumSq {
        std::vector<Polynomial> gs;
        std::vector<CompiledPolynomial> cgs;
    };
    struct MonomialMax {
        std::vector<Exponent> gens;
    };
    struct Scaled {
        Rational t;
        double td;
        std::shared_ptr<const WeightFunction> inner;
    };
    struct Shifted {
        double s;
        std::shared_ptr<const WeightFunction> inner;
    };
    using Node = std::variant<LogAbsHol, LogSumSq, MonomialMax, Scaled, Shifted>;

    static WeightFunction log_abs(const Polynomial& g) {
        return WeightFunction(g.dim(), LogAbsHol{g.without_trunc(), CompiledPolynomial(g)});
    }

    static WeightFunction log_sum_sq(const std::vector<Polynomial>& gs) {
        if (gs.empty())
            throw PreconditionError("logsumsq needs at least one polynomial");
        LogSumSq node;
        for (const auto& g : gs) {
            g.check_dim(gs.front().dim());
            node.gs.push_back(g.without_trunc());
            node.cgs.emplace_back(g);
        }
        return WeightFunction(gs.front().dim(), std::move(node));
    }

    static WeightFunction monomial_max(const std::vector<Exponent>& gens) {
        if (gens.empty())
            throw PreconditionError("monomial weight needs at least one generator");
        for (const auto& a : gens)
            gens.front().check_dim(a);
        return WeightFunction(gens.front().dim(), MonomialMax{gens});
    }

    static WeightFunction scaled(const Rational& t, const WeightFunction& inner) {
        if (sgn(t) <= 0)
            throw PreconditionError("scaling factor t must be > 0");
        return WeightFunction(inner.dim(), Scaled{t, t.get_d(), std::make_shared<const WeightFunction>(inner)});
    }

    static WeightFunction shifted(double s, const WeightFunction& inner) {
        if (!std::isfinite(s))
            throw PreconditionError("shift must be finite");
        return WeightFunction(inner.dim(), Shifted{s, std::make_shared<const WeightFunction>(inner)});
    }

    /// phi == 0, written as log|1| + 0.
    static WeightFunction zero(std::size_t n) {
        return shifted(0.0, log_abs(Polynomial::constant(n, Coefficient(1))));
    }

    std::size_t dim() const noexcept { return dim_; }
    const Node& node() const { return *node_; }

    /// phi(z); -inf on the polar set.
    double operator()(std::span<const std::complex<double>> z) const {
        if (z.size() != dim_)
            throw DimensionMismatch(dim_, z.size());
        return eval(z);
    }

    /// Polynomials whose zero sets carry the singularities (log|g| and logsumsq parts).
    std::vector<const CompiledPolynomial*> singular_polynomials() const {
        std::vector<const CompiledPolynomial*> out;
        collect(out);
        return out;
    }

    /// Smallest overall scale factor in front of a log|g| or logsumsq part;
    /// +inf when phi has none. Clipping phi at log eps clips |g| at eps^(1/scale).
    double polynomial_scale() const {
        return std::visit(
            [](const auto& n) -> double {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, LogAbsHol> || std::is_same_v<T, LogSumSq>)
                    return 1.0;
                else if constexpr (std::is_same_v<T, MonomialMax>)
                    return std::numeric_limits<double>::infinity();
                else if constexpr (std::is_same_v<T, Scaled>)
                    return n.td * n.inner->polynomial_scale();
                else
                    return n.inner->polynomial_scale();
            },
            *node_);
    }

    std::string to_string() const {
        return std::visit(
            [](const auto& n) -> std::string {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, LogAbsHol>) {
                    return "log|" + wlct::to_string(n.g) + "|";
                } else if constexpr (std::is_same_v<T, LogSumSq>) {
                    std::string s = "logsumsq(";
                    for (std::size_t j = 0; j < n.gs.size(); ++j)
                        s += (j ? "; " : "") + wlct::to_string(n.gs[j]);
                    return s + ")";
                } else if constexpr (std::is_same_v<T, MonomialMax>) {
                    std::string s = "logmax(";
                    for (std::size_t j = 0; j < n.gens.size(); ++j)
                        s += (j ? "," : "") + n.gens[j].to_string();
                    return s + ")";
                } else if constexpr (std::is_same_v<T, Scaled>) {
                    return wlct::to_string(n.t) + "*(" + n.inner->to_string() + ")";
                } else {
                    char buf[64];
                    std::snprintf(buf, sizeof buf, "%.17g", std::abs(n.s));
                    return "(" + n.inner->to_string() + ")" + (std::signbit(n.s) ? " - " : " + ") + buf;
                }
            },
            *node_);
    }

private:
    WeightFunction(std::size_t dim, Node node) : dim_(dim), node_(std::make_shared<const Node>(std::move(node))) {}

    double eval(std::span<const std::complex<double>> z) const {
        return std::visit(
            [&](const auto& n) -> double {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, LogAbsHol>) {
                    return std::log(std::abs(n.cg(z)));
                } else if constexpr (std::is_same_v<T, LogSumSq>) {
                    double s = 0;
                    for (const auto& g : n.cgs)
                        s += std::norm(g(z));
                    return 0.5 * std::log(s);
                } else if constexpr (std::is_same_v<T, MonomialMax>) {
                    // log domain: tiny |z_i| never underflow to a spurious zero.
                    double best = -std::numeric_limits<double>::infinity();
                    for (const auto& a : n.gens) {
                        double v = 0;
                        for (std::size_t i = 0; i < a.dim(); ++i)
                            if (a[i])
                                v += a[i] * std::log(std::abs(z[i]));
                        best = std::max(best, v);
                    }
                    return best;
                } else if constexpr (std::is_same_v<T, Scaled>) {
                    return n.td * n.inner->eval(z);
                } else {
                    return n.inner->eval(z) + n.s;
                }
            },
            *node_);
    }

    void collect(std::vector<const CompiledPolynomial*>& out) const {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, LogAbsHol>) {
                    out.push_back(&n.cg);
                } else if constexpr (std::is_same_v<T, LogSumSq>) {
                    for (const auto& g : n.cgs)
                        out.push_back(&g);
                } else if constexpr (std::is_same_v<T, Scaled> || std::is_same_v<T, Shifted>) {
                    n.inner->collect(out);
                }
            },
            *node_);
    }

    std::size_t dim_ = 0;
    std::shared_ptr<const Node> node_;
};

} // namespace wlct
