/**
 * @file numeric_threshold.hpp
 * @brief Numerical weighted thresholds from clipped singular integrals.
 *
 * The clipped integral
 *
 *     I(c, eps) = int_{polydisc} |f|^2 exp(-2c max(phi, log eps)) dV
 *
 * is finite for every eps > 0. When |f|^2 e^{-2c phi} is integrable it stays
 * bounded as eps -> 0; past the threshold it grows like a power of 1/eps.
 *
 * Over a ladder of clip levels two slopes against log(1/eps) are fitted: the
 * slope of log I itself, and the slope of log of the increments
 * I(eps_{k+1}) - I(eps_k). The bounded part of I cancels in the increments, so
 * their slope behaves like the exponent 2(c - c_th)/a of the divergent part
 * and changes sign at the threshold. Divergence is declared when the
 * increment slope reaches +margin, convergence when it is at most -margin.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "wlct/sampler.hpp"
#include "wlct/weight.hpp"

namespace wlct {

/// eps_m = 2^-m for m = 10, 13, ..., 40.
inline std::vector<double> default_ladder() {
    std::vector<double> out;
    for (int m = 10; m <= 40; m += 3)
        out.push_back(std::ldexp(1.0, -m));
    return out;
}

/**
 * Ladder adapted to phi. With phi = t log|g| and t < 1 the exponents are
 * scaled by t, so |g| is never clipped below 2^-40: deeper levels sit under
 * the binary64 cancellation floor of g and measure rounding noise.
 */
inline std::vector<double> default_ladder(const WeightFunction& phi) {
    const double s = std::min(1.0, phi.polynomial_scale());
    std::vector<double> out;
    for (int m = 10; m <= 40; m += 3)
        out.push_back(std::exp2(-m * s));
    return out;
}

inline constexpr double kDefaultSlopeMargin = 0.02;
/// Clip level used by l1_distance unless the caller picks one.
inline constexpr double kDefaultL1Clip = 0x1.0p-40;

struct SlopeFit {
    std::vector<double> ladder;
    std::vector<double> log_values;
    std::vector<double> std_errors;
    double slope = 0;
    double intercept = 0;
    double residual = 0;  ///< RMS deviation of log I from the fitted line
    std::vector<double> increment_log_values;  ///< log(I(eps_{k+1}) - I(eps_k)), -inf when empty
    double increment_slope = 0;                ///< -inf when the deep increments vanish
};

enum class Verdict { Converges = -1, Indeterminate = 0, Diverges = 1 };

inline std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Converges:
        return "no divergence";
    case Verdict::Diverges:
        return "divergence";
    default:
        return "indeterminate";
    }
}

/// Three-way verdict from an increment slope.
inline Verdict classify(double increment_slope, double margin = kDefaultSlopeMargin) {
    return increment_slope >= margin    ? Verdict::Diverges
           : increment_slope <= -margin ? Verdict::Converges
                                        : Verdict::Indeterminate;
}

struct SlopeProbe {
    double c = 0;
    double slope = 0;
    double increment_slope = 0;
    double residual = 0;
    Verdict verdict = Verdict::Indeterminate;
};

enum class ThresholdStatus { Bracketed, NoDivergence, DivergentAtMin };

struct ThresholdEstimate {
    ThresholdStatus status = ThresholdStatus::Bracketed;
    double c_lo = 0;
    double c_hi = 0;
    std::vector<SlopeProbe> probes;  ///< every c examined, in evaluation order

    double midpoint() const { return 0.5 * (c_lo + c_hi); }

    std::string to_string() const {
        std::ostringstream os;
        os.precision(6);
        switch (status) {
        case ThresholdStatus::Bracketed:
            os << "[" << c_lo << ", " << c_hi << "]";
            break;
        case ThresholdStatus::NoDivergence:
            os << "no divergence detected up to c_max=" << c_lo;
            break;
        case ThresholdStatus::DivergentAtMin:
            os << "divergent already at c_min=" << c_hi;
            break;
        }
        return os.str();
    }
};

struct ThresholdOptions {
    std::vector<double> ladder;  ///< empty: default_ladder(phi)
    double margin = kDefaultSlopeMargin;
    std::size_t grid = 8;  ///< coarse scan intervals before bisection
};

namespace detail {

inline void check_c(double c) {
    if (!(c >= 0) || !std::isfinite(c))
        throw PreconditionError("c must be a finite value >= 0");
}

inline void check_clip(double eps) {
    if (!(eps > 0) || eps > 1)
        throw PreconditionError("clip level must lie in (0, 1]");
}

inline void check_ladder(const std::vector<double>& ladder) {
    if (ladder.size() < 3)
        throw PreconditionError("ladder needs at least 3 clip levels");
    for (std::size_t k = 0; k < ladder.size(); ++k) {
        check_clip(ladder[k]);
        if (k && !(ladder[k] < ladder[k - 1]))
            throw PreconditionError("ladder must be strictly decreasing");
    }
}

/// max(phi, log eps) with the clip applied to -inf as well.
inline double clip(double phi, double log_eps) { return phi > log_eps ? phi : log_eps; }

inline SlopeFit fit_slope(const std::vector<double>& ladder, const std::vector<IntegralEstimate>& est,
                          const std::vector<IntegralEstimate>& inc) {
    SlopeFit fit;
    fit.ladder = ladder;
    const std::size_t m = ladder.size();
    double sx = 0, sy = 0;
    for (std::size_t k = 0; k < m; ++k) {
        if (!std::isfinite(est[k].log_mean))
            throw DiagnosticFailure("clipped integral vanishes; slope undefined");
        fit.log_values.push_back(est[k].log_mean);
        fit.std_errors.push_back(est[k].std_error);
        sx += -std::log(ladder[k]);
        sy += est[k].log_mean;
    }
    const double mx = sx / static_cast<double>(m), my = sy / static_cast<double>(m);
    double sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < m; ++k) {
        const double dx = -std::log(ladder[k]) - mx;
        sxx += dx * dx;
        sxy += dx * (fit.log_values[k] - my);
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double rss = 0;
    for (std::size_t k = 0; k < m; ++k) {
        const double r = fit.log_values[k] - (fit.intercept + fit.slope * -std::log(ladder[k]));
        rss += r * r;
    }
    fit.residual = std::sqrt(rss / static_cast<double>(m));

    // Increment k sits between ladder points k and k+1.
    double ix = 0, iy = 0, n_inc = 0;
    std::vector<double> xs;
    for (std::size_t k = 0; k + 1 < m; ++k) {
        fit.increment_log_values.push_back(inc[k].log_mean);
        xs.push_back(-0.5 * (std::log(ladder[k]) + std::log(ladder[k + 1])));
        if (std::isfinite(inc[k].log_mean)) {
            ix += xs.back();
            iy += inc[k].log_mean;
            ++n_inc;
        }
    }
    // Vanishing deepest increments mean the clip stopped mattering: no divergence.
    if (n_inc < 2 || !std::isfinite(fit.increment_log_values.back())) {
        fit.increment_slope = -std::numeric_limits<double>::infinity();
        return fit;
    }
    double ixx = 0, ixy = 0;
    for (std::size_t k = 0; k + 1 < m; ++k) {
        if (!std::isfinite(inc[k].log_mean))
            continue;
        const double dx = xs[k] - ix / n_inc;
        ixx += dx * dx;
        ixy += dx * (inc[k].log_mean - iy / n_inc);
    }
    fit.increment_slope = ixy / ixx;
    return fit;
}

} // namespace detail

/**
 * Sample bank for a fixed (f, weights, SampleConfig): per sample the log of
 * |f|^2 / q and each weight value. Any (c, eps) is then a reweighting of the
 * same points, which gives common random numbers across clip levels, c values
 * and weights.
 */
class SampleBank {
public:
    SampleBank(const Polynomial& f, const std::vector<WeightFunction>& weights, const SampleConfig& cfg)
        : cfg_(cfg), n_(cfg.samples) {
        cfg.validate();
        if (weights.empty())
            throw PreconditionError("at least one weight is required");
        const std::size_t dim = weights.front().dim();
        f.check_dim(dim);
        std::vector<const CompiledPolynomial*> singular;
        for (const auto& w : weights) {
            if (w.dim() != dim)
                throw DimensionMismatch(dim, w.dim());
            for (const auto* g : w.singular_polynomials())
                singular.push_back(g);
        }
        PolydiscSampler sampler(dim, singular, cfg);
        const CompiledPolynomial cf(f);
        log_w_.resize(n_);
        phi_.assign(weights.size(), std::vector<double>(n_));
        const std::uint64_t tasks = (n_ + cfg.chunk - 1) / cfg.chunk;
        parallel_for(static_cast<std::size_t>(tasks), cfg.threads, [&](std::size_t task) {
            std::vector<std::complex<double>> z(dim);
            const std::uint64_t end = std::min<std::uint64_t>(n_, (task + 1) * cfg.chunk);
            for (std::uint64_t i = task * cfg.chunk; i < end; ++i) {
                const double log_q = sampler.draw(i, z.data());
                if (std::isnan(log_q)) {
                    log_w_[i] = -std::numeric_limits<double>::infinity();
                    for (auto& p : phi_)
                        p[i] = 0;
                    continue;
                }
                log_w_[i] = std::log(std::norm(cf(z))) - log_q;
                for (std::size_t w = 0; w < weights.size(); ++w) {
                    const double v = weights[w](z);
                    if (std::isnan(v) || v == std::numeric_limits<double>::infinity())
                        throw PreconditionError("weight is not evaluable at a sample point");
                    phi_[w][i] = v;
                }
            }
        });
    }

    const SampleConfig& config() const noexcept { return cfg_; }
    std::size_t weights() const noexcept { return phi_.size(); }

    /// Clipped integrals of weight w at c for each clip level.
    std::vector<IntegralEstimate> clipped(std::size_t w, double c, const std::vector<double>& eps) const {
        return scan(w, c, eps, false);
    }

    IntegralEstimate clipped(std::size_t w, double c, double eps) const { return clipped(w, c, std::vector{eps}).front(); }

    /**
     * One pass over the samples: the clipped integrals at every level
     * (entries 0..K-1) followed by the increments I(eps_{k+1}) - I(eps_k)
     * along the decreasing ladder (entries K..2K-2).
     */
    std::vector<IntegralEstimate> ladder_scan(std::size_t w, double c, const std::vector<double>& eps) const {
        return scan(w, c, eps, true);
    }

    SlopeFit slope(std::size_t w, double c, const std::vector<double>& ladder) const {
        detail::check_ladder(ladder);
        auto all = ladder_scan(w, c, ladder);
        const auto K = static_cast<std::ptrdiff_t>(ladder.size());
        return detail::fit_slope(ladder, {all.begin(), all.begin() + K}, {all.begin() + K, all.end()});
    }

    /**
     * int |phi_a - phi_b| |f|^2 dV. Samples drawn next to a root can round onto
     * the polar set; weights are floored at log(denorm_min) so such points
     * contribute a bounded amount instead of inf.
     */
    IntegralEstimate weight_l1(std::size_t a, std::size_t b) const {
        const auto& pa = phi_.at(a);
        const auto& pb = phi_.at(b);
        const double floor = std::log(std::numeric_limits<double>::denorm_min());
        return reduce_log_terms(n_, 1, cfg_,
                                [&](std::uint64_t i, double* out) {
                                    const double d = std::abs(std::max(pa[i], floor) - std::max(pb[i], floor));
                                    out[0] = log_w_[i] + std::log(d);
                                })
            .front();
    }

    /// int |exp(-2c max(phi_b, log eps)) - exp(-2c max(phi_a, log eps))| |f|^2 dV.
    IntegralEstimate l1(std::size_t a, std::size_t b, double c, double eps) const {
        detail::check_c(c);
        detail::check_clip(eps);
        const double le = std::log(eps);
        const auto& pa = phi_.at(a);
        const auto& pb = phi_.at(b);
        return reduce_log_terms(n_, 1, cfg_,
                                [&](std::uint64_t i, double* out) {
                                    const double x = -2 * c * detail::clip(pa[i], le);
                                    const double y = -2 * c * detail::clip(pb[i], le);
                                    const double hi = std::max(x, y), gap = std::abs(x - y);
                                    out[0] = gap == 0 ? -std::numeric_limits<double>::infinity()
                                                      : log_w_[i] + hi + std::log1p(-std::exp(-gap));
                                })
            .front();
    }

private:
    std::vector<IntegralEstimate> scan(std::size_t w, double c, const std::vector<double>& eps,
                                       bool with_increments) const {
        detail::check_c(c);
        std::vector<double> log_eps;
        for (double e : eps) {
            detail::check_clip(e);
            log_eps.push_back(std::log(e));
        }
        const std::size_t K = log_eps.size();
        const std::size_t outputs = with_increments ? 2 * K - 1 : K;
        const auto& phi = phi_.at(w);
        constexpr double kNegInf = -std::numeric_limits<double>::infinity();
        return reduce_log_terms(n_, outputs, cfg_, [&](std::uint64_t i, double* out) {
            for (std::size_t k = 0; k < K; ++k)
                out[k] = log_w_[i] - 2 * c * detail::clip(phi[i], log_eps[k]);
            if (!with_increments)
                return;
            for (std::size_t k = 0; k + 1 < K; ++k) {
                // Nonzero only where phi < log eps_k.
                if (!(phi[i] < log_eps[k]) || c == 0) {
                    out[K + k] = kNegInf;
                    continue;
                }
                const double a = -2 * c * detail::clip(phi[i], log_eps[k + 1]);
                const double b = -2 * c * log_eps[k];
                out[K + k] = log_w_[i] + a + std::log1p(-std::exp(b - a));
            }
        });
    }

    SampleConfig cfg_;
    std::uint64_t n_;
    std::vector<double> log_w_;
    std::vector<std::vector<double>> phi_;
};

/// Reusable estimator for one (f, phi): the sample bank is drawn once.
class ThresholdEstimator {
public:
    ThresholdEstimator(const Polynomial& f, const WeightFunction& phi, const SampleConfig& cfg)
        : bank_(f, {phi}, cfg), phi_(phi) {
        if (f.is_zero())
            throw PreconditionError("f must be nonzero");
    }

    IntegralEstimate clipped_integral(double c, double eps) const { return bank_.clipped(0, c, eps); }

    SlopeFit divergence_slope(double c, const std::vector<double>& ladder) const { return bank_.slope(0, c, ladder); }

    /**
     * Three-way verdicts (increment slope >= margin diverges, <= -margin
     * converges, otherwise indeterminate) on a coarse grid over
     * [c_min, c_max], then bisection of both edges of the indeterminate band
     * to within tol. The result brackets the sign change of the increment
     * slope. Grid verdicts must be monotone in c; otherwise DiagnosticFailure.
     */
    ThresholdEstimate estimate(double c_min, double c_max, double tol, const ThresholdOptions& opt = {}) const {
        detail::check_c(c_min);
        detail::check_c(c_max);
        if (!(c_min < c_max))
            throw PreconditionError("c_min must be < c_max");
        if (!(tol > 0))
            throw PreconditionError("tol must be > 0");
        if (opt.grid < 1)
            throw PreconditionError("grid must be >= 1");
        if (!(opt.margin > 0))
            throw PreconditionError("margin must be > 0");
        const std::vector<double> ladder = opt.ladder.empty() ? default_ladder(phi_) : opt.ladder;
        detail::check_ladder(ladder);
        ThresholdEstimate out;
        std::map<double, Verdict> seen;  // both bisections start from the same grid cell
        auto probe = [&](double c) {
            if (auto it = seen.find(c); it != seen.end())
                return it->second;
            SlopeFit fit = divergence_slope(c, ladder);
            Verdict v = classify(fit.increment_slope, opt.margin);
            out.probes.push_back({c, fit.slope, fit.increment_slope, fit.residual, v});
            seen.emplace(c, v);
            return v;
        };
        std::vector<double> grid;
        for (std::size_t k = 0; k <= opt.grid; ++k)
            grid.push_back(c_min + (c_max - c_min) * static_cast<double>(k) / static_cast<double>(opt.grid));
        std::vector<Verdict> verdict;
        for (double c : grid)
            verdict.push_back(probe(c));
        for (std::size_t k = 1; k < verdict.size(); ++k)
            if (verdict[k - 1] > verdict[k]) {
                std::ostringstream os;
                os << "non-monotone divergence verdicts: " << to_string(verdict[k - 1]) << " at c=" << grid[k - 1]
                   << " but " << to_string(verdict[k]) << " at c=" << grid[k];
                throw DiagnosticFailure(os.str());
            }
        if (verdict.back() != Verdict::Diverges) {
            out.status = ThresholdStatus::NoDivergence;
            out.c_lo = c_max;
            out.c_hi = std::numeric_limits<double>::infinity();
            return out;
        }
        if (verdict.front() == Verdict::Diverges) {
            out.status = ThresholdStatus::DivergentAtMin;
            out.c_lo = 0;
            out.c_hi = c_min;
            return out;
        }
        // Smallest c in [lo, hi] where pred holds, pred(lo) false and pred(hi) true.
        auto bisect = [&](double lo, double hi, auto pred) {
            while (hi - lo > tol) {
                const double mid = 0.5 * (lo + hi);
                (pred(probe(mid)) ? hi : lo) = mid;
            }
            return std::pair{lo, hi};
        };
        std::size_t k = 1;
        while (verdict[k] != Verdict::Diverges)
            ++k;
        out.c_hi = bisect(grid[k - 1], grid[k], [](Verdict v) { return v == Verdict::Diverges; }).second;
        if (verdict.front() == Verdict::Converges) {
            std::size_t j = 1;
            while (verdict[j] == Verdict::Converges)
                ++j;
            out.c_lo = bisect(grid[j - 1], grid[j], [](Verdict v) { return v != Verdict::Converges; }).first;
        } else {
            out.c_lo = c_min;
        }
        return out;
    }

private:
    SampleBank bank_;
    WeightFunction phi_;
};

inline IntegralEstimate clipped_integral(const Polynomial& f, const WeightFunction& phi, double c, double eps,
                                         const SampleConfig& cfg) {
    detail::check_c(c);
    detail::check_clip(eps);
    return SampleBank(f, {phi}, cfg).clipped(0, c, eps);
}

inline SlopeFit divergence_slope(const Polynomial& f, const WeightFunction& phi, double c,
                                 const std::vector<double>& ladder, const SampleConfig& cfg) {
    detail::check_c(c);
    detail::check_ladder(ladder);
    return ThresholdEstimator(f, phi, cfg).divergence_slope(c, ladder);
}

inline ThresholdEstimate estimate_threshold(const Polynomial& f, const WeightFunction& phi, double c_min,
                                            double c_max, double tol, const SampleConfig& cfg,
                                            const ThresholdOptions& opt = {}) {
    return ThresholdEstimator(f, phi, cfg).estimate(c_min, c_max, tol, opt);
}

inline IntegralEstimate l1_distance(const WeightFunction& phi, const WeightFunction& psi, double c,
                                    const SampleConfig& cfg, double eps = kDefaultL1Clip) {
    detail::check_c(c);
    detail::check_clip(eps);
    const Polynomial one = Polynomial::constant(phi.dim(), Coefficient(1));
    return SampleBank(one, {phi, psi}, cfg).l1(0, 1, c, eps);
}

/// int_{polydisc} |phi - psi| dV.
inline IntegralEstimate weight_l1_distance(const WeightFunction& phi, const WeightFunction& psi,
                                           const SampleConfig& cfg) {
    const Polynomial one = Polynomial::constant(phi.dim(), Coefficient(1));
    return SampleBank(one, {phi, psi}, cfg).weight_l1(0, 1);
}

} // namespace wlct
