/**
 * @file sampler.hpp
 * @brief Monte Carlo sampling of the polydisc and deterministic log-domain sums.
 *
 * Sample i is a pure function of (seed, i), and sums are reduced over fixed
 * leaves of kLeafSize samples with a fixed pairwise tree, so estimates are
 * bit-identical for any thread count or chunk size.
 */
#pragma once

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "wlct/error.hpp"
#include "wlct/parallel.hpp"
#include "wlct/philox.hpp"
#include "wlct/weight.hpp"

namespace wlct {

enum class SamplerKind { Uniform, PolarImportance };

inline std::string to_string(SamplerKind k) { return k == SamplerKind::Uniform ? "uniform" : "polar-importance"; }

inline SamplerKind parse_sampler_kind(const std::string& s) {
    if (s == "uniform")
        return SamplerKind::Uniform;
    if (s == "polar-importance")
        return SamplerKind::PolarImportance;
    throw PreconditionError("unknown sampler '" + s + "' (uniform | polar-importance)");
}

struct SampleConfig {
    double radius = 0.5;
    std::uint64_t samples = std::uint64_t{1} << 18;
    std::uint64_t seed = 0;
    SamplerKind sampler = SamplerKind::PolarImportance;
    std::uint64_t chunk = std::uint64_t{1} << 14;  ///< samples per scheduled task
    unsigned threads = 0;                           ///< 0: hardware concurrency
    double rho_min = 1e-30;                         ///< inner radius of the log-radial components
    double uniform_weight = 0.5;                    ///< mixture weight of the uniform-disc component

    void validate() const {
        if (!(radius > 0) || !std::isfinite(radius))
            throw PreconditionError("radius must be > 0");
        if (samples < 1)
            throw PreconditionError("samples must be >= 1");
        if (chunk < 1)
            throw PreconditionError("chunk must be >= 1");
        if (!(rho_min > 0) || rho_min >= radius)
            throw PreconditionError("rho_min must lie in (0, radius)");
        if (!(uniform_weight > 0) || uniform_weight > 1)
            throw PreconditionError("uniform_weight must lie in (0, 1]");
    }
};

inline constexpr std::size_t kLeafSize = 1024;

struct IntegralEstimate {
    double mean = 0;
    double std_error = 0;
    double log_mean = -std::numeric_limits<double>::infinity();
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

/**
 * Draws points of the polydisc of radius r with a known density q.
 *
 * Uniform: each coordinate uniform on its disc. PolarImportance: each
 * coordinate follows a mixture of the uniform disc and log-uniform radii
 * around centers (always 0). The pivot coordinate, the first one the
 * singular polynomials depend on, is drawn last and also gets centers at the
 * roots of those polynomials in that variable, so divisors such as
 * z1 + z2/4 are resolved down to rho_min.
 */
class PolydiscSampler {
public:
    PolydiscSampler(std::size_t dim, std::vector<const CompiledPolynomial*> singular, const SampleConfig& cfg)
        : dim_(dim), cfg_(cfg), singular_(std::move(singular)) {
        cfg_.validate();
        if (dim_ == 0)
            throw PreconditionError("dimension must be >= 1");
        rho_max_ = 2 * cfg_.radius;
        log_span_ = std::log(rho_max_ / cfg_.rho_min);
        pivot_ = dim_;
        if (cfg_.sampler == SamplerKind::PolarImportance)
            for (std::size_t i = 0; i < dim_ && pivot_ == dim_; ++i)
                for (const auto* g : singular_)
                    if (g->degree_in(i) > 0)
                        pivot_ = i;
        for (std::size_t i = 0; i < dim_; ++i)
            if (i != pivot_)
                order_.push_back(i);
        if (pivot_ < dim_)
            order_.push_back(pivot_);
        key_ = Philox4x32::key_from_seed(cfg_.seed);
    }

    std::size_t dim() const noexcept { return dim_; }
    const SampleConfig& config() const noexcept { return cfg_; }

    /// Fills z with sample `index`; returns log q(z), or NaN when z falls outside the polydisc.
    double draw(std::uint64_t index, std::complex<double>* z) const {
        double log_q = 0;
        bool inside = true;
        std::vector<std::complex<double>> centers;
        for (std::size_t i : order_) {
            const auto b = Philox4x32::block(
                {static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                 static_cast<std::uint32_t>(i), 0},
                key_);
            const double u_rad = uniform53(b[0], b[1]);
            const double angle = 2 * std::numbers::pi * uniform32(b[2]);
            const double u_comp = uniform32(b[3]);
            const std::complex<double> dir = std::polar(1.0, angle);

            if (cfg_.sampler == SamplerKind::Uniform) {
                z[i] = cfg_.radius * std::sqrt(u_rad) * dir;
                log_q += -std::log(std::numbers::pi * cfg_.radius * cfg_.radius);
                continue;
            }
            centers.assign(1, 0.0);
            if (i == pivot_)
                add_root_centers(i, z, centers);
            const double wu = cfg_.uniform_weight;
            const double wc = (1 - wu) / static_cast<double>(centers.size());
            std::size_t comp = centers.size();  // uniform
            double rho_gen = 0;
            if (u_comp >= wu && wc > 0) {
                comp = std::min(centers.size() - 1, static_cast<std::size_t>((u_comp - wu) / wc));
                rho_gen = cfg_.rho_min * std::exp(u_rad * log_span_);
                z[i] = centers[comp] + rho_gen * dir;
            } else {
                z[i] = cfg_.radius * std::sqrt(u_rad) * dir;
            }
            if (std::abs(z[i]) > cfg_.radius) {
                inside = false;
                continue;
            }
            double q = wu / (std::numbers::pi * cfg_.radius * cfg_.radius);
            for (std::size_t k = 0; k < centers.size(); ++k) {
                const double rho = k == comp ? rho_gen : std::abs(z[i] - centers[k]);
                if (rho >= cfg_.rho_min && rho <= rho_max_)
                    q += wc / (2 * std::numbers::pi * log_span_ * rho * rho);
            }
            log_q += std::log(q);
        }
        return inside ? log_q : std::numeric_limits<double>::quiet_NaN();
    }

private:
    void add_root_centers(std::size_t var, const std::complex<double>* z,
                          std::vector<std::complex<double>>& centers) const {
        const std::span<const std::complex<double>> zs(z, dim_);
        for (const auto* g : singular_) {
            if (g->degree_in(var) == 0)
                continue;
            auto a = g->univariate(var, zs);
            double scale = 0;
            for (const auto& c : a)
                scale = std::max(scale, std::abs(c));
            if (scale == 0)
                continue;
            while (!a.empty() && std::abs(a.back()) <= 1e-14 * scale)
                a.pop_back();
            // Roots at 0 are already a center.
            std::size_t low = 0;
            while (low < a.size() && a[low] == 0.0)
                ++low;
            a.erase(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(low));
            if (a.size() < 2)
                continue;
            const std::size_t d = a.size() - 1;
            auto keep = [&](std::complex<double> r) {
                if (std::isfinite(r.real()) && std::isfinite(r.imag()) && std::abs(r) < 2 * cfg_.radius)
                    centers.push_back(r);
            };
            if (d == 1) {
                keep(-a[0] / a[1]);
                continue;
            }
            Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d),
                                                                static_cast<Eigen::Index>(d));
            for (std::size_t k = 1; k < d; ++k)
                companion(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k - 1)) = 1.0;
            for (std::size_t k = 0; k < d; ++k)
                companion(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(d - 1)) = -a[k] / a[d];
            Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
            for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k)
                keep(solver.eigenvalues()(k));
        }
    }

    std::size_t dim_;
    SampleConfig cfg_;
    std::vector<const CompiledPolynomial*> singular_;
    std::size_t pivot_ = 0;
    std::vector<std::size_t> order_;
    double rho_max_ = 1, log_span_ = 1;
    Philox4x32::Key key_{};
};

namespace detail {

/// Partial log-sum-exp state: sum_k exp(x_k) = exp(m) * s1, sum_k exp(2 x_k) = exp(2 m) * s2.
struct LogSum {
    double m = -std::numeric_limits<double>::infinity();
    double s1 = 0, s2 = 0;

    static LogSum combine(const LogSum& a, const LogSum& b) {
        if (a.m == -std::numeric_limits<double>::infinity())
            return b;
        if (b.m == -std::numeric_limits<double>::infinity())
            return a;
        LogSum r;
        r.m = std::max(a.m, b.m);
        const double fa = std::exp(a.m - r.m), fb = std::exp(b.m - r.m);
        r.s1 = a.s1 * fa + b.s1 * fb;
        r.s2 = a.s2 * fa * fa + b.s2 * fb * fb;
        return r;
    }
};

inline LogSum tree_sum(const std::vector<LogSum>& leaves, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1)
        return leaves[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    return LogSum::combine(tree_sum(leaves, lo, mid), tree_sum(leaves, mid, hi));
}

} // namespace detail

/**
 * Estimates K integrals at once. terms(i, out) writes the log of the
 * importance-weighted integrand of sample i for each output k (-inf for 0).
 */
template <class Terms>
std::vector<IntegralEstimate> reduce_log_terms(std::uint64_t n_samples, std::size_t K, const SampleConfig& cfg,
                                               Terms&& terms) {
    const std::size_t leaves = static_cast<std::size_t>((n_samples + kLeafSize - 1) / kLeafSize);
    const std::size_t leaves_per_task = std::max<std::size_t>(1, static_cast<std::size_t>(cfg.chunk / kLeafSize));
    const std::size_t tasks = (leaves + leaves_per_task - 1) / leaves_per_task;
    std::vector<detail::LogSum> sums(leaves * K);
    parallel_for(tasks, cfg.threads, [&](std::size_t task) {
        std::vector<double> x(kLeafSize * K);
        const std::size_t l_end = std::min(leaves, (task + 1) * leaves_per_task);
        for (std::size_t leaf = task * leaves_per_task; leaf < l_end; ++leaf) {
            const std::uint64_t i0 = leaf * kLeafSize;
            const std::size_t cnt = static_cast<std::size_t>(std::min<std::uint64_t>(kLeafSize, n_samples - i0));
            for (std::size_t s = 0; s < cnt; ++s)
                terms(i0 + s, x.data() + s * K);
            for (std::size_t k = 0; k < K; ++k) {
                detail::LogSum& acc = sums[leaf * K + k];
                for (std::size_t s = 0; s < cnt; ++s)
                    acc.m = std::max(acc.m, x[s * K + k]);
                if (acc.m == -std::numeric_limits<double>::infinity())
                    continue;
                for (std::size_t s = 0; s < cnt; ++s) {
                    const double e = std::exp(x[s * K + k] - acc.m);
                    acc.s1 += e;
                    acc.s2 += e * e;
                }
            }
        }
    });
    std::vector<IntegralEstimate> out(K);
    std::vector<detail::LogSum> column(leaves);
    const double N = static_cast<double>(n_samples);
    for (std::size_t k = 0; k < K; ++k) {
        for (std::size_t leaf = 0; leaf < leaves; ++leaf)
            column[leaf] = sums[leaf * K + k];
        const detail::LogSum t = detail::tree_sum(column, 0, leaves);
        IntegralEstimate& e = out[k];
        e.samples = n_samples;
        e.seed = cfg.seed;
        if (t.m == -std::numeric_limits<double>::infinity())
            continue;
        const double scale = std::exp(t.m);
        const double m1 = t.s1 / N, m2 = t.s2 / N;
        e.mean = scale * m1;
        e.log_mean = t.m + std::log(m1);
        const double var = n_samples > 1 ? std::max(0.0, m2 - m1 * m1) * N / (N - 1) : 0.0;
        e.std_error = scale * std::sqrt(var / N);
    }
    return out;
}

} // namespace wlct
