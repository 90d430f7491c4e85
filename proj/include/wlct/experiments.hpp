/**
 * @file experiments.hpp
 * @brief Reproducible checks of threshold statements on explicit families.
 *
 * Each run returns an ExperimentReport: echoed inputs, one row per checked
 * case (expected value with its source, observed value, tolerance, verdict)
 * and free-form notes. Serialization is deterministic given the inputs and
 * seed; the wall-clock runtime is only written when asked for.
 */
#pragma once

#include <chrono>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wlct/newton_lct.hpp"
#include "wlct/numeric_threshold.hpp"
#include "wlct/weight_io.hpp"

namespace wlct {

/// Where an expected value comes from.
enum class Source {
    Published,   ///< value stated in the literature for this example
    ExactLp,     ///< Newton-polyhedron LP in exact arithmetic
    ScalingLaw,  ///< lct(t phi) = lct(phi) / t applied to an exact value
    Trend,       ///< ordering along a family
    Identity,    ///< holds by construction
};

inline std::string to_string(Source s) {
    switch (s) {
    case Source::Published:
        return "published";
    case Source::ExactLp:
        return "exact-lp";
    case Source::ScalingLaw:
        return "scaling-law";
    case Source::Trend:
        return "trend";
    default:
        return "identity";
    }
}

/// Reals in reports: 6 significant digits.
inline std::string format_real(double x) {
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

struct ExperimentCase {
    ExperimentCase() = default;
    ExperimentCase(std::string parameter_, std::string quantity_, std::string expected_, Source source_,
                   std::string observed_, std::string tolerance_)
        : parameter(std::move(parameter_)), quantity(std::move(quantity_)), expected(std::move(expected_)),
          source(source_), observed(std::move(observed_)), tolerance(std::move(tolerance_)) {}

    std::string parameter;
    std::string quantity;
    std::string expected;
    Source source = Source::Identity;
    std::string observed;
    std::string tolerance;
    bool pass = false;
    bool required = true;     ///< informational rows do not affect the overall verdict
    std::vector<double> data;  ///< raw observed numbers behind `observed`
};

struct ExperimentReport {
    std::string id;
    std::vector<std::pair<std::string, std::string>> inputs;
    std::vector<ExperimentCase> cases;
    std::vector<std::string> notes;
    std::uint64_t seed = 0;
    double runtime_seconds = 0;

    bool pass() const {
        for (const auto& c : cases)
            if (c.required && !c.pass)
                return false;
        return true;
    }

    const ExperimentCase* find(const std::string& parameter, const std::string& quantity) const {
        for (const auto& c : cases)
            if (c.parameter == parameter && c.quantity == quantity)
                return &c;
        return nullptr;
    }

    nlohmann::ordered_json to_json(bool with_runtime = false) const {
        nlohmann::ordered_json j;
        j["experiment"] = id;
        j["seed"] = seed;
        auto& in = j["inputs"] = nlohmann::ordered_json::object();
        for (const auto& [k, v] : inputs)
            in[k] = v;
        auto& rows = j["cases"] = nlohmann::ordered_json::array();
        for (const auto& c : cases)
            rows.push_back(case_json(c));
        j["notes"] = notes;
        j["verdict"] = pass() ? "pass" : "fail";
        if (with_runtime)
            j["runtime_seconds"] = runtime_seconds;
        return j;
    }

    /// One record for the run header, one per case, one summary record.
    std::string to_jsonl(bool with_runtime = false) const {
        std::ostringstream os;
        nlohmann::ordered_json head;
        head["record"] = "experiment";
        head["experiment"] = id;
        head["seed"] = seed;
        head["inputs"] = nlohmann::ordered_json::object();
        for (const auto& [k, v] : inputs)
            head["inputs"][k] = v;
        os << head.dump() << '\n';
        for (const auto& c : cases) {
            nlohmann::ordered_json row;
            row["record"] = "case";
            row.update(case_json(c));
            os << row.dump() << '\n';
        }
        nlohmann::ordered_json tail;
        tail["record"] = "summary";
        tail["notes"] = notes;
        tail["verdict"] = pass() ? "pass" : "fail";
        if (with_runtime)
            tail["runtime_seconds"] = runtime_seconds;
        os << tail.dump() << '\n';
        return os.str();
    }

    std::string to_csv() const {
        std::ostringstream os;
        os << "experiment,parameter,quantity,expected,source,observed,tolerance,required,verdict\n";
        for (const auto& c : cases)
            os << csv(id) << ',' << csv(c.parameter) << ',' << csv(c.quantity) << ',' << csv(c.expected) << ','
               << to_string(c.source) << ',' << csv(c.observed) << ',' << csv(c.tolerance) << ','
               << (c.required ? "yes" : "no") << ',' << (c.pass ? "pass" : "fail") << '\n';
        return os.str();
    }

    std::string to_human(bool with_runtime = false) const {
        std::vector<std::vector<std::string>> rows{
            {"parameter", "quantity", "expected", "source", "observed", "tolerance", "verdict"}};
        for (const auto& c : cases)
            rows.push_back({c.parameter, c.quantity, c.expected, to_string(c.source), c.observed, c.tolerance,
                            std::string(c.pass ? "pass" : "FAIL") + (c.required ? "" : " (info)")});
        std::vector<std::size_t> width(rows.front().size(), 0);
        for (const auto& r : rows)
            for (std::size_t k = 0; k < r.size(); ++k)
                width[k] = std::max(width[k], r[k].size());
        std::ostringstream os;
        os << "experiment " << id << " (seed " << seed << ")\n";
        for (const auto& [k, v] : inputs)
            os << "  " << k << " = " << v << '\n';
        for (const auto& r : rows) {
            for (std::size_t k = 0; k < r.size(); ++k)
                os << (k ? "  " : "") << r[k] << std::string(k + 1 < r.size() ? width[k] - r[k].size() : 0, ' ');
            os << '\n';
        }
        for (const auto& n : notes)
            os << "note: " << n << '\n';
        os << "verdict: " << (pass() ? "pass" : "fail") << '\n';
        if (with_runtime)
            os << "runtime: " << format_real(runtime_seconds) << " s\n";
        return os.str();
    }

private:
    static nlohmann::ordered_json case_json(const ExperimentCase& c) {
        nlohmann::ordered_json j;
        j["parameter"] = c.parameter;
        j["quantity"] = c.quantity;
        j["expected"] = c.expected;
        j["source"] = to_string(c.source);
        j["observed"] = c.observed;
        j["tolerance"] = c.tolerance;
        j["required"] = c.required;
        j["verdict"] = c.pass ? "pass" : "fail";
        return j;
    }

    static std::string csv(const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos)
            return s;
        std::string out = "\"";
        for (char ch : s)
            out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        return out + "\"";
    }
};

struct ExperimentOptions {
    double tol = 0.02;                  ///< bisection tolerance of threshold estimates
    double threshold_tolerance = 0.15;  ///< remark13: interval must sit within expected +- this
    double scaling_tolerance = 0.1;     ///< convergence: |midpoint - exact| bound
    double margin = kDefaultSlopeMargin;
};

namespace detail {

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline void echo_sampling(ExperimentReport& r, const SampleConfig& cfg, const ExperimentOptions& opt) {
    r.seed = cfg.seed;
    r.inputs.emplace_back("samples", std::to_string(cfg.samples));
    r.inputs.emplace_back("radius", format_real(cfg.radius));
    r.inputs.emplace_back("sampler", to_string(cfg.sampler));
    r.inputs.emplace_back("tol", format_real(opt.tol));
    r.inputs.emplace_back("margin", format_real(opt.margin));
}

/// Search window used around an expected threshold e.
inline std::pair<double, double> window(double e) { return {e / 4, 2 * e + 0.5}; }

inline std::string interval(const ThresholdEstimate& t) {
    return t.status == ThresholdStatus::Bracketed ? "[" + format_real(t.c_lo) + ", " + format_real(t.c_hi) + "]"
                                                  : t.to_string();
}

inline std::string estimate_text(const IntegralEstimate& e) {
    return format_real(e.mean) + " +- " + format_real(e.std_error);
}

inline Polynomial monomial_f(const Exponent& beta) {
    return Polynomial::monomial(beta.dim(), Coefficient(1), beta);
}

inline std::string exponents_text(const std::vector<Exponent>& gens) {
    std::string s;
    for (std::size_t j = 0; j < gens.size(); ++j)
        s += (j ? "," : "") + gens[j].to_string();
    return s;
}

} // namespace detail

/**
 * f = z1 with phi = log|z1| (threshold 2) against phi_j = log|z1 + z2/j|
 * (threshold 1 for every j), plus the L1 distance from phi_j to phi, which
 * shrinks like 1/j while the threshold stays put.
 */
inline ExperimentReport run_remark13(const std::vector<std::int64_t>& j_values, const SampleConfig& cfg,
                                     const ExperimentOptions& opt = {}) {
    detail::Stopwatch clock;
    if (j_values.empty())
        throw PreconditionError("remark13 needs at least one j");
    for (auto j : j_values)
        if (j < 1)
            throw PreconditionError("j must be >= 1");
    ExperimentReport r;
    r.id = "remark13";
    std::string js;
    for (auto j : j_values)
        js += (js.empty() ? "" : ",") + std::to_string(j);
    r.inputs.emplace_back("j", js);
    r.inputs.emplace_back("f", "z1");
    detail::echo_sampling(r, cfg, opt);

    const Polynomial f = parse_polynomial("z1", 2);
    const WeightFunction phi = parse_weight("log|z1|", 2);
    std::vector<WeightFunction> family;
    for (auto j : j_values)
        family.push_back(parse_weight("log|z1 + 1/" + std::to_string(j) + "*z2|", 2));

    const std::string tol_text = "+-" + format_real(opt.threshold_tolerance);
    auto threshold_case = [&](const std::string& parameter, const WeightFunction& w, double expected) {
        auto [lo, hi] = detail::window(expected);
        ThresholdOptions topt;
        topt.margin = opt.margin;
        ThresholdEstimate t = estimate_threshold(f, w, lo, hi, opt.tol, cfg, topt);
        ExperimentCase c{parameter, "threshold", format_real(expected), Source::Published, detail::interval(t),
                         tol_text};
        c.pass = t.status == ThresholdStatus::Bracketed && t.c_lo >= expected - opt.threshold_tolerance &&
                 t.c_hi <= expected + opt.threshold_tolerance;
        c.data = {t.c_lo, t.c_hi};
        r.cases.push_back(std::move(c));
    };
    threshold_case("phi=" + phi.to_string(), phi, 2.0);
    for (std::size_t k = 0; k < family.size(); ++k)
        threshold_case("j=" + std::to_string(j_values[k]), family[k], 1.0);

    // Common samples for every distance, so the trend is not sampling noise.
    std::vector<WeightFunction> all{phi};
    all.insert(all.end(), family.begin(), family.end());
    SampleBank bank(Polynomial::constant(2, Coefficient(1)), all, cfg);
    for (std::size_t k = 0; k < family.size(); ++k) {
        IntegralEstimate d = bank.weight_l1(0, k + 1);
        ExperimentCase c{"j=" + std::to_string(j_values[k]), "l1(phi_j, phi)", "-> 0 as j grows", Source::Trend,
                         detail::estimate_text(d), "none"};
        c.required = false;
        c.pass = std::isfinite(d.mean);
        c.data = {d.mean, d.std_error};
        r.cases.push_back(std::move(c));
    }
    r.notes.push_back("phi_j -> phi in L1 while the threshold at the origin stays 1 < 2: without psi <= phi the "
                      "threshold need not converge");
    r.runtime_seconds = clock.seconds();
    return r;
}

/**
 * psi_delta = (1 + delta) phi for a monomial weight phi. Exact path: the LP
 * threshold of the scaled generators equals lct/(1 + delta) and increases
 * strictly as delta decreases. Numeric path: estimated midpoints within
 * scaling_tolerance of those values and nondecreasing up to 2 tol.
 */
inline ExperimentReport run_convergence_from_below(const MonomialWeight& weight, const Exponent& beta,
                                                   const std::vector<Rational>& deltas, const SampleConfig& cfg,
                                                   const ExperimentOptions& opt = {}) {
    detail::Stopwatch clock;
    if (deltas.empty())
        throw PreconditionError("convergence needs at least one delta");
    for (std::size_t k = 0; k < deltas.size(); ++k) {
        if (sgn(deltas[k]) <= 0)
            throw PreconditionError("deltas must be positive");
        if (k && !(deltas[k] < deltas[k - 1]))
            throw PreconditionError("deltas must be strictly decreasing");
    }
    if (beta.dim() != weight.dim())
        throw DimensionMismatch(weight.dim(), beta.dim());

    ExperimentReport r;
    r.id = "convergence";
    r.inputs.emplace_back("weight", weight.to_string());
    r.inputs.emplace_back("beta", beta.to_string());
    std::string ds;
    for (const auto& d : deltas)
        ds += (ds.empty() ? "" : ",") + to_string(d);
    r.inputs.emplace_back("deltas", ds);
    detail::echo_sampling(r, cfg, opt);

    const LctValue base = newton_lct(weight, beta);
    {
        LctScaling unit = lct_scaling(weight, Rational(1), beta);
        ExperimentCase c{"delta=0", "exact threshold", base.to_string(), Source::ExactLp, unit.scaled.to_string(),
                         "exact"};
        c.pass = unit.scaled.infinite == base.infinite && (base.infinite || unit.scaled.value == base.value);
        r.cases.push_back(std::move(c));
    }
    if (base.infinite) {
        r.notes.push_back("threshold is infinite; every scaled weight is integrable, numeric path skipped");
        r.runtime_seconds = clock.seconds();
        return r;
    }

    const Polynomial f = detail::monomial_f(beta);
    const WeightFunction phi = WeightFunction::monomial_max(weight.gens());
    std::optional<Rational> prev_exact;
    std::optional<double> prev_mid;
    const std::string num_tol = "+-" + format_real(opt.scaling_tolerance);
    for (const auto& delta : deltas) {
        const Rational t = 1 + delta;
        const std::string parameter = "delta=" + to_string(delta);
        LctScaling s = lct_scaling(weight, t, beta);
        Rational expected = base.value / t;
        expected.canonicalize();

        ExperimentCase exact{parameter, "exact threshold", to_string(expected), Source::ScalingLaw,
                             s.scaled.to_string(), "exact"};
        exact.pass = !s.scaled.infinite && s.scaled.value == expected && expected < base.value &&
                     (!prev_exact || *prev_exact < expected);
        exact.data = {s.scaled.value.get_d()};
        r.cases.push_back(std::move(exact));
        prev_exact = expected;

        const double e = expected.get_d();
        auto [lo, hi] = detail::window(e);
        ThresholdOptions topt;
        topt.margin = opt.margin;
        ThresholdEstimate est = estimate_threshold(f, WeightFunction::scaled(t, phi), lo, hi, opt.tol, cfg, topt);
        ExperimentCase num{parameter, "estimated threshold", format_real(e), Source::ScalingLaw,
                           detail::interval(est), num_tol};
        num.pass = est.status == ThresholdStatus::Bracketed && std::abs(est.midpoint() - e) <= opt.scaling_tolerance;
        num.data = {est.c_lo, est.c_hi};
        r.cases.push_back(std::move(num));

        if (prev_mid && est.status == ThresholdStatus::Bracketed) {
            ExperimentCase trend{parameter, "midpoint trend", ">= previous", Source::Trend,
                                 format_real(est.midpoint()) + " vs " + format_real(*prev_mid),
                                 "2*tol=" + format_real(2 * opt.tol)};
            trend.pass = est.midpoint() >= *prev_mid - 2 * opt.tol;
            r.cases.push_back(std::move(trend));
        }
        if (est.status == ThresholdStatus::Bracketed)
            prev_mid = est.midpoint();
    }
    r.notes.push_back("psi_delta = (1+delta) phi satisfies psi_delta <= phi on the unit polydisc");
    r.runtime_seconds = clock.seconds();
    return r;
}

/**
 * Family psi_k approaching phi, with f = 1 and a fixed c below the threshold
 * of phi. Members are ordered by decreasing L1 distance to phi. Required:
 * the exponential L1 distance decreases strictly along that order and the
 * closest member gets a "no divergence" verdict. The empirical delta is the
 * distance from which on every closer member has that verdict.
 */
inline ExperimentReport run_semicontinuity(const WeightFunction& phi, const std::vector<WeightFunction>& family,
                                           double c, const SampleConfig& cfg, const ExperimentOptions& opt = {}) {
    detail::Stopwatch clock;
    if (family.empty())
        throw PreconditionError("semicontinuity needs a nonempty family");
    detail::check_c(c);
    ExperimentReport r;
    r.id = "semicontinuity";
    r.inputs.emplace_back("phi", phi.to_string());
    for (std::size_t k = 0; k < family.size(); ++k)
        r.inputs.emplace_back("psi" + std::to_string(k + 1), family[k].to_string());
    r.inputs.emplace_back("c", format_real(c));
    r.inputs.emplace_back("clip", format_real(kDefaultL1Clip));
    detail::echo_sampling(r, cfg, opt);

    std::vector<WeightFunction> all{phi};
    all.insert(all.end(), family.begin(), family.end());
    SampleBank bank(Polynomial::constant(phi.dim(), Coefficient(1)), all, cfg);
    auto verdict_of = [&](std::size_t w) {
        return classify(bank.slope(w, c, default_ladder(all[w])).increment_slope, opt.margin);
    };
    const Verdict own = verdict_of(0);
    if (own == Verdict::Diverges)
        throw PreconditionError("c=" + format_real(c) + " is not below the threshold of phi (divergence detected)");
    {
        ExperimentCase base{"phi", "verdict", to_string(Verdict::Converges), Source::Identity, to_string(own), "none"};
        base.pass = own == Verdict::Converges;
        base.required = false;
        r.cases.push_back(std::move(base));
    }

    struct Member {
        std::size_t index;
        IntegralEstimate distance;
    };
    std::vector<Member> members;
    for (std::size_t k = 0; k < family.size(); ++k)
        members.push_back({k + 1, bank.weight_l1(0, k + 1)});
    std::stable_sort(members.begin(), members.end(),
                     [](const Member& a, const Member& b) { return a.distance.mean > b.distance.mean; });

    std::vector<Verdict> verdicts;
    for (const auto& m : members)
        verdicts.push_back(verdict_of(m.index));
    std::size_t tail = members.size();
    while (tail > 0 && verdicts[tail - 1] == Verdict::Converges)
        --tail;

    std::optional<double> prev;
    for (std::size_t k = 0; k < members.size(); ++k) {
        const auto& m = members[k];
        const std::string parameter = "psi" + std::to_string(m.index);
        ExperimentCase dist{parameter, "l1(psi, phi)", "decreasing", Source::Trend,
                            detail::estimate_text(m.distance), "none"};
        dist.pass = std::isfinite(m.distance.mean);
        dist.required = false;
        dist.data = {m.distance.mean, m.distance.std_error};
        r.cases.push_back(std::move(dist));

        ExperimentCase v{parameter, "verdict", to_string(Verdict::Converges), Source::Trend, to_string(verdicts[k]),
                         "margin " + format_real(opt.margin)};
        v.pass = verdicts[k] == Verdict::Converges;
        v.required = k + 1 == members.size();
        v.data = {static_cast<double>(static_cast<int>(verdicts[k]))};
        r.cases.push_back(std::move(v));

        IntegralEstimate e = bank.l1(0, m.index, c, kDefaultL1Clip);
        const bool same = m.distance.mean == 0;
        ExperimentCase ex{parameter, "l1(exp)", same ? "0" : "< previous", same ? Source::Identity : Source::Trend,
                          detail::estimate_text(e), "strict"};
        ex.pass = same ? e.mean == 0 && verdicts[k] == own : std::isfinite(e.mean) && (!prev || e.mean < *prev);
        ex.data = {e.mean, e.std_error};
        r.cases.push_back(std::move(ex));
        prev = e.mean;
    }
    if (tail < members.size())
        r.notes.push_back("empirical delta: every member with l1(psi, phi) <= " +
                          format_real(members[tail].distance.mean) + " has no divergence at c");
    else
        r.notes.push_back("empirical delta: no member reached a no-divergence verdict");
    r.notes.push_back("all members share one sample bank (common random numbers)");
    r.runtime_seconds = clock.seconds();
    return r;
}

/**
 * Openness of {c : z^beta e^{-c phi} is L2} for a monomial weight: below c*
 * the numeric verdict is "no divergence" and an exact witness eps exists;
 * above c* the verdict is "divergence"; c = c* itself is excluded.
 */
inline ExperimentReport run_strong_openness(const MonomialWeight& weight, const Exponent& beta,
                                            const SampleConfig& cfg, const ExperimentOptions& opt = {}) {
    detail::Stopwatch clock;
    if (beta.dim() != weight.dim())
        throw DimensionMismatch(weight.dim(), beta.dim());
    ExperimentReport r;
    r.id = "openness";
    r.inputs.emplace_back("weight", weight.to_string());
    r.inputs.emplace_back("beta", beta.to_string());
    detail::echo_sampling(r, cfg, opt);

    const LctValue star = newton_lct(weight, beta);
    {
        ExperimentCase c{"c*", "exact threshold", star.to_string(), Source::ExactLp, star.to_string(), "exact"};
        c.pass = true;
        c.required = false;
        r.cases.push_back(std::move(c));
    }
    if (star.infinite) {
        ExperimentCase c{"c*", "interval", "(0,inf)", Source::ExactLp, "(0,inf)", "exact"};
        c.pass = true;
        r.cases.push_back(std::move(c));
        r.notes.push_back("interval is (0,inf); upper probes skipped");
        r.runtime_seconds = clock.seconds();
        return r;
    }

    ThresholdEstimator est(detail::monomial_f(beta), WeightFunction::monomial_max(weight.gens()), cfg);
    const auto ladder = default_ladder(WeightFunction::monomial_max(weight.gens()));
    auto numeric = [&](const Rational& c) { return classify(est.divergence_slope(c.get_d(), ladder).increment_slope, opt.margin); };

    for (const Rational& h : {Rational(1, 5), Rational(1, 10)}) {
        Rational c = (1 - h) * star.value;
        c.canonicalize();
        const std::string parameter = "c=" + to_string(c);
        Verdict v = numeric(c);
        ExperimentCase nv{parameter, "verdict", to_string(Verdict::Converges), Source::ExactLp, to_string(v),
                          "margin " + format_real(opt.margin)};
        nv.pass = v == Verdict::Converges;
        r.cases.push_back(std::move(nv));

        std::optional<Rational> eps = openness_witness(weight, beta, c);
        ExperimentCase w{parameter, "witness eps", "lct > (1+eps) c", Source::ExactLp,
                         eps ? to_string(*eps) : "none", "exact"};
        w.pass = eps && sgn(*eps) > 0 && star.value > (1 + *eps) * c;
        r.cases.push_back(std::move(w));
    }
    {
        const std::string parameter = "c=" + star.to_string();
        const bool member = openness_witness(weight, beta, star.value).has_value();
        ExperimentCase b{parameter, "membership", "not a member", Source::Identity,
                         member ? "member" : "not a member", "exact"};
        b.pass = !member;
        r.cases.push_back(std::move(b));
    }
    for (const Rational& h : {Rational(1, 10), Rational(1, 5)}) {
        Rational c = (1 + h) * star.value;
        c.canonicalize();
        const std::string parameter = "c=" + to_string(c);
        Verdict v = numeric(c);
        ExperimentCase nv{parameter, "verdict", to_string(Verdict::Diverges), Source::ExactLp, to_string(v),
                          "margin " + format_real(opt.margin)};
        nv.pass = v == Verdict::Diverges;
        r.cases.push_back(std::move(nv));
    }
    r.notes.push_back("interval of integrability is (0, " + star.to_string() + "), open at the top");
    r.runtime_seconds = clock.seconds();
    return r;
}

/// Sampling settings read from a config object; "seed" is required.
inline SampleConfig sample_config_from_json(const nlohmann::json& j, SampleConfig cfg = {}) {
    if (!j.contains("seed"))
        throw PreconditionError("config needs an explicit seed");
    cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("samples"))
        cfg.samples = j.at("samples").get<std::uint64_t>();
    if (j.contains("radius"))
        cfg.radius = j.at("radius").get<double>();
    if (j.contains("threads"))
        cfg.threads = j.at("threads").get<unsigned>();
    if (j.contains("chunk"))
        cfg.chunk = j.at("chunk").get<std::uint64_t>();
    if (j.contains("sampler"))
        cfg.sampler = parse_sampler_kind(j.at("sampler").get<std::string>());
    cfg.validate();
    return cfg;
}

namespace detail {

/// Accepts "p/q" strings and JSON numbers; numbers are read from their decimal text.
inline Rational json_rational(const nlohmann::json& v) {
    return parse_rational(v.is_string() ? v.get<std::string>() : v.dump());
}

} // namespace detail

/**
 * Runs an experiment described by a config object:
 *
 *     {"experiment": "remark13", "j": [4, 32], "seed": 7, "samples": 1048576}
 *     {"experiment": "convergence", "weight": "(1,0)", "beta": "(1,0)", "deltas": ["2/5", "1/5"], ...}
 *     {"experiment": "semicontinuity", "phi": "log|z1|", "family": ["log|z1 + 1/2*z2|"], "c": 0.9, ...}
 *     {"experiment": "openness", "weight": "(2,0),(0,3)", "beta": "(0,0)", ...}
 *
 * Optional keys "tol", "threshold_tolerance", "scaling_tolerance", "margin"
 * override ExperimentOptions.
 */
inline ExperimentReport run_experiment(const nlohmann::json& j, const SampleConfig& defaults = {}) {
    if (!j.is_object() || !j.contains("experiment"))
        throw PreconditionError("config needs an \"experiment\" key");
    const std::string id = j.at("experiment").get<std::string>();
    const SampleConfig cfg = sample_config_from_json(j, defaults);
    ExperimentOptions opt;
    opt.tol = j.value("tol", opt.tol);
    opt.threshold_tolerance = j.value("threshold_tolerance", opt.threshold_tolerance);
    opt.scaling_tolerance = j.value("scaling_tolerance", opt.scaling_tolerance);
    opt.margin = j.value("margin", opt.margin);

    auto weight = [&](const char* key) { return MonomialWeight(parse_exponent_list(j.at(key).get<std::string>())); };
    if (id == "remark13") {
        return run_remark13(j.value("j", std::vector<std::int64_t>{4, 32}), cfg, opt);
    }
    if (id == "convergence") {
        MonomialWeight w = weight("weight");
        Exponent beta = j.contains("beta") ? parse_exponent(j.at("beta").get<std::string>()) : Exponent(w.dim());
        std::vector<Rational> deltas{Rational(2, 5), Rational(1, 5), Rational(1, 10), Rational(1, 20)};
        if (j.contains("deltas")) {
            deltas.clear();
            for (const auto& d : j.at("deltas"))
                deltas.push_back(detail::json_rational(d));
        }
        return run_convergence_from_below(w, beta, deltas, cfg, opt);
    }
    if (id == "semicontinuity") {
        const std::size_t n = j.value("n", std::size_t{0});
        std::size_t dim = n;
        if (dim == 0) {
            dim = detail::WeightParser::infer_dim(j.at("phi").get<std::string>());
            for (const auto& s : j.at("family"))
                dim = std::max(dim, detail::WeightParser::infer_dim(s.get<std::string>()));
        }
        WeightFunction phi = parse_weight(j.at("phi").get<std::string>(), dim);
        std::vector<WeightFunction> family;
        for (const auto& s : j.at("family"))
            family.push_back(parse_weight(s.get<std::string>(), dim));
        return run_semicontinuity(phi, family, j.at("c").get<double>(), cfg, opt);
    }
    if (id == "openness") {
        MonomialWeight w = weight("weight");
        Exponent beta = j.contains("beta") ? parse_exponent(j.at("beta").get<std::string>()) : Exponent(w.dim());
        return run_strong_openness(w, beta, cfg, opt);
    }
    throw PreconditionError("unknown experiment '" + id + "' (remark13, convergence, semicontinuity, openness)");
}

} // namespace wlct
