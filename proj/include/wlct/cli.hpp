/**
 * @file cli.hpp
 * @brief Command dispatch for the `wlct` tool.
 *
 * run_cli parses an argument vector, routes it to the owning module and
 * writes the result in the requested format. Exit codes: 0 success,
 * 1 precondition or diagnostic failure, 2 usage error.
 */
#pragma once

#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wlct/experiments.hpp"
#include "wlct/hironaka.hpp"
#include "wlct/newton_lct.hpp"
#include "wlct/numeric_threshold.hpp"
#include "wlct/weight_io.hpp"

namespace wlct {

namespace cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Malformed invocation detected after CLI11 parsing succeeded.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string verb;
    // global
    std::size_t n = 0;
    std::int64_t D = static_cast<std::int64_t>(kDefaultTruncation);
    std::optional<std::uint64_t> seed;
    std::uint64_t samples = std::uint64_t{1} << 18;
    double radius = 0.5;
    unsigned threads = 0;
    std::string format = "human";
    std::string sampler = "polar-importance";
    std::string config;
    // verb arguments
    std::vector<std::string> positional;
    std::string weight;
    std::string beta;
    std::string c_text;
    std::string f = "1";
    std::string phi;
    std::string psi;
    std::optional<double> eps;
    double c_min = 0.1;
    double c_max = 4.0;
    double tol = 0.02;
    double margin = kDefaultSlopeMargin;
    std::optional<double> threshold_tolerance;
    std::optional<double> scaling_tolerance;
    std::string experiment;
    std::vector<std::int64_t> j_values;
    std::vector<std::string> deltas;
    std::vector<std::string> family;
};

/// Result of a verb: human text plus structured records for csv / jsonl.
struct Output {
    Output() = default;
    Output(std::string text, std::vector<nlohmann::ordered_json> recs)
        : human(std::move(text)), records(std::move(recs)) {}

    std::string human;
    std::vector<nlohmann::ordered_json> records;
    int exit_code = kExitOk;
    std::optional<ExperimentReport> report;
};

inline nlohmann::ordered_json real(double x) {
    if (!std::isfinite(x))
        return format_real(x);
    return std::stod(format_real(x));
}

inline std::string cell(const nlohmann::ordered_json& v) {
    std::string s;
    if (v.is_string())
        s = v.get<std::string>();
    else if (v.is_number_float())
        s = format_real(v.get<double>());
    else if (v.is_array()) {
        for (std::size_t k = 0; k < v.size(); ++k)
            s += (k ? ";" : "") + cell(v[k]);
    } else if (!v.is_null())
        s = v.dump();
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char ch : s)
        q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
}

/// Columns are the union of record keys in first-seen order.
inline std::string to_csv(const std::vector<nlohmann::ordered_json>& records) {
    std::vector<std::string> cols;
    for (const auto& r : records)
        for (const auto& [k, v] : r.items())
            if (std::find(cols.begin(), cols.end(), k) == cols.end())
                cols.push_back(k);
    std::string out;
    for (std::size_t k = 0; k < cols.size(); ++k)
        out += (k ? "," : "") + cols[k];
    out += '\n';
    for (const auto& r : records) {
        for (std::size_t k = 0; k < cols.size(); ++k)
            out += (k ? "," : "") + (r.contains(cols[k]) ? cell(r[cols[k]]) : std::string());
        out += '\n';
    }
    return out;
}

inline SampleConfig sample_config(const Options& o, bool need_seed) {
    if (need_seed && !o.seed)
        throw UsageError("--seed is required for '" + o.verb + "'");
    SampleConfig cfg;
    cfg.seed = o.seed.value_or(0);
    cfg.samples = o.samples;
    cfg.radius = o.radius;
    cfg.threads = o.threads;
    cfg.sampler = parse_sampler_kind(o.sampler);
    cfg.validate();
    return cfg;
}

inline std::size_t poly_dim(const Options& o, const std::vector<std::string>& polys) {
    if (o.n)
        return o.n;
    std::size_t n = 1;
    for (const auto& p : polys)
        n = std::max(n, detail::PolyParser::max_variable(p));
    return n;
}

inline std::size_t weight_dim(const Options& o, const std::vector<std::string>& polys,
                              const std::vector<std::string>& weights) {
    if (o.n)
        return o.n;
    std::size_t n = poly_dim(o, polys);
    for (const auto& w : weights)
        n = std::max(n, detail::WeightParser::infer_dim(w));
    return n;
}

inline void require(const std::string& value, const char* flag, const Options& o) {
    if (value.empty())
        throw UsageError(std::string(flag) + " is required for '" + o.verb + "'");
}

inline MonomialWeight monomial_weight(const Options& o) {
    require(o.weight, "--weight", o);
    return MonomialWeight(parse_exponent_list(o.weight));
}

inline Exponent beta_of(const Options& o, const MonomialWeight& w) {
    if (o.beta.empty())
        return Exponent(w.dim());
    Exponent b = parse_exponent(o.beta);
    if (b.dim() != w.dim())
        throw DimensionMismatch(w.dim(), b.dim());
    return b;
}

/// Decimal or p/q.
inline double real_arg(const std::string& text) {
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used == text.size())
            return v;
    } catch (const std::exception&) {
    }
    return parse_rational(text).get_d();
}

// ---- exact verbs ----

inline Output verb_order(const Options& o) {
    if (o.positional.size() != 2)
        throw UsageError("order takes exactly two exponents, e.g. order \"(2,0)\" \"(1,1)\"");
    Exponent a = parse_exponent(o.positional[0]);
    Exponent b = parse_exponent(o.positional[1]);
    if (o.n && a.dim() != o.n)
        throw DimensionMismatch(o.n, a.dim());
    const std::string r = to_string(cmp_monomials(a, b));
    return {r + "\n", {{{"a", a.to_string()}, {"b", b.to_string()}, {"order", r}}}};
}

inline std::vector<Polynomial> parse_polys(const Options& o, const std::vector<std::string>& texts) {
    const std::size_t n = poly_dim(o, texts);
    std::vector<Polynomial> out;
    for (const auto& t : texts)
        out.push_back(parse_polynomial(t, n));
    return out;
}

inline Output verb_divide(const Options& o) {
    if (o.positional.size() < 2)
        throw UsageError("divide takes f followed by at least one divisor");
    auto ps = parse_polys(o, o.positional);
    std::vector<Polynomial> gens(ps.begin() + 1, ps.end());
    DivisionResult d = divide(ps.front(), gens, o.D);
    Output out;
    for (std::size_t k = 0; k < d.quotients.size(); ++k) {
        const std::string name = "q" + std::to_string(k + 1);
        out.human += name + " = " + to_string(d.quotients[k]) + "\n";
        out.records.push_back({{"name", name}, {"polynomial", to_string(d.quotients[k])}, {"D", d.trunc}});
    }
    out.human += "r = " + to_string(d.remainder) + "\n";
    out.records.push_back({{"name", "r"}, {"polynomial", to_string(d.remainder)}, {"D", d.trunc}});
    return out;
}

inline Output verb_stdbasis(const Options& o) {
    if (o.positional.empty())
        throw UsageError("stdbasis takes at least one generator");
    StandardBasis sb = standard_basis(parse_polys(o, o.positional), o.D);
    Output out;
    std::string set = "{";
    for (std::size_t k = 0; k < sb.gens.size(); ++k) {
        set += (k ? ", " : "") + to_string(sb.gens[k]);
        out.records.push_back({{"index", k + 1},
                               {"polynomial", to_string(sb.gens[k])},
                               {"initial_monomial", sb.gens[k].initial_monomial().to_string()},
                               {"D", sb.trunc}});
    }
    out.human = set + "}\n";
    return out;
}

inline Output verb_nf(const Options& o) {
    if (o.positional.size() < 2)
        throw UsageError("nf takes f followed by at least one generator");
    auto ps = parse_polys(o, o.positional);
    StandardBasis sb = standard_basis({ps.begin() + 1, ps.end()}, o.D);
    const std::string r = to_string(normal_form(ps.front(), sb));
    return {r + "\n", {{{"polynomial", r}, {"D", sb.trunc}}}};
}

inline Output verb_lct(const Options& o) {
    MonomialWeight w = monomial_weight(o);
    Exponent beta = beta_of(o, w);
    LctValue v = newton_lct(w, beta);
    nlohmann::ordered_json rec{{"weight", w.to_string()}, {"beta", beta.to_string()}, {"lct", v.to_string()}};
    if (!v.infinite) {
        std::vector<std::string> normal;
        for (const auto& x : v.facet_normal)
            normal.push_back(to_string(x));
        rec["facet_normal"] = normal;
    }
    return {v.to_string() + "\n", {rec}};
}

inline Rational rational_c(const Options& o) {
    require(o.c_text, "--c", o);
    Rational c = parse_rational(o.c_text);
    if (sgn(c) <= 0)
        throw PreconditionError("c must be > 0");
    return c;
}

inline Output verb_mideal(const Options& o) {
    MonomialWeight w = monomial_weight(o);
    Rational c = rational_c(o);
    if (o.D < 0)
        throw PreconditionError("truncation degree D must be >= 0");
    MonomialIdeal ideal = multiplier_ideal_monomials(w, c, static_cast<std::uint64_t>(o.D));
    const std::string s = ideal.to_string();
    return {s + "\n", {{{"weight", w.to_string()}, {"c", to_string(c)}, {"D", o.D}, {"ideal", s}}}};
}

inline Output verb_witness(const Options& o) {
    MonomialWeight w = monomial_weight(o);
    Exponent beta = beta_of(o, w);
    Rational c = rational_c(o);
    std::optional<Rational> eps = openness_witness(w, beta, c);
    const std::string s = eps ? to_string(*eps) : "not a member";
    return {s + "\n",
            {{{"weight", w.to_string()},
              {"beta", beta.to_string()},
              {"c", to_string(c)},
              {"member", eps.has_value()},
              {"eps", eps ? to_string(*eps) : ""}}}};
}

// ---- numeric verbs ----

inline Output verb_estimate(const Options& o) {
    require(o.weight, "--weight", o);
    const SampleConfig cfg = sample_config(o, true);
    const std::size_t n = weight_dim(o, {o.f}, {o.weight});
    Polynomial f = parse_polynomial(o.f, n);
    WeightFunction phi = parse_weight(o.weight, n);
    ThresholdEstimator est(f, phi, cfg);
    Output out;
    nlohmann::ordered_json head{{"f", to_string(f)}, {"weight", phi.to_string()}, {"seed", cfg.seed},
                                {"samples", cfg.samples}};
    if (!o.c_text.empty()) {
        const double c = real_arg(o.c_text);
        detail::check_c(c);
        if (o.eps) {
            IntegralEstimate e = est.clipped_integral(c, *o.eps);
            out.human = format_real(e.mean) + " +- " + format_real(e.std_error) + "\n";
            head["c"] = real(c);
            head["eps"] = real(*o.eps);
            head["integral"] = real(e.mean);
            head["std_error"] = real(e.std_error);
            out.records.push_back(head);
            return out;
        }
        SlopeFit fit = est.divergence_slope(c, default_ladder(phi));
        const Verdict v = classify(fit.increment_slope, o.margin);
        out.human = "slope " + format_real(fit.slope) + "  increment slope " + format_real(fit.increment_slope) +
                    "  residual " + format_real(fit.residual) + "\nverdict: " + to_string(v) + "\n";
        for (std::size_t k = 0; k < fit.ladder.size(); ++k)
            out.records.push_back({{"c", real(c)},
                                   {"eps", real(fit.ladder[k])},
                                   {"log_integral", real(fit.log_values[k])},
                                   {"std_error", real(fit.std_errors[k])}});
        head["c"] = real(c);
        head["slope"] = real(fit.slope);
        head["increment_slope"] = real(fit.increment_slope);
        head["residual"] = real(fit.residual);
        head["verdict"] = to_string(v);
        out.records.push_back(head);
        return out;
    }
    ThresholdOptions topt;
    topt.margin = o.margin;
    ThresholdEstimate t = est.estimate(o.c_min, o.c_max, o.tol, topt);
    out.human = detail::interval(t) + "\n";
    for (const auto& p : t.probes) {
        out.human += "  c=" + format_real(p.c) + "  slope " + format_real(p.slope) + "  increment slope " +
                     format_real(p.increment_slope) + "  " + to_string(p.verdict) + "\n";
        out.records.push_back({{"c", real(p.c)},
                               {"slope", real(p.slope)},
                               {"increment_slope", real(p.increment_slope)},
                               {"residual", real(p.residual)},
                               {"verdict", to_string(p.verdict)}});
    }
    head["c_lo"] = real(t.c_lo);
    head["c_hi"] = real(t.c_hi);
    head["status"] = t.to_string();
    out.records.push_back(head);
    return out;
}

inline Output verb_l1(const Options& o) {
    require(o.phi, "--phi", o);
    require(o.psi, "--psi", o);
    require(o.c_text, "--c", o);
    const SampleConfig cfg = sample_config(o, true);
    const std::size_t n = weight_dim(o, {}, {o.phi, o.psi});
    WeightFunction phi = parse_weight(o.phi, n);
    WeightFunction psi = parse_weight(o.psi, n);
    const double c = real_arg(o.c_text);
    const double eps = o.eps.value_or(kDefaultL1Clip);
    IntegralEstimate e = l1_distance(phi, psi, c, cfg, eps);
    return {format_real(e.mean) + " +- " + format_real(e.std_error) + "\n",
            {{{"phi", phi.to_string()},
              {"psi", psi.to_string()},
              {"c", real(c)},
              {"eps", real(eps)},
              {"l1", real(e.mean)},
              {"std_error", real(e.std_error)},
              {"seed", cfg.seed}}}};
}

inline Output verb_experiment(const Options& o, const nlohmann::json& file) {
    nlohmann::json j = file.is_object() ? file : nlohmann::json::object();
    if (!o.experiment.empty())
        j["experiment"] = o.experiment;
    if (!j.contains("experiment"))
        throw UsageError("experiment needs an id (remark13, convergence, semicontinuity, openness)");
    const SampleConfig cfg = sample_config(o, true);
    j["seed"] = cfg.seed;
    j["samples"] = cfg.samples;
    j["radius"] = cfg.radius;
    j["threads"] = cfg.threads;
    j["sampler"] = to_string(cfg.sampler);
    if (!o.j_values.empty())
        j["j"] = o.j_values;
    if (!o.weight.empty())
        j["weight"] = o.weight;
    if (!o.beta.empty())
        j["beta"] = o.beta;
    if (!o.deltas.empty())
        j["deltas"] = o.deltas;
    if (!o.phi.empty())
        j["phi"] = o.phi;
    if (!o.family.empty())
        j["family"] = o.family;
    if (!o.c_text.empty())
        j["c"] = real_arg(o.c_text);
    if (o.n)
        j["n"] = o.n;
    j["tol"] = o.tol;
    j["margin"] = o.margin;
    if (o.threshold_tolerance)
        j["threshold_tolerance"] = *o.threshold_tolerance;
    if (o.scaling_tolerance)
        j["scaling_tolerance"] = *o.scaling_tolerance;
    for (const char* key : {"weight", "phi", "c"}) {
        const std::string id = j["experiment"].get<std::string>();
        const bool needed = (std::string(key) == "weight" && (id == "convergence" || id == "openness")) ||
                            (std::string(key) != "weight" && id == "semicontinuity");
        if (needed && !j.contains(key))
            throw UsageError(std::string("--") + key + " is required for experiment '" + id + "'");
    }
    if (j["experiment"] == "semicontinuity" && !j.contains("family"))
        throw UsageError("--family is required for experiment 'semicontinuity'");
    ExperimentReport r = run_experiment(j, cfg);
    Output out;
    out.exit_code = r.pass() ? kExitOk : kExitFailure;
    out.report = std::move(r);
    return out;
}

// ---- argument parsing ----

inline void add_globals(CLI::App& app, Options& o) {
    app.add_option("-n,--dim", o.n, "ring dimension (default: highest variable index used)");
    app.add_option("-D,--trunc", o.D, "truncation degree")->capture_default_str();
    app.add_option("--seed", o.seed, "random seed (required for estimate, l1, experiment)");
    app.add_option("--samples", o.samples, "Monte Carlo sample count")->capture_default_str();
    app.add_option("--radius", o.radius, "polydisc radius")->capture_default_str();
    app.add_option("--threads", o.threads, "worker threads, 0 = all cores")->capture_default_str();
    app.add_option("--sampler", o.sampler, "uniform | polar-importance")
        ->check(CLI::IsMember({"uniform", "polar-importance"}))
        ->capture_default_str();
    app.add_option("--format", o.format, "human | csv | jsonl")
        ->check(CLI::IsMember({"human", "csv", "jsonl"}))
        ->capture_default_str();
    app.add_option("--config", o.config, "JSON file whose keys mirror the long flags");
}

inline void build_app(CLI::App& app, Options& o) {
    app.require_subcommand(1, 1);
    app.fallthrough();
    add_globals(app, o);

    auto polys = [&](const char* name, const char* help, const char* what) {
        auto* s = app.add_subcommand(name, help);
        s->add_option("polynomials", o.positional, what)->required();
        return s;
    };
    auto* order = app.add_subcommand("order", "compare two exponents in the homogeneous lexicographic order");
    order->add_option("exponents", o.positional, "two exponent literals such as (2,0)")->required();
    polys("divide", "Hironaka division of f by g1..gk, truncated at degree D", "f g1 ... gk");
    polys("stdbasis", "reduced standard basis of the ideal (g1..gk), truncated at degree D", "g1 ... gk");
    polys("nf", "normal form of f modulo the standard basis of (g1..gk)", "f g1 ... gk");

    auto monomial = [&](const char* name, const char* help, bool with_beta, bool with_c) {
        auto* s = app.add_subcommand(name, help);
        s->add_option("--weight", o.weight, "generators, e.g. \"(2,0),(0,3)\"")->required();
        if (with_beta)
            s->add_option("--beta", o.beta, "exponent of f = z^beta (default 0)");
        if (with_c)
            s->add_option("--c", o.c_text, "coefficient c > 0 as p/q")->required();
        return s;
    };
    monomial("lct", "exact weighted threshold of a monomial weight", true, false);
    monomial("mideal", "monomial generators of the multiplier ideal I(c phi) up to degree D", false, true);
    monomial("witness", "exact openness witness eps for z^beta in I(c phi)", true, true);

    auto* est = app.add_subcommand("estimate", "numerical threshold, divergence slope or clipped integral");
    est->add_option("--weight", o.weight, "weight, e.g. \"log|z1 + z2/4|\"")->required();
    est->add_option("--f", o.f, "holomorphic factor f")->capture_default_str();
    auto* c = est->add_option("--c", o.c_text, "single c: report the divergence slope");
    est->add_option("--eps", o.eps, "with --c: report the clipped integral at this level")->needs(c);
    auto* lo = est->add_option("--c-min", o.c_min, "search interval start")->capture_default_str();
    auto* hi = est->add_option("--c-max", o.c_max, "search interval end")->capture_default_str();
    auto* tol = est->add_option("--tol", o.tol, "bisection tolerance")->capture_default_str();
    c->excludes(lo)->excludes(hi)->excludes(tol);
    est->add_option("--margin", o.margin, "increment-slope margin for verdicts")->capture_default_str();

    auto* l1 = app.add_subcommand("l1", "L1 distance between clipped weight exponentials");
    l1->add_option("--phi", o.phi, "first weight")->required();
    l1->add_option("--psi", o.psi, "second weight")->required();
    l1->add_option("--c", o.c_text, "exponent c")->required();
    l1->add_option("--eps", o.eps, "clip level (default 2^-40)");

    auto* ex = app.add_subcommand("experiment", "run a reproducible experiment");
    ex->add_option("id", o.experiment, "remark13 | convergence | semicontinuity | openness")
        ->check(CLI::IsMember({"remark13", "convergence", "semicontinuity", "openness"}));
    ex->add_option("--j", o.j_values, "remark13: values of j");
    ex->add_option("--weight", o.weight, "convergence, openness: monomial generators");
    ex->add_option("--beta", o.beta, "convergence, openness: exponent of f");
    ex->add_option("--deltas", o.deltas, "convergence: decreasing deltas as p/q");
    ex->add_option("--phi", o.phi, "semicontinuity: base weight");
    ex->add_option("--family", o.family, "semicontinuity: family members");
    ex->add_option("--c", o.c_text, "semicontinuity: exponent c");
    ex->add_option("--tol", o.tol, "bisection tolerance")->capture_default_str();
    ex->add_option("--margin", o.margin, "increment-slope margin")->capture_default_str();
    ex->add_option("--threshold-tolerance", o.threshold_tolerance, "remark13: allowed deviation");
    ex->add_option("--scaling-tolerance", o.scaling_tolerance, "convergence: allowed deviation");
}

inline void parse(CLI::App& app, std::vector<std::string> args) {
    std::reverse(args.begin(), args.end());
    app.parse(args);
}

/// Option of the active subcommand (or a global) matching a config key.
inline CLI::Option* config_option(CLI::App& app, CLI::App* sub, const std::string& key) {
    std::string name = key;
    std::replace(name.begin(), name.end(), '_', '-');
    for (CLI::App* scope : {sub, &app}) {
        if (!scope)
            continue;
        for (const std::string& flag : {"--" + name, "-" + name})
            if (auto* opt = scope->get_option_no_throw(flag))
                return opt;
    }
    return nullptr;
}

inline std::vector<std::string> config_values(const nlohmann::json& v) {
    std::vector<std::string> out;
    if (v.is_array()) {
        for (const auto& x : v)
            for (auto& s : config_values(x))
                out.push_back(std::move(s));
    } else if (v.is_string()) {
        out.push_back(v.get<std::string>());
    } else {
        out.push_back(v.dump());
    }
    return out;
}

/// First bare word before any verb, skipping values of global flags.
inline std::optional<std::string> unknown_verb(const std::vector<std::string>& args, const CLI::App& app) {
    for (std::size_t k = 0; k < args.size(); ++k) {
        const std::string& a = args[k];
        if (a.rfind("-", 0) == 0) {
            if (a.find('=') == std::string::npos && a != "-h" && a != "--help")
                ++k;
            continue;
        }
        for (const auto* sub : app.get_subcommands([](const CLI::App*) { return true; }))
            if (sub->get_name() == a)
                return std::nullopt;
        return a;
    }
    return std::nullopt;
}

} // namespace cli

/**
 * Runs one invocation. args excludes the program name. Diagnostics go to err
 * and name the failing precondition.
 */
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using namespace cli;
    Options o;
    nlohmann::json file;
    std::vector<std::string> full = args;
    try {
        {
            CLI::App app{"wlct: standard bases and weighted log canonical thresholds", "wlct"};
            build_app(app, o);
            try {
                parse(app, args);
            } catch (const CLI::CallForHelp& e) {
                return app.exit(e, out, err);
            } catch (const CLI::CallForAllHelp& e) {
                return app.exit(e, out, err);
            } catch (const CLI::ParseError&) {
                if (auto verb = unknown_verb(args, app))
                    throw UsageError("unknown verb '" + *verb +
                                     "' (order, divide, stdbasis, nf, lct, mideal, witness, estimate, l1, experiment)");
                throw;
            }
            if (!o.config.empty()) {
                std::ifstream in(o.config);
                if (!in)
                    throw UsageError("cannot read config file '" + o.config + "'");
                file = nlohmann::json::parse(in, nullptr, false);
                if (file.is_discarded() || !file.is_object())
                    throw UsageError("config file '" + o.config + "' is not a JSON object");
                CLI::App* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front();
                for (const auto& [key, value] : file.items()) {
                    if (key == "experiment")
                        continue;  // read by verb_experiment
                    CLI::Option* opt = config_option(app, sub, key);
                    if (!opt) {
                        if (sub && sub->get_name() == "experiment")
                            continue;  // passed through to the experiment config
                        throw UsageError("unknown config key '" + key + "'");
                    }
                    if (opt->count() > 0)
                        continue;  // command line wins
                    for (const auto& v : config_values(value)) {
                        full.push_back(opt->get_name());
                        full.push_back(v);
                    }
                }
            }
        }
        o = Options{};
        CLI::App app{"wlct: standard bases and weighted log canonical thresholds", "wlct"};
        build_app(app, o);
        try {
            parse(app, full);
        } catch (const CLI::CallForHelp& e) {
            return app.exit(e, out, err);
        } catch (const CLI::CallForAllHelp& e) {
            return app.exit(e, out, err);
        }
        o.verb = app.get_subcommands().front()->get_name();

        Output res;
        if (o.verb == "order")
            res = verb_order(o);
        else if (o.verb == "divide")
            res = verb_divide(o);
        else if (o.verb == "stdbasis")
            res = verb_stdbasis(o);
        else if (o.verb == "nf")
            res = verb_nf(o);
        else if (o.verb == "lct")
            res = verb_lct(o);
        else if (o.verb == "mideal")
            res = verb_mideal(o);
        else if (o.verb == "witness")
            res = verb_witness(o);
        else if (o.verb == "estimate")
            res = verb_estimate(o);
        else if (o.verb == "l1")
            res = verb_l1(o);
        else
            res = verb_experiment(o, file);

        if (res.report) {
            if (o.format == "csv")
                out << res.report->to_csv();
            else if (o.format == "jsonl")
                out << res.report->to_jsonl();
            else
                out << res.report->to_human();
        } else if (o.format == "csv") {
            out << to_csv(res.records);
        } else if (o.format == "jsonl") {
            for (const auto& r : res.records)
                out << r.dump() << '\n';
        } else {
            out << res.human;
        }
        return res.exit_code;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return kExitOk;
        }
        err << "usage error: " << e.what() << "\nrun 'wlct --help' for the list of verbs and flags\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    } catch (const nlohmann::json::exception& e) {
        err << "usage error: config: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

} // namespace wlct
