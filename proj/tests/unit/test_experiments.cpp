#include <gtest/gtest.h>

#include <sstream>

#include "wlct/experiments.hpp"

using namespace wlct;

namespace {

SampleConfig config(std::uint64_t samples, std::uint64_t seed = 7) {
    SampleConfig cfg;
    cfg.samples = samples;
    cfg.seed = seed;
    return cfg;
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

} // namespace

TEST(Report, OverallVerdictIgnoresInformationalRows) {
    ExperimentReport r;
    r.id = "demo";
    ExperimentCase ok{"a", "q", "1", Source::Identity, "1", "exact"};
    ok.pass = true;
    ExperimentCase info{"b", "q", "1", Source::Trend, "2", "none"};
    info.required = false;
    r.cases = {ok, info};
    EXPECT_TRUE(r.pass());
    r.cases[1].required = true;
    EXPECT_FALSE(r.pass());
    EXPECT_EQ(r.find("b", "q"), &r.cases[1]);
    EXPECT_EQ(r.find("b", "other"), nullptr);
}

TEST(Report, Serializations) {
    ExperimentReport r;
    r.id = "demo";
    r.seed = 3;
    r.runtime_seconds = 1.5;
    r.inputs = {{"weight", "(1,0),(0,1)"}};
    ExperimentCase c{"c=1/2", "verdict", "a, \"b\"", Source::ExactLp, "x", "exact"};
    c.pass = true;
    r.cases = {c};
    r.notes = {"n1"};

    const std::string csv = r.to_csv();
    EXPECT_EQ(csv, "experiment,parameter,quantity,expected,source,observed,tolerance,required,verdict\n"
                   "demo,c=1/2,verdict,\"a, \"\"b\"\"\",exact-lp,x,exact,yes,pass\n");

    const std::string jl = r.to_jsonl();
    EXPECT_EQ(count_lines(jl), 3u);
    std::istringstream in(jl);
    std::string line;
    std::getline(in, line);
    auto head = nlohmann::json::parse(line);
    EXPECT_EQ(head["record"], "experiment");
    EXPECT_EQ(head["inputs"]["weight"], "(1,0),(0,1)");
    std::getline(in, line);
    EXPECT_EQ(nlohmann::json::parse(line)["source"], "exact-lp");
    std::getline(in, line);
    auto tail = nlohmann::json::parse(line);
    EXPECT_EQ(tail["verdict"], "pass");
    EXPECT_FALSE(tail.contains("runtime_seconds"));
    EXPECT_TRUE(nlohmann::json::parse(r.to_jsonl(true).substr(jl.rfind('\n', jl.size() - 2) + 1))
                    .contains("runtime_seconds"));

    EXPECT_EQ(r.to_json()["cases"][0]["expected"], "a, \"b\"");
    EXPECT_NE(r.to_human().find("verdict: pass"), std::string::npos);
    EXPECT_EQ(r.to_human().find("runtime"), std::string::npos);
}

TEST(Report, RealFormatting) {
    EXPECT_EQ(format_real(2.0), "2");
    EXPECT_EQ(format_real(1.0 / 3), "0.333333");
    EXPECT_EQ(format_real(1234567.0), "1.23457e+06");
    EXPECT_EQ(format_real(std::numeric_limits<double>::infinity()), "inf");
}

TEST(Convergence, ExactPathIsExact) {
    auto r = run_convergence_from_below(MonomialWeight({Exponent{1, 0}}), Exponent{1, 0},
                                        {Rational(2, 5), Rational(1, 5), Rational(1, 10), Rational(1, 20)},
                                        config(1 << 16));
    EXPECT_EQ(r.find("delta=0", "exact threshold")->observed, "2");
    const std::vector<std::pair<std::string, std::string>> expected{
        {"2/5", "10/7"}, {"1/5", "5/3"}, {"1/10", "20/11"}, {"1/20", "40/21"}};
    for (const auto& [d, v] : expected) {
        const auto* c = r.find("delta=" + d, "exact threshold");
        ASSERT_NE(c, nullptr) << d;
        EXPECT_EQ(c->observed, v);
        EXPECT_TRUE(c->pass);
        EXPECT_EQ(c->source, Source::ScalingLaw);
    }
}

TEST(Convergence, NumericPathAtDeltaOne) {
    auto r = run_convergence_from_below(MonomialWeight({Exponent{1, 0}}), Exponent{1, 0}, {Rational(1)},
                                        config(1 << 17));
    EXPECT_EQ(r.find("delta=1", "exact threshold")->observed, "1");
    const auto* est = r.find("delta=1", "estimated threshold");
    ASSERT_NE(est, nullptr);
    EXPECT_TRUE(est->pass) << est->observed;
    EXPECT_TRUE(r.pass());
}

TEST(Convergence, Preconditions) {
    MonomialWeight w({Exponent{1, 0}});
    auto cfg = config(1024);
    EXPECT_THROW(run_convergence_from_below(w, Exponent{0, 0}, {}, cfg), PreconditionError);
    EXPECT_THROW(run_convergence_from_below(w, Exponent{0, 0}, {Rational(1, 5), Rational(2, 5)}, cfg),
                 PreconditionError);
    EXPECT_THROW(run_convergence_from_below(w, Exponent{0, 0}, {Rational(-1, 5)}, cfg), PreconditionError);
    EXPECT_THROW(run_convergence_from_below(w, Exponent{0}, {Rational(1, 5)}, cfg), DimensionMismatch);
}

TEST(Semicontinuity, TrendAndIdentityMember) {
    auto phi = parse_weight("log|z1|", 2);
    std::vector<WeightFunction> family{parse_weight("log|z1 + 1/8*z2|", 2), phi, parse_weight("log|z1 + 1/2*z2|", 2)};
    auto r = run_semicontinuity(phi, family, 0.9, config(1 << 15));
    EXPECT_TRUE(r.pass()) << r.to_human();
    // Reordered by decreasing distance: psi3 (j=2), psi1 (j=8), psi2 (= phi).
    std::vector<std::string> order;
    for (const auto& c : r.cases)
        if (c.quantity == "l1(exp)")
            order.push_back(c.parameter);
    EXPECT_EQ(order, (std::vector<std::string>{"psi3", "psi1", "psi2"}));
    const auto* same = r.find("psi2", "l1(exp)");
    EXPECT_EQ(same->data.front(), 0.0);
    EXPECT_EQ(same->source, Source::Identity);
    EXPECT_EQ(r.find("psi2", "verdict")->observed, r.find("phi", "verdict")->observed);
}

TEST(Semicontinuity, RefusesAboveThreshold) {
    auto phi = parse_weight("log|z1|", 2);
    EXPECT_THROW(run_semicontinuity(phi, {phi}, 1.5, config(1 << 14)), PreconditionError);
    EXPECT_THROW(run_semicontinuity(phi, {}, 0.5, config(1 << 14)), PreconditionError);
}

TEST(Openness, CuspIdeal) {
    auto r = run_strong_openness(MonomialWeight({Exponent{2, 0}, Exponent{0, 3}}), Exponent{0, 0}, config(1 << 16));
    EXPECT_TRUE(r.pass()) << r.to_human();
    EXPECT_EQ(r.find("c*", "exact threshold")->observed, "5/6");
    EXPECT_EQ(r.find("c=3/4", "verdict")->observed, "no divergence");
    EXPECT_EQ(r.find("c=3/4", "witness eps")->observed, "1/18");
    EXPECT_EQ(r.find("c=11/12", "verdict")->observed, "divergence");
}

TEST(Openness, BoundaryExcludedAndInfiniteCase) {
    auto r = run_strong_openness(MonomialWeight({Exponent{1, 0}}), Exponent{0, 0}, config(1 << 16));
    EXPECT_EQ(r.find("c=1", "membership")->observed, "not a member");
    EXPECT_TRUE(r.pass()) << r.to_human();

    auto inf = run_strong_openness(MonomialWeight({Exponent{0, 0}}), Exponent{0, 0}, config(1024));
    EXPECT_EQ(inf.find("c*", "interval")->observed, "(0,inf)");
    EXPECT_EQ(inf.cases.size(), 2u);
}

TEST(PerturbedLineExperiment, SingleJ) {
    auto r = run_remark13({4}, config(1 << 17));
    EXPECT_TRUE(r.pass()) << r.to_human();
    EXPECT_GT(r.find("j=4", "l1(phi_j, phi)")->data.front(), 0.0);
    EXPECT_THROW(run_remark13({0}, config(1024)), PreconditionError);
    EXPECT_THROW(run_remark13({}, config(1024)), PreconditionError);
}

TEST(Experiments, ByteIdenticalAcrossThreadCounts) {
    std::string first;
    for (unsigned threads : {1u, 3u, 8u}) {
        auto cfg = config(50000, 11);
        cfg.threads = threads;
        auto phi = parse_weight("log|z1|", 2);
        auto a = run_semicontinuity(phi, {parse_weight("log|z1 + 1/4*z2|", 2)}, 0.8, cfg);
        auto b = run_strong_openness(MonomialWeight({Exponent{1, 2}}), Exponent{0, 0}, cfg);
        const std::string text = a.to_jsonl() + b.to_jsonl() + a.to_csv();
        if (first.empty())
            first = text;
        EXPECT_EQ(text, first) << threads;
    }
}

TEST(Experiments, ConfigDispatch) {
    auto j = nlohmann::json::parse(R"j({"experiment": "convergence", "weight": "(1,0)", "beta": "(1,0)",
                                       "deltas": [0.4, "1/5"], "seed": 3, "samples": 16384})j");
    auto r = run_experiment(j);
    EXPECT_EQ(r.id, "convergence");
    EXPECT_EQ(r.seed, 3u);
    EXPECT_EQ(r.find("delta=2/5", "exact threshold")->observed, "10/7");
    EXPECT_NE(r.find("delta=1/5", "exact threshold"), nullptr);

    EXPECT_THROW(run_experiment(nlohmann::json::parse(R"j({"experiment": "openness", "weight": "(1,0)"})j")),
                 PreconditionError);
    EXPECT_THROW(run_experiment(nlohmann::json::parse(R"j({"experiment": "nope", "seed": 1})j")), PreconditionError);
    EXPECT_THROW(run_experiment(nlohmann::json::parse(R"j([1, 2])j")), PreconditionError);

    auto s = run_experiment(nlohmann::json::parse(
        R"j({"experiment": "semicontinuity", "phi": "log|z1|", "family": ["log|z1 + z2/2|"], "c": 0.5,
            "seed": 1, "samples": 8192})j"));
    EXPECT_EQ(s.inputs.front().second, "log|z1|");
}

TEST(WeightL1, ConstantShiftGivesShiftTimesVolume) {
    auto phi = parse_weight("log|z1 - z2|", 2);
    auto e = weight_l1_distance(phi, WeightFunction::shifted(0.5, phi), config(1 << 14));
    const double vol = std::pow(std::numbers::pi * 0.25, 2);
    EXPECT_NEAR(e.mean, 0.5 * vol, 3 * e.std_error + 1e-12);
    EXPECT_EQ(weight_l1_distance(phi, phi, config(1024)).mean, 0.0);
}
