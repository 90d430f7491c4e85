#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "wlct/cli.hpp"

using namespace wlct;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
    auto p = std::filesystem::temp_directory_path() / ("wlct_test_" + name);
    std::ofstream(p) << text;
    return p;
}

std::vector<nlohmann::json> jsonl(const std::string& text) {
    std::vector<nlohmann::json> rows;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        rows.push_back(nlohmann::json::parse(line));
    return rows;
}

} // namespace

TEST(Cli, LctPrintsTwo) {
    auto r = run({"lct", "--weight", "(1,0)", "--beta", "(1,0)"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "2\n");
    EXPECT_TRUE(r.err.empty());
}

TEST(Cli, StandardBasisExample) {
    auto r = run({"stdbasis", "-n", "2", "-D", "6", "z1 - z2", "z1 + z2"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "{z2, z1}\n");
}

TEST(Cli, ExactVerbs) {
    EXPECT_EQ(run({"order", "(2,0)", "(1,1)"}).out, "Greater\n");
    EXPECT_EQ(run({"order", "(0,1)", "(1,0)"}).out, "Less\n");
    EXPECT_EQ(run({"mideal", "--weight", "(1,0)", "--c", "1", "-D", "4"}).out, "<(1,0)>\n");
    EXPECT_EQ(run({"witness", "--weight", "(2,0),(0,3)", "--c", "3/4"}).out, "1/18\n");
    EXPECT_EQ(run({"witness", "--weight", "(1,0)", "--c", "1"}).out, "not a member\n");
    EXPECT_EQ(run({"lct", "--weight", "(2,0),(0,3)"}).out, "5/6\n");
    EXPECT_EQ(run({"lct", "--weight", "(0,0)"}).out, "inf\n");
    EXPECT_EQ(run({"nf", "z1*z2 + z1", "z1 - z2", "z1 + z2"}).out, "0\n");
    EXPECT_EQ(run({"divide", "z1^2 + z2", "z1", "z2"}).out, "q1 = z1\nq2 = 1\nr = 0\n");
}

TEST(Cli, Formats) {
    auto csv = run({"divide", "z1^2 + z2 + 3", "z1", "z2", "--format", "csv"});
    EXPECT_EQ(csv.out, "name,polynomial,D\nq1,z1,16\nq2,1,16\nr,3,16\n");

    auto j = run({"stdbasis", "z1 - z2", "z1 + z2^2", "--format", "jsonl", "-D", "8"});
    ASSERT_EQ(j.code, 0);
    auto rows = jsonl(j.out);
    ASSERT_FALSE(rows.empty());
    for (const auto& row : rows) {
        // Printed polynomials re-parse to equal values.
        const std::string text = row["polynomial"];
        EXPECT_EQ(to_string(parse_polynomial(text, 2)), text);
        EXPECT_EQ(row["D"], 8);
    }

    auto lct = jsonl(run({"lct", "--weight", "(1,2),(3,0)", "--beta", "(0,1)", "--format", "jsonl"}).out);
    ASSERT_EQ(lct.size(), 1u);
    EXPECT_EQ(lct[0]["lct"], "1");
    EXPECT_EQ(lct[0]["beta"], "(0,1)");
}

TEST(Cli, NumericVerbs) {
    auto est = run({"estimate", "--weight", "log|z1|", "--f", "z1", "--seed", "3", "--samples", "65536"});
    ASSERT_EQ(est.code, 0) << est.err;
    EXPECT_EQ(est.out.front(), '[');

    auto slope = jsonl(run({"estimate", "--weight", "log|z1|", "--seed", "3", "--samples", "16384", "--c", "2",
                            "--format", "jsonl"})
                           .out);
    ASSERT_FALSE(slope.empty());
    EXPECT_EQ(slope.back()["verdict"], "divergence");

    auto clip = jsonl(run({"estimate", "--weight", "zero", "-n", "1", "--seed", "1", "--samples", "4096", "--c",
                           "1", "--eps", "0.5", "--sampler", "uniform", "--format", "jsonl"})
                          .out);
    ASSERT_EQ(clip.size(), 1u);
    EXPECT_NEAR(clip[0]["integral"].get<double>(), std::numbers::pi / 4, 1e-5);

    auto l1 = run({"l1", "--phi", "log|z1|", "--psi", "log|z1|", "--c", "0.5", "--seed", "1", "--samples", "1024"});
    EXPECT_EQ(l1.code, 0);
    EXPECT_EQ(l1.out, "0 +- 0\n");
}

TEST(Cli, NumericOutputIndependentOfThreads) {
    std::string first;
    for (const char* t : {"1", "4", "8"}) {
        auto r = run({"estimate", "--weight", "log|z1 + z2/4|", "--f", "z1", "--seed", "9", "--samples", "20000",
                      "--threads", t, "--format", "csv"});
        ASSERT_EQ(r.code, 0);
        if (first.empty())
            first = r.out;
        EXPECT_EQ(r.out, first) << t;
    }
}

TEST(Cli, ExitCodes) {
    auto missing_seed = run({"estimate", "--weight", "log|z1|"});
    EXPECT_EQ(missing_seed.code, 2);
    EXPECT_NE(missing_seed.err.find("--seed"), std::string::npos);

    auto unknown = run({"frobnicate"});
    EXPECT_EQ(unknown.code, 2);
    EXPECT_NE(unknown.err.find("unknown verb 'frobnicate'"), std::string::npos);

    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"lct"}).code, 2);                                           // missing --weight
    EXPECT_EQ(run({"lct", "--weight", "(1,0"}).code, 2);                       // malformed literal
    EXPECT_EQ(run({"stdbasis", "-n", "2", "z3"}).code, 2);                     // variable out of range
    EXPECT_EQ(run({"divide", "z1/0", "z1"}).code, 2);                          // zero denominator
    EXPECT_EQ(run({"order", "(1,0)"}).code, 2);                                // arity
    EXPECT_EQ(run({"lct", "--weight", "(1)", "--format", "xml"}).code, 2);     // bad enum
    EXPECT_EQ(run({"estimate", "--weight", "log|z1|", "--seed", "1", "--c", "1", "--c-min", "0.2"}).code,
              2);                                                              // conflicting flags
    EXPECT_EQ(run({"estimate", "--weight", "log|z1|", "--seed", "1", "--eps", "0.1"}).code, 2);

    auto pre = run({"stdbasis", "z1", "-D", "-1"});
    EXPECT_EQ(pre.code, 1);
    EXPECT_NE(pre.err.find("D must be >= 0"), std::string::npos);
    EXPECT_EQ(run({"mideal", "--weight", "(1,0)", "--c", "0"}).code, 1);
    EXPECT_EQ(run({"lct", "--weight", "(1,0)", "--beta", "(1)"}).code, 1);       // dimension mismatch
    EXPECT_EQ(run({"estimate", "--weight", "log|z1|", "--seed", "1", "--radius", "0"}).code, 1);
    EXPECT_EQ(run({"estimate", "--weight", "log|z1|", "--seed", "1", "--c-min", "3", "--c-max", "1"}).code, 1);

    auto help = run({"--help"});
    EXPECT_EQ(help.code, 0);
    EXPECT_NE(help.out.find("stdbasis"), std::string::npos);
}

TEST(Cli, ExperimentExitCodeFollowsVerdict) {
    auto ok = run({"experiment", "openness", "--weight", "(2,0),(0,3)", "--seed", "7", "--samples", "65536"});
    EXPECT_EQ(ok.code, 0) << ok.out;
    EXPECT_NE(ok.out.find("verdict: pass"), std::string::npos);

    auto strict = run({"experiment", "convergence", "--weight", "(1,0)", "--beta", "(1,0)", "--deltas", "1",
                       "--seed", "7", "--samples", "16384", "--scaling-tolerance", "1e-9"});
    EXPECT_EQ(strict.code, 1);
    EXPECT_NE(strict.out.find("verdict: fail"), std::string::npos);

    EXPECT_EQ(run({"experiment", "openness", "--seed", "1"}).code, 2);     // missing --weight
    EXPECT_EQ(run({"experiment", "--seed", "1"}).code, 2);                 // missing id
    EXPECT_EQ(run({"experiment", "nope", "--seed", "1"}).code, 2);
    EXPECT_EQ(run({"experiment", "remark13", "--j", "0", "--seed", "1", "--samples", "1024"}).code, 1);
}

TEST(Cli, ConfigFile) {
    auto globals = write_temp("globals.json", R"j({"D": 6, "format": "jsonl", "seed": 5, "samples": 4096})j");
    auto r = run({"stdbasis", "z1 - z2", "z1 + z2^7", "--config", globals.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    auto rows = jsonl(r.out);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0]["D"], 6);

    // The command line wins over the file.
    auto human = run({"stdbasis", "z1 - z2", "z1 + z2", "--config", globals.string(), "--format", "human"});
    EXPECT_EQ(human.out, "{z2, z1}\n");

    auto exp = write_temp("exp.json", R"j({"experiment": "openness", "weight": "(1,0)", "beta": "(1,0)",
                                           "seed": 7, "samples": 65536})j");
    auto e = run({"experiment", "--config", exp.string(), "--format", "jsonl"});
    ASSERT_EQ(e.code, 0) << e.err << e.out;
    auto lines = jsonl(e.out);
    EXPECT_EQ(lines.front()["experiment"], "openness");
    EXPECT_EQ(lines.front()["seed"], 7);
    EXPECT_EQ(lines.back()["verdict"], "pass");

    auto bogus = write_temp("bogus.json", R"j({"bogus": 1})j");
    EXPECT_EQ(run({"lct", "--weight", "(1)", "--config", bogus.string()}).code, 2);
    auto broken = write_temp("broken.json", "{not json");
    EXPECT_EQ(run({"lct", "--weight", "(1)", "--config", broken.string()}).code, 2);
    EXPECT_EQ(run({"lct", "--weight", "(1)", "--config", "/nonexistent/x.json"}).code, 2);
}

TEST(Cli, FuzzedTokenSequencesAlwaysGiveADiagnostic) {
    const std::vector<std::string> pool{
        "order", "divide", "stdbasis", "nf", "lct", "mideal", "witness", "estimate", "l1", "experiment", "remark13",
        "openness", "-n", "2", "0", "-D", "-1", "3", "--seed", "7", "--format", "csv", "jsonl", "human", "xml",
        "--weight", "(1,0)", "(2,0),(0,3)", "(1", "()", "--beta", "(0,1)", "--c", "1/2", "0", "-3", "abc", "--eps",
        "2", "--phi", "--psi", "log|z1|", "log|", "z1", "z1 - z2", "z1^", "z9", "1/0", "--c-min", "--c-max", "--tol",
        "--radius", "--threads", "--j", "--deltas", "--config", "--bogus", "", "--", "="};
    std::mt19937 rng(12345);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1), len(0, 7);
    for (int iter = 0; iter < 1500; ++iter) {
        std::vector<std::string> args;
        for (std::size_t k = len(rng); k > 0; --k)
            args.push_back(pool[pick(rng)]);
        args.insert(args.end(), {"--samples", "512"});
        CliRun r;
        ASSERT_NO_THROW(r = run(args));
        ASSERT_TRUE(r.code == 0 || r.code == 1 || r.code == 2);
        if (r.code != 0) {
            EXPECT_FALSE(r.err.empty() && r.out.find("verdict: fail") == std::string::npos);
        }
    }
}

TEST(Cli, FuzzedPolynomialTextNeverEscapes) {
    const std::string alphabet = "z12+-*^()/i ,.|3";
    std::mt19937 rng(99);
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1), len(0, 10);
    for (int iter = 0; iter < 1500; ++iter) {
        std::string s;
        for (std::size_t k = len(rng); k > 0; --k)
            s += alphabet[pick(rng)];
        for (auto args : {std::vector<std::string>{"stdbasis", "-D", "6", s},
                          std::vector<std::string>{"divide", s, "z1"},
                          std::vector<std::string>{"lct", "--weight", s}}) {
            CliRun r;
            ASSERT_NO_THROW(r = run(args)) << s;
            ASSERT_TRUE(r.code == 0 || r.code == 1 || r.code == 2) << s;
            if (r.code != 0) {
                EXPECT_FALSE(r.err.empty()) << s;
            }
        }
    }
}
