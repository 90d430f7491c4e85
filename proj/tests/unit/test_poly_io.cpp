#include <gtest/gtest.h>

#include "test_support.hpp"
#include "wlct/poly_io.hpp"

using namespace wlct;

TEST(ParsePolynomial, Examples) {
    Polynomial p = parse_polynomial("z1 - z2", 2);
    EXPECT_EQ(p.coefficient({1, 0}), Coefficient(1));
    EXPECT_EQ(p.coefficient({0, 1}), Coefficient(-1));
    EXPECT_EQ(p.size(), 2u);

    Polynomial q = parse_polynomial("(1/2)*z1^2*z2", 2);
    ASSERT_EQ(q.size(), 1u);
    EXPECT_EQ(q.coefficient({2, 1}), Coefficient(Rational(1, 2)));

    Polynomial r = parse_polynomial("(2/3)*z1^2*z2 - i*z2^3", 2);
    EXPECT_EQ(r.coefficient({0, 3}), -Coefficient::i());
    // Increasing order: z2^3 precedes z1^2*z2 in degree 3.
    EXPECT_EQ(to_string(r), "-i*z2^3 + 2/3*z1^2*z2");
}

TEST(ParsePolynomial, InfersDimension) {
    EXPECT_EQ(parse_polynomial("z3 + 1").dim(), 3u);
    EXPECT_EQ(parse_polynomial("5").dim(), 1u);
}

TEST(ParsePolynomial, Errors) {
    try {
        parse_polynomial("z3", 2);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("variable out of range"), std::string::npos);
        EXPECT_EQ(e.position(), 0u);
    }
    EXPECT_THROW(parse_polynomial("1/0", 1), ParseError);
    EXPECT_THROW(parse_polynomial("z1 / z1", 1), ParseError);
    EXPECT_THROW(parse_polynomial("z1 +", 1), ParseError);
    EXPECT_THROW(parse_polynomial("(z1", 1), ParseError);
    EXPECT_THROW(parse_polynomial("z1)", 1), ParseError);
    EXPECT_THROW(parse_polynomial("z0", 1), ParseError);
    EXPECT_THROW(parse_polynomial("z1^", 1), ParseError);
    EXPECT_THROW(parse_polynomial("z1^9999", 1), ParseError);
    EXPECT_THROW(parse_polynomial("", 1), ParseError);
    EXPECT_THROW(parse_polynomial(std::string(5000, '('), 1), ParseError);
}

TEST(PrintPolynomial, CanonicalForms) {
    EXPECT_EQ(to_string(Polynomial(2)), "0");
    EXPECT_EQ(to_string(parse_polynomial("z1^2 + 3 - z1*z2", 2)), "3 - z1*z2 + z1^2");
    EXPECT_EQ(to_string(parse_polynomial("(1/2 + 3*i)*z1 - 1", 1)), "-1 + (1/2+3*i)*z1");
    EXPECT_EQ(to_string(parse_polynomial("-z1/4", 1)), "-1/4*z1");
}

TEST(PrintPolynomial, RoundTripIsIdentity) {
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 500; ++iter) {
        std::size_t n = 1 + iter % 3;
        Polynomial f = wlct::testing::random_polynomial(rng, n, 6, 6, iter % 2 == 0);
        f = f.scale(Coefficient(Rational(1 + iter % 5, 1 + iter % 7)));
        std::string s = to_string(f);
        Polynomial g = parse_polynomial(s, n);
        EXPECT_EQ(g, f) << s;
        EXPECT_EQ(to_string(g), s);
    }
}
