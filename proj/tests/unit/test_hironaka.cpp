#include <gtest/gtest.h>

#include <chrono>

#include "test_support.hpp"
#include "wlct/hironaka.hpp"
#include "wlct/poly_io.hpp"

using namespace wlct;

namespace {

Polynomial P(const char* text, std::size_t n = 2) { return parse_polynomial(text, n); }

Polynomial combination(const std::vector<Polynomial>& h, const std::vector<Polynomial>& g, std::size_t n) {
    Polynomial acc(n);
    for (std::size_t i = 0; i < g.size(); ++i)
        acc = acc + h[i] * g[i];
    return acc;
}

} // namespace

TEST(Divide, SingleReductionStep) {
    auto r = divide(P("z2"), {P("z2 - z1^2")}, 10);
    EXPECT_EQ(r.quotients.at(0), P("1"));
    EXPECT_EQ(r.remainder, P("z1^2"));
}

TEST(Divide, SelfDivision) {
    Polynomial g = P("z1*z2 - 3*z2^2 + i*z1^3");
    for (std::int64_t D : {3, 6, 12}) {
        auto r = divide(g, {g}, D);
        EXPECT_EQ(r.quotients.at(0), P("1"));
        EXPECT_TRUE(r.remainder.is_zero());
    }
}

TEST(Divide, GeometricSeriesQuotient) {
    // z2 = (1 + z2 + z2^2)(z2 - z2^2) + z2^4
    auto r = divide(P("z2"), {P("z2 - z2^2")}, 3);
    EXPECT_EQ(r.quotients.at(0), P("1 + z2 + z2^2"));
    EXPECT_TRUE(r.remainder.is_zero());
    EXPECT_EQ(r.trunc, 3u);
}

TEST(Divide, Errors) {
    EXPECT_THROW(divide(P("z1"), {Polynomial(2)}, 4), PreconditionError);
    EXPECT_THROW(divide(P("z1"), {P("z1")}, -1), PreconditionError);
    EXPECT_THROW(divide(P("z1"), std::vector<Polynomial>{}, 4), PreconditionError);
    EXPECT_THROW(divide(P("z1"), {P("z1^5")}, 3), PreconditionError);
}

TEST(Divide, IdentityRemainderAndQuotientBounds) {
    std::mt19937_64 rng(31337);
    for (int iter = 0; iter < 200; ++iter) {
        std::size_t n = 1 + iter % 3;
        std::int64_t D = 8;
        Polynomial f = wlct::testing::random_nonzero_polynomial(rng, n, 6, 6, iter % 4 == 0);
        std::vector<Polynomial> gens;
        for (int k = 0; k < 1 + iter % 3; ++k)
            gens.push_back(wlct::testing::random_nonzero_polynomial(rng, n, 4, 4));
        auto r = divide(f, gens, D);
        Polynomial diff = f - combination(r.quotients, gens, n) - r.remainder;
        EXPECT_TRUE(diff.truncate(static_cast<std::uint64_t>(D)).is_zero());
        for (const auto& t : r.remainder.terms())
            for (const auto& g : gens)
                EXPECT_FALSE(g.initial_monomial().divides(t.exp));
        for (std::size_t i = 0; i < gens.size(); ++i)
            if (!r.quotients[i].is_zero()) {
                EXPECT_NE(cmp_monomials(r.quotients[i].initial_monomial() + gens[i].initial_monomial(),
                                        f.initial_monomial()),
                          Ordering::Less);
            }
    }
}

TEST(StandardBasis, MonomialIdealIsSortedByInitialMonomial) {
    auto B = standard_basis({P("z1^2"), P("z1*z2")}, 8);
    ASSERT_EQ(B.gens.size(), 2u);
    EXPECT_EQ(B.gens[0], P("z1*z2"));
    EXPECT_EQ(B.gens[1], P("z1^2"));
    EXPECT_TRUE(is_standard_basis(B));
}

TEST(StandardBasis, LinearGeneratorsGiveMaximalIdeal) {
    auto B = standard_basis({P("z1 - z2"), P("z1 + z2")}, 4);
    ASSERT_EQ(B.gens.size(), 2u);
    EXPECT_EQ(B.gens[0], P("z2"));
    EXPECT_EQ(B.gens[1], P("z1"));
    EXPECT_EQ(B.im_ideal.gens(), (std::vector<Exponent>{{0, 1}, {1, 0}}));
}

TEST(StandardBasis, SingleGenerator) {
    auto B = standard_basis({P("z2 - z1^2")}, 6);
    ASSERT_EQ(B.gens.size(), 1u);
    EXPECT_EQ(B.gens[0], P("z2 - z1^2"));
    EXPECT_EQ(B.gens[0].initial_monomial(), (Exponent{0, 1}));
    EXPECT_TRUE(is_standard_basis(B));
}

TEST(StandardBasis, UnitIdeal) {
    auto B = standard_basis({P("1 + z1"), P("z2")}, 5);
    ASSERT_EQ(B.gens.size(), 1u);
    EXPECT_EQ(B.gens[0], P("1"));
}

TEST(StandardBasis, Errors) {
    EXPECT_THROW(standard_basis({}, 4), PreconditionError);
    EXPECT_THROW(standard_basis({P("z1"), Polynomial(2)}, 4), PreconditionError);
    EXPECT_THROW(standard_basis({P("z1^6")}, 4), PreconditionError);
}

TEST(StandardBasis, HiddenInitialMonomialFromCancellation) {
    // z1 * (z1 z2) - z2 * (z1^2 + z2^3) = -z2^4: only visible via the s-pair.
    auto B = standard_basis({P("z1*z2"), P("z1^2 + z2^3")}, 6);
    EXPECT_TRUE(is_standard_basis(B));
    EXPECT_EQ(B.im_ideal.gens(), (std::vector<Exponent>{{1, 1}, {2, 0}, {0, 4}}));
    Polynomial f = P("z1") * P("z1*z2") + P("z2^2 + 3") * P("z1^2 + z2^3");
    EXPECT_TRUE(normal_form(f, B).is_zero());
}

TEST(IsStandardBasis, UnsortedInputRejectedInterreducedAccepted) {
    StandardBasis raw{{P("z1 + z1*z2"), P("z2")}, 6, minimal_generators(std::vector<Exponent>{{1, 0}, {0, 1}})};
    EXPECT_FALSE(is_standard_basis(raw));
    auto B = standard_basis(raw.gens, 6);
    EXPECT_TRUE(is_standard_basis(B));
    EXPECT_EQ(B.gens[0], P("z2"));
    EXPECT_EQ(B.gens[1], P("z1"));
}

TEST(IsStandardBasis, MissingSPairDetected) {
    // {z1 z2, z1^2 + z2^3} misses the initial monomial z2^4.
    StandardBasis raw{{P("z1*z2"), P("z1^2 + z2^3")}, 6, MonomialIdeal(2)};
    EXPECT_FALSE(is_standard_basis(raw));
    StandardBasis single{{P("z1*z2 + z1^3")}, 6, MonomialIdeal(2)};
    EXPECT_TRUE(is_standard_basis(single));
}

TEST(NormalForm, Examples) {
    auto B = standard_basis({P("z1"), P("z2")}, 6);
    EXPECT_EQ(normal_form(P("1"), B), P("1"));
    auto C = standard_basis({P("z1 - z2^2"), P("z2^3 + z1*z2")}, 8);
    Polynomial f = P("z1") * C.gens[0] + C.gens[1];
    EXPECT_TRUE(normal_form(f, C).is_zero());
}

TEST(NormalForm, Idempotent) {
    std::mt19937_64 rng(4242);
    for (int iter = 0; iter < 60; ++iter) {
        std::size_t n = 2 + iter % 2;
        std::vector<Polynomial> gens;
        for (int k = 0; k < 2; ++k)
            gens.push_back(wlct::testing::random_nonzero_polynomial(rng, n, 3, 3));
        auto B = standard_basis(gens, 7);
        Polynomial f = wlct::testing::random_polynomial(rng, n, 6, 6);
        Polynomial r = normal_form(f, B);
        EXPECT_EQ(normal_form(r, B), r);
    }
}

TEST(InterreduceToShape, AlreadyInShape) {
    auto ref = standard_basis({P("z2"), P("z1^2")}, 6);
    auto out = interreduce_to_shape({P("z2 + z1^3"), P("z1^2 - 2*z1*z2^2")}, ref, 6);
    EXPECT_EQ(out.reduced[0], P("z2 + z1^3"));
    EXPECT_EQ(out.reduced[1], P("z1^2 - 2*z1*z2^2"));
    EXPECT_TRUE(out.multipliers[1][0].is_zero());
}

TEST(InterreduceToShape, CaseTwoElimination) {
    auto ref = standard_basis({P("z2"), P("z1^2")}, 6);
    auto out = interreduce_to_shape({P("z2"), P("z1^2 + z2")}, ref, 6);
    EXPECT_EQ(out.reduced[1], P("z1^2"));
    EXPECT_EQ(out.multipliers[1][0], P("1"));
}

TEST(InterreduceToShape, PreconditionViolation) {
    auto ref = standard_basis({P("z2"), P("z1^2")}, 6);
    EXPECT_THROW(interreduce_to_shape({P("z2"), P("1 + z1")}, ref, 6), PreconditionError);
    EXPECT_THROW(interreduce_to_shape({P("z1^3"), P("z1^2")}, ref, 6), PreconditionError);
}

TEST(InterreduceToShape, RandomPerturbationsRecoverReferenceShape) {
    // F_l = f_l + (lower-order combination of earlier generators) mimics the
    // situation IM(F_l) <= IM(f_l) with the IM lying in the initial ideal.
    std::mt19937_64 rng(77);
    for (int iter = 0; iter < 40; ++iter) {
        std::size_t n = 2 + iter % 2;
        std::vector<Polynomial> gens;
        for (int k = 0; k < 3; ++k)
            gens.push_back(wlct::testing::random_nonzero_polynomial(rng, n, 3, 3));
        auto ref = standard_basis(gens, 8);
        std::vector<Polynomial> cand;
        for (std::size_t l = 0; l < ref.gens.size(); ++l) {
            Polynomial F = ref.gens[l];
            for (std::size_t m = 0; m < l; ++m)
                F = F + wlct::testing::random_polynomial(rng, n, 2, 2) * ref.gens[m];
            cand.push_back(F.truncate(8));
        }
        auto out = interreduce_to_shape(cand, ref, 8);
        for (std::size_t l = 0; l < ref.gens.size(); ++l) {
            EXPECT_EQ(out.reduced[l].initial_monomial(), ref.gens[l].initial_monomial());
            Polynomial rebuilt = cand[l];
            for (std::size_t m = 0; m < l; ++m)
                rebuilt = rebuilt - out.multipliers[l][m] * out.reduced[m];
            EXPECT_TRUE((rebuilt - out.reduced[l]).truncate(8).is_zero());
        }
    }
}
