#include <gtest/gtest.h>

#include <set>

#include "wlct/philox.hpp"

using namespace wlct;

TEST(Philox, KnownAnswerVectors) {
    using C = Philox4x32::Counter;
    EXPECT_EQ(Philox4x32::block(C{0, 0, 0, 0}, {0, 0}), (C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(Philox4x32::block(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
              (C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
    EXPECT_EQ(Philox4x32::block(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
              (C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Philox, UniformsInUnitInterval) {
    double sum = 0;
    const int N = 1 << 16;
    for (std::uint32_t i = 0; i < N; ++i) {
        auto b = Philox4x32::block({i, 0, 0, 0}, Philox4x32::key_from_seed(42));
        double u = uniform53(b[0], b[1]), v = uniform32(b[2]);
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        ASSERT_LT(v, 1.0);
        sum += u;
    }
    EXPECT_NEAR(sum / N, 0.5, 0.01);
}

TEST(Philox, DistinctSeedsDistinctStreams) {
    std::set<std::uint32_t> first;
    for (std::uint64_t s = 0; s < 100; ++s)
        first.insert(Philox4x32::block({0, 0, 0, 0}, Philox4x32::key_from_seed(s))[0]);
    EXPECT_EQ(first.size(), 100u);
}
