#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "hypervis/rng.hpp"
#include "hypervis/stats.hpp"

using namespace hypervis;

// Known-answer vectors of the Random123 reference implementation.
TEST(Philox, KnownAnswerZero) {
    const auto out = Philox4x32::block({0, 0, 0, 0}, {0, 0});
    EXPECT_EQ(out, (Philox4x32::Counter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
}

TEST(Philox, KnownAnswerOnes) {
    const auto out = Philox4x32::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
    EXPECT_EQ(out, (Philox4x32::Counter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
}

TEST(Philox, KnownAnswerPi) {
    const auto out = Philox4x32::block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
    EXPECT_EQ(out, (Philox4x32::Counter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(Stream, SameKeyReproduces) {
    Stream a(7, 3, StreamRole::Field), b(7, 3, StreamRole::Field);
    for (int i = 0; i < 100; ++i) {
        EXPECT_EQ(a(), b());
    }
}

TEST(Stream, DistinctIndexRoleSeedDiffer) {
    std::set<std::uint64_t> first;
    first.insert(Stream(7, 3, StreamRole::Field)());
    first.insert(Stream(7, 4, StreamRole::Field)());
    first.insert(Stream(7, 3, StreamRole::Rays)());
    first.insert(Stream(8, 3, StreamRole::Field)());
    first.insert(Stream(7, std::uint64_t{1} << 40, StreamRole::Field)());
    EXPECT_EQ(first.size(), 5u);
}

TEST(Stream, UniformRangeAndMoments) {
    Stream s(1, 0, StreamRole::Aux);
    RunningStats st;
    for (int i = 0; i < 100000; ++i) {
        const double u = s.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        st.push(u);
    }
    EXPECT_NEAR(st.mean(), 0.5, 4 * std::sqrt(1.0 / 12 / 1e5));
    EXPECT_NEAR(st.variance(), 1.0 / 12, 2e-3);
}

TEST(Stream, NormalMoments) {
    Stream s(2, 0, StreamRole::Aux);
    RunningStats st, sq;
    for (int i = 0; i < 100000; ++i) {
        const double z = s.normal();
        st.push(z);
        sq.push(z * z);
    }
    EXPECT_NEAR(st.mean(), 0.0, 4 / std::sqrt(1e5));
    EXPECT_NEAR(sq.mean(), 1.0, 4 * std::sqrt(2.0 / 1e5));
}

TEST(Stream, PoissonMeanAndDispersion) {
    Stream s(3, 0, StreamRole::Aux);
    RunningStats st;
    for (int i = 0; i < 20000; ++i) {
        st.push(static_cast<double>(s.poisson(4.2)));
    }
    EXPECT_NEAR(st.mean(), 4.2, 4 * std::sqrt(4.2 / 2e4));
    EXPECT_NEAR(st.variance(), 4.2, 0.2);
    EXPECT_EQ(s.poisson(0.0), 0u);
}

TEST(Stream, ExponentialPassesKs) {
    Stream s(4, 0, StreamRole::Aux);
    std::vector<double> x(10000);
    for (auto& v : x) {
        v = s.exponential(1.7);
    }
    EXPECT_TRUE(ks_exponential(x, 1.7).pass);
}
