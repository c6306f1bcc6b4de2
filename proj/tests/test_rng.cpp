#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "simplelogic/rng.hpp"

using namespace simplelogic;

TEST_CASE("philox matches the published known-answer vectors") {
    auto r0 = Philox4x32::bijection({0, 0, 0, 0}, {0, 0});
    CHECK(r0 == std::array<std::uint32_t, 4>{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});

    auto r1 = Philox4x32::bijection({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                                    {0xffffffff, 0xffffffff});
    CHECK(r1 == std::array<std::uint32_t, 4>{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});

    auto r2 = Philox4x32::bijection({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                                    {0xa4093822, 0x299f31d0});
    CHECK(r2 == std::array<std::uint32_t, 4>{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and distinct") {
    RandomStream a(42, 7);
    RandomStream b(42, 7);
    RandomStream c(42, 8);
    bool any_differs = false;
    for (int i = 0; i < 100; ++i) {
        const auto va = a.next_u32();
        CHECK(va == b.next_u32());
        if (va != c.next_u32()) any_differs = true;
    }
    CHECK(any_differs);
}

TEST_CASE("uniform_int covers its range inclusively") {
    RandomStream rng(1, 0);
    std::set<int> seen;
    for (int i = 0; i < 2000; ++i) {
        const int v = rng.uniform_int(3, 7);
        CHECK(v >= 3);
        CHECK(v <= 7);
        seen.insert(v);
    }
    CHECK(seen.size() == 5);
}

TEST_CASE("uniform01 stays in [0,1) with a sane mean") {
    RandomStream rng(2, 0);
    double sum = 0.0;
    for (int i = 0; i < 20000; ++i) {
        const double u = rng.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        sum += u;
    }
    CHECK(std::abs(sum / 20000.0 - 0.5) < 0.02);
}

TEST_CASE("normal has roughly unit variance") {
    RandomStream rng(3, 0);
    double sum = 0.0, sum2 = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal();
        sum += x;
        sum2 += x * x;
    }
    CHECK(std::abs(sum / n) < 0.05);
    CHECK(std::abs(sum2 / n - 1.0) < 0.1);
}

TEST_CASE("sample_indices draws distinct values in range") {
    RandomStream rng(4, 0);
    for (int trial = 0; trial < 100; ++trial) {
        const auto picked = rng.sample_indices(30, 10);
        CHECK(picked.size() == 10);
        std::set<int> distinct(picked.begin(), picked.end());
        CHECK(distinct.size() == 10);
        for (int v : picked) {
            CHECK(v >= 0);
            CHECK(v < 30);
        }
    }
}
