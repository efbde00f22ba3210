#include <catch2/catch_amalgamated.hpp>

#include "qlattice/lattice.hpp"
#include "qlattice/rng.hpp"

#include <algorithm>
#include <set>

using namespace qlattice;

TEST_CASE("binomial basics") {
    CHECK(binomial(4, 2) == 6);
    CHECK(binomial(4, 1) == 4);
    CHECK(binomial(16, 8) == 12870);
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(5, -1) == 0);
    CHECK(binomial(5, 6) == 0);
    CHECK_THROWS_AS(binomial(-1, 0), std::invalid_argument);
}

TEST_CASE("binomial detects overflow instead of wrapping") {
    CHECK(binomial(64, 32) == 1832624140942590534ULL); // still fits
    CHECK_THROWS_AS(binomial(70, 35), std::overflow_error);
    CHECK_THROWS_AS(binomial(200, 100), std::overflow_error);
}

TEST_CASE("binomial satisfies Pascal's rule") {
    for (int n = 2; n <= 20; ++n)
        for (int k = 1; k < n; ++k)
            CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
}

TEST_CASE("level_size") {
    CHECK(level_size(4, 0) == 1);
    CHECK(level_size(3, 2) == 3);
    CHECK(level_size(10, 5) == 252);
    CHECK_THROWS_AS(level_size(4, 5), std::invalid_argument);
    CHECK_THROWS_AS(level_size(33, 1), std::invalid_argument);
}

TEST_CASE("ItemSet membership and overlap") {
    const auto s = ItemSet::from_items({1, 2});
    const auto t = ItemSet::from_items({1, 3});
    CHECK(s.size() == 2);
    CHECK(s.contains(1));
    CHECK_FALSE(s.contains(3));
    CHECK(overlap(s, t) == 1);
    CHECK(overlap(s, s) == s.size());
    CHECK(overlap(ItemSet::from_items({1, 2}), ItemSet::from_items({3, 4})) == 0);
    CHECK(s.to_string() == "{1,2}");
    CHECK_THROWS_AS(ItemSet{}.with(33), std::out_of_range);
}

TEST_CASE("overlap is symmetric and bounded") {
    rng::SplitMix64 gen(7);
    for (int trial = 0; trial < 500; ++trial) {
        const auto a = ItemSet::from_bits(static_cast<std::uint32_t>(gen.next()) & 0xffffu);
        const auto b = ItemSet::from_bits(static_cast<std::uint32_t>(gen.next()) & 0xffffu);
        CHECK(overlap(a, b) == overlap(b, a));
        CHECK(overlap(a, b) <= std::min(a.size(), b.size()));
    }
}

TEST_CASE("rank order is colexicographic") {
    CHECK(rank_set(ItemSet{}) == LevelIndex{0, 0});
    CHECK(rank_set(ItemSet::from_items({1})) == LevelIndex{1, 0});
    CHECK(unrank(LevelIndex{0, 0}, 4) == ItemSet{});
    CHECK(unrank(LevelIndex{2, 0}, 4) == ItemSet::from_items({1, 2}));

    const auto level = enumerate_level(3, 2);
    REQUIRE(level.size() == 3);
    CHECK(level[0] == ItemSet::from_items({1, 2}));
    CHECK(level[1] == ItemSet::from_items({1, 3}));
    CHECK(level[2] == ItemSet::from_items({2, 3}));
}

TEST_CASE("rank/unrank roundtrip") {
    SECTION("all sets of size 3 over 6 items") {
        for (ItemSet s : enumerate_level(6, 3)) {
            const auto idx = rank_set(s);
            CHECK(unrank(idx, 6) == s);
        }
    }
    SECTION("all ranks at N=7, level 2") {
        for (std::uint64_t r = 0; r < level_size(7, 2); ++r) {
            const LevelIndex idx{2, r};
            CHECK(rank_set(unrank(idx, 7)) == idx);
        }
    }
    SECTION("every level for N <= 10") {
        for (int n = 0; n <= 10; ++n)
            for (int i = 0; i <= n; ++i) {
                const auto level = enumerate_level(n, i);
                REQUIRE(level.size() == level_size(n, i));
                for (std::uint64_t r = 0; r < level.size(); ++r) {
                    CHECK(rank_set(level[r]) == LevelIndex{i, r});
                    CHECK(unrank(LevelIndex{i, r}, n) == level[r]);
                }
            }
    }
}

TEST_CASE("unrank rejects out-of-range ranks") {
    CHECK_THROWS_AS(unrank(LevelIndex{2, 6}, 4), std::out_of_range);
    CHECK_THROWS_AS(unrank(LevelIndex{0, 1}, 4), std::out_of_range);
}

TEST_CASE("enumerate_level yields each set exactly once") {
    CHECK(enumerate_level(4, 0) == std::vector<ItemSet>{ItemSet{}});
    const auto level = enumerate_level(6, 3);
    CHECK(level.size() == 20);
    std::set<std::uint32_t> distinct;
    for (ItemSet s : level) {
        CHECK(s.size() == 3);
        distinct.insert(s.bits());
    }
    CHECK(distinct.size() == 20);
}

TEST_CASE("facet_ranks matches rank_set of each removed member") {
    for (ItemSet s : enumerate_level(9, 4)) {
        std::uint64_t got[kMaxItems];
        const int k = facet_ranks(s, got);
        REQUIRE(k == 4);
        const auto members = s.items();
        for (int m = 0; m < k; ++m)
            CHECK(got[m] == rank_set(s.without(members[static_cast<std::size_t>(m)])).rank);
    }
}
