#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chacon/tower.hpp"

#include <algorithm>
#include <random>

using chacon::LevelAddress;
using chacon::TowerGeometry;
using chacon::TriadicRational;

namespace {
TriadicRational tr(long long num, int exp) { return TriadicRational::scaled(num, exp); }
} // namespace

TEST_CASE("heights follow the recurrence") {
    TowerGeometry g(12);
    CHECK(g.height(0) == 1);
    CHECK(g.height(1) == 8);
    CHECK(g.height(2) == 50);
    CHECK(g.height(3) == 302);
    CHECK(g.height(6) == 65318);
    for (int n = 0; n < 12; ++n) CHECK(g.height(n + 1) == 2 * (3 * g.height(n) + 1));
    for (int n = 1; n <= 12; ++n) CHECK(g.height(n) % 2 == 0);
    CHECK_THROWS_AS(g.height(13), chacon::DepthExhausted);
}

TEST_CASE("support lengths are increasing and exact") {
    TowerGeometry g(8);
    CHECK(g.support_length(0) == tr(1, 0));
    CHECK(g.support_length(1) == tr(8, 1));
    CHECK(g.support_length(3) == tr(302, 3));
    for (int n = 0; n < 8; ++n) CHECK(g.support_length(n) < g.support_length(n + 1));
}

TEST_CASE("tower-1 level table matches the step-1 construction") {
    TowerGeometry g(4);
    // left endpoints: [0,1/3), [1/3,2/3), [1,4/3), [2/3,1), then 4 spacers
    CHECK(g.level_left(1, 0) == TriadicRational());
    CHECK(g.level_left(1, 1) == tr(1, 1));
    CHECK(g.level_left(1, 2) == tr(1, 0));
    CHECK(g.level_left(1, 3) == tr(2, 1));
    CHECK(g.level_left(1, 4) == tr(4, 1));
    CHECK(g.level_left(1, 7) == tr(7, 1));
    CHECK(g.level_left(2, 8) == tr(1, 2));
    CHECK_THROWS_AS(g.level_left(1, 8), std::out_of_range);
}

TEST_CASE("locate inverts level_left") {
    TowerGeometry g(6);
    LevelAddress a = g.locate(1, tr(1, 0));
    CHECK(a.level == 2);
    CHECK(a.offset.is_zero());
    a = g.locate(1, TriadicRational());
    CHECK(a.level == 0);
    a = g.locate(2, tr(8, 1));  // L_1 is the first 2-spacer, level 2*h_1
    CHECK(a.level == 16);
    CHECK(a.offset.is_zero());
    CHECK_THROWS_AS(g.locate(1, tr(8, 1)), std::out_of_range);
}

TEST_CASE("subcolumn indicator") {
    TowerGeometry g(4);
    CHECK(g.subcolumn(1, TriadicRational()) == 1);
    CHECK(g.subcolumn(1, tr(5, 3)) == 2);   // 5/27 in the middle third of [0,1/3)
    CHECK(g.subcolumn(0, tr(2, 1)) == 3);
}

TEST_CASE("half tower membership") {
    TowerGeometry g(4);
    CHECK(g.in_half_tower(1, tr(2, 1)));          // level 3 < 4
    CHECK_FALSE(g.in_half_tower(1, tr(4, 1)));    // level 4
    CHECK_FALSE(g.in_half_tower(2, g.support_length(2)));
    // C_0 is the whole base interval by convention
    CHECK(g.in_half_tower(0, tr(2, 1)));
    CHECK_FALSE(g.in_half_tower(0, tr(1, 0)));
}

TEST_CASE("tiling: levels of tower n partition [0, L_n)") {
    TowerGeometry g(6);
    for (int n = 0; n <= 6; ++n) {
        std::vector<TriadicRational> lefts;
        lefts.reserve(g.height(n));
        for (std::int64_t l = 0; l < g.height(n); ++l) lefts.push_back(g.level_left(n, l));
        std::sort(lefts.begin(), lefts.end(),
                  [](const TriadicRational& a, const TriadicRational& b) { return a < b; });
        CHECK(lefts.front().is_zero());
        TriadicRational width = tr(1, n);
        bool ok = true;
        for (size_t i = 0; i + 1 < lefts.size(); ++i)
            ok = ok && (lefts[i] + width == lefts[i + 1]);
        CHECK(ok);
        CHECK(lefts.back() + width == g.support_length(n));
    }
}

TEST_CASE("round trip with sampled offsets") {
    TowerGeometry g(5);
    std::mt19937_64 rng(42);
    for (int n = 0; n <= 5; ++n) {
        std::uniform_int_distribution<long long> off(0, chacon::pow3(3).convert_to<long long>() - 1);
        for (std::int64_t l = 0; l < g.height(n); ++l) {
            TriadicRational left = g.level_left(n, l);
            for (int s = 0; s < 5; ++s) {
                TriadicRational offset = TriadicRational(chacon::BigInt(off(rng)), n + 3);
                LevelAddress a = g.locate(n, left + offset);
                CHECK(a.level == l);
                CHECK(a.offset == offset);
            }
        }
    }
}

TEST_CASE("scale coherence between consecutive depths") {
    TowerGeometry g(4);
    // Each tower-n level splits into 3 tower-(n+1) levels via child_level,
    // and t_n is constant on each of them.
    for (int n = 0; n < 4; ++n) {
        for (std::int64_t l = 0; l < g.height(n); ++l) {
            for (int c = 1; c <= 3; ++c) {
                std::int64_t child = g.child_level(n, l, c);
                CHECK(g.parent_level(n + 1, child) == l);
                TriadicRational left = g.level_left(n + 1, child);
                CHECK(g.locate(n, left).level == l);
                CHECK(g.subcolumn(n, left) == c);
                // midpoint of the child level gives the same answers
                TriadicRational mid = left + TriadicRational::scaled(1, n + 2);
                CHECK(g.locate(n, mid).level == l);
                CHECK(g.subcolumn(n, mid) == c);
            }
        }
    }
}

TEST_CASE("spacers have no parent") {
    TowerGeometry g(3);
    for (int n = 1; n <= 3; ++n) {
        std::int64_t h = g.height(n - 1);
        CHECK(g.parent_level(n, 2 * h) == -1);
        for (std::int64_t l = 3 * h + 1; l < g.height(n); ++l)
            CHECK(g.parent_level(n, l) == -1);
    }
}

TEST_CASE("nesting: C_n inside C_{n+1}, tower n-1 inside C_n") {
    TowerGeometry g(5);
    for (int n = 1; n < 5; ++n) {
        // every C_n level, refined through any subcolumn, lands in C_{n+1}
        for (std::int64_t l = 0; l < g.half_height(n); ++l)
            for (int c = 1; c <= 3; ++c)
                CHECK(g.child_level(n, l, c) < g.half_height(n + 1));
        // every tower-(n-1) level sits inside C_n through any subcolumn
        for (std::int64_t l = 0; l < g.height(n - 1); ++l)
            for (int c = 1; c <= 3; ++c)
                CHECK(g.child_level(n - 1, l, c) < g.half_height(n));
    }
}
