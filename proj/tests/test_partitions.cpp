#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <thread>

#include "freehaag/counting.hpp"
#include "freehaag/enumeration.hpp"
#include "freehaag/mobius.hpp"
#include "freehaag/partition.hpp"
#include "freehaag/corpus.hpp"

using namespace freehaag;

TEST_CASE("partition canonical form and validation") {
    Partition p(4, {{2, 3}, {4, 1}});
    REQUIRE(p.blocks() == std::vector<std::vector<int>>{{1, 4}, {2, 3}});
    REQUIRE(p == Partition(4, {{1, 4}, {3, 2}}));

    CHECK_THROWS_AS(Partition(4, {{1, 2}, {2, 3, 4}}), std::invalid_argument);
    CHECK_THROWS_AS(Partition(4, {{1, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(Partition(4, {{1, 2}, {3, 5}}), std::invalid_argument);
    CHECK_THROWS_AS(Partition(0, {}), std::invalid_argument);
}

TEST_CASE("partition text round trip") {
    Partition p(4, {{1, 4}, {2, 3}});
    REQUIRE(p.to_text() == "{1,4|2,3}");
    REQUIRE(Partition::from_text("{1,4|2,3}") == p);
    REQUIRE(Partition::from_text(p.to_text()).to_text() == p.to_text());

    // singletons and the full block
    REQUIRE(Partition::discrete(3).to_text() == "{1|2|3}");
    REQUIRE(Partition::full(3).to_text() == "{1,2,3}");
    CHECK_THROWS_AS(Partition::from_text("1,2"), input_error);
}

TEST_CASE("is_noncrossing") {
    CHECK_FALSE(is_noncrossing(Partition(4, {{1, 3}, {2, 4}})));
    CHECK(is_noncrossing(Partition(4, {{1, 4}, {2, 3}})));
    CHECK(is_noncrossing(Partition::full(6)));
    CHECK(is_noncrossing(Partition::discrete(5)));
    CHECK(is_noncrossing(Partition(5, {{1, 3, 5}, {2}, {4}})));
    CHECK_FALSE(is_noncrossing(Partition(6, {{1, 4}, {2, 5}, {3, 6}})));
    CHECK_FALSE(is_noncrossing(Partition(5, {{1, 3}, {2, 4, 5}})));
}

TEST_CASE("catalan and fuss-catalan values") {
    CHECK(catalan(0) == 1);
    CHECK(catalan(1) == 1);
    CHECK(catalan(2) == 2);
    CHECK(catalan(3) == 5);
    CHECK(catalan(4) == 14);
    CHECK(catalan(6) == 132);

    CHECK(fuss_catalan(3, 4) == 140);
    CHECK(fuss_catalan(2, 3) == 12);
    for (int m = 1; m <= 8; ++m) CHECK(fuss_catalan(1, m) == catalan(m));
    for (int n = 1; n <= 8; ++n) CHECK(fuss_catalan(n, 1) == 1);
}

TEST_CASE("enumerate_nc counts match catalan") {
    for (int n = 1; n <= 10; ++n) {
        long count = 0;
        for_each_nc(n, [&](const Partition& p) {
            ++count;
            if (n <= 6) REQUIRE(is_noncrossing(p));
        });
        CHECK(BigInt(count) == catalan(n));
    }
}

TEST_CASE("enumerate_nc is deterministic, duplicate-free, and lexicographic in the first block") {
    auto all = enumerate_nc(5);
    std::set<std::string> seen;
    for (const auto& p : all) REQUIRE(seen.insert(p.to_text()).second);
    REQUIRE(all == enumerate_nc(5));

    // first partition: everything fused as early as possible is {1};
    // actually the block of 1 grows lexicographically: {1} first, then
    // {1,2}, ..., ending with {1,5}.
    REQUIRE(all.front().blocks().front() == std::vector<int>{1});
    REQUIRE(all.back().blocks().front() == std::vector<int>{1, 5});
    std::vector<std::vector<int>> first_blocks;
    for (const auto& p : all)
        if (first_blocks.empty() || p.blocks().front() != first_blocks.back())
            first_blocks.push_back(p.blocks().front());
    REQUIRE(std::is_sorted(first_blocks.begin(), first_blocks.end()));
}

TEST_CASE("enumerate_nc golden order at n = 3") {
    std::vector<std::string> got;
    for_each_nc(3, [&](const Partition& p) { got.push_back(p.to_text()); });
    REQUIRE(got == std::vector<std::string>{"{1|2|3}", "{1|2,3}", "{1,2|3}", "{1,2,3}", "{1,3|2}"});
}

TEST_CASE("enumeration ceiling") {
    CHECK_THROWS_AS(enumerate_nc(17), size_error);
    CHECK_THROWS_AS(enumerate_nc(9, 8), size_error);
    CHECK_NOTHROW(enumerate_nc(9, 9));
}

TEST_CASE("leq basics") {
    const auto zero4 = Partition::discrete(4);
    const auto one4 = Partition::full(4);
    for_each_nc(4, [&](const Partition& p) {
        CHECK(leq(zero4, p));
        CHECK(leq(p, one4));
        CHECK(leq(p, p));
        if (!(p == one4)) CHECK_FALSE(leq(one4, p));
    });
    CHECK(leq(Partition(4, {{1, 2}, {3}, {4}}), Partition(4, {{1, 2, 4}, {3}})));
    CHECK_FALSE(leq(Partition(4, {{1, 3}, {2}, {4}}), Partition(4, {{1, 2}, {3, 4}})));
    CHECK_THROWS_AS(leq(Partition::discrete(3), Partition::discrete(4)), std::invalid_argument);
}

TEST_CASE("leq is a partial order on NC(n), n <= 6, exhaustive") {
    for (int n = 2; n <= 6; ++n) {
        auto all = enumerate_nc(n);
        // precompute the relation, then check the axioms over all triples
        const size_t count = all.size();
        std::vector<std::vector<char>> le(count, std::vector<char>(count));
        for (size_t i = 0; i < count; ++i)
            for (size_t j = 0; j < count; ++j) le[i][j] = leq(all[i], all[j]) ? 1 : 0;
        for (size_t i = 0; i < count; ++i) {
            REQUIRE(le[i][i]);
            for (size_t j = 0; j < count; ++j) {
                if (le[i][j] && le[j][i]) REQUIRE(i == j);
                if (!le[i][j]) continue;
                for (size_t k = 0; k < count; ++k)
                    if (le[j][k]) REQUIRE(le[i][k]);
            }
        }
    }
}

TEST_CASE("mobius special values") {
    CHECK(mobius(Partition::discrete(3), Partition::full(3)) == 2);
    CHECK(mobius(Partition::discrete(4), Partition::full(4)) == -5);
    for_each_nc(5, [&](const Partition& p) { CHECK(mobius(p, p) == 1); });
    CHECK_THROWS_AS(mobius(Partition::full(3), Partition::discrete(3)), std::invalid_argument);
    CHECK_THROWS_AS(mobius(Partition(4, {{1, 3}, {2, 4}}), Partition::full(4)),
                    std::invalid_argument);
}

TEST_CASE("mobius(0_n, 1_n) = (-1)^(n-1) catalan(n-1) for n <= 9") {
    for (int n = 1; n <= 9; ++n) {
        BigInt expect = catalan(n - 1);
        if (n % 2 == 0) expect = -expect;
        CHECK(mobius(Partition::discrete(n), Partition::full(n)) == expect);
    }
}

TEST_CASE("mobius bound |mu(sigma, 1_n)| <= 4^(n-1), exhaustive n <= 8") {
    for (int n = 2; n <= 8; ++n) {
        BigInt bound = 1;
        for (int i = 1; i < n; ++i) bound *= 4;
        const auto one = Partition::full(n);
        for_each_nc(n, [&](const Partition& sigma) {
            BigInt v = mobius(sigma, one);
            if (v < 0) v = -v;
            REQUIRE(v <= bound);
        });
    }
}

TEST_CASE("mobius agrees with the generic interval recursion") {
    for (int n = 2; n <= 6; ++n) {
        auto all = enumerate_nc(n);
        for (const auto& sigma : all)
            for (const auto& pi : all)
                if (leq(sigma, pi)) REQUIRE(mobius(sigma, pi) == mobius_generic(sigma, pi));
    }
}

TEST_CASE("mobius-zeta inversion on 50 random pairs, n <= 8") {
    detail::SplitMix64 rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 3 + static_cast<int>(rng.below(6)); // 3..8
        auto all = enumerate_nc(n);
        const auto& sigma = all[static_cast<size_t>(rng.below(all.size()))];
        const auto& pi = all[static_cast<size_t>(rng.below(all.size()))];
        if (!leq(sigma, pi)) {
            --trial;
            continue;
        }
        BigInt sum = 0;
        for (const auto& tau : all)
            if (leq(sigma, tau) && leq(tau, pi)) sum += mobius(tau, pi);
        CHECK(sum == (sigma == pi ? 1 : 0));
    }
}

TEST_CASE("multichain counts match fuss_catalan for n*m <= 12") {
    for (int n = 1; n <= 12; ++n)
        for (int m = 1; n * m <= 12; ++m) {
            long count = 0;
            for_each_multichain(n, m, [&](const Multichain&) { ++count; });
            CHECK(BigInt(count) == fuss_catalan(n, m));
        }
}

TEST_CASE("multichain ceiling") {
    CHECK_THROWS_AS(enumerate_multichains(1, 17), size_error);
    CHECK_THROWS_AS(enumerate_multichains(17, 2), size_error);
}

TEST_CASE("multichain examples") {
    // length-1 multichains are just NC(m) elements
    CHECK(enumerate_multichains(1, 3).size() == 5);
    // (2,2): three chains over NC(2)
    auto chains = enumerate_multichains(2, 2);
    REQUIRE(chains.size() == 3);
    const auto zero = Partition::discrete(2), one = Partition::full(2);
    CHECK(chains[0] == Multichain({zero, zero}));
    CHECK(chains[1] == Multichain({zero, one}));
    CHECK(chains[2] == Multichain({one, one}));
    CHECK_THROWS_AS(Multichain({one, zero}), std::invalid_argument);
}

TEST_CASE("mobius tables are per-thread and agree across threads") {
    BigInt from_a, from_b;
    std::thread a([&] { from_a = mobius(Partition::discrete(7), Partition::full(7)); });
    std::thread b([&] { from_b = mobius(Partition::discrete(7), Partition::full(7)); });
    a.join();
    b.join();
    CHECK(from_a == from_b);
    CHECK(from_a == catalan(6));
}
