#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "freehaag/bijection.hpp"
#include "freehaag/counting.hpp"
#include "freehaag/enumeration.hpp"
#include "freehaag/pattern.hpp"

using namespace freehaag;

TEST_CASE("phi_map on the (n,1) rainbow gives the chain of one-point partitions") {
    for (int n = 1; n <= 5; ++n) {
        auto all = enumerate_star_pairings(n, 1);
        REQUIRE(all.size() == 1);
        const Multichain chain = phi_map(all[0]);
        REQUIRE(chain.length() == n);
        for (int j = 1; j <= n; ++j) REQUIRE(chain.level(j) == Partition::full(1));
    }
}

TEST_CASE("phi_map on the fully nested (2,2) pairing gives (0_2, 0_2)") {
    const PatternWord word(2, 2);
    const StarPairing nested(word, Pairing(8, {{1, 4}, {2, 3}, {5, 8}, {6, 7}}));
    const Multichain chain = phi_map(nested);
    REQUIRE(chain.length() == 2);
    CHECK(chain.level(1) == Partition::discrete(2));
    CHECK(chain.level(2) == Partition::discrete(2));
}

TEST_CASE("q_map hand examples at (2,2)") {
    const auto zero = Partition::discrete(2), one = Partition::full(2);

    // all-discrete chain: verticals c(k,j) ~ c*(k,j)
    const StarPairing verticals = q_map(Multichain({zero, zero}), 2);
    CHECK(verticals.pairing() == Pairing(8, {{2, 3}, {1, 4}, {6, 7}, {5, 8}}));

    const StarPairing mixed = q_map(Multichain({zero, one}), 2);
    CHECK(mixed.pairing() == Pairing(8, {{1, 8}, {4, 5}, {2, 3}, {6, 7}}));

    const StarPairing rainbow = q_map(Multichain({one, one}), 2);
    CHECK(rainbow.pairing() == Pairing(8, {{1, 8}, {2, 7}, {3, 6}, {4, 5}}));
}

TEST_CASE("round trips Q(P(pi)) = pi and P(Q(chain)) = chain for 2nm <= 14") {
    for (int n = 1; n <= 7; ++n)
        for (int m = 1; 2 * n * m <= 14; ++m) {
            long pairings = 0;
            for_each_star_pairing(n, m, [&](const StarPairing& pi) {
                ++pairings;
                const Multichain chain = phi_map(pi);
                REQUIRE(chain.ground_size() == m);
                REQUIRE(q_map(chain, n) == pi);
            });
            long chains = 0;
            for_each_multichain(n, m, [&](const Multichain& chain) {
                ++chains;
                const StarPairing pi = q_map(chain, n);
                REQUIRE(phi_map(pi) == chain);
            });
            // cardinality transport without invoking the counting formula
            REQUIRE(pairings == chains);
        }
}

TEST_CASE("connectedness on the rainbow is empty beyond reflexivity") {
    for (int n = 1; n <= 4; ++n) {
        auto all = enumerate_star_pairings(n, 1);
        for (int j = 1; j <= n; ++j) {
            CHECK(connected_groups(all[0], j, 1, false).empty());
            CHECK(connected_groups(all[0], j, 1, true).empty());
        }
    }
}

TEST_CASE("connectedness generates the same level partitions as phi_map") {
    for (int n = 1; n <= 3; ++n)
        for (int m = 1; 2 * n * m <= 12; ++m) {
            for_each_star_pairing(n, m, [&](const StarPairing& pi) {
                const Multichain chain = phi_map(pi);
                for (int j = 1; j <= n; ++j) {
                    // symmetrized closure of the directional relations
                    detail::UnionFind uf(m + 1);
                    for (int k = 1; k <= m; ++k) {
                        for (int kp : connected_groups(pi, j, k, false)) uf.unite(k, kp);
                        for (int kp : connected_groups(pi, j, k, true)) uf.unite(k, kp);
                    }
                    const auto idx = chain.level(j).block_index();
                    for (int a = 1; a <= m; ++a)
                        for (int b = 1; b <= m; ++b) {
                            const bool same_phi = idx[static_cast<size_t>(a)] == idx[static_cast<size_t>(b)];
                            const bool same_conn = uf.find(a) == uf.find(b);
                            REQUIRE(same_phi == same_conn);
                        }
                }
            });
        }
}

TEST_CASE("connectedness example with one nontrivial chain") {
    // chain ({1,2} fused at level 1 and 2) over (1,2): pairing pairs
    // c(1,1)~c*(2,1) and c(2,1)~c*(1,1), i.e. positions {1,4},{2,3} on
    // the word (a a* a a*) ... here n=1, m=2: positions 1,3 plain.
    const Multichain chain({Partition::full(2)});
    const StarPairing pi = q_map(chain, 1);
    CHECK(pi.pairing() == Pairing(4, {{1, 4}, {2, 3}}));
    CHECK(connected_groups(pi, 1, 1, false) == std::set<int>{2});
    CHECK(connected_groups(pi, 1, 1, true).empty());
    CHECK(connected_groups(pi, 1, 2, true) == std::set<int>{1});
    CHECK(connected_groups(pi, 1, 2, false).empty());
}

TEST_CASE("q_map rejects a non-monotone chain") {
    CHECK_THROWS_AS(Multichain({Partition::full(2), Partition::discrete(2)}),
                    std::invalid_argument);
}
