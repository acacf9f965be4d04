#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "freehaag/counting.hpp"
#include "freehaag/models.hpp"
#include "freehaag/pattern.hpp"

using namespace freehaag;

TEST_CASE("circular model data") {
    const auto c = circular();
    CHECK(c.seq().alpha(1) == 1);
    CHECK(c.seq().beta(1) == 1);
    CHECK(c.seq().alpha(2) == 0);
    CHECK(c.seq().alpha(3) == 0);
    CHECK(c.two_norm_sq() == 1);
    CHECK(c.op_norm().value == 2);
    CHECK(c.op_norm().is_exact);
    CHECK(c.seq().nonnegative());
}

TEST_CASE("haar model data") {
    const auto u = haar_unitary();
    CHECK(u.seq().alpha(1) == 1);
    CHECK(u.seq().alpha(2) == -1);
    CHECK(u.seq().alpha(3) == 2);
    CHECK(u.seq().alpha(4) == -5);
    CHECK(u.op_norm().value == 1);
    CHECK_FALSE(u.seq().nonnegative());
    for (int k = 1; k <= 10; ++k) {
        Rational expect{catalan(k - 1)};
        if (k % 2 == 0) expect = -expect;
        CHECK(u.seq().alpha(k) == expect);
        CHECK(u.seq().beta(k) == expect);
    }
}

TEST_CASE("b model data") {
    const auto b11 = b_model(1, 1);
    for (int k = 1; k <= 6; ++k) CHECK(b11.seq().alpha(k) == 1);
    CHECK(b11.two_norm_sq() == 1);
    CHECK_FALSE(b11.op_norm().is_exact);
    // certified upper bound dominates 2*(1+sqrt(1/2))^2 = 5.828...
    CHECK(to_double(b11.op_norm().value) >= 2.0 * std::pow(1.0 + std::sqrt(0.5), 2.0) - 1e-12);
    CHECK(to_double(b11.op_norm().value) <= 5.83);

    const auto b = b_model(Rational(1, 4), 2);
    CHECK(b.seq().alpha(2) == 4); // gamma * lambda^4 = 16/4
    CHECK(b.two_norm_sq() == 1);  // gamma * lambda^2
}

TEST_CASE("dominating model of haar") {
    const auto u = haar_unitary();
    const auto b = dominating_model(u);
    // lambda = 256, gamma = 1/65536
    CHECK(b.seq().alpha(1) == 1);
    CHECK(b.seq().alpha(2) == 65536);
    CHECK(b.two_norm_sq() == u.two_norm_sq());
    for (int k = 1; k <= 10; ++k) CHECK(b.seq().alpha(k) >= abs(u.seq().alpha(k)));
    // the proof's lower bound (1/2)(2^4 ||a||)^{2k} holds from k = 2 on
    for (int k = 2; k <= 10; ++k) {
        Rational half_bound(1, 2);
        for (int i = 0; i < k; ++i) half_bound *= 256;
        CHECK(b.seq().alpha(k) >= half_bound);
        CHECK(half_bound >= abs(u.seq().alpha(k)));
    }
}

TEST_CASE("dominating model keeps the two-norm for every builtin") {
    const std::vector<RDiagonalModel> models{circular(), haar_unitary(), b_model(2, Rational(1, 2))};
    for (const auto& a : models) {
        const auto b = dominating_model(a);
        CHECK(b.two_norm_sq() == a.two_norm_sq());
        CHECK(b.seq().nonnegative());
    }
}

TEST_CASE("cumulant growth bound reports") {
    CHECK(cumulant_growth_bound(haar_unitary(), 4).pass);
    CHECK(cumulant_growth_bound(circular(), 4).pass);
    CHECK(cumulant_growth_bound(dominating_model(haar_unitary()), 4).pass);
    const auto report = cumulant_growth_bound(haar_unitary(), 10);
    REQUIRE(report.rows.size() == 10);
    for (const auto& row : report.rows) CHECK(row.alpha_abs <= row.bound);
}

TEST_CASE("free group oracle") {
    CHECK(free_group_moment_oracle({{1, false}, {1, true}}) == 1);
    CHECK(free_group_moment_oracle({{1, false}, {2, true}}) == 0);
    CHECK(free_group_moment_oracle({{1, false}, {2, true}, {2, false}, {1, true}}) == 1);
    CHECK(free_group_moment_oracle({}) == 1);
    CHECK(free_group_moment_oracle({{1, false}, {1, false}, {1, true}, {1, true}}) == 1);
    CHECK(free_group_moment_oracle({{1, false}, {1, false}, {1, true}}) == 0);
}

TEST_CASE("chebyshev oracle values") {
    CHECK(chebyshev_moment_oracle(1, 2) == 2);
    for (int n = 1; n <= 6; ++n) CHECK(chebyshev_moment_oracle(n, 1) == 1);
    CHECK(chebyshev_moment_oracle(2, 2) == Rational(enumerate_no_intrablock_pairings(2, 2).size()));
}

TEST_CASE("chebyshev 2m-th roots approach n+1 from below") {
    // at n=2 the roots increase in m toward 3; convergence is slow
    // (the m^{-3/2} prefactor), so m=8 sits near 72% of the limit and the
    // 85% mark is reached around m=21
    double prev = 0.0;
    for (int m = 1; m <= 8; ++m) {
        const double root = std::pow(to_double(chebyshev_moment_oracle(2, m)), 1.0 / (2.0 * m));
        CHECK(root >= prev);
        CHECK(root < 3.0);
        prev = root;
    }
    CHECK(prev > 0.70 * 3.0);
    CHECK(chebyshev_moment_oracle(2, 8) == 227475);
    const double far = std::pow(to_double(chebyshev_moment_oracle(2, 24)), 1.0 / 48.0);
    CHECK(far > 0.85 * 3.0);
    CHECK(far < 3.0);
}

TEST_CASE("model validation rejects inconsistent data") {
    // alpha_1 must equal the squared two-norm
    CHECK_THROWS_AS(RDiagonalModel("bad", circular().seq(), Rational(2), OpNorm::exact(Rational(2))),
                    std::invalid_argument);
    // two-norm above the operator norm
    CHECK_THROWS_AS(RDiagonalModel("bad", b_model(4, 1).seq(), Rational(4), OpNorm::exact(Rational(1))),
                    std::invalid_argument);
}
