#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "freehaag/corpus.hpp"
#include "freehaag/counting.hpp"
#include "freehaag/haagerup.hpp"

using namespace freehaag;

namespace {

ParticleTensor sum_of_generators(int k) {
    std::vector<std::string> names;
    std::map<std::vector<int>, Complex> coeffs;
    for (int i = 0; i < k; ++i) {
        names.push_back("a" + std::to_string(i + 1));
        coeffs[{i}] = Complex{Rational(1)};
    }
    return ParticleTensor(1, names, coeffs);
}

} // namespace

TEST_CASE("abs_kappa_sum and main_lemma_bound") {
    const auto c = circular();
    const auto u = haar_unitary();
    for (int n = 1; n <= 3; ++n)
        for (int m = 1; 2 * n * m <= 12; ++m)
            CHECK(abs_kappa_sum(c.seq(), n, m) == Rational(fuss_catalan(n, m)));

    CHECK(abs_kappa_sum(u.seq(), 1, 1) == 1);
    CHECK(abs_kappa_sum(u.seq(), 1, 2) == 3); // |1| + |1| + |-1|

    CHECK_THAT(main_lemma_bound(u, 1, 1), Catch::Matchers::WithinAbs(1.0, 1e-12));
    CHECK_THAT(main_lemma_bound(u, 1, 2), Catch::Matchers::WithinAbs(std::pow(3.0, 0.25), 1e-12));
    CHECK_THAT(main_lemma_bound(c, 2, 3),
               Catch::Matchers::WithinAbs(std::pow(12.0, 1.0 / 6.0), 1e-12));
}

TEST_CASE("verify_main_lemma: equality and strict cases") {
    const auto c = circular();
    const auto u = haar_unitary();

    // circular, T = c1 + c2, m = 2: both sides are 8^(1/4)
    const auto r1 = verify_main_lemma(c, sum_of_generators(2), 2);
    REQUIRE(r1.pass);
    CHECK(r1.rows[1].lhs_pow == 8);
    CHECK(*r1.rows[1].rhs_pow == 8);

    // haar, T = u1 + u2, m = 2: 6 <= 12
    const auto r2 = verify_main_lemma(u, sum_of_generators(2), 2);
    REQUIRE(r2.pass);
    CHECK(r2.rows[1].lhs_pow == 6);
    CHECK(*r2.rows[1].rhs_pow == 12);

    // one nonzero coefficient at m = 1: equality
    std::map<std::vector<int>, Complex> coeffs;
    coeffs[{0, 0}] = Complex{Rational(2), Rational(1)};
    const ParticleTensor single(2, {"a1"}, coeffs);
    const auto r3 = verify_main_lemma(u, single, 1);
    REQUIRE(r3.pass);
    CHECK(r3.rows[0].lhs_pow == *r3.rows[0].rhs_pow);
}

TEST_CASE("main lemma holds on a seeded random corpus") {
    const std::vector<RDiagonalModel> models{circular(), haar_unitary(), b_model(1, 1)};
    for (const auto& model : models)
        for (int n = 1; n <= 2; ++n) {
            const auto corpus = random_tensor_corpus(99 + n, n, 2, 10);
            for (const auto& T : corpus) {
                const auto report = verify_main_lemma(model, T, n == 1 ? 3 : 2);
                REQUIRE(report.pass);
            }
        }
}

TEST_CASE("haagerup_constant regimes") {
    const auto hc = haagerup_constant(circular());
    CHECK(hc.regime.starts_with("nonnegative"));
    CHECK_THAT(hc.value, Catch::Matchers::WithinAbs(2.0 * std::sqrt(std::exp(1.0)), 1e-12));

    const auto hu = haagerup_constant(haar_unitary());
    CHECK(hu.regime == "general");
    CHECK_THAT(hu.value, Catch::Matchers::WithinAbs(1024.0 * std::sqrt(std::exp(1.0)), 1e-9));

    const auto hb = haagerup_constant(b_model(1, 1));
    CHECK(hb.regime.starts_with("nonnegative"));
}

TEST_CASE("verify_strong_haagerup on closed forms and the corpus") {
    const auto c = circular();
    // fuss_catalan(n,m)^(1/2m) <= sqrt(e) sqrt(n+1) for n <= 10, m <= 50
    const double sqrt_e = std::sqrt(std::exp(1.0));
    for (int n = 1; n <= 10; ++n)
        for (int m = 1; m <= 50; ++m) {
            const double lhs = std::pow(to_double(fuss_catalan(n, m)), 1.0 / (2.0 * m));
            REQUIRE(lhs <= sqrt_e * std::sqrt(n + 1.0) + 1e-9);
        }

    const auto u = haar_unitary();
    const auto r = verify_strong_haagerup(u, sum_of_generators(4), 2);
    REQUIRE(r.pass);
    CHECK(r.rows[1].lhs_pow == 28); // k(2k-1) at k = 4
}

TEST_CASE("zero tensor passes trivially") {
    std::map<std::vector<int>, Complex> coeffs;
    const ParticleTensor zero(1, {"a1"}, coeffs);
    const auto r = verify_strong_haagerup(circular(), zero, 2);
    REQUIRE(r.pass);
    CHECK(r.rows[0].lhs_pow == 0);
}

TEST_CASE("circular_power_norm_sq") {
    CHECK(circular_power_norm_sq(1) == 4);
    CHECK(circular_power_norm_sq(2) == Rational(27, 4));
    CHECK(circular_power_norm_sq(3) == Rational(256, 27));
}

TEST_CASE("larsen_power_bound dominates the circular closed form") {
    const auto c = circular();
    CHECK_THAT(larsen_power_bound(c, 1), Catch::Matchers::WithinAbs(2.0 * std::sqrt(std::exp(1.0)), 1e-12));
    for (int n = 1; n <= 12; ++n)
        CHECK(std::sqrt(to_double(circular_power_norm_sq(n))) <= larsen_power_bound(c, n));
    const auto u = haar_unitary();
    for (int n = 1; n <= 12; ++n) {
        CHECK_THAT(larsen_power_bound(u, n),
                   Catch::Matchers::WithinAbs(std::sqrt(std::exp(1.0)) * std::sqrt(double(n)), 1e-12));
        CHECK(larsen_power_bound(u, n) >= 1.0);
    }
}

TEST_CASE("positive-cumulant corollary on random tensors") {
    // particle_moment(T,m)^(1/2m) <= moment(n,m)^(1/2m) ||T||_2 / ||a||_2^n,
    // exactly on 2m-th powers
    const std::vector<RDiagonalModel> models{circular(), b_model(1, 1)};
    for (const auto& model : models)
        for (int n = 1; n <= 2; ++n) {
            const auto corpus = random_tensor_corpus(301 + n, n, 2, 8);
            for (const auto& T : corpus)
                for (int m = 1; m <= 2; ++m) {
                    const Rational lhs = particle_moment(model.seq(), T, m);
                    Rational rhs = moment_from_cumulants(model.seq(), n, m);
                    const Rational t2 = two_norm_sq(model.seq(), T);
                    for (int i = 0; i < m; ++i) rhs *= t2;
                    Rational denom(1);
                    for (int i = 0; i < n * m; ++i) denom *= model.two_norm_sq();
                    REQUIRE(lhs * denom <= rhs);
                }
        }
}

TEST_CASE("sharpness of the haar example") {
    const auto r2 = sharpness_haar(2, 3);
    CHECK(r2.moment_pows[0] == 2);
    CHECK(r2.moment_pows[1] == 6);
    CHECK(r2.moment_pows[2] == 20);
    CHECK(r2.nondecreasing);
    CHECK(r2.bounded);
    CHECK_THAT(r2.limit, Catch::Matchers::WithinAbs(2.0, 1e-12));
    CHECK_FALSE(r2.ratio_exceeds_sqrt_e); // 2/sqrt(2) = 1.414 < sqrt(e)

    for (int k = 3; k <= 4; ++k) {
        const auto r = sharpness_haar(k, 3);
        CHECK(r.pass);
    }

    const auto r5 = sharpness_haar(5, 2);
    CHECK(r5.ratio_exceeds_sqrt_e); // 2 sqrt(4/5) = 1.789 > 1.648
}

TEST_CASE("norm limit: fuss_catalan(3,m)^(1/m) climbs to (256/27)") {
    // the m^{-3/2} prefactor makes convergence logarithmically slow:
    // about 4.8% below the limit at m=200, inside 2% only near m=600
    const double target = 256.0 / 27.0;
    double prev = 0.0;
    for (int m : {50, 100, 200, 400, 700}) {
        const double value = pow_to_double(fuss_catalan(3, m), 1.0 / m);
        CHECK(value > prev);
        CHECK(value < target);
        prev = value;
    }
    const double at200 = pow_to_double(fuss_catalan(3, 200), 1.0 / 200.0);
    CHECK(std::abs(at200 - target) / target < 0.05);
    const double at700 = pow_to_double(fuss_catalan(3, 700), 1.0 / 700.0);
    CHECK(std::abs(at700 - target) / target < 0.02);
}

TEST_CASE("domination chain: haar kappa sums below the dominating moments") {
    const auto u = haar_unitary();
    const auto b = dominating_model(u);
    for (int n = 1; n <= 3; ++n)
        for (int m = 1; 2 * n * m <= 12; ++m)
            REQUIRE(abs_kappa_sum(u.seq(), n, m) <= moment_from_cumulants(b.seq(), n, m));
}

TEST_CASE("2m-norms are nondecreasing in m for computed examples") {
    const auto c = circular();
    const auto corpus = random_tensor_corpus(17, 1, 2, 5);
    for (const auto& T : corpus) {
        double prev = 0.0;
        for (int m = 1; m <= 4; ++m) {
            const double norm =
                std::pow(to_double(particle_moment(c.seq(), T, m)), 1.0 / (2.0 * m));
            REQUIRE(norm >= prev - 1e-9);
            prev = norm;
        }
    }
}

TEST_CASE("sharpness moments match the free-group word count") {
    // ||T_k||_{2m}^{2m} counts the length-2m alternating words in the
    // generators that reduce to the identity
    for (int k = 2; k <= 3; ++k) {
        for (int m = 1; m <= 3; ++m) {
            long words = 0;
            size_t tuples = 1;
            for (int i = 0; i < 2 * m; ++i) tuples *= static_cast<size_t>(k);
            for (size_t code = 0; code < tuples; ++code) {
                StarWord w;
                size_t v = code;
                for (int i = 0; i < 2 * m; ++i) {
                    w.push_back({static_cast<int>(v % static_cast<size_t>(k)), i % 2 == 1});
                    v /= static_cast<size_t>(k);
                }
                words += free_group_moment_oracle(w);
            }
            const auto report = sharpness_haar(k, m);
            REQUIRE(report.moment_pows[static_cast<size_t>(m - 1)] == words);
        }
    }
    // frozen values for k = 2: binomial midline 2, 6, 20
    const auto r = sharpness_haar(2, 3);
    CHECK(r.moment_pows == std::vector<Rational>{2, 6, 20});
}
