#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "freehaag/counting.hpp"
#include "freehaag/cumulants.hpp"
#include "freehaag/models.hpp"
#include "freehaag/pattern.hpp"
#include "freehaag/rational.hpp"

namespace freehaag {

/// One finite-m check of a norm inequality. When both sides admit exact
/// 2m-th powers the comparison is exact and the floats are views;
/// otherwise the floats decide with the slack tolerance.
struct InequalityRow {
    int m;
    Rational lhs_pow;                  // ||T||_{2m}^{2m}, exact
    std::optional<Rational> rhs_pow;   // exact 2m-th power of the bound, when rational
    double lhs_float;                  // ||T||_{2m}
    double rhs_float;                  // the bound
    double slack;                      // rhs - lhs in the float view
    bool pass;
};

struct InequalityReport {
    std::string model;
    std::string check;
    int n = 0;
    std::vector<InequalityRow> rows;
    bool pass = true;
};

inline constexpr double kFloatSlack = 1e-9;

/// Sum over NC*(n,m) of |kappa_pi| on the pattern word, exact.
inline Rational abs_kappa_sum(const DeterminingSequence& seq, int n, int m,
                              int ceiling = kDefaultPatternCeiling) {
    const PatternWord word(n, m);
    const auto flags = word.star_flags();
    Rational total(0);
    for_each_alternating_blocks(n, m,
                                [&](const std::vector<std::vector<int>>& blocks) {
                                    total += abs(detail::kappa_blocks(seq, flags, blocks));
                                },
                                ceiling);
    return total;
}

/// The main-lemma prefactor [sum |kappa_pi|]^(1/2m) / ||a||_2^n as a
/// float; multiply by ||T||_2 for the full bound.
inline double main_lemma_bound(const RDiagonalModel& a, int n, int m,
                               int ceiling = kDefaultPatternCeiling) {
    const Rational sum = abs_kappa_sum(a.seq(), n, m, ceiling);
    const double root = std::pow(to_double(sum), 1.0 / (2.0 * m));
    return root / std::pow(to_double(a.two_norm_sq()), n / 2.0);
}

/// ||T||_{2m} <= [sum |kappa_pi|]^(1/2m) ||T||_2 / ||a||_2^n for
/// m = 1..m_max, compared exactly on 2m-th powers.
inline InequalityReport verify_main_lemma(const RDiagonalModel& a, const ParticleTensor& T,
                                          int m_max, int ceiling = kDefaultPatternCeiling,
                                          int threads = 1) {
    InequalityReport report{a.name(), "main_lemma", T.n(), {}, true};
    const int n = T.n();
    const Rational t2 = two_norm_sq(a.seq(), T);
    for (int m = 1; m <= m_max; ++m) {
        const Rational lhs = particle_moment(a.seq(), T, m, ceiling, threads);
        // rhs^{2m} = sum * (||T||_2^2)^m / (||a||_2^2)^{nm}
        Rational rhs = abs_kappa_sum(a.seq(), n, m, ceiling);
        for (int i = 0; i < m; ++i) rhs *= t2;
        Rational denom(1);
        for (long i = 0; i < static_cast<long>(n) * m; ++i) denom *= a.two_norm_sq();
        rhs /= denom;
        const bool ok = lhs <= rhs;
        const double lf = std::pow(to_double(lhs), 1.0 / (2.0 * m));
        const double rf = std::pow(to_double(rhs), 1.0 / (2.0 * m));
        report.pass = report.pass && ok;
        report.rows.push_back({m, lhs, rhs, lf, rf, rf - lf, ok});
    }
    return report;
}

struct HaagerupConstant {
    double value;
    std::string regime;
};

/// C_a from the main theorem: sqrt(e) ||a|| / ||a||_2 when every stored
/// cumulant is non-negative (the hypothesis is checked up to K_max and
/// labeled so), else 2^10 sqrt(e) ||a||^2 / ||a||_2^2.
inline HaagerupConstant haagerup_constant(const RDiagonalModel& a) {
    const double op = to_double(a.op_norm().value);
    const double two = std::sqrt(to_double(a.two_norm_sq()));
    const double sqrt_e = std::sqrt(std::exp(1.0));
    if (a.seq().nonnegative()) {
        return {sqrt_e * op / two,
                "nonnegative (verified to K_max=" + std::to_string(a.seq().k_max()) + ")"};
    }
    return {1024.0 * sqrt_e * (op / two) * (op / two), "general"};
}

/// ||T||_{2m} <= C_a sqrt(n) ||T||_2 for m = 1..m_max; a valid necessary
/// check since ||T||_{2m} increases to ||T||. C_a is a float, so rows
/// compare in floats with the slack tolerance.
inline InequalityReport verify_strong_haagerup(const RDiagonalModel& a, const ParticleTensor& T,
                                               int m_max, int ceiling = kDefaultPatternCeiling,
                                               int threads = 1) {
    InequalityReport report{a.name(), "strong_haagerup", T.n(), {}, true};
    const int n = T.n();
    const HaagerupConstant ca = haagerup_constant(a);
    const double rhs =
        ca.value * std::sqrt(static_cast<double>(n)) * std::sqrt(to_double(two_norm_sq(a.seq(), T)));
    for (int m = 1; m <= m_max; ++m) {
        const Rational lhs = particle_moment(a.seq(), T, m, ceiling, threads);
        const double lf = std::pow(to_double(lhs), 1.0 / (2.0 * m));
        const bool ok = lf <= rhs + kFloatSlack;
        report.pass = report.pass && ok;
        report.rows.push_back({m, lhs, std::nullopt, lf, rhs, rhs - lf, ok});
    }
    return report;
}

/// ||c^n||^2 = (n+1)^{n+1} / n^n, exact.
inline Rational circular_power_norm_sq(int n) {
    if (n < 1) throw std::invalid_argument("circular_power_norm_sq: n must be positive");
    BigInt num = 1, den = 1;
    for (int i = 0; i <= n; ++i) num *= n + 1;
    for (int i = 0; i < n; ++i) den *= n;
    return Rational(num, den);
}

/// Larsen's power bound sqrt(e) sqrt(n) ||a|| ||a||_2^(n-1).
inline double larsen_power_bound(const RDiagonalModel& a, int n) {
    const double two = std::sqrt(to_double(a.two_norm_sq()));
    return std::sqrt(std::exp(1.0)) * std::sqrt(static_cast<double>(n)) *
           to_double(a.op_norm().value) * std::pow(two, n - 1);
}

/// The Haar sharpness example T_k = u_1 + ... + u_k: 2m-norms climb
/// toward ||T_k|| = 2 sqrt(k-1), whose ratio to ||T_k||_2 = sqrt(k)
/// exceeds sqrt(e) once k >= 5.
struct SharpnessReport {
    int k;
    Rational two_norm_sq;                 // k
    std::vector<Rational> moment_pows;    // ||T_k||_{2m}^{2m}, m = 1..m_max
    std::vector<double> norms;            // ||T_k||_{2m}
    double limit;                         // 2 sqrt(k-1)
    double ratio;                         // ||T_k|| / ||T_k||_2
    bool nondecreasing;
    bool bounded;
    bool ratio_exceeds_sqrt_e;
    bool pass;
};

inline SharpnessReport sharpness_haar(int k, int m_max, int ceiling = kDefaultPatternCeiling,
                                      int threads = 1) {
    if (k < 2) throw std::invalid_argument("sharpness_haar: k must be at least 2");
    const RDiagonalModel u = haar_unitary();
    std::vector<std::string> names;
    std::map<std::vector<int>, Complex> coeffs;
    for (int i = 0; i < k; ++i) {
        names.push_back("u" + std::to_string(i + 1));
        coeffs[{i}] = Complex{Rational(1)};
    }
    const ParticleTensor T(1, names, coeffs);

    SharpnessReport report{};
    report.k = k;
    report.two_norm_sq = two_norm_sq(u.seq(), T);
    report.limit = 2.0 * std::sqrt(static_cast<double>(k - 1));
    report.ratio = report.limit / std::sqrt(static_cast<double>(k));
    report.nondecreasing = true;
    report.bounded = true;
    const Rational limit_sq(4 * (k - 1)); // (2 sqrt(k-1))^2
    for (int m = 1; m <= m_max; ++m) {
        Rational pow_m = particle_moment(u.seq(), T, m, ceiling, threads);
        report.norms.push_back(std::pow(to_double(pow_m), 1.0 / (2.0 * m)));
        // ||T||_{2m} <= 2 sqrt(k-1): exact as pow_m <= (4(k-1))^m.
        Rational bound(1);
        for (int i = 0; i < m; ++i) bound *= limit_sq;
        if (pow_m > bound) report.bounded = false;
        if (m >= 2) {
            // pow_{m-1}^{1/(2m-2)} <= pow_m^{1/2m}  <=>  pow_{m-1}^m <= pow_m^{m-1}
            const Rational& prev = report.moment_pows.back();
            Rational lhs(1), rhs(1);
            for (int i = 0; i < m; ++i) lhs *= prev;
            for (int i = 0; i < m - 1; ++i) rhs *= pow_m;
            if (lhs > rhs) report.nondecreasing = false;
        }
        report.moment_pows.push_back(std::move(pow_m));
    }
    report.ratio_exceeds_sqrt_e = report.ratio > std::sqrt(std::exp(1.0));
    report.pass = report.nondecreasing && report.bounded;
    return report;
}

} // namespace freehaag
