#pragma once

#include <string>
#include <utility>
#include <vector>

#include "freehaag/counting.hpp"
#include "freehaag/cumulants.hpp"
#include "freehaag/rational.hpp"

namespace freehaag {

/// Operator norm metadata: either an exact value or a certified upper
/// bound, tagged which.
struct OpNorm {
    Rational value;
    bool is_exact;

    static OpNorm exact(Rational v) { return {std::move(v), true}; }
    static OpNorm upper_bound(Rational v) { return {std::move(v), false}; }
};

/// An R-diagonal element model: determining sequences plus norm data.
class RDiagonalModel {
public:
    RDiagonalModel(std::string name, DeterminingSequence seq, Rational two_norm_sq, OpNorm op_norm)
        : name_(std::move(name)), seq_(std::move(seq)), two_norm_sq_(std::move(two_norm_sq)),
          op_norm_(std::move(op_norm)) {
        if (two_norm_sq_ < 0) throw std::invalid_argument("model: negative two-norm square");
        if (seq_.alpha(1) != two_norm_sq_)
            throw std::invalid_argument("model: alpha_1 must equal the centred second moment");
        if (two_norm_sq_ > op_norm_.value * op_norm_.value)
            throw std::invalid_argument("model: ||a||_2 exceeds the operator norm bound");
    }

    const std::string& name() const { return name_; }
    const DeterminingSequence& seq() const { return seq_; }
    const Rational& two_norm_sq() const { return two_norm_sq_; }
    const OpNorm& op_norm() const { return op_norm_; }

private:
    std::string name_;
    DeterminingSequence seq_;
    Rational two_norm_sq_;
    OpNorm op_norm_;
};

/// Variance-1 circular element: alpha_1 = beta_1 = 1, all higher
/// cumulants vanish; ||c|| = 2 exactly.
inline RDiagonalModel circular(int k_max = kDefaultKMax) {
    auto seq = DeterminingSequence::generate(
        k_max, [](int k) { return Rational(k == 1 ? 1 : 0); },
        [](int k) { return Rational(k == 1 ? 1 : 0); });
    return RDiagonalModel("circular", std::move(seq), Rational(1), OpNorm::exact(Rational(2)));
}

/// Haar unitary: alpha_k = beta_k = (-1)^(k-1) C_{k-1}; unitary, so
/// ||u|| = ||u||_2 = 1.
inline RDiagonalModel haar_unitary(int k_max = kDefaultKMax) {
    auto signed_catalan = [](int k) {
        Rational v(catalan(k - 1));
        return (k % 2 == 0) ? -v : v;
    };
    auto seq = DeterminingSequence::generate(k_max, signed_catalan, signed_catalan);
    return RDiagonalModel("haar", std::move(seq), Rational(1), OpNorm::exact(Rational(1)));
}

/// The positive-cumulant element b_{gamma,lambda} with
/// alpha_k = beta_k = gamma * lambda^(2k). Its operator norm is bounded by
/// 2*lambda*(1+sqrt(gamma/2))^2 (twice the free Poisson norm); the bound
/// is certified with an exact rational square-root upper bound.
inline RDiagonalModel b_model(const Rational& gamma, const Rational& lambda,
                              int k_max = kDefaultKMax) {
    if (gamma <= 0 || lambda <= 0)
        throw std::invalid_argument("b_model: gamma and lambda must be positive");
    const Rational lambda_sq = lambda * lambda;
    auto seq = DeterminingSequence::generate(
        k_max,
        [&](int k) {
            Rational v = gamma;
            for (int i = 0; i < k; ++i) v *= lambda_sq;
            return v;
        },
        [&](int k) {
            Rational v = gamma;
            for (int i = 0; i < k; ++i) v *= lambda_sq;
            return v;
        });
    const Rational root = sqrt_upper(gamma / 2);
    const Rational one_plus = 1 + root;
    const Rational bound = 2 * lambda * one_plus * one_plus;
    return RDiagonalModel("b(" + format_rational(gamma) + "," + format_rational(lambda) + ")",
                          std::move(seq), gamma * lambda_sq, OpNorm::upper_bound(bound));
}

/// Per-order margin of the cumulant growth bound
/// |alpha_k|, |beta_k| <= (1/2) (2^4 ||a||)^(2k).
struct GrowthBoundRow {
    int k;
    Rational alpha_abs;
    Rational beta_abs;
    Rational bound;
    bool pass;
};

struct GrowthBoundReport {
    std::string model;
    std::vector<GrowthBoundRow> rows;
    bool pass;
};

inline GrowthBoundReport cumulant_growth_bound(const RDiagonalModel& a, int K) {
    if (K > a.seq().k_max()) throw truncation_error("cumulant_growth_bound: K beyond K_max");
    GrowthBoundReport report{a.name(), {}, true};
    const Rational base = Rational(256) * a.op_norm().value * a.op_norm().value; // (2^4 ||a||)^2
    Rational power(1);
    for (int k = 1; k <= K; ++k) {
        power *= base;
        Rational bound = power / 2;
        Rational aa = abs(a.seq().alpha(k));
        Rational bb = abs(a.seq().beta(k));
        const bool ok = aa <= bound && bb <= bound;
        report.pass = report.pass && ok;
        report.rows.push_back({k, std::move(aa), std::move(bb), std::move(bound), ok});
    }
    return report;
}

/// The element b dominating a: lambda = 2^8 ||a||^2 / ||a||_2 and
/// gamma = ||a||_2^2 / lambda^2, so that alpha_k[b] = ||a||_2^2 *
/// (lambda^2)^(k-1). Only lambda^2 enters the cumulants, which keeps them
/// exact even when ||a||_2 is irrational. Domination of |alpha_k[a]| is
/// checked order by order up to K_max.
inline RDiagonalModel dominating_model(const RDiagonalModel& a) {
    const Rational& op = a.op_norm().value;
    const Rational& s = a.two_norm_sq(); // ||a||_2^2
    if (s == 0) throw std::invalid_argument("dominating_model: degenerate two-norm");
    const Rational lambda_sq = Rational(65536) * op * op * op * op / s; // 2^16 ||a||^4 / ||a||_2^2
    auto seq = DeterminingSequence::generate(
        a.seq().k_max(),
        [&](int k) {
            Rational v = s;
            for (int i = 1; i < k; ++i) v *= lambda_sq;
            return v;
        },
        [&](int k) {
            Rational v = s;
            for (int i = 1; i < k; ++i) v *= lambda_sq;
            return v;
        });
    for (int k = 1; k <= a.seq().k_max(); ++k) {
        if (seq.alpha(k) < abs(a.seq().alpha(k)) || seq.alpha(k) < abs(a.seq().beta(k)))
            throw std::logic_error("dominating_model: domination failed (inconsistent norm data)");
    }
    const Rational gamma = s / lambda_sq;
    const Rational lambda_up = sqrt_upper(lambda_sq);
    const Rational root = sqrt_upper(gamma / 2);
    const Rational one_plus = 1 + root;
    const Rational bound = 2 * lambda_up * one_plus * one_plus;
    return RDiagonalModel("b dominating " + a.name(), std::move(seq), s,
                          OpNorm::upper_bound(bound));
}

/// Expectation of a free-group word: 1 iff the word reduces to the
/// identity (star = inverse), else 0.
inline int free_group_moment_oracle(const StarWord& w) {
    std::vector<StarLetter> stack;
    for (const auto& l : w) {
        if (!stack.empty() && stack.back().index == l.index && stack.back().star != l.star)
            stack.pop_back();
        else
            stack.push_back(l);
    }
    return stack.empty() ? 1 : 0;
}

/// phi(P_n(s)^{2m}) for the monic orthogonal polynomials of the variance-1
/// semicircle: P_0 = 1, P_1 = x, P_{k+1} = x P_k - P_{k-1}; even moments
/// of s are the Catalan numbers.
inline Rational chebyshev_moment_oracle(int n, int m) {
    if (n < 1 || m < 1) throw std::invalid_argument("chebyshev_moment_oracle: n,m must be positive");
    using Poly = std::vector<BigInt>; // coefficient of x^i at position i
    Poly prev{1};      // P_0
    Poly cur{0, 1};    // P_1
    for (int k = 1; k < n; ++k) {
        Poly next(cur.size() + 1, BigInt(0));
        for (size_t i = 0; i < cur.size(); ++i) next[i + 1] = cur[i];
        for (size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
        prev = std::move(cur);
        cur = std::move(next);
    }
    const Poly& base = cur;
    Poly power{1};
    for (int e = 0; e < 2 * m; ++e) {
        Poly product(power.size() + base.size() - 1, BigInt(0));
        for (size_t i = 0; i < power.size(); ++i) {
            if (power[i] == 0) continue;
            for (size_t j = 0; j < base.size(); ++j) product[i + j] += power[i] * base[j];
        }
        power = std::move(product);
    }
    BigInt total = 0;
    for (size_t deg = 0; deg < power.size(); deg += 2)
        total += power[deg] * catalan(static_cast<long>(deg) / 2);
    return Rational(total);
}

} // namespace freehaag
