#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace freehaag {

/// Adaptive Simpson quadrature with absolute tolerance and a bisection
/// depth cap.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-10, int max_depth = 40) {
    auto simpson = [&](double lo, double hi, double flo, double fmid, double fhi) {
        return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    };
    std::function<double(double, double, double, double, double, double, double, int)> rec =
        [&](double lo, double hi, double flo, double fmid, double fhi, double whole, double eps,
            int depth) -> double {
        const double mid = 0.5 * (lo + hi);
        const double lmid = 0.5 * (lo + mid), rmid = 0.5 * (mid + hi);
        const double flmid = f(lmid), frmid = f(rmid);
        const double left = simpson(lo, mid, flo, flmid, fmid);
        const double right = simpson(mid, hi, fmid, frmid, fhi);
        const double delta = left + right - whole;
        if (depth <= 0 || std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
        return rec(lo, mid, flo, flmid, fmid, left, eps / 2.0, depth - 1) +
               rec(mid, hi, fmid, frmid, fhi, right, eps / 2.0, depth - 1);
    };
    const double mid = 0.5 * (a + b);
    const double fa = f(a), fm = f(mid), fb = f(b);
    return rec(a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol, max_depth);
}

/// The Ornstein-Uhlenbeck kernel bound C_a e^{-t} / (1 - e^{-2t}).
inline double ou_kernel_bound(double t, double c_a) {
    if (!(t > 0)) throw std::invalid_argument("ou_kernel_bound: t must be positive");
    // 1 - e^{-2t} via expm1 to keep small-t accuracy.
    return c_a * std::exp(-t) / (-std::expm1(-2.0 * t));
}

struct UltraRow {
    double t;
    double kernel;       // C_a e^{-t}/(1-e^{-2t})
    double bound;        // (1/2) C_a / t
    double ratio;        // t e^{-t}/(1-e^{-2t}), C_a-independent
    bool pass;
};

struct UltraReport {
    std::vector<UltraRow> rows;
    double sup_ratio = 0.0;
    bool sup_in_window = false;
    bool decreasing = false;
    bool pass = false;
};

/// t e^{-t}/(1 - e^{-2t}) evaluated as t / (2 sinh t). Algebraically the
/// same; this form stays below 1/2 in floating point at tiny t, where the
/// quotient form loses the quadratic margin to rounding.
inline double ou_kernel_ratio(double t) {
    return t / (2.0 * std::sinh(t));
}

/// Checks the ultracontractivity chain on a grid: the kernel bound never
/// exceeds (1/2) C_a / t, the C_a-free ratio is decreasing in t, and its
/// sup sits in [1/2 - 1e-6, 1/2].
inline UltraReport verify_ultracontractivity(double c_a, const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("verify_ultracontractivity: empty grid");
    constexpr double kSlack = 1e-9; // float slack on pass/fail comparisons
    std::vector<double> ts = grid;
    std::sort(ts.begin(), ts.end());
    UltraReport report;
    report.decreasing = true;
    double prev_ratio = 0.0;
    bool first = true;
    for (double t : ts) {
        if (!(t > 0)) throw std::invalid_argument("verify_ultracontractivity: grid points must be positive");
        UltraRow row{};
        row.t = t;
        row.kernel = ou_kernel_bound(t, c_a);
        row.bound = 0.5 * c_a / t;
        row.ratio = ou_kernel_ratio(t);
        row.pass = row.ratio <= 0.5;
        if (!first && row.ratio > prev_ratio + kSlack) report.decreasing = false;
        first = false;
        prev_ratio = row.ratio;
        report.sup_ratio = std::max(report.sup_ratio, row.ratio);
        report.rows.push_back(row);
    }
    report.sup_in_window = report.sup_ratio >= 0.5 - 1e-6 && report.sup_ratio <= 0.5;
    report.pass = report.sup_in_window && report.decreasing &&
                  std::all_of(report.rows.begin(), report.rows.end(),
                              [](const UltraRow& r) { return r.pass; });
    return report;
}

/// Default grid for the ultracontractivity check: log-spaced points.
inline std::vector<double> log_grid(double lo, double hi, int count) {
    if (!(lo > 0) || !(hi > lo) || count < 2) throw std::invalid_argument("log_grid: bad range");
    std::vector<double> out;
    out.reserve(static_cast<size_t>(count));
    const double step = (std::log(hi) - std::log(lo)) / (count - 1);
    for (int i = 0; i < count; ++i) out.push_back(std::exp(std::log(lo) + i * step));
    return out;
}

/// h = sum h_n with the 2-norm of each particle-space component.
struct LevelDecomposition {
    std::vector<std::pair<int, double>> levels; // (n, ||h_n||_2)
};

struct LevelBound {
    double level_sum;      // C_a sum sqrt(n) e^{-nt} ||h_n||_2
    double cauchy_schwarz; // C_a sqrt(sum n e^{-2nt}) ||h||_2
};

/// Both semigroup bounds from the ultracontractivity proof; the
/// Cauchy-Schwarz closed form dominates the level sum.
inline LevelBound semigroup_level_bound(const LevelDecomposition& h, double t, double c_a) {
    if (!(t > 0)) throw std::invalid_argument("semigroup_level_bound: t must be positive");
    double level_sum = 0.0;
    double norm_sq = 0.0;
    for (const auto& [n, hn] : h.levels) {
        if (n < 0 || hn < 0) throw std::invalid_argument("semigroup_level_bound: bad level");
        level_sum += c_a * std::sqrt(static_cast<double>(n)) * std::exp(-n * t) * hn;
        norm_sq += hn * hn;
    }
    // sum_{n>=0} n x^n = x/(1-x)^2 at x = e^{-2t}
    const double x = std::exp(-2.0 * t);
    const double series = x / ((1.0 - x) * (1.0 - x));
    const double cs = c_a * std::sqrt(series) * std::sqrt(norm_sq);
    if (level_sum > cs * (1.0 + 1e-12))
        throw std::logic_error("semigroup_level_bound: level sum exceeds Cauchy-Schwarz bound");
    return {level_sum, cs};
}

/// A rotationally invariant Brown-measure surrogate: density f on
/// [r0, R], normalized so that the full integral of f(r) dr dtheta is 1.
class RadialDensity {
public:
    RadialDensity(double r0, double R, std::function<double(double)> f)
        : r0_(r0), R_(R), f_(std::move(f)) {
        if (!(r0 >= 0) || !(R > r0)) throw std::invalid_argument("radial density: bad radii");
    }

    static RadialDensity uniform_disc(double R) {
        const double c = 1.0 / (M_PI * R * R);
        return RadialDensity(0.0, R, [c](double r) { return c * r; });
    }

    static RadialDensity annulus(double r0, double R) {
        const double c = 1.0 / (2.0 * M_PI * (R - r0));
        return RadialDensity(r0, R, [c](double) { return c; });
    }

    /// Sampled density with linear interpolation between the given
    /// (r, f(r)) rows; rows must be sorted by r.
    static RadialDensity from_samples(std::vector<std::pair<double, double>> samples) {
        if (samples.size() < 2) throw std::invalid_argument("radial density: need at least 2 samples");
        for (size_t i = 1; i < samples.size(); ++i)
            if (samples[i].first <= samples[i - 1].first)
                throw std::invalid_argument("radial density: sample radii must increase");
        const double r0 = samples.front().first, R = samples.back().first;
        auto f = [samples = std::move(samples)](double r) {
            auto it = std::lower_bound(samples.begin(), samples.end(), r,
                                       [](const auto& s, double v) { return s.first < v; });
            if (it == samples.begin()) return it->second;
            if (it == samples.end()) return samples.back().second;
            const auto& [r1, f1] = *(it - 1);
            const auto& [r2, f2] = *it;
            return f1 + (f2 - f1) * (r - r1) / (r2 - r1);
        };
        return RadialDensity(r0, R, std::move(f));
    }

    double inner() const { return r0_; }
    double outer() const { return R_; }
    double operator()(double r) const { return f_(r); }

    double normalization() const {
        return 2.0 * M_PI * adaptive_simpson([this](double r) { return f_(r); }, r0_, R_);
    }

private:
    double r0_, R_;
    std::function<double(double)> f_;
};

/// ||z^n||_inf / ||z^n||_2 for the density: R^n over the root of
/// 2 pi int r^{2n} f(r) dr. Requires the density to be normalized within
/// quadrature tolerance.
inline double brown_ratio(const RadialDensity& nu, int n, double norm_tol = 1e-6) {
    if (n < 1) throw std::invalid_argument("brown_ratio: n must be positive");
    for (int i = 0; i <= 1000; ++i) {
        const double r = nu.inner() + (nu.outer() - nu.inner()) * i / 1000.0;
        if (nu(r) < 0.0)
            throw std::invalid_argument("brown_ratio: density is negative at r=" + std::to_string(r));
    }
    const double mass = nu.normalization();
    if (std::abs(mass - 1.0) > norm_tol)
        throw std::invalid_argument("brown_ratio: density is not normalized (mass " +
                                    std::to_string(mass) + ")");
    const double moment = 2.0 * M_PI *
                          adaptive_simpson([&](double r) { return std::pow(r, 2 * n) * nu(r); },
                                           nu.inner(), nu.outer());
    return std::pow(nu.outer(), n) / std::sqrt(moment);
}

} // namespace freehaag
