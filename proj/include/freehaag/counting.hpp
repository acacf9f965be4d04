#pragma once

#include <stdexcept>

#include "freehaag/rational.hpp"

namespace freehaag {

inline BigInt binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt result = 1;
    for (long i = 1; i <= k; ++i) {
        result *= n - k + i;
        result /= i;
    }
    return result;
}

/// Catalan numbers C_n = (1/n) binom(2n, n-1), with C_0 = 1.
inline BigInt catalan(long n) {
    if (n < 0) throw std::invalid_argument("catalan: n must be nonnegative");
    if (n == 0) return 1;
    return binomial(2 * n, n - 1) / n;
}

/// Fuss-Catalan numbers C^(n)_m = (1/m) binom(m(n+1), m-1). Counts both
/// the length-n multichains in NC(m) and the star pairings over the
/// (n,m) pattern word.
inline BigInt fuss_catalan(long n, long m) {
    if (n < 1 || m < 1) throw std::invalid_argument("fuss_catalan: n,m must be positive");
    return binomial(m * (n + 1), m - 1) / m;
}

} // namespace freehaag
