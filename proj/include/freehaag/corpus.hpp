#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "freehaag/cumulants.hpp"
#include "freehaag/rational.hpp"

namespace freehaag {

namespace detail {

/// SplitMix64: tiny, stable across platforms, good enough for test
/// coefficient streams. std::uniform_int_distribution is not used because
/// its output is implementation-defined.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    /// Uniform-ish value in [0, bound).
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

private:
    std::uint64_t state_;
};

} // namespace detail

/// Deterministic corpus of random tensors with small-denominator rational
/// coefficients, keyed only by (seed, n, alphabet, count): the same tuple
/// always produces byte-identical tensors.
inline std::vector<ParticleTensor> random_tensor_corpus(std::uint64_t seed, int n, int alphabet,
                                                        int count) {
    if (n < 1 || alphabet < 1 || count < 0)
        throw std::invalid_argument("random_tensor_corpus: bad parameters");
    detail::SplitMix64 rng(seed ^ (static_cast<std::uint64_t>(n) << 32) ^
                           static_cast<std::uint64_t>(alphabet));
    std::vector<std::string> names;
    names.reserve(static_cast<size_t>(alphabet));
    for (int i = 0; i < alphabet; ++i) names.push_back("a" + std::to_string(i + 1));

    size_t words = 1;
    for (int i = 0; i < n; ++i) words *= static_cast<size_t>(alphabet);

    auto small_rational = [&]() {
        const std::int64_t num = static_cast<std::int64_t>(rng.below(9)) - 4; // -4..4
        const std::int64_t den = static_cast<std::int64_t>(rng.below(3)) + 1; // 1..3
        return Rational(num, den);
    };

    std::vector<ParticleTensor> corpus;
    corpus.reserve(static_cast<size_t>(count));
    for (int c = 0; c < count; ++c) {
        std::map<std::vector<int>, Complex> coeffs;
        for (size_t r = 0; r < words; ++r) {
            std::vector<int> word(static_cast<size_t>(n));
            size_t v = r;
            for (int i = n - 1; i >= 0; --i) {
                word[static_cast<size_t>(i)] = static_cast<int>(v % static_cast<size_t>(alphabet));
                v /= static_cast<size_t>(alphabet);
            }
            coeffs[std::move(word)] = Complex{small_rational(), small_rational()};
        }
        corpus.emplace_back(n, names, coeffs);
    }
    return corpus;
}

} // namespace freehaag
