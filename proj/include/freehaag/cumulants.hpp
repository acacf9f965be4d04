#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "freehaag/enumeration.hpp"
#include "freehaag/mobius.hpp"
#include "freehaag/parallel.hpp"
#include "freehaag/partition.hpp"
#include "freehaag/pattern.hpp"
#include "freehaag/rational.hpp"

namespace freehaag {

inline constexpr int kDefaultKMax = 32;

/// The alternating cumulants (alpha_k, beta_k) of one R-diagonal element,
/// stored exactly up to an explicit truncation order. Queries past the
/// truncation throw; they are never silently zero.
class DeterminingSequence {
public:
    DeterminingSequence(std::vector<Rational> alpha, std::vector<Rational> beta)
        : alpha_(std::move(alpha)), beta_(std::move(beta)) {
        if (alpha_.empty() || alpha_.size() != beta_.size())
            throw std::invalid_argument("determining sequence: alpha/beta must be nonempty and equal length");
    }

    /// Closed-form constructor: fills k = 1..k_max from the generators.
    static DeterminingSequence generate(int k_max,
                                        const std::function<Rational(int)>& alpha_fn,
                                        const std::function<Rational(int)>& beta_fn) {
        std::vector<Rational> a, b;
        a.reserve(static_cast<size_t>(k_max));
        b.reserve(static_cast<size_t>(k_max));
        for (int k = 1; k <= k_max; ++k) {
            a.push_back(alpha_fn(k));
            b.push_back(beta_fn(k));
        }
        return DeterminingSequence(std::move(a), std::move(b));
    }

    int k_max() const { return static_cast<int>(alpha_.size()); }

    const Rational& alpha(int k) const {
        check_order(k);
        return alpha_[static_cast<size_t>(k - 1)];
    }
    const Rational& beta(int k) const {
        check_order(k);
        return beta_[static_cast<size_t>(k - 1)];
    }

    bool tracial() const { return alpha_ == beta_; }

    bool nonnegative() const {
        for (const auto& v : alpha_)
            if (v < 0) return false;
        for (const auto& v : beta_)
            if (v < 0) return false;
        return true;
    }

private:
    void check_order(int k) const {
        if (k < 1) throw std::invalid_argument("determining sequence: order must be positive");
        if (k > k_max())
            throw truncation_error("determining sequence: order " + std::to_string(k) +
                                   " beyond truncation K_max=" + std::to_string(k_max()));
    }

    std::vector<Rational> alpha_, beta_;
};

/// A word in starred/plain letters over a finite integer alphabet.
struct StarLetter {
    int index;
    bool star;
    bool operator==(const StarLetter&) const = default;
};
using StarWord = std::vector<StarLetter>;

/// Cumulant of one block: zero unless the block's star flags strictly
/// alternate over an even length 2k, in which case it is alpha_k when the
/// block starts (smallest position) on a plain letter and beta_k when it
/// starts on a starred one.
inline Rational kappa_block(const DeterminingSequence& seq, std::span<const char> flags) {
    const int len = static_cast<int>(flags.size());
    if (len < 1) throw std::invalid_argument("kappa_block: empty block");
    if (len > 2 * seq.k_max())
        throw truncation_error("kappa_block: block length " + std::to_string(len) +
                               " exceeds 2*K_max=" + std::to_string(2 * seq.k_max()));
    if (len % 2 != 0) return Rational(0);
    for (int i = 1; i < len; ++i)
        if (flags[static_cast<size_t>(i)] == flags[static_cast<size_t>(i - 1)]) return Rational(0);
    const int k = len / 2;
    return flags[0] ? seq.beta(k) : seq.alpha(k);
}

/// kappa_pi: product of kappa_block over the blocks of pi, each block's
/// flags read in increasing position order.
inline Rational kappa_pi(const DeterminingSequence& seq, const std::vector<char>& word_flags,
                         const Partition& pi) {
    if (pi.ground_size() != static_cast<int>(word_flags.size()))
        throw std::invalid_argument("kappa_pi: partition does not match word length");
    Rational product(1);
    std::vector<char> block_flags;
    for (const auto& block : pi.blocks()) {
        block_flags.clear();
        for (int pos : block) block_flags.push_back(word_flags[static_cast<size_t>(pos - 1)]);
        const Rational factor = kappa_block(seq, block_flags);
        if (factor == 0) return Rational(0);
        product *= factor;
    }
    return product;
}

namespace detail {

/// kappa_pi on a raw block list (hot-loop variant).
inline Rational kappa_blocks(const DeterminingSequence& seq, const std::vector<char>& word_flags,
                             const std::vector<std::vector<int>>& blocks) {
    Rational product(1);
    std::vector<char> block_flags;
    for (const auto& block : blocks) {
        block_flags.clear();
        for (int pos : block) block_flags.push_back(word_flags[static_cast<size_t>(pos - 1)]);
        const Rational factor = kappa_block(seq, block_flags);
        if (factor == 0) return Rational(0);
        product *= factor;
    }
    return product;
}

} // namespace detail

/// phi[(a^n (a*)^n)^m] computed as the cumulant sum over NC*(n,m); all
/// other non-crossing partitions contribute zero for an R-diagonal
/// element.
inline Rational moment_from_cumulants(const DeterminingSequence& seq, int n, int m,
                                      int ceiling = kDefaultPatternCeiling) {
    if (static_cast<long>(n) * m > seq.k_max())
        throw truncation_error("moment_from_cumulants: n*m exceeds K_max");
    const PatternWord word(n, m);
    const auto flags = word.star_flags();
    Rational total(0);
    for_each_alternating_blocks(n, m,
                                [&](const std::vector<std::vector<int>>& blocks) {
                                    total += detail::kappa_blocks(seq, flags, blocks);
                                },
                                ceiling);
    return total;
}

/// A moment functional for a single-letter alphabet: maps a star-flag word
/// to an exact moment.
using MomentFunctional = std::function<Rational(std::span<const char>)>;

/// Free cumulant by Moebius inversion over the interval below pi:
/// sum over non-crossing sigma <= pi of phi_sigma[word] * mu(sigma, pi).
inline Rational cumulants_from_moments(const MomentFunctional& phi,
                                       const std::vector<char>& word_flags, const Partition& pi) {
    const int len = static_cast<int>(word_flags.size());
    if (pi.ground_size() != len)
        throw std::invalid_argument("cumulants_from_moments: partition does not match word");
    if (!is_noncrossing(pi))
        throw std::invalid_argument("cumulants_from_moments: pi must be non-crossing");

    std::map<std::vector<char>, Rational> phi_cache;
    auto phi_of_block = [&](const std::vector<int>& block) -> const Rational& {
        std::vector<char> key;
        key.reserve(block.size());
        for (int pos : block) key.push_back(word_flags[static_cast<size_t>(pos - 1)]);
        auto it = phi_cache.find(key);
        if (it == phi_cache.end()) it = phi_cache.emplace(key, phi(key)).first;
        return it->second;
    };

    // Refinements of pi are blockwise non-crossing subdivisions; collect
    // the per-block subdivision choices once and walk their product.
    const auto& pblocks = pi.blocks();
    std::vector<std::vector<std::vector<std::vector<int>>>> choices(pblocks.size());
    for (size_t b = 0; b < pblocks.size(); ++b) {
        const auto& elems = pblocks[b];
        const int blen = static_cast<int>(elems.size());
        for_each_nc(blen, [&](const Partition& sub) {
            std::vector<std::vector<int>> mapped;
            mapped.reserve(sub.blocks().size());
            for (const auto& sb : sub.blocks()) {
                std::vector<int> global;
                global.reserve(sb.size());
                for (int e : sb) global.push_back(elems[static_cast<size_t>(e - 1)]);
                mapped.push_back(std::move(global));
            }
            choices[b].push_back(std::move(mapped));
        });
    }

    Rational total(0);
    std::vector<size_t> pick(pblocks.size(), 0);
    while (true) {
        std::vector<std::vector<int>> sigma_blocks;
        Rational phi_sigma(1);
        for (size_t b = 0; b < pblocks.size(); ++b)
            for (const auto& sb : choices[b][pick[b]]) {
                phi_sigma *= phi_of_block(sb);
                sigma_blocks.push_back(sb);
            }
        if (phi_sigma != 0) {
            const Partition sigma(len, std::move(sigma_blocks));
            total += phi_sigma * Rational(mobius(sigma, pi));
        }
        size_t b = 0;
        while (b < pick.size() && ++pick[b] == choices[b].size()) pick[b++] = 0;
        if (b == pick.size()) break;
    }
    return total;
}

namespace detail {

struct MixedMomentPolicy {
    const StarWord& word;
    // per (index-slot, star) prefix counts for balance pruning
    const std::vector<std::vector<int>>& prefix; // prefix[2*slot+star][pos]
    const std::vector<int>& slot_of_index;

    bool can_extend(const std::vector<int>& block, int next) const {
        const auto& first = word[static_cast<size_t>(block[0] - 1)];
        const auto& cand = word[static_cast<size_t>(next - 1)];
        const auto& last = word[static_cast<size_t>(block.back() - 1)];
        return cand.index == first.index && cand.star != last.star;
    }
    bool can_close(const std::vector<int>& block) const { return block.size() % 2 == 0; }
    bool segment_ok(int lo, int hi) const {
        if (lo > hi) return true;
        if ((hi - lo + 1) % 2 != 0) return false;
        for (size_t s = 0; s + 1 < prefix.size(); s += 2) {
            const int plain = prefix[s][static_cast<size_t>(hi)] - prefix[s][static_cast<size_t>(lo - 1)];
            const int star = prefix[s + 1][static_cast<size_t>(hi)] - prefix[s + 1][static_cast<size_t>(lo - 1)];
            if (plain != star) return false;
        }
        return true;
    }
};

} // namespace detail

/// Mixed moment of a word in a *-free R-diagonal family: the sum over
/// non-crossing partitions whose blocks are single-index, even, and star
/// alternating, of the blockwise cumulant products.
inline Rational mixed_moment(const std::function<const DeterminingSequence&(int)>& family,
                             const StarWord& w, int ceiling = kDefaultPatternCeiling) {
    if (w.empty()) throw std::invalid_argument("mixed_moment: empty word");
    const int len = static_cast<int>(w.size());
    check_ceiling(len, ceiling, "mixed_moment");
    for (const auto& letter : w)
        if (len > 2 * family(letter.index).k_max())
            throw truncation_error("mixed_moment: word length exceeds 2*K_max");

    // Map the occurring indices to dense slots for the prefix tables.
    std::vector<int> indices;
    for (const auto& l : w) {
        if (l.index < 0) throw std::invalid_argument("mixed_moment: negative index");
        indices.push_back(l.index);
    }
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    int max_index = indices.back();
    std::vector<int> slot_of_index(static_cast<size_t>(max_index) + 1, -1);
    for (size_t s = 0; s < indices.size(); ++s) slot_of_index[static_cast<size_t>(indices[s])] = static_cast<int>(s);

    std::vector<std::vector<int>> prefix(2 * indices.size(),
                                         std::vector<int>(static_cast<size_t>(len) + 1, 0));
    for (int pos = 1; pos <= len; ++pos) {
        const auto& l = w[static_cast<size_t>(pos - 1)];
        for (size_t s = 0; s < prefix.size(); ++s) prefix[s][static_cast<size_t>(pos)] = prefix[s][static_cast<size_t>(pos - 1)];
        const size_t s = 2 * static_cast<size_t>(slot_of_index[static_cast<size_t>(l.index)]) + (l.star ? 1 : 0);
        ++prefix[s][static_cast<size_t>(pos)];
    }

    Rational total(0);
    std::vector<char> block_flags;
    for_each_nc_blocks(len, detail::MixedMomentPolicy{w, prefix, slot_of_index},
                       [&](const std::vector<std::vector<int>>& blocks) {
                           Rational product(1);
                           for (const auto& block : blocks) {
                               block_flags.clear();
                               for (int pos : block)
                                   block_flags.push_back(w[static_cast<size_t>(pos - 1)].star ? 1 : 0);
                               const auto& seq = family(w[static_cast<size_t>(block[0] - 1)].index);
                               const Rational factor = kappa_block(seq, block_flags);
                               if (factor == 0) return;
                               product *= factor;
                           }
                           total += product;
                       });
    return total;
}

inline Rational mixed_moment(const DeterminingSequence& seq, const StarWord& w,
                             int ceiling = kDefaultPatternCeiling) {
    return mixed_moment([&](int) -> const DeterminingSequence& { return seq; }, w, ceiling);
}

/// A finitely supported coefficient family over words I^n: the element
/// T = sum lambda_w a_w of the n-particle space. Coefficients are stored
/// densely by word rank (first letter most significant).
class ParticleTensor {
public:
    ParticleTensor(int n, std::vector<std::string> index_names,
                   const std::map<std::vector<int>, Complex>& coeffs)
        : n_(n), names_(std::move(index_names)) {
        if (n_ < 1) throw std::invalid_argument("particle tensor: n must be positive");
        if (names_.empty()) throw std::invalid_argument("particle tensor: empty index set");
        size_t size = 1;
        for (int i = 0; i < n_; ++i) size *= names_.size();
        dense_.assign(size, Complex{});
        for (const auto& [word, value] : coeffs) {
            if (static_cast<int>(word.size()) != n_)
                throw std::invalid_argument("particle tensor: word length mismatch");
            dense_[rank(word)] = value;
        }
    }

    int n() const { return n_; }
    int alphabet_size() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& index_names() const { return names_; }
    const std::vector<Complex>& dense() const { return dense_; }

    size_t rank(std::span<const int> word) const {
        size_t r = 0;
        for (int idx : word) {
            if (idx < 0 || idx >= alphabet_size())
                throw std::invalid_argument("particle tensor: index out of range");
            r = r * names_.size() + static_cast<size_t>(idx);
        }
        return r;
    }

    const Complex& coeff(std::span<const int> word) const { return dense_[rank(word)]; }

    Rational sum_abs_sq() const {
        Rational s(0);
        for (const auto& c : dense_) s += c.abs_sq();
        return s;
    }

    /// Words with nonzero coefficient, in rank order.
    std::vector<std::pair<std::vector<int>, Complex>> support() const {
        std::vector<std::pair<std::vector<int>, Complex>> out;
        for (size_t r = 0; r < dense_.size(); ++r) {
            if (dense_[r].is_zero()) continue;
            std::vector<int> word(static_cast<size_t>(n_));
            size_t v = r;
            for (int i = n_ - 1; i >= 0; --i) {
                word[static_cast<size_t>(i)] = static_cast<int>(v % names_.size());
                v /= names_.size();
            }
            out.emplace_back(std::move(word), dense_[r]);
        }
        return out;
    }

private:
    int n_;
    std::vector<std::string> names_;
    std::vector<Complex> dense_;
};

/// ||T||_2^2 = (sum of |lambda|^2) * alpha_1^n, exact.
inline Rational two_norm_sq(const DeterminingSequence& seq, const ParticleTensor& T) {
    Rational a1n(1);
    for (int i = 0; i < T.n(); ++i) a1n *= seq.alpha(1);
    return T.sum_abs_sq() * a1n;
}

namespace detail {

/// slot_block[g][s]: block owning the s-th word letter of group g. A
/// starred group reads its word reversed relative to position order.
inline std::vector<std::vector<int>> group_slot_blocks(const std::vector<std::vector<int>>& blocks,
                                                       int n, int m) {
    std::vector<int> block_of(static_cast<size_t>(2 * n * m) + 1, -1);
    for (size_t b = 0; b < blocks.size(); ++b)
        for (int pos : blocks[b]) block_of[static_cast<size_t>(pos)] = static_cast<int>(b);
    std::vector<std::vector<int>> slot_block(static_cast<size_t>(2 * m),
                                             std::vector<int>(static_cast<size_t>(n)));
    for (int g = 0; g < 2 * m; ++g) {
        const bool star = g % 2 == 1;
        for (int t = 0; t < n; ++t) {
            const int pos = g * n + t + 1;
            const int slot = star ? n - 1 - t : t;
            slot_block[static_cast<size_t>(g)][static_cast<size_t>(slot)] = block_of[static_cast<size_t>(pos)];
        }
    }
    return slot_block;
}

/// Reference contraction: one odometer over all block assignments. Kept
/// as the fallback for alphabets too large to pack into the sweep keys.
inline Complex delta_contraction_odometer(const std::vector<std::vector<int>>& blocks, int n,
                                          int m, const ParticleTensor& T) {
    const int d = T.alphabet_size();
    const int groups = 2 * m;
    const auto slot_block = group_slot_blocks(blocks, n, m);
    const auto& dense = T.dense();
    std::vector<int> assign(blocks.size(), 0);
    Complex total{};
    while (true) {
        Complex term{Rational(1)};
        for (int g = 0; g < groups && !term.is_zero(); ++g) {
            size_t r = 0;
            for (int s = 0; s < n; ++s)
                r = r * static_cast<size_t>(d) +
                    static_cast<size_t>(assign[static_cast<size_t>(slot_block[static_cast<size_t>(g)][static_cast<size_t>(s)])]);
            const Complex& c = dense[r];
            if (c.is_zero()) {
                term = Complex{};
                break;
            }
            term *= (g % 2 == 1) ? c.conj() : c;
        }
        if (!term.is_zero()) total += term;
        size_t b = 0;
        while (b < blocks.size() && ++assign[b] == d) assign[b++] = 0;
        if (b == blocks.size()) break;
    }
    return total;
}

/// The delta-constrained coefficient contraction S(pi, T): sum over index
/// assignments to the positions, constant on each block of pi, of the
/// product of group coefficients (conjugated on starred groups). The sum
/// runs one index per block; it is evaluated by a left-to-right sweep
/// over the groups, keeping a distribution over the assignments of blocks
/// that are still open. Non-crossing partitions keep that frontier
/// small, so this is far cheaper than the full odometer.
inline Complex delta_contraction(const std::vector<std::vector<int>>& blocks, int n, int m,
                                 const ParticleTensor& T) {
    const int d = T.alphabet_size();
    if (d > 16) return delta_contraction_odometer(blocks, n, m, T);
    const int groups = 2 * m;
    const size_t num_blocks = blocks.size();
    const auto slot_block = group_slot_blocks(blocks, n, m);

    std::vector<int> first_g(num_blocks, groups), last_g(num_blocks, -1);
    for (size_t b = 0; b < num_blocks; ++b)
        for (int pos : blocks[b]) {
            const int g = (pos - 1) / n;
            first_g[b] = std::min(first_g[b], g);
            last_g[b] = std::max(last_g[b], g);
        }

    const auto& dense = T.dense();
    std::vector<int> open; // sorted ids of blocks alive across the current cut
    std::unordered_map<std::uint64_t, Complex> state{{0, Complex{Rational(1)}}};
    std::vector<int> assign(num_blocks, 0);

    for (int g = 0; g < groups && !state.empty(); ++g) {
        std::vector<int> added;
        for (size_t b = 0; b < num_blocks; ++b)
            if (first_g[b] == g) added.push_back(static_cast<int>(b));

        std::vector<int> next_open;
        for (int id : open)
            if (last_g[static_cast<size_t>(id)] > g) next_open.push_back(id);
        for (int id : added)
            if (last_g[static_cast<size_t>(id)] > g) next_open.push_back(id);
        std::sort(next_open.begin(), next_open.end());

        std::unordered_map<std::uint64_t, Complex> next_state;
        const size_t combos = [&] {
            size_t c = 1;
            for (size_t i = 0; i < added.size(); ++i) c *= static_cast<size_t>(d);
            return c;
        }();
        for (const auto& [key, val] : state) {
            for (size_t i = 0; i < open.size(); ++i)
                assign[static_cast<size_t>(open[i])] = static_cast<int>((key >> (4 * i)) & 0xF);
            for (size_t combo = 0; combo < combos; ++combo) {
                size_t v = combo;
                for (int id : added) {
                    assign[static_cast<size_t>(id)] = static_cast<int>(v % static_cast<size_t>(d));
                    v /= static_cast<size_t>(d);
                }
                size_t r = 0;
                for (int s = 0; s < n; ++s)
                    r = r * static_cast<size_t>(d) +
                        static_cast<size_t>(assign[static_cast<size_t>(slot_block[static_cast<size_t>(g)][static_cast<size_t>(s)])]);
                const Complex& c = dense[r];
                if (c.is_zero()) continue;
                Complex term = val * ((g % 2 == 1) ? c.conj() : c);
                std::uint64_t key2 = 0;
                for (size_t i = 0; i < next_open.size(); ++i)
                    key2 |= static_cast<std::uint64_t>(assign[static_cast<size_t>(next_open[i])]) << (4 * i);
                next_state[key2] += term;
            }
        }
        open = std::move(next_open);
        state = std::move(next_state);
    }
    if (state.empty()) return Complex{};
    return state.at(0);
}

} // namespace detail

/// ||T||_{2m}^{2m}: the multinomial moment, computed per partition in
/// NC*(n,m) as kappa_pi times the block contraction. The result of the
/// full sum is real; this is asserted.
inline Rational particle_moment(const DeterminingSequence& seq, const ParticleTensor& T, int m,
                                int ceiling = kDefaultPatternCeiling, int threads = 1) {
    const int n = T.n();
    if (static_cast<long>(n) * m > seq.k_max())
        throw truncation_error("particle_moment: n*m exceeds K_max");
    check_ceiling(2 * n * m, ceiling, "particle_moment");
    const PatternWord word(n, m);
    const auto flags = word.star_flags();

    std::vector<std::vector<std::vector<int>>> partitions;
    std::vector<Rational> kappas;
    for_each_alternating_blocks(n, m,
                                [&](const std::vector<std::vector<int>>& blocks) {
                                    Rational k = detail::kappa_blocks(seq, flags, blocks);
                                    if (k == 0) return;
                                    partitions.push_back(blocks);
                                    kappas.push_back(std::move(k));
                                },
                                ceiling);

    const Complex total = chunked_sum<Complex>(
        partitions.size(),
        [&](size_t i) {
            return kappas[i] * detail::delta_contraction(partitions[i], n, m, T);
        },
        Complex{}, threads);
    if (!total.is_real())
        throw std::logic_error("particle_moment: moment came out non-real");
    return total.re;
}

} // namespace freehaag
