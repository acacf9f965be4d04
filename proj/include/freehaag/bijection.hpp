#pragma once

#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "freehaag/partition.hpp"
#include "freehaag/pattern.hpp"

namespace freehaag {

namespace detail {

class UnionFind {
public:
    explicit UnionFind(int size) : parent_(static_cast<size_t>(size)) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    int find(int x) {
        while (parent_[static_cast<size_t>(x)] != x) {
            parent_[static_cast<size_t>(x)] = parent_[static_cast<size_t>(parent_[static_cast<size_t>(x)])];
            x = parent_[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
    }

private:
    std::vector<int> parent_;
};

} // namespace detail

/// The forward map of the multichain bijection: level j of the result
/// joins k and k' whenever some label-j letter of group k is paired with a
/// label-j letter of group k'. This is the connected-component view of
/// the directional connectedness relations; `connected_groups` below
/// implements the directional definition itself for cross-checking.
inline Multichain phi_map(const StarPairing& pi) {
    const int n = pi.n(), m = pi.m();
    const auto& word = pi.word();
    const auto partner = pi.pairing().partner();
    std::vector<Partition> levels;
    levels.reserve(static_cast<size_t>(n));
    for (int j = 1; j <= n; ++j) {
        detail::UnionFind uf(m + 1);
        for (int k = 1; k <= m; ++k) {
            const int p = word.position(k, j, false);
            const int q = partner[static_cast<size_t>(p)];
            const auto& target = word.at(q);
            if (target.label != j)
                throw std::invalid_argument("phi_map: pairing does not respect labels");
            uf.unite(k, target.group);
        }
        std::vector<std::vector<int>> blocks(static_cast<size_t>(m) + 1);
        for (int k = 1; k <= m; ++k) blocks[static_cast<size_t>(uf.find(k))].push_back(k);
        std::vector<std::vector<int>> nonempty;
        for (auto& b : blocks)
            if (!b.empty()) nonempty.push_back(std::move(b));
        levels.push_back(Partition(m, std::move(nonempty)));
    }
    // Multichain construction re-checks monotonicity and non-crossing,
    // which is the content of the multichain proposition.
    return Multichain(std::move(levels));
}

/// The inverse ("fattening") map: for each level-j block {k_1<...<k_r},
/// pair the label-j letters cyclically, c(k_1,j) with c*(k_r,j) and
/// c(k_i,j) with c*(k_{i-1},j). Output membership in NC2*(n,m) is
/// re-validated by the StarPairing constructor.
inline StarPairing q_map(const Multichain& chain, int n) {
    if (chain.length() != n)
        throw std::invalid_argument("q_map: chain length mismatch");
    const int m = chain.ground_size();
    const PatternWord word(n, m);
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<size_t>(n) * static_cast<size_t>(m));
    for (int j = 1; j <= n; ++j) {
        for (const auto& block : chain.level(j).blocks()) {
            const int r = static_cast<int>(block.size());
            pairs.emplace_back(word.position(block[0], j, false),
                               word.position(block[static_cast<size_t>(r - 1)], j, true));
            for (int i = 1; i < r; ++i)
                pairs.emplace_back(word.position(block[static_cast<size_t>(i)], j, false),
                                   word.position(block[static_cast<size_t>(i - 1)], j, true));
        }
    }
    return StarPairing(word, Pairing(word.size(), std::move(pairs)));
}

/// Directional connectedness: the set of groups k' reachable from group k
/// at label j, walking pair and vertical edges with the required initial
/// direction (increasing when starting on the plain letter, decreasing
/// when starting on the starred one). The walked sequence is checked to
/// be strictly monotone after its first step; the start group is not part
/// of the result.
inline std::set<int> connected_groups(const StarPairing& pi, int j, int k, bool star) {
    const auto& word = pi.word();
    if (j < 1 || j > pi.n() || k < 1 || k > pi.m())
        throw std::invalid_argument("connected_groups: address out of range");
    const auto partner = pi.pairing().partner();
    std::set<int> reached;
    int cur = k;
    bool first = true;
    int prev = 0;
    while (true) {
        const int p = word.position(cur, j, star);
        const int q = partner[static_cast<size_t>(p)];
        const int next = word.at(q).group;
        if (first) {
            if (star ? next >= k : next <= k) return {};
            first = false;
        } else {
            // Monotone-path property: decreasing after an increasing first
            // step, increasing after a decreasing one.
            if (next != k && (star ? next <= prev : next >= prev))
                throw std::logic_error("connected_groups: path is not monotone");
        }
        if (next == k) return reached;
        reached.insert(next);
        prev = next;
        cur = next;
    }
}

} // namespace freehaag
