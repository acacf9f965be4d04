#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "freehaag/errors.hpp"

namespace freehaag {

/// A set partition of {1..n} in canonical form: each block is strictly
/// increasing, blocks are ordered by their minimum element. Construction
/// validates that the blocks are disjoint and cover the ground set, so any
/// two Partition values compare structurally.
class Partition {
public:
    Partition(int ground_size, std::vector<std::vector<int>> blocks)
        : n_(ground_size), blocks_(std::move(blocks)) {
        canonicalize_and_validate();
    }

    /// The discrete partition 0_n (all singletons).
    static Partition discrete(int n) {
        std::vector<std::vector<int>> blocks;
        blocks.reserve(static_cast<size_t>(n));
        for (int i = 1; i <= n; ++i) blocks.push_back({i});
        return Partition(n, std::move(blocks));
    }

    /// The one-block partition 1_n.
    static Partition full(int n) {
        std::vector<int> all(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) all[static_cast<size_t>(i)] = i + 1;
        return Partition(n, {std::move(all)});
    }

    int ground_size() const { return n_; }
    const std::vector<std::vector<int>>& blocks() const { return blocks_; }
    int block_count() const { return static_cast<int>(blocks_.size()); }

    /// block_index()[i] is the 0-based index of the block containing
    /// position i (1-based); entry 0 is unused.
    std::vector<int> block_index() const {
        std::vector<int> idx(static_cast<size_t>(n_) + 1, -1);
        for (size_t b = 0; b < blocks_.size(); ++b)
            for (int e : blocks_[b]) idx[static_cast<size_t>(e)] = static_cast<int>(b);
        return idx;
    }

    /// Restricted-growth string: a compact canonical key (block labels in
    /// order of first appearance), handy for hashing and memo tables.
    std::vector<std::int8_t> rgs() const {
        auto idx = block_index();
        std::vector<std::int8_t> out(static_cast<size_t>(n_));
        for (int i = 1; i <= n_; ++i)
            out[static_cast<size_t>(i - 1)] = static_cast<std::int8_t>(idx[static_cast<size_t>(i)]);
        return out;
    }

    bool operator==(const Partition&) const = default;

    /// Text form "{1,4|2,3}": blocks in canonical order, '|' separated.
    std::string to_text() const {
        std::ostringstream os;
        os << '{';
        for (size_t b = 0; b < blocks_.size(); ++b) {
            if (b) os << '|';
            for (size_t i = 0; i < blocks_[b].size(); ++i) {
                if (i) os << ',';
                os << blocks_[b][i];
            }
        }
        os << '}';
        return os.str();
    }

    static Partition from_text(std::string_view text) {
        if (text.size() < 2 || text.front() != '{' || text.back() != '}')
            throw input_error("partition text must be brace-delimited");
        std::vector<std::vector<int>> blocks;
        std::vector<int> cur;
        int value = 0;
        bool in_number = false;
        int n = 0;
        for (char c : text.substr(1, text.size() - 2)) {
            if (c >= '0' && c <= '9') {
                value = value * 10 + (c - '0');
                in_number = true;
            } else if (c == ',' || c == '|') {
                if (!in_number) throw input_error("empty element in partition text");
                cur.push_back(value);
                n = std::max(n, value);
                value = 0;
                in_number = false;
                if (c == '|') {
                    blocks.push_back(std::move(cur));
                    cur.clear();
                }
            } else {
                throw input_error("unexpected character in partition text");
            }
        }
        if (in_number) {
            cur.push_back(value);
            n = std::max(n, value);
        }
        if (!cur.empty()) blocks.push_back(std::move(cur));
        return Partition(n, std::move(blocks));
    }

private:
    void canonicalize_and_validate() {
        if (n_ < 1) throw std::invalid_argument("partition ground size must be positive");
        for (auto& b : blocks_) {
            if (b.empty()) throw std::invalid_argument("partition has an empty block");
            std::sort(b.begin(), b.end());
        }
        std::sort(blocks_.begin(), blocks_.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
        std::vector<char> seen(static_cast<size_t>(n_) + 1, 0);
        int count = 0;
        for (const auto& b : blocks_) {
            for (int e : b) {
                if (e < 1 || e > n_) throw std::invalid_argument("partition element out of range");
                if (seen[static_cast<size_t>(e)]) throw std::invalid_argument("partition element repeated");
                seen[static_cast<size_t>(e)] = 1;
                ++count;
            }
        }
        if (count != n_) throw std::invalid_argument("partition does not cover the ground set");
    }

    int n_;
    std::vector<std::vector<int>> blocks_;
};

/// True iff no p<q<p'<q' exists with p~p', q~q', p'≁q. Linear scan with a
/// stack of open blocks: a continued block must always be the innermost
/// open one.
inline bool is_noncrossing(const Partition& p) {
    const int n = p.ground_size();
    auto idx = p.block_index();
    std::vector<int> remaining(p.blocks().size());
    for (size_t b = 0; b < p.blocks().size(); ++b)
        remaining[b] = static_cast<int>(p.blocks()[b].size());
    std::vector<int> stack;
    std::vector<char> open(p.blocks().size(), 0);
    for (int i = 1; i <= n; ++i) {
        const int b = idx[static_cast<size_t>(i)];
        if (!open[static_cast<size_t>(b)]) {
            open[static_cast<size_t>(b)] = 1;
            stack.push_back(b);
        } else if (stack.back() != b) {
            return false;
        }
        if (--remaining[static_cast<size_t>(b)] == 0) stack.pop_back();
    }
    return true;
}

inline bool is_pair_partition(const Partition& p) {
    return std::all_of(p.blocks().begin(), p.blocks().end(),
                       [](const auto& b) { return b.size() == 2; });
}

/// Reverse-refinement order: sigma <= pi iff every block of sigma is
/// contained in a block of pi.
inline bool leq(const Partition& sigma, const Partition& pi) {
    if (sigma.ground_size() != pi.ground_size())
        throw std::invalid_argument("leq: ground sizes differ");
    auto pi_idx = pi.block_index();
    for (const auto& block : sigma.blocks()) {
        const int want = pi_idx[static_cast<size_t>(block.front())];
        for (int e : block)
            if (pi_idx[static_cast<size_t>(e)] != want) return false;
    }
    return true;
}

/// A partition all of whose blocks are pairs, over an even ground set.
class Pairing {
public:
    explicit Pairing(Partition p) : partition_(std::move(p)) {
        if (partition_.ground_size() % 2 != 0)
            throw std::invalid_argument("pairing needs an even ground set");
        if (!is_pair_partition(partition_))
            throw std::invalid_argument("pairing has a block of size != 2");
    }

    Pairing(int ground_size, std::vector<std::pair<int, int>> pairs)
        : Pairing(from_pairs(ground_size, std::move(pairs))) {}

    const Partition& partition() const { return partition_; }
    int ground_size() const { return partition_.ground_size(); }

    /// partner()[i] is the position paired with i (1-based; entry 0 unused).
    std::vector<int> partner() const {
        std::vector<int> m(static_cast<size_t>(ground_size()) + 1, 0);
        for (const auto& b : partition_.blocks()) {
            m[static_cast<size_t>(b[0])] = b[1];
            m[static_cast<size_t>(b[1])] = b[0];
        }
        return m;
    }

    bool operator==(const Pairing&) const = default;

private:
    static Partition from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
        std::vector<std::vector<int>> blocks;
        blocks.reserve(pairs.size());
        for (const auto& [a, b] : pairs) blocks.push_back({a, b});
        return Partition(n, std::move(blocks));
    }

    Partition partition_;
};

/// A weakly increasing chain of non-crossing partitions of a common ground
/// set, in reverse-refinement order.
class Multichain {
public:
    explicit Multichain(std::vector<Partition> chain) : chain_(std::move(chain)) {
        if (chain_.empty()) throw std::invalid_argument("multichain must be nonempty");
        const int m = chain_.front().ground_size();
        for (const auto& p : chain_) {
            if (p.ground_size() != m)
                throw std::invalid_argument("multichain ground sizes differ");
            if (!is_noncrossing(p))
                throw std::invalid_argument("multichain entry is crossing");
        }
        for (size_t j = 0; j + 1 < chain_.size(); ++j)
            if (!leq(chain_[j], chain_[j + 1]))
                throw std::invalid_argument("multichain is not monotone");
    }

    int length() const { return static_cast<int>(chain_.size()); }
    int ground_size() const { return chain_.front().ground_size(); }
    const std::vector<Partition>& levels() const { return chain_; }
    const Partition& level(int j) const { return chain_.at(static_cast<size_t>(j - 1)); }

    bool operator==(const Multichain&) const = default;

private:
    std::vector<Partition> chain_;
};

struct RgsHash {
    size_t operator()(const std::vector<std::int8_t>& v) const {
        size_t h = 1469598103934665603ull;
        for (auto c : v) {
            h ^= static_cast<size_t>(static_cast<unsigned char>(c));
            h *= 1099511628211ull;
        }
        return h;
    }
};

} // namespace freehaag
