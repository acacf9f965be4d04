#pragma once

#include <string>
#include <utility>
#include <vector>

#include "freehaag/errors.hpp"
#include "freehaag/partition.hpp"

namespace freehaag {

inline constexpr int kDefaultNcCeiling = 16;

/// Generic enumerator for non-crossing partitions of {1..n} under a block
/// policy. Blocks are grown on the smallest unassigned position; once a
/// block {b1<...<bk} closes, the gaps (b_i, b_{i+1}) and the tail after
/// b_k are independent sub-intervals, so crossings never arise by
/// construction. The visit order is depth-first with "close block" tried
/// before every extension and extension candidates in increasing position
/// order, which makes the stream lexicographic in the block of the
/// smallest element, recursively.
///
/// Policy requirements:
///   bool can_extend(const std::vector<int>& block, int next);
///   bool can_close(const std::vector<int>& block);
///   bool segment_ok(int lo, int hi);   // may [lo,hi] be partitioned? (lo>hi ok)
///
/// The visitor receives the canonical block list; returning is resumed
/// afterwards (the buffer is reused, copy if you keep it).
template <class Policy, class Visitor>
class NcEnumerator {
public:
    NcEnumerator(int n, Policy& policy, Visitor& visit)
        : n_(n), policy_(policy), visit_(visit) {}

    void run() {
        if (n_ == 0) {
            visit_(blocks_);
            return;
        }
        if (!policy_.segment_ok(1, n_)) return;
        agenda_.push_back({1, n_});
        fill_next();
    }

private:
    void fill_next() {
        if (agenda_.empty()) {
            visit_(blocks_);
            return;
        }
        const auto [lo, hi] = agenda_.back();
        agenda_.pop_back();
        std::vector<int> block{lo};
        grow(block, hi);
        agenda_.push_back({lo, hi});
    }

    void grow(std::vector<int>& block, int hi) {
        if (policy_.can_close(block)) {
            close_and_recurse(block, hi);
        }
        const int last = block.back();
        for (int next = last + 1; next <= hi; ++next) {
            if (!policy_.can_extend(block, next)) continue;
            // The skipped range (last, next) becomes a gap for good.
            if (!policy_.segment_ok(last + 1, next - 1)) continue;
            block.push_back(next);
            grow(block, hi);
            block.pop_back();
        }
    }

    void close_and_recurse(const std::vector<int>& block, int hi) {
        const int tail_lo = block.back() + 1;
        if (!policy_.segment_ok(tail_lo, hi)) return;
        size_t pushed = 0;
        // Push right-to-left so the leftmost pending interval is handled next.
        if (tail_lo <= hi) {
            agenda_.push_back({tail_lo, hi});
            ++pushed;
        }
        for (size_t i = block.size() - 1; i > 0; --i) {
            const int glo = block[i - 1] + 1, ghi = block[i] - 1;
            if (glo <= ghi) {
                agenda_.push_back({glo, ghi});
                ++pushed;
            }
        }
        blocks_.push_back(block);
        fill_next();
        blocks_.pop_back();
        agenda_.resize(agenda_.size() - pushed);
    }

    int n_;
    Policy& policy_;
    Visitor& visit_;
    std::vector<std::pair<int, int>> agenda_;
    std::vector<std::vector<int>> blocks_;
};

template <class Policy, class Visitor>
void for_each_nc_blocks(int n, Policy policy, Visitor visit) {
    NcEnumerator<Policy, Visitor> e(n, policy, visit);
    e.run();
}

struct UnconstrainedPolicy {
    bool can_extend(const std::vector<int>&, int) const { return true; }
    bool can_close(const std::vector<int>&) const { return true; }
    bool segment_ok(int, int) const { return true; }
};

inline void check_ceiling(int requested, int ceiling, const char* what) {
    if (requested > ceiling) {
        throw size_error(std::string(what) + ": size " + std::to_string(requested) +
                         " exceeds ceiling " + std::to_string(ceiling));
    }
}

/// Visits every element of NC(n) exactly once, in the fixed lexicographic
/// order described on NcEnumerator. The count is catalan(n).
template <class Visitor>
void for_each_nc(int n, Visitor visit, int ceiling = kDefaultNcCeiling) {
    if (n < 1) throw std::invalid_argument("for_each_nc: n must be positive");
    check_ceiling(n, ceiling, "for_each_nc");
    for_each_nc_blocks(n, UnconstrainedPolicy{},
                       [&](const std::vector<std::vector<int>>& blocks) {
                           visit(Partition(n, blocks));
                       });
}

inline std::vector<Partition> enumerate_nc(int n, int ceiling = kDefaultNcCeiling) {
    std::vector<Partition> out;
    for_each_nc(n, [&](const Partition& p) { out.push_back(p); }, ceiling);
    return out;
}

/// Visits every length-n multichain Phi_1 <= ... <= Phi_n in NC(m), in
/// lexicographic order of the per-level enumeration. The count is
/// fuss_catalan(n, m).
template <class Visitor>
void for_each_multichain(int n, int m, Visitor visit, int ceiling = kDefaultNcCeiling) {
    if (n < 1 || m < 1)
        throw std::invalid_argument("for_each_multichain: n,m must be positive");
    check_ceiling(m, ceiling, "for_each_multichain");
    check_ceiling(n, ceiling, "for_each_multichain");
    const std::vector<Partition> all = enumerate_nc(m, ceiling);
    std::vector<const Partition*> chain;
    chain.reserve(static_cast<size_t>(n));
    auto rec = [&](auto&& self, int level) -> void {
        if (level == n) {
            std::vector<Partition> levels;
            levels.reserve(chain.size());
            for (const Partition* p : chain) levels.push_back(*p);
            visit(Multichain(std::move(levels)));
            return;
        }
        for (const Partition& p : all) {
            if (!chain.empty() && !leq(*chain.back(), p)) continue;
            chain.push_back(&p);
            self(self, level + 1);
            chain.pop_back();
        }
    };
    rec(rec, 0);
}

inline std::vector<Multichain> enumerate_multichains(int n, int m,
                                                     int ceiling = kDefaultNcCeiling) {
    std::vector<Multichain> out;
    for_each_multichain(n, m, [&](const Multichain& c) { out.push_back(c); }, ceiling);
    return out;
}

} // namespace freehaag
