#pragma once

#include <algorithm>
#include <unordered_map>
#include <vector>

#include "freehaag/counting.hpp"
#include "freehaag/enumeration.hpp"
#include "freehaag/partition.hpp"
#include "freehaag/rational.hpp"

namespace freehaag {

namespace detail {

/// mu(sigma, 1_k) for every sigma in NC(k), memoized per ground size.
/// Built by one downward sweep: process tau from coarse to fine, set
/// mu(tau) = -sum of mu over strictly coarser elements, and push mu(tau)
/// onto every proper refinement of tau. Refinements of a non-crossing tau
/// are exactly the blockwise non-crossing subdivisions, so the sweep never
/// materializes the full pairwise order.
class MobiusTopTable {
public:
    using Key = std::vector<std::int8_t>;
    using Map = std::unordered_map<Key, BigInt, RgsHash>;

    const BigInt& to_top(const Partition& sigma) {
        const int k = sigma.ground_size();
        const Map& table = for_ground(k);
        auto it = table.find(sigma.rgs());
        if (it == table.end())
            throw std::invalid_argument("mobius: partition is crossing");
        return it->second;
    }

    const Map& for_ground(int k) {
        if (k >= static_cast<int>(tables_.size())) tables_.resize(static_cast<size_t>(k) + 1);
        if (tables_[static_cast<size_t>(k)].empty()) build(k);
        return tables_[static_cast<size_t>(k)];
    }

private:
    static Key key_of_blocks(int k, const std::vector<const std::vector<int>*>& blocks) {
        std::vector<std::int8_t> by_pos(static_cast<size_t>(k) + 1, -1);
        for (size_t b = 0; b < blocks.size(); ++b)
            for (int e : *blocks[b]) by_pos[static_cast<size_t>(e)] = static_cast<std::int8_t>(b);
        Key key(static_cast<size_t>(k));
        std::vector<std::int8_t> relabel(blocks.size(), -1);
        std::int8_t next = 0;
        for (int i = 1; i <= k; ++i) {
            auto& r = relabel[static_cast<size_t>(by_pos[static_cast<size_t>(i)])];
            if (r < 0) r = next++;
            key[static_cast<size_t>(i - 1)] = r;
        }
        return key;
    }

    void build(int k) {
        std::vector<Partition> all = enumerate_nc(k);
        std::sort(all.begin(), all.end(), [](const Partition& a, const Partition& b) {
            return a.block_count() < b.block_count();
        });
        Map mu;
        Map pending; // accumulates sum of mu over strict coarsenings
        mu.reserve(all.size());
        for (const Partition& tau : all) {
            const Key tau_key = tau.rgs();
            BigInt value;
            if (tau.block_count() == 1) {
                value = 1;
            } else {
                auto it = pending.find(tau_key);
                value = (it == pending.end()) ? BigInt(0) : -it->second;
            }
            // Distribute to every proper refinement of tau.
            distribute(k, tau, value, pending);
            mu.emplace(tau_key, std::move(value));
        }
        tables_[static_cast<size_t>(k)] = std::move(mu);
    }

    void distribute(int k, const Partition& tau, const BigInt& value, Map& pending) {
        const auto& blocks = tau.blocks();
        // Per block, all non-crossing subdivisions (as global element lists).
        std::vector<std::vector<std::vector<std::vector<int>>>> choices(blocks.size());
        for (size_t b = 0; b < blocks.size(); ++b) {
            const auto& elems = blocks[b];
            const int len = static_cast<int>(elems.size());
            for_each_nc(len, [&](const Partition& sub) {
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
        std::vector<size_t> pick(blocks.size(), 0);
        std::vector<const std::vector<int>*> assembled;
        while (true) {
            bool proper = false;
            for (size_t b = 0; b < blocks.size(); ++b)
                if (choices[b][pick[b]].size() > 1) {
                    proper = true;
                    break;
                }
            if (proper) {
                assembled.clear();
                for (size_t b = 0; b < blocks.size(); ++b)
                    for (const auto& sb : choices[b][pick[b]]) assembled.push_back(&sb);
                pending[key_of_blocks(k, assembled)] += value;
            }
            size_t b = 0;
            while (b < pick.size() && ++pick[b] == choices[b].size()) pick[b++] = 0;
            if (b == pick.size()) break;
        }
    }

    std::vector<Map> tables_;
};

inline MobiusTopTable& mobius_table() {
    thread_local MobiusTopTable table;
    return table;
}

} // namespace detail

/// Moebius function of the NC(n) lattice, exact. Requires sigma <= pi and
/// both non-crossing. The interval [sigma, pi] splits over the blocks of
/// pi, so the value is the product of per-block values mu(sigma|_B, 1_B)
/// taken from the memoized table.
inline BigInt mobius(const Partition& sigma, const Partition& pi) {
    if (sigma.ground_size() != pi.ground_size())
        throw std::invalid_argument("mobius: ground sizes differ");
    if (!is_noncrossing(sigma) || !is_noncrossing(pi))
        throw std::invalid_argument("mobius: arguments must be non-crossing");
    if (!leq(sigma, pi)) throw std::invalid_argument("mobius: sigma must refine pi");

    const auto pi_idx = pi.block_index();
    // Group sigma's blocks under the pi-block that contains them.
    std::vector<std::vector<const std::vector<int>*>> grouped(pi.blocks().size());
    for (const auto& sblock : sigma.blocks())
        grouped[static_cast<size_t>(pi_idx[static_cast<size_t>(sblock.front())])].push_back(&sblock);

    BigInt result = 1;
    for (size_t b = 0; b < pi.blocks().size(); ++b) {
        const auto& pblock = pi.blocks()[b];
        const int len = static_cast<int>(pblock.size());
        // Relabel the pi-block's elements to 1..len.
        std::vector<int> local(static_cast<size_t>(pi.ground_size()) + 1, 0);
        for (int i = 0; i < len; ++i) local[static_cast<size_t>(pblock[static_cast<size_t>(i)])] = i + 1;
        std::vector<std::vector<int>> sub_blocks;
        sub_blocks.reserve(grouped[b].size());
        for (const auto* sblock : grouped[b]) {
            std::vector<int> mapped;
            mapped.reserve(sblock->size());
            for (int e : *sblock) mapped.push_back(local[static_cast<size_t>(e)]);
            sub_blocks.push_back(std::move(mapped));
        }
        result *= detail::mobius_table().to_top(Partition(len, std::move(sub_blocks)));
    }
    return result;
}

/// Reference implementation straight from the definition: a DP over the
/// interval [sigma, pi] obtained by filtering NC(n). Quadratic in the
/// interval size; kept for cross-validation of `mobius`.
inline BigInt mobius_generic(const Partition& sigma, const Partition& pi) {
    if (sigma.ground_size() != pi.ground_size())
        throw std::invalid_argument("mobius: ground sizes differ");
    if (!leq(sigma, pi)) throw std::invalid_argument("mobius: sigma must refine pi");
    const int n = sigma.ground_size();
    std::vector<Partition> interval;
    for_each_nc(n, [&](const Partition& tau) {
        if (leq(sigma, tau) && leq(tau, pi)) interval.push_back(tau);
    });
    std::sort(interval.begin(), interval.end(), [](const Partition& a, const Partition& b) {
        return a.block_count() > b.block_count();
    });
    std::vector<BigInt> mu(interval.size());
    for (size_t i = 0; i < interval.size(); ++i) {
        if (interval[i] == sigma) {
            mu[i] = 1;
            continue;
        }
        BigInt acc = 0;
        for (size_t j = 0; j < i; ++j)
            if (leq(interval[j], interval[i])) acc += mu[j];
        mu[i] = -acc;
    }
    return mu.back();
}

} // namespace freehaag
