#pragma once

#include <stdexcept>
#include <vector>

#include "freehaag/enumeration.hpp"
#include "freehaag/partition.hpp"

namespace freehaag {

inline constexpr int kDefaultPatternCeiling = 20;

/// The alternating word a_{n,m}: m repetitions of (n plain letters, then n
/// starred letters), 2nm letters in total. Each letter carries an address
/// (group, label, star): labels run n..1 across a plain group and 1..n
/// across a starred group, so equal labels sit mirror-symmetric around
/// each group boundary.
class PatternWord {
public:
    struct Letter {
        int group; // 1..m, among groups of the same star kind
        int label; // 1..n
        bool star;
    };

    PatternWord(int n, int m) : n_(n), m_(m) {
        if (n < 1 || m < 1) throw std::invalid_argument("pattern: n,m must be positive");
        letters_.resize(static_cast<size_t>(2 * n * m) + 1);
        for (int pos = 1; pos <= 2 * n * m; ++pos) {
            const int within = (pos - 1) % (2 * n);
            const bool star = within >= n;
            letters_[static_cast<size_t>(pos)] = Letter{
                (pos - 1) / (2 * n) + 1,
                star ? within - n + 1 : n - within,
                star,
            };
        }
    }

    int n() const { return n_; }
    int m() const { return m_; }
    int size() const { return 2 * n_ * m_; }

    const Letter& at(int pos) const { return letters_.at(static_cast<size_t>(pos)); }

    int position(int group, int label, bool star) const {
        if (group < 1 || group > m_ || label < 1 || label > n_)
            throw std::invalid_argument("pattern: address out of range");
        const int base = 2 * n_ * (group - 1);
        return star ? base + n_ + label : base + (n_ - label + 1);
    }

    /// Star flags by 0-based position index (flags[pos-1]).
    std::vector<char> star_flags() const {
        std::vector<char> flags(static_cast<size_t>(size()));
        for (int pos = 1; pos <= size(); ++pos)
            flags[static_cast<size_t>(pos - 1)] = letters_[static_cast<size_t>(pos)].star ? 1 : 0;
        return flags;
    }

    /// 1..2m index of the n-letter run containing pos (used by the
    /// no-intrablock pairing family).
    int n_group(int pos) const { return (pos - 1) / n_ + 1; }

    bool operator==(const PatternWord& o) const { return n_ == o.n_ && m_ == o.m_; }

private:
    int n_, m_;
    std::vector<Letter> letters_;
};

/// A non-crossing pairing of the pattern word joining starred letters to
/// plain letters.
class StarPairing {
public:
    StarPairing(PatternWord word, Pairing pairing)
        : word_(std::move(word)), pairing_(std::move(pairing)) {
        if (pairing_.ground_size() != word_.size())
            throw std::invalid_argument("star pairing: size mismatch with pattern");
        if (!is_noncrossing(pairing_.partition()))
            throw std::invalid_argument("star pairing: crossing pairing");
        for (const auto& b : pairing_.partition().blocks())
            if (word_.at(b[0]).star == word_.at(b[1]).star)
                throw std::invalid_argument("star pairing: pair joins two letters of one kind");
    }

    const PatternWord& word() const { return word_; }
    const Pairing& pairing() const { return pairing_; }
    int n() const { return word_.n(); }
    int m() const { return word_.m(); }

    bool operator==(const StarPairing& o) const {
        return word_ == o.word_ && pairing_ == o.pairing_;
    }

    /// Header + pairing text, e.g. "(3,4) {1,24|...}".
    std::string to_text() const {
        return "(" + std::to_string(n()) + "," + std::to_string(m()) + ") " +
               pairing_.partition().to_text();
    }

private:
    PatternWord word_;
    Pairing pairing_;
};

namespace detail {

/// Prefix star counts: stars_before[p] = number of starred letters at
/// positions < p.
inline std::vector<int> star_prefix(const std::vector<char>& flags) {
    std::vector<int> pre(flags.size() + 1, 0);
    for (size_t i = 0; i < flags.size(); ++i) pre[i + 1] = pre[i] + (flags[i] ? 1 : 0);
    return pre;
}

struct StarPairingPolicy {
    const std::vector<char>& flags;
    const std::vector<int>& stars_before;

    bool can_extend(const std::vector<int>& block, int next) const {
        return block.size() == 1 &&
               flags[static_cast<size_t>(next - 1)] != flags[static_cast<size_t>(block[0] - 1)];
    }
    bool can_close(const std::vector<int>& block) const { return block.size() == 2; }
    bool segment_ok(int lo, int hi) const {
        if (lo > hi) return true;
        const int len = hi - lo + 1;
        if (len % 2 != 0) return false;
        const int stars = stars_before[static_cast<size_t>(hi)] - stars_before[static_cast<size_t>(lo - 1)];
        return 2 * stars == len;
    }
};

struct AlternatingPolicy {
    const std::vector<char>& flags;
    const std::vector<int>& stars_before;

    bool can_extend(const std::vector<int>& block, int next) const {
        return flags[static_cast<size_t>(next - 1)] !=
               flags[static_cast<size_t>(block.back() - 1)];
    }
    bool can_close(const std::vector<int>& block) const { return block.size() % 2 == 0; }
    bool segment_ok(int lo, int hi) const {
        if (lo > hi) return true;
        const int len = hi - lo + 1;
        if (len % 2 != 0) return false;
        const int stars = stars_before[static_cast<size_t>(hi)] - stars_before[static_cast<size_t>(lo - 1)];
        return 2 * stars == len;
    }
};

struct NoIntrablockPolicy {
    int n;

    int n_group(int pos) const { return (pos - 1) / n; }
    bool can_extend(const std::vector<int>& block, int next) const {
        return block.size() == 1 && n_group(next) != n_group(block[0]);
    }
    bool can_close(const std::vector<int>& block) const { return block.size() == 2; }
    bool segment_ok(int lo, int hi) const { return lo > hi || (hi - lo + 1) % 2 == 0; }
};

} // namespace detail

/// Visits NC2*(n,m): every non-crossing star pairing of the pattern word,
/// lexicographically. Each yielded pairing is checked to join equal
/// labels only. The count is fuss_catalan(n, m).
template <class Visitor>
void for_each_star_pairing(int n, int m, Visitor visit,
                           int ceiling = kDefaultPatternCeiling) {
    check_ceiling(2 * n * m, ceiling, "for_each_star_pairing");
    const PatternWord word(n, m);
    const auto flags = word.star_flags();
    const auto pre = detail::star_prefix(flags);
    for_each_nc_blocks(
        word.size(), detail::StarPairingPolicy{flags, pre},
        [&](const std::vector<std::vector<int>>& blocks) {
            for (const auto& b : blocks)
                if (word.at(b[0]).label != word.at(b[1]).label)
                    throw std::logic_error("star pairing joins unequal labels");
            visit(StarPairing(word, Pairing(Partition(word.size(), blocks))));
        });
}

/// Visits NC*(n,m): non-crossing partitions of the pattern word whose
/// blocks all have even size and strictly alternate star flags in
/// position order.
template <class Visitor>
void for_each_alternating_partition(int n, int m, Visitor visit,
                                    int ceiling = kDefaultPatternCeiling) {
    check_ceiling(2 * n * m, ceiling, "for_each_alternating_partition");
    const PatternWord word(n, m);
    const auto flags = word.star_flags();
    const auto pre = detail::star_prefix(flags);
    for_each_nc_blocks(word.size(), detail::AlternatingPolicy{flags, pre},
                       [&](const std::vector<std::vector<int>>& blocks) {
                           visit(Partition(word.size(), blocks));
                       });
}

/// Raw-block variant of for_each_alternating_partition for hot loops; the
/// visitor gets the canonical block list without a Partition wrapper.
template <class Visitor>
void for_each_alternating_blocks(int n, int m, Visitor visit,
                                 int ceiling = kDefaultPatternCeiling) {
    check_ceiling(2 * n * m, ceiling, "for_each_alternating_partition");
    const PatternWord word(n, m);
    const auto flags = word.star_flags();
    const auto pre = detail::star_prefix(flags);
    for_each_nc_blocks(word.size(), detail::AlternatingPolicy{flags, pre}, visit);
}

/// Visits T(n,m): non-crossing pairings of the pattern word where no pair
/// stays inside a single n-letter run. Star kinds are unconstrained.
template <class Visitor>
void for_each_no_intrablock_pairing(int n, int m, Visitor visit,
                                    int ceiling = kDefaultPatternCeiling) {
    check_ceiling(2 * n * m, ceiling, "for_each_no_intrablock_pairing");
    const PatternWord word(n, m);
    for_each_nc_blocks(word.size(), detail::NoIntrablockPolicy{n},
                       [&](const std::vector<std::vector<int>>& blocks) {
                           visit(Pairing(Partition(word.size(), blocks)));
                       });
}

inline std::vector<StarPairing> enumerate_star_pairings(int n, int m,
                                                        int ceiling = kDefaultPatternCeiling) {
    std::vector<StarPairing> out;
    for_each_star_pairing(n, m, [&](const StarPairing& p) { out.push_back(p); }, ceiling);
    return out;
}

inline std::vector<Partition> enumerate_alternating_partitions(
    int n, int m, int ceiling = kDefaultPatternCeiling) {
    std::vector<Partition> out;
    for_each_alternating_partition(n, m, [&](const Partition& p) { out.push_back(p); }, ceiling);
    return out;
}

inline std::vector<Pairing> enumerate_no_intrablock_pairings(
    int n, int m, int ceiling = kDefaultPatternCeiling) {
    std::vector<Pairing> out;
    for_each_no_intrablock_pairing(n, m, [&](const Pairing& p) { out.push_back(p); }, ceiling);
    return out;
}

} // namespace freehaag
