#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rbt/rng.hpp"

namespace rbt {

/*
 * Pairs of [m] are indexed triangularly: {lo, hi} with lo < hi maps to
 * hi(hi-1)/2 + lo.  Colors are the unordered pairs of [k] under the same
 * indexing, so color c of a k-arity pattern decodes back to a pair via
 * color_pair(c).
 */
inline long long pair_index(long long a, long long b) {
    if (a == b) throw std::domain_error("pair_index: a == b");
    if (a > b) std::swap(a, b);
    return b * (b - 1) / 2 + a;
}

inline std::pair<int, int> color_pair(int c) {
    int hi = 1;
    while ((hi + 1) * hi / 2 <= c) ++hi;
    return {c - hi * (hi - 1) / 2, hi};
}

inline int num_colors(int k) { return k * (k - 1) / 2; }

/*
 * The target pattern R: a k-vertex tournament Gamma whose pair {i,j}
 * implicitly carries the color {i,j}.  Only the orientation is stored; one
 * bit per unordered pair, true meaning lo -> hi.
 *
 * Arity is capped at 11 so color sets fit in a 64-bit mask.
 */
class RPattern {
public:
    static constexpr int max_arity = 11;

    RPattern(int k, std::vector<bool> forward_bits)
        : k_(k), forward_(std::move(forward_bits)) {
        if (k < 3 || k > max_arity)
            throw std::domain_error("RPattern: arity must be in [3, 11]");
        if (forward_.size() != static_cast<std::size_t>(num_colors(k)))
            throw std::domain_error("RPattern: wrong orientation table size");
    }

    /// i -> j iff i < j.
    static RPattern transitive(int k) {
        if (k < 3 || k > max_arity)
            throw std::domain_error("RPattern: arity must be in [3, 11]");
        return RPattern(k, std::vector<bool>(num_colors(k), true));
    }

    static RPattern random(int k, std::uint64_t seed) {
        if (k < 3 || k > max_arity)
            throw std::domain_error("RPattern: arity must be in [3, 11]");
        Rng rng(seed);
        std::vector<bool> bits(num_colors(k));
        for (auto&& bit : bits) bit = rng.bounded(2) != 0;
        return RPattern(k, std::move(bits));
    }

    int k() const { return k_; }

    /// True iff i -> j in Gamma.
    bool forward(int i, int j) const {
        const bool lo_to_hi = forward_[static_cast<std::size_t>(pair_index(i, j))];
        return i < j ? lo_to_hi : !lo_to_hi;
    }

    const std::vector<bool>& bits() const { return forward_; }

    bool operator==(const RPattern& other) const {
        return k_ == other.k_ && forward_ == other.forward_;
    }

private:
    int k_;
    std::vector<bool> forward_;  // per pair index, true = lo -> hi
};

}  // namespace rbt
