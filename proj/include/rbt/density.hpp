#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "rbt/bigint.hpp"
#include "rbt/partition.hpp"

namespace rbt {

/*
 * The recursive extremal function g_k(n) and companions.
 *
 *   g_k(n) = 0 for n < k, and otherwise the maximum over nontrivial
 *   k-partitions n_1+...+n_k = n of  sum_i g_k(n_i) + prod_i n_i.
 *
 * The maximum is attained by an equitable partition, which gives the fast
 * recursion used by DensityTable.  BruteForceDensity keeps the literal
 * maximization over all partitions as an independent oracle; the two share
 * no recursion logic.
 *
 * delta_k(n) is the degree of a removable vertex of the extremal construction and
 * satisfies g_k(n) - g_k(n-1) = delta_k(n).
 */
class DensityTable {
public:
    explicit DensityTable(int k) : k_(k) {
        if (k < 3) throw std::domain_error("DensityTable: k must be >= 3");
    }

    int k() const { return k_; }

    BigInt g(long long n) {
        if (n < 0) throw std::domain_error("g: n must be nonnegative");
        std::lock_guard<std::mutex> lock(mutex_);
        extend(n);
        return g_[static_cast<std::size_t>(n)];
    }

    BigInt delta(long long n) {
        if (n < 0) throw std::domain_error("delta: n must be nonnegative");
        std::lock_guard<std::mutex> lock(mutex_);
        extend(n);
        return delta_[static_cast<std::size_t>(n)];
    }

private:
    void extend(long long n) {
        for (long long m = static_cast<long long>(g_.size()); m <= n; ++m) {
            if (m < k_) {
                g_.emplace_back(0);
                delta_.emplace_back(0);
                continue;
            }
            const long long hi = (m + k_ - 1) / k_;  // ceil(m/k)
            const long long lo = m / k_;
            const long long r = m % k_;
            BigInt value = r * g_[static_cast<std::size_t>(hi)] +
                           (k_ - r) * g_[static_cast<std::size_t>(lo)] +
                           ipow(hi, static_cast<unsigned long long>(r)) *
                               ipow(lo, static_cast<unsigned long long>(k_ - r));
            g_.push_back(std::move(value));
            delta_.push_back(delta_[static_cast<std::size_t>(hi)] +
                             p_max_product(m - hi, k_ - 1));
        }
    }

    int k_;
    std::vector<BigInt> g_;
    std::vector<BigInt> delta_;
    std::mutex mutex_;
};

/// Process-wide memo table for arity k.
inline DensityTable& density_table(int k) {
    static std::mutex registry_mutex;
    static std::map<int, DensityTable>* registry = new std::map<int, DensityTable>;
    std::lock_guard<std::mutex> lock(registry_mutex);
    auto it = registry->find(k);
    if (it == registry->end())
        it = registry->emplace(std::piecewise_construct, std::forward_as_tuple(k),
                               std::forward_as_tuple(k)).first;
    return it->second;
}

inline BigInt g(int k, long long n) { return density_table(k).g(n); }
inline BigInt delta(int k, long long n) { return density_table(k).delta(n); }

/*
 * Literal maximization of sum g(s_i) + prod s_i over ALL nontrivial
 * k-partitions (zero parts allowed, no part equal to n), with its own memo
 * table.  Since nonincreasing parts put zeros in a tail and a zero part
 * annihilates the product, the search enumerates positive prefixes and
 * closes each with a zero tail.
 *
 * Candidates accumulate in int64; extend() refuses ranges where a candidate
 * could approach 2^62 (the oracle is meant for the small-n regime).
 */
class BruteForceDensity {
public:
    explicit BruteForceDensity(int k) : k_(k) {
        if (k < 3) throw std::domain_error("BruteForceDensity: k must be >= 3");
    }

    int k() const { return k_; }

    BigInt value(long long n) {
        if (n < 0) throw std::domain_error("g_bruteforce: n must be nonnegative");
        // Every value at size m is the edge count of a k-graph on m
        // vertices, so memo entries stay below C(n,k) and candidates below
        // (k+1) C(n,k); refuse ranges where that bound nears int64.
        if ((BigInt(k_) + 1) * (binomial(n, k_) + 1) >= (BigInt(1) << 62))
            throw std::overflow_error(
                "g_bruteforce: n outside the guarded brute-force range");
        std::lock_guard<std::mutex> lock(mutex_);
        extend(n);
        return memo_[static_cast<std::size_t>(n)];
    }

private:
    void extend(long long n) {
        for (long long m = static_cast<long long>(memo_.size()); m <= n; ++m) {
            if (m < k_) {
                memo_.push_back(0);
                continue;
            }
            long long best = 0;
            search(memo_.data(), m, k_, m - 1, 0, 1, best);
            memo_.push_back(best);
        }
    }

    static void search(const long long* g_of, long long remaining, int parts_left,
                       long long cap, long long sum_g, long long prod,
                       long long& best) {
        if (parts_left == 0) {
            const long long candidate = sum_g + prod;
            if (candidate > best) best = candidate;
            return;
        }
        if (remaining == 0) {
            // zero tail: product vanishes
            if (sum_g > best) best = sum_g;
            return;
        }
        const long long lo = (remaining + parts_left - 1) / parts_left;
        for (long long part = std::min(cap, remaining); part >= lo; --part)
            search(g_of, remaining - part, parts_left - 1, part,
                   sum_g + g_of[part], prod * part, best);
    }

    int k_;
    std::vector<long long> memo_;
    std::mutex mutex_;
};

inline BigInt g_bruteforce(int k, long long n) {
    static std::mutex registry_mutex;
    static std::map<int, BruteForceDensity>* registry =
        new std::map<int, BruteForceDensity>;
    BruteForceDensity* table = nullptr;
    {
        std::lock_guard<std::mutex> lock(registry_mutex);
        auto it = registry->find(k);
        if (it == registry->end())
            it = registry->emplace(std::piecewise_construct, std::forward_as_tuple(k),
                                   std::forward_as_tuple(k)).first;
        table = &it->second;
    }
    return table->value(n);
}

/// k!/(k^k - k), the asymptotic density constant, in lowest terms.
inline BigRat density_constant(int k) {
    if (k < 3) throw std::domain_error("density_constant: k must be >= 3");
    return BigRat(factorial(k), ipow(k, static_cast<unsigned long long>(k)) - k);
}

struct RationalBounds {
    BigRat lower;
    BigRat upper;
};

/// (n^k - k^3 n^(k-2))/(k^k - k) <= g_k(n) <= (n^k - n)/(k^k - k),
/// valid for k >= 4 and n > k(k-1).
inline RationalBounds g_bounds(int k, long long n) {
    if (k < 4 || n <= static_cast<long long>(k) * (k - 1))
        throw std::domain_error("g_bounds: need k >= 4 and n > k(k-1)");
    const BigInt nk = ipow(n, static_cast<unsigned long long>(k));
    const BigInt nk2 = ipow(n, static_cast<unsigned long long>(k - 2));
    const BigInt den = ipow(k, static_cast<unsigned long long>(k)) - k;
    return {BigRat(nk - BigInt(k) * k * k * nk2, den), BigRat(nk - n, den)};
}

/// (n/k)^k (1 - e_k(n)) <= p(n,k) <= (n/k)^k with e_k(n) = (4/27) k^3/n^2,
/// valid for k >= 3 and n > k(k-1).
inline RationalBounds p_bounds(int k, long long n) {
    if (k < 3 || n <= static_cast<long long>(k) * (k - 1))
        throw std::domain_error("p_bounds: need k >= 3 and n > k(k-1)");
    const BigRat upper = rpow(BigRat(n, k), static_cast<unsigned long long>(k));
    const BigRat e = BigRat(4 * BigInt(k) * k * k, 27 * BigInt(n) * n);
    return {upper * (1 - e), upper};
}

}  // namespace rbt
