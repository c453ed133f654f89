#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "rbt/bigint.hpp"

namespace rbt {

/*
 * Integer partition machinery: equitable partitions, the capped maximum
 * product p(q,t), and enumeration of partitions into a fixed number of
 * nonnegative parts.
 */

/// Nonincreasing parts with a fixed total.
struct Partition {
    std::vector<long long> parts;
    long long total = 0;

    bool nontrivial() const {
        return std::all_of(parts.begin(), parts.end(),
                           [&](long long p) { return p < total; });
    }
};

/// The unique nonincreasing partition of n into t parts with pairwise
/// difference at most 1: ceil(n/t) repeated (n mod t) times, then floor(n/t).
inline Partition equitable_partition(long long n, long long t) {
    if (n < 0) throw std::domain_error("equitable_partition: n must be nonnegative");
    if (t < 1) {
        if (t == 0 && n == 0) return Partition{{}, 0};
        throw std::domain_error("equitable_partition: t must be positive");
    }
    const long long q = n / t;
    const long long r = n % t;
    Partition result;
    result.total = n;
    result.parts.reserve(static_cast<std::size_t>(t));
    result.parts.insert(result.parts.end(), static_cast<std::size_t>(r), q + 1);
    result.parts.insert(result.parts.end(), static_cast<std::size_t>(t - r), q);
    return result;
}

/*
 * p(q,t): the maximum of prod q_i over partitions q_1+...+q_t = q with every
 * q_i < q.  p(0,0) = 1 by convention.  For t >= 2 the maximum is attained by
 * the equitable partition (and equals 0 when q < t, a part being forced to
 * 0).  For t = 1 the constraint q_1 < q empties the feasible set as soon as
 * q > 1; those calls are a domain error rather than a silent convention.
 */
inline BigInt p_max_product(long long q, long long t) {
    if (q < 0 || t < 0) throw std::domain_error("p_max_product: negative argument");
    if (t == 0) {
        if (q == 0) return 1;
        throw std::domain_error("p_max_product: t = 0 requires q = 0");
    }
    if (t == 1) {
        if (q > 1) throw std::domain_error("p_max_product: p(q,1) undefined for q > 1");
        return q;  // p(0,1) = 0, p(1,1) = 1
    }
    BigInt product = 1;
    for (long long part : equitable_partition(q, t).parts) product *= part;
    return product;
}

namespace detail {

template <typename Fn>
bool for_each_partition_rec(std::vector<long long>& parts, long long remaining,
                            std::size_t index, long long cap, Fn&& fn) {
    const auto parts_left = static_cast<long long>(parts.size() - index);
    if (parts_left == 0) {
        return remaining == 0 ? fn(const_cast<const std::vector<long long>&>(parts))
                              : true;
    }
    long long hi = std::min(cap, remaining);
    for (long long part = hi; part >= 0; --part) {
        if (part * parts_left < remaining) break;
        parts[index] = part;
        if (!for_each_partition_rec(parts, remaining - part, index + 1, part, fn))
            return false;
    }
    return true;
}

}  // namespace detail

/// Visits every nonincreasing partition of n into exactly t nonnegative
/// parts, each part <= cap, in lexicographic-descending order.  The callback
/// receives the parts vector; returning false stops the enumeration.
template <typename Fn>
void for_each_partition(long long n, long long t, long long cap, Fn&& fn) {
    if (n < 0 || t < 1) throw std::domain_error("for_each_partition: need n >= 0, t >= 1");
    std::vector<long long> parts(static_cast<std::size_t>(t), 0);
    detail::for_each_partition_rec(parts, n, 0, std::min(cap, n), fn);
}

template <typename Fn>
void for_each_partition(long long n, long long t, Fn&& fn) {
    for_each_partition(n, t, n, std::forward<Fn>(fn));
}

/// Materialized enumeration; mostly for tests and small sweeps.
inline std::vector<Partition> enumerate_partitions(long long n, long long t,
                                                   long long cap) {
    std::vector<Partition> out;
    for_each_partition(n, t, cap, [&](const std::vector<long long>& parts) {
        out.push_back(Partition{parts, n});
        return true;
    });
    return out;
}

inline std::vector<Partition> enumerate_partitions(long long n, long long t) {
    return enumerate_partitions(n, t, n);
}

}  // namespace rbt
