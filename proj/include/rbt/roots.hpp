#pragma once

#include <optional>
#include <stdexcept>
#include <utility>

#include "rbt/bigint.hpp"

namespace rbt {

/*
 * Certified brackets for roots of  f(z) = z^(k-1) + (1-z)^(k-1) - rhs.
 * Everything is exact: endpoints are dyadic rationals, f is evaluated in
 * rational arithmetic, and a certificate records the endpoint signs.  On
 * (0, 1/2) f is strictly decreasing, on (1/2, 1) strictly increasing, so a
 * sign change pins the unique root on either side.
 */
struct RootCertificate {
    int k = 0;
    std::optional<long long> n;  // empty for the limit equation
    BigRat z_low;
    BigRat z_high;
    int sign_low = 0;   // sign of f at z_low
    int sign_high = 0;  // sign of f at z_high
    BigRat rhs;
    BigRat tol;

    BigRat width() const { return z_high - z_low; }
};

inline BigRat default_root_tol() { return BigRat(1, BigInt(1) << 40); }

namespace detail {

inline int root_poly_sign(int k, const BigRat& rhs, const BigRat& z) {
    const BigRat value =
        rpow(z, static_cast<unsigned long long>(k - 1)) +
        rpow(1 - z, static_cast<unsigned long long>(k - 1)) - rhs;
    if (value > 0) return 1;
    if (value < 0) return -1;
    return 0;
}

inline RootCertificate bisect_root(int k, std::optional<long long> n,
                                   const BigRat& rhs, BigRat lo, BigRat hi,
                                   const BigRat& tol) {
    int sign_lo = root_poly_sign(k, rhs, lo);
    int sign_hi = root_poly_sign(k, rhs, hi);
    if (sign_lo == 0 || sign_hi == 0 || sign_lo == sign_hi)
        throw std::logic_error("bisect_root: endpoints do not bracket a root");
    while (hi - lo > tol) {
        const BigRat mid = (lo + hi) / 2;
        const int sign_mid = root_poly_sign(k, rhs, mid);
        if (sign_mid == 0) {
            // dyadic midpoint landed on the root; shrink symmetrically
            BigRat lo2 = mid - tol / 4;
            BigRat hi2 = mid + tol / 4;
            if (root_poly_sign(k, rhs, lo2) != sign_lo ||
                root_poly_sign(k, rhs, hi2) != sign_hi)
                throw std::logic_error("bisect_root: degenerate rational root");
            lo = lo2;
            hi = hi2;
            break;
        }
        if (sign_mid == sign_lo)
            lo = mid;
        else
            hi = mid;
    }
    RootCertificate cert;
    cert.k = k;
    cert.n = n;
    cert.z_low = lo;
    cert.z_high = hi;
    cert.sign_low = sign_lo;
    cert.sign_high = sign_hi;
    cert.rhs = rhs;
    cert.tol = tol;
    return cert;
}

}  // namespace detail

/// Bracket of the smallest root in (0, 1/2) of
///   z^(k-1) + (1-z)^(k-1) = (k-1)^(k-1) / (k^(k-1) - 1).
inline RootCertificate limit_root(int k, const BigRat& tol = default_root_tol()) {
    if (k < 4) throw std::domain_error("limit_root: k must be >= 4");
    const BigInt pow_k1 = ipow(k - 1, static_cast<unsigned long long>(k - 1));
    const BigInt pow_k = ipow(k, static_cast<unsigned long long>(k - 1));
    const BigRat rhs(pow_k1, pow_k - 1);
    return detail::bisect_root(k, std::nullopt, rhs, BigRat(0), BigRat(1, 2), tol);
}

namespace detail {

inline BigRat finite_root_rhs(int k, long long n) {
    const long long m = n - (n + k - 1) / k;  // n - ceil(n/k)
    const BigInt pow_k1 = ipow(k - 1, static_cast<unsigned long long>(k - 1));
    const BigInt pow_k = ipow(k, static_cast<unsigned long long>(k - 1));
    const BigRat correction =
        1 - BigRat(4 * ipow(k - 1, 3), 27 * BigInt(m) * m);
    return BigRat(pow_k1, pow_k) * correction;
}

}  // namespace detail

/// Bracket of the smaller root z' in (0, 1/2) of the finite-n variant
///   z^(k-1) + (1-z)^(k-1) = ((k-1)/k)^(k-1) (1 - (4/27)(k-1)^3 / m^2),
/// m = n - ceil(n/k).  Values z <= z' are exactly those satisfying the
/// inequality form, so z' is the largest admissible z in (0, 1/2).
inline RootCertificate finite_root(int k, long long n,
                               const BigRat& tol = default_root_tol()) {
    if (k < 4 || n <= static_cast<long long>(k) * (k - 1))
        throw std::domain_error("finite_root: need k >= 4 and n > k(k-1)");
    const BigRat rhs = detail::finite_root_rhs(k, n);
    return detail::bisect_root(k, n, rhs, BigRat(0), BigRat(1, 2), tol);
}

/// Both roots 0 < z' < 1/2 < z'' < 1 of the finite-n equation.  Between them
/// the polynomial dips below the right-hand side, so values satisfying the
/// inequality form avoid the open interval (z', z''), which is symmetric
/// around 1/2.
inline std::pair<RootCertificate, RootCertificate> forbidden_interval(
    int k, long long n, const BigRat& tol = default_root_tol()) {
    if (k < 4 || n <= static_cast<long long>(k) * (k - 1))
        throw std::domain_error("forbidden_interval: need k >= 4 and n > k(k-1)");
    const BigRat rhs = detail::finite_root_rhs(k, n);
    RootCertificate low =
        detail::bisect_root(k, n, rhs, BigRat(0), BigRat(1, 2), tol);
    RootCertificate high =
        detail::bisect_root(k, n, rhs, BigRat(1, 2), BigRat(1), tol);
    return {std::move(low), std::move(high)};
}

}  // namespace rbt
