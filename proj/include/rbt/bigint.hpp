#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rbt {

// All exact arithmetic in the library goes through these two types.
// Bound and inequality checks are decided by exact rational comparison;
// floating point never enters a certification path.
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt ipow(BigInt base, unsigned long long exp) {
    BigInt result = 1;
    while (exp > 0) {
        if (exp & 1) result *= base;
        base *= base;
        exp >>= 1;
    }
    return result;
}

inline BigRat rpow(const BigRat& base, unsigned long long exp) {
    BigRat result = 1;
    BigRat b = base;
    while (exp > 0) {
        if (exp & 1) result *= b;
        b *= b;
        exp >>= 1;
    }
    return result;
}

inline BigInt factorial(int n) {
    if (n < 0) throw std::domain_error("factorial: negative argument");
    BigInt result = 1;
    for (int i = 2; i <= n; ++i) result *= i;
    return result;
}

inline BigInt binomial(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt result = 1;
    for (long long i = 1; i <= k; ++i) {
        result *= n - k + i;
        result /= i;
    }
    return result;
}

inline std::string to_string(const BigInt& v) { return v.str(); }

/// "num/den" in lowest terms; integers render without the "/1".
inline std::string to_string(const BigRat& v) {
    if (boost::multiprecision::denominator(v) == 1)
        return boost::multiprecision::numerator(v).str();
    return boost::multiprecision::numerator(v).str() + "/" +
           boost::multiprecision::denominator(v).str();
}

}  // namespace rbt
