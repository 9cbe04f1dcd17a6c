#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <string>

namespace heis {

using Integer  = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer factorial(unsigned n) {
    Integer r = 1;
    for (unsigned k = 2; k <= n; ++k) r *= k;
    return r;
}

inline Integer binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    Integer r = 1;
    for (unsigned j = 0; j < k; ++j) {
        r *= (n - j);
        r /= (j + 1);
    }
    return r;
}

inline Rational rational_pow(const Rational& q, long e) {
    Rational r = 1;
    Rational base = q;
    long n = e;
    if (n < 0) {
        base = Rational(denominator(q), numerator(q));
        n = -n;
    }
    for (long j = 0; j < n; ++j) r *= base;
    return r;
}

// Parses "a/b" or "a"; throws std::invalid_argument on malformed input.
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);

}  // namespace heis
