#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace chowdr {

// Exact coefficient arithmetic. Every quantity in the engine is an
// arbitrary-precision rational kept in lowest terms with positive
// denominator; there is no floating point anywhere.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer rational_num(const Rational& q) { return numerator(q); }
inline Integer rational_den(const Rational& q) { return denominator(q); }

inline Integer factorial(int n)
{
    Integer r = 1;
    for (int i = 2; i <= n; ++i)
        r *= i;
    return r;
}

inline Integer binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    Integer r = 1;
    for (int i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1); // always divides exactly at this point
    }
    return r;
}

inline Integer integer_pow(Integer base, int exp)
{
    Integer r = 1;
    for (int i = 0; i < exp; ++i)
        r *= base;
    return r;
}

inline Rational rational_pow(const Rational& base, int exp)
{
    Rational r = 1;
    for (int i = 0; i < exp; ++i)
        r *= base;
    return r;
}

/// Renders "n" when the denominator is 1, "n/d" otherwise.
inline std::string to_string(const Rational& q)
{
    if (rational_den(q) == 1)
        return rational_num(q).str();
    return rational_num(q).str() + "/" + rational_den(q).str();
}

} // namespace chowdr
