#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "eqloc/errors.hpp"

namespace eqloc {

// All coefficient arithmetic is exact; floating point never appears.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int gcd(Int a, Int b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm(Int a, Int b) { return boost::multiprecision::lcm(a, b); }

inline Int int_pow(const Int& base, unsigned exp) {
    Int out = 1;
    Int b = base;
    while (exp != 0) {
        if (exp & 1u) out *= b;
        b *= b;
        exp >>= 1;
    }
    return out;
}

// x^e for integer e; x must be nonzero when e < 0.
inline Rat rat_pow(const Rat& x, long long e) {
    if (e >= 0) {
        Rat out = 1;
        for (long long i = 0; i < e; ++i) out *= x;
        return out;
    }
    if (x == 0) throw InternalError("rat_pow: zero base with negative exponent");
    Rat out = 1;
    Rat inv = Rat(denominator(x), numerator(x));
    for (long long i = 0; i < -e; ++i) out *= inv;
    return out;
}

// True iff every prime factor of d divides r; this is exactly the condition
// for 1/d to exist in Z[1/r].  d >= 1.
inline bool divides_power_of(Int d, const Int& r) {
    if (d < 0) d = -d;
    if (d == 0) return false;
    if (d == 1) return true;
    if (r == 0) return false;
    Int rr = r < 0 ? Int(-r) : r;
    while (d != 1) {
        Int g = gcd(d, rr);
        if (g == 1) return false;
        while (d % g == 0) d /= g;
    }
    return true;
}

inline bool rat_in_z_inv_r(const Rat& q, const Int& r) {
    return divides_power_of(denominator(q), r);
}

inline std::string rat_to_string(const Rat& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

inline Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw MalformedInput("zero denominator in rational literal: " + s);
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        throw MalformedInput("not a rational literal: " + s);
    }
}

// Distinct prime values for the numerical substitution cross-checks.
inline std::vector<Int> first_primes(std::size_t count) {
    std::vector<Int> out;
    Int candidate = 2;
    while (out.size() < count) {
        bool prime = true;
        for (Int p = 2; p * p <= candidate; ++p)
            if (candidate % p == 0) {
                prime = false;
                break;
            }
        if (prime) out.push_back(candidate);
        ++candidate;
    }
    return out;
}

inline Int binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    Int out = 1;
    for (unsigned i = 0; i < k; ++i) {
        out *= Int(n - i);
        out /= Int(i + 1);  // exact: product of i+1 consecutive integers
    }
    return out;
}

inline long long euler_phi(long long n) {
    long long result = n;
    long long m = n;
    for (long long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

}  // namespace eqloc
