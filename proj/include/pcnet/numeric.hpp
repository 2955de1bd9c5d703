#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace pcnet {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::rational<BigInt>;

/// One-based residue: the value in [1..q] congruent to a modulo q.
/// In particular mod1(a, q) == q whenever q divides a.
inline long mod1(long a, long q) {
    if (q <= 0) throw std::invalid_argument("mod1: modulus must be positive");
    long r = a % q;
    if (r < 0) r += q;
    return r == 0 ? q : r;
}

inline BigInt factorial(long n) {
    if (n < 0) throw std::invalid_argument("factorial of negative");
    BigInt v = 1;
    for (long i = 2; i <= n; ++i) v *= i;
    return v;
}

inline BigInt binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt v = 1;
    for (long i = 1; i <= k; ++i) {
        v *= (n - k + i);
        v /= i;
    }
    return v;
}

inline bool is_integer(const Rat& r) { return r.denominator() == 1; }

inline long to_long(const BigInt& v) { return static_cast<long>(v); }

inline long rat_to_long(const Rat& r) {
    if (!is_integer(r)) throw std::invalid_argument("rational is not an integer");
    return to_long(r.numerator());
}

inline double to_double(const Rat& r) {
    return static_cast<double>(static_cast<boost::multiprecision::cpp_rational>(r.numerator()) /
                               static_cast<boost::multiprecision::cpp_rational>(r.denominator()));
}

std::string rat_to_string(const Rat& r);

/// Parses "p/q", "p", or a terminating decimal like "0.25" into an exact rational.
std::optional<Rat> parse_rational(const std::string& text);

/// Rounds to `digits` decimal places, half away from zero, rendered without
/// trailing zeros ("1.04", "0.6", "2").
std::string format_rounded(const Rat& r, int digits);

/// Scientific notation with 2 significant digits ("8.7E+19").
std::string format_sci2(const BigInt& v);

}  // namespace pcnet
