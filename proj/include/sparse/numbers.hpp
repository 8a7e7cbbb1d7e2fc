#pragma once

// Exact integer and rational arithmetic shared by every module.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sparse {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Error raised when an input violates an operation's precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Error raised when a configured size cap (states, components) is exceeded.
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Error raised when an internal two-route check disagrees.
class VerificationFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline BigInt big_pow(const BigInt& base, std::uint64_t e) {
    BigInt r = 1, b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline Rational rat_pow(const Rational& base, std::int64_t e) {
    if (e >= 0) {
        return Rational(big_pow(boost::multiprecision::numerator(base), std::uint64_t(e)),
                        big_pow(boost::multiprecision::denominator(base), std::uint64_t(e)));
    }
    if (base == 0) throw PreconditionError("rat_pow: zero to a negative power");
    return Rational(1) / rat_pow(base, -e);
}

inline BigInt num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rational& r) { return den(r) == 1; }

/// Largest integer <= r.
inline BigInt floor_of(const Rational& r) {
    BigInt n = num(r), d = den(r);
    BigInt q = n / d;
    if (n < 0 && q * d != n) q -= 1;
    return q;
}

/// Smallest integer >= r.
inline BigInt ceil_of(const Rational& r) { return -floor_of(-r); }

/// Exponent e such that den(r) == p^e, or -1 when the denominator is not a power of p.
inline int p_power_exponent_of_den(const Rational& r, std::uint32_t p) {
    BigInt d = den(r);
    int e = 0;
    while (d % p == 0) {
        d /= p;
        ++e;
    }
    return d == 1 ? e : -1;
}

/// True iff r lies in S_p = { m / p^n : m, n >= 0 }.
inline bool in_sp(const Rational& r, std::uint32_t p) {
    return r >= 0 && p_power_exponent_of_den(r, p) >= 0;
}

/// "num/den" (or "num" when integral); the inverse of parse_rational.
inline std::string to_string(const Rational& r) {
    if (is_integer(r)) return num(r).str();
    return num(r).str() + "/" + den(r).str();
}

inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        BigInt n(s.substr(0, slash));
        BigInt d(s.substr(slash + 1));
        if (d == 0) throw PreconditionError("parse_rational: zero denominator in '" + s + "'");
        return Rational(n, d);
    } catch (const std::runtime_error&) {
        throw PreconditionError("parse_rational: malformed rational '" + s + "'");
    }
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace sparse
