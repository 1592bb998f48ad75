#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace hutch {

using Rational = mpq_class;
using Integer = mpz_class;

/// Thrown when a textual rational (or any other config field) fails to parse.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when an iteration exceeds a configured resource cap.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// p/q in canonical form (mpq_class(p, q) alone does not reduce).
inline Rational ratio(long p, long q) {
    Rational r(p, q);
    r.canonicalize();
    return r;
}

Integer floor(const Rational& r);

/// r - floor(r), always in [0, 1).
Rational frac(const Rational& r);

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }
inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

Rational pow(const Rational& base, unsigned exponent);

/// Parses "p/q" or "p" (optionally signed). Decimal and exponent forms are
/// rejected so that every value on disk is exact.
Rational parse_rational(std::string_view text);

/// Always renders "p/q", including q = 1.
std::string to_string(const Rational& r);

/// Decimal rendering with the given number of significant digits.
std::string to_decimal(const Rational& r, int significant_digits = 12);

inline double to_double(const Rational& r) { return r.get_d(); }

/// Closest rational to x with denominator at most max_denominator.
Rational limit_denominator(const Rational& x, const Integer& max_denominator);

}  // namespace hutch
