#include "hutch/rational.hpp"

#include <cctype>
#include <cstdio>

namespace hutch {

Integer floor(const Rational& r) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

Rational frac(const Rational& r) {
    Rational out = r - Rational(floor(r));
    out.canonicalize();
    return out;
}

Rational pow(const Rational& base, unsigned exponent) {
    Rational result = 1;
    Rational b = base;
    while (exponent > 0) {
        if (exponent & 1u) result *= b;
        b *= b;
        exponent >>= 1;
    }
    return result;
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    const auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
        throw ParseError("malformed rational '" + std::string(text) + "' (expected p/q)");
    }
    Integer n(std::string(num), 10);
    Integer d(std::string(den), 10);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rational r(n, d);
    r.canonicalize();
    return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_decimal(const Rational& r, int significant_digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", significant_digits, r.get_d());
    return buf;
}

// Stern-Brocot / continued-fraction walk (same procedure as Python's
// Fraction.limit_denominator).
Rational limit_denominator(const Rational& x, const Integer& max_denominator) {
    if (max_denominator < 1) throw std::invalid_argument("denominator limit must be >= 1");
    if (x.get_den() <= max_denominator) return x;
    Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    Integer n = x.get_num(), d = x.get_den();
    while (true) {
        Integer a;
        mpz_fdiv_q(a.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
        Integer q2 = q0 + a * q1;
        if (q2 > max_denominator) break;
        Integer p2 = p0 + a * p1;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        Integer rem = n - a * d;
        n = d;
        d = rem;
    }
    Integer k;
    mpz_fdiv_q(k.get_mpz_t(), Integer(max_denominator - q0).get_mpz_t(), q1.get_mpz_t());
    Rational bound1(p0 + k * p1, q0 + k * q1);
    Rational bound2(p1, q1);
    bound1.canonicalize();
    bound2.canonicalize();
    return abs(bound2 - x) <= abs(bound1 - x) ? bound2 : bound1;
}

}  // namespace hutch
