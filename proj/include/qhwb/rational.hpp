#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

#include "qhwb/error.hpp"

namespace qhwb {

using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }

inline Rational make_rational(long num, long den = 1)
{
    if (den == 0)
        raise(Errc::DivisionByZero, "rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& x) { return x.get_str(); }

/// Parses `p` or `p/q` with optional leading sign.
inline Rational parse_rational(std::string_view text)
{
    Rational r;
    if (r.set_str(std::string(text), 10) != 0)
        raise(Errc::InvalidArgument, "not a rational number: " + std::string(text));
    if (r.get_den() == 0)
        raise(Errc::DivisionByZero, "rational with zero denominator");
    r.canonicalize();
    return r;
}

/// Exact square root in Q, if one exists. The returned root is nonnegative.
inline std::optional<Rational> rational_sqrt(const Rational& x)
{
    if (sgn(x) < 0)
        return std::nullopt;
    const Integer& num = x.get_num();
    const Integer& den = x.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    Integer rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    Rational r(rn, rd);
    r.canonicalize();
    return r;
}

inline Integer gcd(const Integer& a, const Integer& b)
{
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Integer lcm(const Integer& a, const Integer& b)
{
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline long lcm(long a, long b)
{
    long x = a, y = b;
    while (y != 0) {
        long t = x % y;
        x = y;
        y = t;
    }
    return a / x * b;
}

inline long gcd(long a, long b)
{
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b != 0) {
        long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace qhwb
