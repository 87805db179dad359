#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace cdcalc {

// Canonical arbitrary-precision rational: gcd(num, den) = 1, den > 0, zero is 0/1.
using Rational = mpq_class;
using Integer = mpz_class;

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

/// gmpxx leaves Rational(4, 2) as written; arithmetic and comparison assume lowest terms.
inline Rational canonical(Rational q)
{
    q.canonicalize();
    return q;
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_one(const Rational& q) { return q == 1; }

Integer binomial(unsigned n, unsigned k);

}  // namespace cdcalc
