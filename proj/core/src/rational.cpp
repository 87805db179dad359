#include "cdcalc/rational.hpp"

#include "cdcalc/errors.hpp"

namespace cdcalc {

Rational parse_rational(std::string_view text)
{
    Rational q;
    if (text.empty() || q.set_str(std::string(text), 10) != 0)
        throw ParseError("malformed rational '" + std::string(text) + "'", 0);
    if (sgn(q.get_den()) == 0)
        throw ParseError("zero denominator in '" + std::string(text) + "'", 0);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q)
{
    return q.get_str();
}

Integer binomial(unsigned n, unsigned k)
{
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

}  // namespace cdcalc
