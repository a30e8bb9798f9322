#ifndef COBORD_RATIONAL_HPP
#define COBORD_RATIONAL_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace cobord {

// Exact arbitrary-precision rationals. All coefficient arithmetic in the
// library goes through mpq_class, which keeps values in canonical form
// (gcd(num,den) = 1, den > 0).
using Rat = mpq_class;
using Int = mpz_class;

inline Rat make_rat(long num, long den = 1)
{
    if (den == 0)
        throw std::invalid_argument("make_rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat rat_from_string(const std::string& num, const std::string& den)
{
    Rat q{Int(num), Int(den)};
    if (q.get_den() == 0)
        throw std::invalid_argument("rat_from_string: zero denominator");
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

// True iff den(q) = m^j for some j >= 0 (with m = 1 this means den = 1).
// Realizes the localized rings Z_(m) = Z[1/m]: an element lies in Z_(m)
// exactly when its reduced denominator divides a power of m.
inline bool denominator_power_of(const Rat& q, long m)
{
    Int den = q.get_den();
    if (den == 1)
        return true;
    if (m == 0 || m == 1 || m == -1)
        return false;
    Int base = m < 0 ? -m : m;
    // strip every prime of base from den
    Int g = gcd(den, base);
    while (g > 1) {
        while (den % g == 0)
            den /= g;
        g = gcd(den, base);
    }
    return den == 1;
}

} // namespace cobord

#endif
