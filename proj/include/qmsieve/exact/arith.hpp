#ifndef QMSIEVE_EXACT_ARITH_HPP
#define QMSIEVE_EXACT_ARITH_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qms {

using Int = mpz_class;
using Rat = mpq_class;

/* Raised when a configured cap (box size, scan size, factoring budget)
 * is exceeded. Never used for mathematical failure. */
class ResourceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/* Raised on inputs that violate a documented precondition. */
class InvalidInput : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

inline Int floor_div(Int const& a, Int const& b)
{
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int ceil_div(Int const& a, Int const& b)
{
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

/* Representative in [0, m). */
inline Int mod(Int const& a, Int const& m)
{
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    if (r < 0)
        r += abs(m);
    return r;
}

inline Int floor_of(Rat const& r)
{
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline Int ceil_of(Rat const& r)
{
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline Int isqrt(Int const& a)
{
    if (a < 0)
        throw InvalidInput("isqrt of negative integer");
    Int r;
    mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

/* floor(sqrt(r)) for r >= 0 rational. */
inline Int floor_sqrt(Rat const& r)
{
    return isqrt(floor_of(r));
}

inline bool is_square(Int const& a)
{
    return a >= 0 && mpz_perfect_square_p(a.get_mpz_t()) != 0;
}

inline Int gcd(Int const& a, Int const& b)
{
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcm(Int const& a, Int const& b)
{
    Int g;
    mpz_lcm(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

/* g = s*a + t*b with g = gcd(a, b) >= 0. */
inline void xgcd(Int& g, Int& s, Int& t, Int const& a, Int const& b)
{
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

inline Int pow(Int const& a, unsigned long e)
{
    Int r;
    mpz_pow_ui(r.get_mpz_t(), a.get_mpz_t(), e);
    return r;
}

inline Int powmod(Int const& a, Int const& e, Int const& m)
{
    Int r;
    Int base = mod(a, m);
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline Int invmod(Int const& a, Int const& m)
{
    Int r;
    Int base = mod(a, m);
    if (mpz_invert(r.get_mpz_t(), base.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::domain_error("invmod: not invertible");
    return r;
}

inline bool is_prime(Int const& n)
{
    return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

inline Int next_prime(Int const& n)
{
    Int r;
    mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

/* p-adic valuation of a nonzero integer. */
inline int valuation(Int a, Int const& p)
{
    if (a == 0)
        throw InvalidInput("valuation of zero");
    int v = 0;
    while (mpz_divisible_p(a.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    return v;
}

inline bool divides(Int const& d, Int const& a)
{
    if (d == 0)
        return a == 0;
    return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline std::string to_string(Int const& a) { return a.get_str(); }
inline std::string to_string(Rat const& a) { return a.get_str(); }

inline long to_long(Int const& a)
{
    if (!a.fits_slong_p())
        throw ResourceError("integer does not fit in a machine word: " + a.get_str());
    return a.get_si();
}

/* Squarefree kernel sign-preserving: m = s * k^2 with s squarefree. */
Int squarefree_part(Int const& m);

} // namespace qms

#endif
