#include "qmsieve/exact/factor.hpp"

#include <algorithm>
#include <map>

namespace qms {

namespace {

/* Brent's cycle-finding variant of Pollard rho; returns a nontrivial
 * factor or 0 when the iteration allowance is spent. */
Int pollard_brent(Int const& n, unsigned long c0, unsigned long& allowance)
{
    Int y = 2, c = c0, g = 1, q = 1, x, ys;
    unsigned long r = 1, m = 128;
    while (g == 1) {
        x = y;
        for (unsigned long i = 0; i < r; ++i)
            y = (y * y + c) % n;
        unsigned long k = 0;
        while (k < r && g == 1) {
            ys = y;
            unsigned long lim = std::min(m, r - k);
            for (unsigned long i = 0; i < lim; ++i) {
                y = (y * y + c) % n;
                q = (q * abs(x - y)) % n;
            }
            g = gcd(q, n);
            k += lim;
            if (allowance <= lim)
                return 0;
            allowance -= lim;
        }
        r *= 2;
    }
    if (g == n) {
        do {
            ys = (ys * ys + c) % n;
            g = gcd(abs(x - ys), n);
        } while (g == 1);
    }
    return g == n ? Int(0) : g;
}

void split(Int const& n, std::map<Int, int>& acc, unsigned long& allowance)
{
    if (n == 1)
        return;
    if (is_prime(n)) {
        acc[n] += 1;
        return;
    }
    if (is_square(n)) {
        Int r = isqrt(n);
        split(r, acc, allowance);
        split(r, acc, allowance);
        return;
    }
    for (unsigned long c = 1; c < 64; ++c) {
        Int d = pollard_brent(n, c, allowance);
        if (d != 0) {
            split(d, acc, allowance);
            split(n / d, acc, allowance);
            return;
        }
        if (allowance == 0)
            break;
    }
    throw ResourceError("integer factorization budget exhausted on cofactor " + n.get_str());
}

} // namespace

std::vector<std::pair<Int, int>> factor_integer(Int const& n0, FactorBudget const& budget)
{
    if (n0 == 0)
        throw InvalidInput("factor_integer: zero");
    Int n = abs(n0);
    std::map<Int, int> acc;
    for (unsigned long p = 2; p <= budget.trial_limit; p = (p == 2 ? 3 : p + 2)) {
        if (Int(p) * p > n)
            break;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            int e = 0;
            while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
                mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
                ++e;
            }
            acc[Int(p)] = e;
        }
    }
    unsigned long allowance = budget.rho_iterations;
    split(n, acc, allowance);
    return {acc.begin(), acc.end()};
}

std::vector<Int> prime_divisors(Int const& n, FactorBudget const& budget)
{
    std::vector<Int> r;
    for (auto const& [p, e] : factor_integer(n, budget))
        r.push_back(p);
    return r;
}

Int squarefree_part(Int const& m)
{
    if (m == 0)
        return 0;
    Int s = m < 0 ? Int(-1) : Int(1);
    for (auto const& [p, e] : factor_integer(m))
        if (e % 2)
            s *= p;
    return s;
}

unsigned long euler_phi(unsigned long m)
{
    unsigned long r = m;
    for (unsigned long p = 2; p * p <= m; ++p)
        if (m % p == 0) {
            while (m % p == 0)
                m /= p;
            r -= r / p;
        }
    if (m > 1)
        r -= r / m;
    return r;
}

} // namespace qms
