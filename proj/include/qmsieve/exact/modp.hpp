#ifndef QMSIEVE_EXACT_MODP_HPP
#define QMSIEVE_EXACT_MODP_HPP

#include "qmsieve/exact/int_poly.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace qms {

using u64 = std::uint64_t;

/* Prime field F_p for p < 2^63. */
struct Fp {
    u64 p;
    explicit Fp(u64 prime) : p(prime) {}
    static Fp from(Int const& q);

    u64 reduce(Int const& a) const;
    u64 add(u64 a, u64 b) const { u64 s = a + b; return s >= p ? s - p : s; }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
    u64 neg(u64 a) const { return a == 0 ? 0 : p - a; }
    u64 mul(u64 a, u64 b) const
    {
        return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p);
    }
    u64 pow(u64 a, u64 e) const;
    u64 inv(u64 a) const;
};

/* Polynomials over F_p, lowest degree first, no trailing zeros. */
using PolyFp = std::vector<u64>;

namespace fp {

void trim(PolyFp& a);
int degree(PolyFp const& a);
PolyFp from_int(IntPolynomial const& f, Fp const& F);
IntPolynomial to_int(PolyFp const& a);
PolyFp add(PolyFp const& a, PolyFp const& b, Fp const& F);
PolyFp sub(PolyFp const& a, PolyFp const& b, Fp const& F);
PolyFp mul(PolyFp const& a, PolyFp const& b, Fp const& F);
PolyFp scale(PolyFp const& a, u64 s, Fp const& F);
/* a = q*b + r with deg r < deg b. */
void divmod(PolyFp const& a, PolyFp const& b, PolyFp& q, PolyFp& r, Fp const& F);
PolyFp rem(PolyFp const& a, PolyFp const& b, Fp const& F);
PolyFp quo(PolyFp const& a, PolyFp const& b, Fp const& F);
PolyFp monic(PolyFp const& a, Fp const& F);
PolyFp gcd(PolyFp a, PolyFp b, Fp const& F);
PolyFp derivative(PolyFp const& a, Fp const& F);
PolyFp powmod(PolyFp const& base, Int const& e, PolyFp const& m, Fp const& F);
u64 eval(PolyFp const& a, u64 x, Fp const& F);

} // namespace fp

struct ModPFactor {
    IntPolynomial factor; // monic, coefficients in [0, q)
    int multiplicity;
    bool operator==(ModPFactor const&) const = default;
};

/* Factorization of f over F_q into monic irreducibles, sorted by
 * (degree, coefficients low to high). Equal-degree splitting draws from a
 * fixed-seed generator so the output is reproducible. */
std::vector<ModPFactor> factor_poly_mod_p(IntPolynomial const& f, Int const& q);

/* Distinct roots of f in F_q, ascending. */
std::vector<u64> roots_mod_p(IntPolynomial const& f, Int const& q);

/* Dense matrices over F_p, row-major. */
using MatFp = std::vector<std::vector<u64>>;

namespace fp {

/* In-place reduced row echelon form; returns pivot columns. */
std::vector<std::size_t> rref(MatFp& m, Fp const& F);
std::size_t rank(MatFp m, Fp const& F);
/* Basis of { x : m x = 0 } (column vectors), with `cols` unknowns. */
MatFp kernel(MatFp m, std::size_t cols, Fp const& F);
MatFp transpose(MatFp const& m, std::size_t cols);

} // namespace fp

} // namespace qms

#endif
