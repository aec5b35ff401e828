#ifndef QMSIEVE_QUATERNION_QUATERNION_HPP
#define QMSIEVE_QUATERNION_QUATERNION_HPP

#include "qmsieve/ideal/ideal.hpp"

#include <utility>
#include <vector>

namespace qms {

/* Totally indefinite quaternion division algebra over a totally real F,
 * given by its finite ramification set (even, nonempty, sorted). */
struct QuaternionData {
    FieldPtr F;
    std::vector<PrimeIdeal> ram;

    json to_json() const;
    static QuaternionData from_json(FieldPtr F, json const& j);
};

/* Ramified primes named as (p, i): the i-th prime of F above p in sorted order. */
QuaternionData build_quaternion(FieldPtr F, std::vector<PrimeIdeal> ram);
QuaternionData build_quaternion(FieldPtr F, std::vector<std::pair<Int, std::size_t>> const& ram);

Ideal disc_BF(QuaternionData const& B);
/* Product of rational p ramified in F or lying under a ramified prime of B. */
Int delta(QuaternionData const& B);
/* Product of rational p lying under a ramified prime of B. */
Int delta_prime(QuaternionData const& B);

/* u is a square in the completion of its field at P. */
bool is_local_square(FieldElement const& u, PrimeIdeal const& P);

/* Does F(sqrt(-l)) split B? True iff no ramified prime of B splits in it. */
bool splits_B(QuaternionData const& B, Int const& l);

/* Some ramified prime of B is coprime to d_{k/F} times the different of F.
 * k must be a relative quadratic extension of F. */
bool sufficient_condition(QuaternionData const& B, NumberField const& k);

} // namespace qms

#endif
