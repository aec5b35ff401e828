#ifndef QMSIEVE_CRITERIA_WEIL_HPP
#define QMSIEVE_CRITERIA_WEIL_HPP

#include "qmsieve/ideal/ideal.hpp"

#include <optional>
#include <vector>

namespace qms {

/* lcm of all m with [F(zeta_m) : F] <= 2, F totally real. */
Int n_lcm(NumberField const& F);

/* Minimal polynomial of zeta_m + zeta_m^-1. */
IntPolynomial real_cyclotomic(unsigned long m);

/* One class of beta with beta^2 + b beta + q^f = 0, |b|_v <= 2 sqrt(q^f). */
struct WeilClass {
    enum class Disc { Zero, TotallyNegative, MixedNonpositive };
    FieldElement b;
    Int q;
    int f = 1;
    Disc disc_status = Disc::TotallyNegative;
    /* N_{F(beta)/F}(1 - beta): 1 + b + q^f, or (2 + b)/2 when beta lies in F. */
    FieldElement contribution;

    FieldElement discriminant() const; // b^2 - 4 q^f
    json to_json() const;
};

struct FRSet {
    FieldPtr F;
    Int q;
    int f = 1;
    std::vector<WeilClass> classes; // sorted by b

    json to_json() const;
};

FRSet fr_set(FieldPtr F, Int const& q, int f);

std::vector<PrimeIdeal> w_set(FieldPtr F, Int const& l, int f);
std::vector<PrimeIdeal> v_set(FieldPtr F, Int const& l, int f);
/* l times the product of |N_{F/Q}(contribution)|, squared for quadratic
 * classes (both conjugate roots). */
Int torsion_bound(FieldPtr F, Int const& l, int f);

/* Image of x in F inside k (F = Q or F the registered base of k). */
FieldElement embed(NumberField const& F, NumberField const& k, FieldElement const& x);

/* First class of FR(l) over F whose roots lie in k, if any. */
std::optional<WeilClass> fr_elements_in_k(FieldPtr F, NumberField const& k, Int const& l);

} // namespace qms

#endif
