#ifndef QMSIEVE_IDEAL_IDEAL_HPP
#define QMSIEVE_IDEAL_IDEAL_HPP

#include "qmsieve/exact/factor.hpp"
#include "qmsieve/field/number_field.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace qms {

/* Fractional ideal H / den: the rows of H (n x n, row-style HNF) are a
 * Z-basis on the integral basis. den > 0 and coprime to the content of H. */
class Ideal {
  public:
    Ideal() = default;
    Ideal(NumberField const& K, IntMatrix H, Int den = 1);

    static Ideal unit(NumberField const& K);
    static Ideal principal(FieldElement const& x);
    /* O-ideal generated by the given elements (at least one nonzero). */
    static Ideal generated_by(NumberField const& K, std::vector<FieldElement> const& gens);

    NumberField const& field() const { return *K_; }
    IntMatrix const& hnf() const { return H_; }
    Int const& den() const { return den_; }
    bool is_integral() const { return den_ == 1; }
    bool is_unit() const;

    Rat norm() const;
    bool contains(FieldElement const& x) const;
    /* this ⊆ o */
    bool is_subset_of(Ideal const& o) const;
    /* Smallest positive integer in the ideal (integral ideals). */
    Int minimum() const;

    Ideal operator*(Ideal const& o) const;
    Ideal operator+(Ideal const& o) const;
    Ideal pow(long e) const;
    Ideal inverse() const;
    /* Trace dual { x : Tr(x I) ⊆ Z }. */
    Ideal dual() const;
    Ideal scaled(FieldElement const& x) const;

    bool operator==(Ideal const& o) const { return den_ == o.den_ && H_ == o.H_; }
    bool operator!=(Ideal const& o) const { return !(*this == o); }
    /* Canonical order on (den, HNF entries). */
    bool operator<(Ideal const& o) const;

    json to_json() const;
    std::string to_string() const;

  private:
    void normalize();
    NumberField const* K_ = nullptr;
    IntMatrix H_;
    Int den_ = 1;
};

struct PrimeIdeal {
    Ideal ideal;
    Int p;
    int e = 1;
    int f = 1;
    /* (p, pi) generates the prime when present. */
    std::optional<FieldElement> two_element;
    /* b in O \ pO with b * prime ⊆ pO; then prime^-1 = O + (b/p) O. */
    FieldElement anti_uniformizer;

    Int norm() const { return pow(p, static_cast<unsigned long>(f)); }
    /* Order by (p, f, e, HNF). */
    bool operator<(PrimeIdeal const& o) const;
    bool operator==(PrimeIdeal const& o) const { return p == o.p && ideal == o.ideal; }
    json to_json() const;
    std::string to_string() const;
};

using IdealFactorization = std::vector<std::pair<PrimeIdeal, int>>;

/* All primes of K above p, sorted. */
std::vector<PrimeIdeal> decompose_prime(NumberField const& K, Int const& p);

int valuation(FieldElement const& x, PrimeIdeal const& P);
int valuation(Ideal const& I, PrimeIdeal const& P);

IdealFactorization factor_principal(FieldElement const& x, FactorBudget const& budget = {});
IdealFactorization factor_ideal(Ideal const& I, FactorBudget const& budget = {});
Ideal product(NumberField const& K, IdealFactorization const& fac);

std::vector<std::pair<int, int>> splitting_type(NumberField const& K, Int const& p); // (e, f), sorted
bool splits_totally(NumberField const& K, Int const& p);
std::vector<int> inertia_degrees(NumberField const& K, Int const& p);

/* Absolute different (the inverse of the trace dual of O_K). */
Ideal different(NumberField const& K);

/* Extension of an ideal of the registered base to K. */
Ideal extend_ideal(NumberField const& K, Ideal const& I);
/* Primes of K above a prime of the registered base, sorted. */
std::vector<PrimeIdeal> primes_above(NumberField const& K, PrimeIdeal const& P);
/* Relative norm of an ideal of K to the registered base, for a prime
 * of K: P_base^f(P/P_base). */
PrimeIdeal prime_below(NumberField const& K, PrimeIdeal const& P);

/* Relative discriminant of K = F(sqrt delta) over its registered base F. */
Ideal relative_discriminant(NumberField const& K);

/* Residue arithmetic for an integral ideal I: x mod I reduced to the box
 * 0 <= c_i < H_ii. */
IntVector reduce_mod(Ideal const& I, IntVector const& v);

} // namespace qms

#endif
