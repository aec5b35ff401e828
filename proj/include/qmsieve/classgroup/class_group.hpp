#ifndef QMSIEVE_CLASSGROUP_CLASS_GROUP_HPP
#define QMSIEVE_CLASSGROUP_CLASS_GROUP_HPP

#include "qmsieve/classgroup/bqf.hpp"
#include "qmsieve/ideal/ideal.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qms {

struct ClassGroupOptions {
    Int max_minkowski = 100000;
    unsigned workers = 1;
    int max_rounds = 10;
};

/* Cl_K = Z^FB / L for the relation lattice L. Generator i has order
 * invariants[i]; dlog[j] gives the class of factor_base[j]. */
struct ClassGroupData {
    FieldPtr field;
    Int h;
    IntVector invariants;               // d1 | d2 | ..., all > 1
    std::vector<PrimeIdeal> factor_base; // every prime of norm <= minkowski_bound, sorted
    std::vector<IntVector> dlog;         // one row per factor-base prime
    std::vector<IntVector> generators;   // exponents on the factor base, >= 0
    Int minkowski_bound;
    std::size_t relations = 0;
    int rounds = 0;

    Ideal generator_ideal(std::size_t i) const;
    json to_json() const;
    static ClassGroupData from_json(FieldPtr K, json const& j);
};

/* Upper bound for the Minkowski constant, rounded down to an integer. */
Int minkowski_bound(NumberField const& K);

ClassGroupData class_group(FieldPtr K, ClassGroupOptions const& opt = {});

/* Exponents v with I ~ prod g_i^v_i, 0 <= v_i < d_i. */
IntVector ideal_class_dlog(ClassGroupData const& cg, Ideal const& I);

/* Generator of the principal ideal I * prod g_i^(d_i - v_i); the
 * certificate for a dlog value. Throws if the residual is not principal. */
FieldElement certify_dlog(ClassGroupData const& cg, Ideal const& I, IntVector const& v);

struct GeneratorOptions {
    int max_shells = 80;
    unsigned long long node_cap = 50000000ULL;
};

/* alpha with alpha O = I, I principal (fractional allowed). Searches
 * lattice points of I in doubling T2 shells; among the generators in the
 * first nonempty shell, returns the least in canonical order after fixing
 * the sign. Throws ResourceError when the shell cap is exhausted. */
FieldElement principal_generator(Ideal const& I, GeneratorOptions const& opt = {});

struct HcfVerdict {
    enum class Kind { Contains, NotContains, NoWitnessUpTo };
    Kind kind = Kind::NoWitnessUpTo;
    Int subfield;       // m with M = Q(sqrt m)
    long class_number = 0;
    std::string reason;
    std::optional<Int> witness_prime;
    std::vector<Int> genus_generators;
    Int bound = 0;
    long primes_sampled = 0;

    json to_json() const;
};

/* Does k contain the Hilbert class field of M = Q(sqrt m), m < 0? */
HcfVerdict hilbert_containment(NumberField const& k, Int const& m, long sample_bound = 2000);

struct Condition2Result {
    enum class Verdict { Pass, HeuristicPass, Fail };
    Verdict verdict = Verdict::Pass;
    std::vector<HcfVerdict> subfields;
    json to_json() const;
};

Condition2Result condition2_check(NumberField const& k, long sample_bound = 2000);

} // namespace qms

#endif
