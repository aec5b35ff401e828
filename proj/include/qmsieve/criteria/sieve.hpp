#ifndef QMSIEVE_CRITERIA_SIEVE_HPP
#define QMSIEVE_CRITERIA_SIEVE_HPP

#include "qmsieve/classgroup/class_group.hpp"
#include "qmsieve/criteria/weil.hpp"
#include "qmsieve/quaternion/quaternion.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qms {

/* Galois-closed set of totally split primes of k whose classes generate
 * Cl_k, each with a fixed generator alpha of q^h. For q' = rho(q0) the
 * generator is rho(alpha_q0). */
struct SSet {
    struct Entry {
        PrimeIdeal q;
        FieldElement alpha;
    };
    FieldPtr k;
    Int h;
    std::vector<Int> rational_primes; // ascending
    std::vector<Entry> entries;       // grouped by rational prime, decompose_prime order

    json to_json() const;
};

struct SSetOptions {
    unsigned long prime_cap = 100000;
    GeneratorOptions generator;
};

/* p splits totally in k, p does not divide nl * h and p is unramified in F. */
bool in_m_set(NumberField const& k, NumberField const& F, Int const& p, Int const& nl, Int const& h);

SSet build_s_set(FieldPtr k, NumberField const& F, ClassGroupData const& cg, Int const& nl,
                 SSetOptions const& opt = {});
/* Adds every prime of k above the totally split prime l (no-op if present). */
void enlarge_s_set(SSet& S, Int const& l, GeneratorOptions const& opt = {});

/* Primes of k above the prime pF of F (F = Q or the registered base of k). */
std::vector<PrimeIdeal> primes_of_k_over(NumberField const& k, NumberField const& F, PrimeIdeal const& pF);

struct ScanOptions {
    unsigned workers = 1;
    std::uint64_t grid_cap = 100000000ULL;
    /* Fraction of triples rechecked exactly, at most max_self_checks. */
    double self_check_rate = 0.01;
    std::uint64_t max_self_checks = 200;
};

struct ScanResult {
    bool member = false;
    std::uint64_t triples = 0;
    std::uint64_t zero_residues = 0; // triples with gamma = 0 mod some prime above pF
    std::uint64_t vanishing = 0;     // of those, exact gamma = 0 (excluded)
    std::uint64_t self_checked = 0;
    /* Lexicographically least (S entry, beta, epsilon) witness. */
    struct Witness {
        std::size_t entry;
        std::size_t beta;
        std::vector<unsigned> eps; // indexed like k.automorphisms()
    };
    std::optional<Witness> witness;

    json to_json() const;
};

/* Is pF in N0(k)? The grid is [0, nl]^Gal(k/Q) in row-major order over the
 * automorphism list; every beta of FR(N(q)) over F is taken for each q in S.
 * Requires pF unramified in k and not below any prime of S. */
ScanResult m2_scan(FieldPtr F, SSet const& S, Int const& nl, PrimeIdeal const& pF,
                   ScanOptions const& opt = {});

/* Number of (q, beta, epsilon) triples m2_scan would visit. */
Int m2_grid_size(FieldPtr F, SSet const& S, Int const& nl);

/* pF lies below a prime of S, has norm < 4^d, or lies over a rational prime < nl. */
bool t_member(NumberField const& F, SSet const& S, Int const& nl, PrimeIdeal const& pF);
/* All primes of T(k), sorted. */
std::vector<PrimeIdeal> t_set(NumberField const& F, SSet const& S, Int const& nl);
/* pF ramified over Q or in k/F. */
bool ramified_member(NumberField const& k, NumberField const& F, PrimeIdeal const& pF);

struct N1Result {
    bool member = false;
    std::string reason; // "T", "ramified", "N0" or empty
    std::optional<ScanResult> scan;

    json to_json() const;
};

N1Result n1_member(FieldPtr F, SSet const& S, Int const& nl, PrimeIdeal const& pF,
                   ScanOptions const& opt = {});

struct Ell2 {
    Int l;
    int f = 1; // inertia degree of l in k
};

/* Least prime l <= cap with l not dividing nl * delta(B), odd inertia degree
 * in k, and F(sqrt -l) not splitting B. */
std::optional<Ell2> find_ell2(QuaternionData const& B, NumberField const& k, Int const& nl, unsigned long cap = 10000);

struct N2Threshold {
    Ell2 ell0;
    Int X; // 4 * l0^(d f0 nl / 12)
};

N2Threshold n2_threshold(QuaternionData const& B, NumberField const& k, Int const& nl, unsigned long cap = 10000);

/* Least prime l <= cap with l not dividing nl * h, splitting totally in k, such
 * that k contains no element of FR(l). */
std::optional<Int> find_ell1(FieldPtr F, NumberField const& k, Int const& nl, Int const& h, unsigned long cap = 2000);

} // namespace qms

#endif
