#ifndef QMSIEVE_CRITERIA_THEOREMS_HPP
#define QMSIEVE_CRITERIA_THEOREMS_HPP

#include "qmsieve/criteria/sieve.hpp"

#include <functional>
#include <string>
#include <vector>

namespace qms {

enum class Outcome { Pass, Fail, Heuristic, Resource, Skipped };

std::string outcome_name(Outcome o);
Outcome outcome_from_name(std::string const& s);

struct SubCheck {
    std::string name;
    Outcome outcome = Outcome::Skipped;
    json data;
};

/* Verdict Empty iff every sub-check is a hard pass. */
struct Certificate {
    std::string theorem; // "m1_empty", "thm13" or "thm14"
    json inputs;         // enough to replay the check
    std::vector<SubCheck> checks;

    bool empty() const;
    /* Names of sub-checks that failed, were heuristic or hit a resource cap. */
    std::vector<std::string> open_conditions() const;
    json to_json() const;
    static Certificate from_json(json const& j);
};

struct CheckOptions {
    ScanOptions scan;
    SSetOptions sset;
    ClassGroupOptions class_group;
    unsigned long ell_cap = 10000;
    unsigned long ell1_cap = 2000;
    unsigned long hcf_bound = 2000;
    /* Overrides class_group(k); used by the CLI cache. */
    std::function<ClassGroupData(FieldPtr)> class_group_provider;

    /* Caps that influence outcomes (workers excluded). */
    json to_json() const;
    static CheckOptions from_json(json const& j);
};

/* The prime of F with the given serialized form (p and HNF). */
PrimeIdeal prime_from_json(NumberField const& F, json const& j);

Certificate check_m1_empty(FieldPtr F, QuaternionData const& B, Int const& l, int f, PrimeIdeal const& pF);
Certificate check_thm13(FieldPtr F, QuaternionData const& B, FieldPtr k, PrimeIdeal const& pF,
                        CheckOptions const& opt = {});
Certificate check_thm14(FieldPtr F, QuaternionData const& B, FieldPtr k, PrimeIdeal const& pF,
                        CheckOptions const& opt = {});

/* Re-runs the recorded check from its inputs; true iff every sub-check
 * outcome and datum is reproduced exactly. */
bool verify_certificate(json const& cert, CheckOptions const& runtime = {});

} // namespace qms

#endif
