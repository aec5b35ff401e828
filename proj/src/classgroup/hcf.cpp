#include "qmsieve/classgroup/class_group.hpp"

#include "qmsieve/exact/factor.hpp"

#include <algorithm>

namespace qms {

namespace {

char const* kind_name(HcfVerdict::Kind k)
{
    switch (k) {
    case HcfVerdict::Kind::Contains:
        return "contains";
    case HcfVerdict::Kind::NotContains:
        return "not_contains";
    default:
        return "no_witness_up_to";
    }
}

} // namespace

json HcfVerdict::to_json() const
{
    json j;
    j["subfield"] = int_to_json(subfield);
    j["class_number"] = class_number;
    j["verdict"] = kind_name(kind);
    j["reason"] = reason;
    if (witness_prime)
        j["witness_prime"] = int_to_json(*witness_prime);
    if (!genus_generators.empty())
        j["genus_generators"] = ints_to_json(genus_generators);
    if (kind == Kind::NoWitnessUpTo) {
        j["bound"] = int_to_json(bound);
        j["primes_sampled"] = primes_sampled;
        j["heuristic"] = true;
    }
    return j;
}

HcfVerdict hilbert_containment(NumberField const& k, Int const& m, long sample_bound)
{
    if (m >= 0)
        throw InvalidInput("hilbert_containment: subfield must be imaginary quadratic");
    auto subs = quadratic_subfields(k);
    if (std::find(subs.begin(), subs.end(), m) == subs.end())
        throw InvalidInput("hilbert_containment: Q(sqrt " + m.get_str() + ") is not a subfield");
    Int D = quadratic_field_discriminant(m);
    BqfClassGroup G = bqf_class_group(D);
    HcfVerdict v;
    v.subfield = m;
    v.class_number = G.h;
    long rel_degree = static_cast<long>(k.degree()) / 2;

    if (G.h == 1) {
        v.kind = HcfVerdict::Kind::Contains;
        v.reason = "class number one: the Hilbert class field is M itself";
        return v;
    }
    if (rel_degree % G.h != 0) {
        v.kind = HcfVerdict::Kind::NotContains;
        v.reason = "degree obstruction: h_M does not divide [k:M]";
        return v;
    }
    bool elementary2 = std::all_of(G.invariants.begin(), G.invariants.end(), [](Int const& d) { return d == 2; });
    if (elementary2) {
        // the Hilbert class field is the genus field M(sqrt p*, ...)
        Int rest = D;
        for (Int const& p : prime_divisors(D)) {
            if (p == 2)
                continue;
            Int ps = (p % 4 == 1) ? p : Int(-p);
            v.genus_generators.push_back(ps);
            rest /= ps;
        }
        if (rest != 1)
            v.genus_generators.push_back(rest); // -4, 8 or -8
        for (Int const& g : v.genus_generators) {
            if (!sqrt_in_field(k, k.from_rational(Rat(g)))) {
                v.kind = HcfVerdict::Kind::NotContains;
                v.reason = "genus field generator sqrt(" + g.get_str() + ") not in k";
                return v;
            }
        }
        v.kind = HcfVerdict::Kind::Contains;
        v.reason = "every genus field generator is a square in k";
        return v;
    }
    // Chebotarev sampling: primes split completely in H_M are principal in M
    Form e = identity_form(D);
    v.bound = sample_bound;
    for (Int q = 2; q <= sample_bound; q = next_prime(q)) {
        if (divides(q, D) || divides(q, k.discriminant()) || !splits_totally(k, q))
            continue;
        ++v.primes_sampled;
        auto f = prime_form(D, q);
        if (f && !(*f == e)) {
            v.kind = HcfVerdict::Kind::NotContains;
            v.witness_prime = q;
            v.reason = "prime splitting completely in k is non-principal in M";
            return v;
        }
    }
    v.kind = HcfVerdict::Kind::NoWitnessUpTo;
    v.reason = "no non-principal completely split prime found";
    return v;
}

json Condition2Result::to_json() const
{
    json j;
    j["verdict"] = verdict == Verdict::Pass ? "pass" : verdict == Verdict::HeuristicPass ? "heuristic_pass" : "fail";
    json s = json::array();
    for (auto const& v : subfields)
        s.push_back(v.to_json());
    j["subfields"] = s;
    return j;
}

Condition2Result condition2_check(NumberField const& k, long sample_bound)
{
    Condition2Result r;
    for (Int const& m : quadratic_subfields(k)) {
        if (m >= 0)
            continue;
        HcfVerdict v = hilbert_containment(k, m, sample_bound);
        if (v.kind == HcfVerdict::Kind::Contains)
            r.verdict = Condition2Result::Verdict::Fail;
        else if (v.kind == HcfVerdict::Kind::NoWitnessUpTo && r.verdict == Condition2Result::Verdict::Pass)
            r.verdict = Condition2Result::Verdict::HeuristicPass;
        r.subfields.push_back(std::move(v));
    }
    return r;
}

} // namespace qms
