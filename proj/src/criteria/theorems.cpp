#include "qmsieve/criteria/theorems.hpp"

#include "qmsieve/version.hpp"

#include <algorithm>

namespace qms {

namespace {

struct Context {
    FieldPtr F;
    QuaternionData const& B;
    FieldPtr k;
    PrimeIdeal const& pF;
    CheckOptions const& opt;
    Int nl;
    std::optional<ClassGroupData> cg;

    ClassGroupData const& class_group_k()
    {
        if (!cg)
            cg = opt.class_group_provider ? opt.class_group_provider(k) : class_group(k, opt.class_group);
        return *cg;
    }
};

/* Runs body; resource exhaustion becomes a Resource outcome. */
template <class Body>
SubCheck run_check(std::string name, Body&& body)
{
    SubCheck c{std::move(name), Outcome::Fail, json::object()};
    try {
        body(c);
    } catch (ResourceError const& e) {
        c.outcome = Outcome::Resource;
        c.data["error"] = e.what();
    }
    return c;
}

bool blocked(std::vector<SubCheck> const& checks)
{
    return std::any_of(checks.begin(), checks.end(), [](SubCheck const& c) {
        return c.outcome == Outcome::Fail || c.outcome == Outcome::Resource || c.outcome == Outcome::Skipped;
    });
}

SubCheck skipped(std::string name)
{
    SubCheck c{std::move(name), Outcome::Skipped, json::object()};
    c.data["reason"] = "an earlier condition did not pass";
    return c;
}

json base_inputs(std::string const& thm, FieldPtr const& F, QuaternionData const& B, PrimeIdeal const& pF)
{
    json in;
    in["theorem"] = thm;
    in["F"] = F->spec().to_json();
    in["B"] = B.to_json();
    in["pF"] = pF.to_json();
    return in;
}

void check_field_inputs(FieldPtr const& F, QuaternionData const& B, FieldPtr const& k, PrimeIdeal const& pF)
{
    if (!same_field(*B.F, *F))
        throw InvalidInput("quaternion algebra is not defined over F");
    if (!same_field(pF.ideal.field(), *F))
        throw InvalidInput("pF is not a prime of F");
    if (!F->galois())
        throw InvalidInput("F must be Galois over Q");
    if (!k->galois())
        throw InvalidInput("k must be Galois over Q");
    if (F->degree() > 1 && !(k->has_base() && same_field(*k->base(), *F)))
        throw InvalidInput("k must be given as a quadratic extension of F");
    if (k->r1() != 0)
        throw InvalidInput("k must be totally imaginary");
}

SubCheck ell2_check(Context& c, Int& X)
{
    return run_check("ell2_exists", [&](SubCheck& s) {
        auto e = find_ell2(c.B, *c.k, c.nl, c.opt.ell_cap);
        s.data["cap"] = c.opt.ell_cap;
        if (!e) {
            s.outcome = Outcome::Fail;
            try {
                s.data["sufficient_condition"] = sufficient_condition(c.B, *c.k);
            } catch (InvalidInput const&) {
                s.data["sufficient_condition"] = nullptr;
            }
            return;
        }
        auto t = n2_threshold(c.B, *c.k, c.nl, c.opt.ell_cap);
        X = t.X;
        s.outcome = Outcome::Pass;
        s.data["l0"] = int_to_json(e->l);
        s.data["f0"] = e->f;
        s.data["X"] = int_to_json(X);
        s.data["n_lcm"] = int_to_json(c.nl);
        s.data["delta"] = int_to_json(delta(c.B));
    });
}

SubCheck split_check(Context& c)
{
    return run_check("splits_totally_over_Q", [&](SubCheck& s) {
        bool unram = !divides(c.pF.p, c.F->discriminant());
        s.data["p"] = int_to_json(c.pF.p);
        s.data["residue_degree"] = c.pF.f;
        s.data["unramified_in_F"] = unram;
        s.outcome = c.pF.f == 1 && c.pF.e == 1 && unram ? Outcome::Pass : Outcome::Fail;
    });
}

/* pF outside N1 (for the given S), N2 (rational primes below X) and Delta. */
SubCheck exceptional_check(Context& c, std::string const& name, SSet const& S, Int const& X)
{
    return run_check(name, [&](SubCheck& s) {
        Int const& p = c.pF.p;
        s.data["s_primes"] = ints_to_json(S.rational_primes);
        if (divides(p, delta(c.B))) {
            s.outcome = Outcome::Fail;
            s.data["member_of"] = "Delta";
            return;
        }
        if (p < X) {
            s.outcome = Outcome::Fail;
            s.data["member_of"] = "N2";
            return;
        }
        auto r = n1_member(c.F, S, c.nl, c.pF, c.opt.scan);
        s.data["n1"] = r.to_json();
        if (r.member) {
            s.outcome = Outcome::Fail;
            s.data["member_of"] = r.reason;
            return;
        }
        s.data["member_of"] = nullptr;
        s.outcome = Outcome::Pass;
    });
}

} // namespace

std::string outcome_name(Outcome o)
{
    switch (o) {
    case Outcome::Pass:
        return "pass";
    case Outcome::Fail:
        return "fail";
    case Outcome::Heuristic:
        return "heuristic";
    case Outcome::Resource:
        return "resource";
    default:
        return "skipped";
    }
}

Outcome outcome_from_name(std::string const& s)
{
    for (Outcome o : {Outcome::Pass, Outcome::Fail, Outcome::Heuristic, Outcome::Resource, Outcome::Skipped})
        if (outcome_name(o) == s)
            return o;
    throw InvalidInput("unknown outcome '" + s + "'");
}

bool Certificate::empty() const
{
    return !checks.empty() &&
           std::all_of(checks.begin(), checks.end(), [](SubCheck const& c) { return c.outcome == Outcome::Pass; });
}

std::vector<std::string> Certificate::open_conditions() const
{
    std::vector<std::string> out;
    for (auto const& c : checks)
        if (c.outcome != Outcome::Pass && c.outcome != Outcome::Skipped)
            out.push_back(c.name);
    return out;
}

json Certificate::to_json() const
{
    json j;
    j["theorem"] = theorem;
    j["verdict"] = empty() ? "Empty" : "Inconclusive";
    j["open_conditions"] = open_conditions();
    json cs = json::array();
    for (auto const& c : checks)
        cs.push_back({{"name", c.name}, {"outcome", outcome_name(c.outcome)}, {"data", c.data}});
    j["checks"] = cs;
    j["inputs"] = inputs;
    j["inputs_digest"] = sha256_hex(inputs.dump());
    j["tool_version"] = kToolVersion;
    return j;
}

Certificate Certificate::from_json(json const& j)
{
    Certificate c;
    c.theorem = j.at("theorem").get<std::string>();
    c.inputs = j.at("inputs");
    if (j.at("inputs_digest").get<std::string>() != sha256_hex(c.inputs.dump()))
        throw InvalidInput("certificate: inputs digest mismatch");
    for (auto const& s : j.at("checks"))
        c.checks.push_back({s.at("name").get<std::string>(), outcome_from_name(s.at("outcome").get<std::string>()),
                            s.at("data")});
    return c;
}

json CheckOptions::to_json() const
{
    json j;
    j["grid_cap"] = scan.grid_cap;
    j["self_check_rate"] = scan.self_check_rate;
    j["max_self_checks"] = scan.max_self_checks;
    j["s_prime_cap"] = sset.prime_cap;
    j["generator_shells"] = sset.generator.max_shells;
    j["generator_node_cap"] = sset.generator.node_cap;
    j["max_minkowski"] = int_to_json(class_group.max_minkowski);
    j["max_rounds"] = class_group.max_rounds;
    j["ell_cap"] = ell_cap;
    j["ell1_cap"] = ell1_cap;
    j["hcf_bound"] = hcf_bound;
    return j;
}

CheckOptions CheckOptions::from_json(json const& j)
{
    CheckOptions o;
    o.scan.grid_cap = j.at("grid_cap").get<std::uint64_t>();
    o.scan.self_check_rate = j.at("self_check_rate").get<double>();
    o.scan.max_self_checks = j.at("max_self_checks").get<std::uint64_t>();
    o.sset.prime_cap = j.at("s_prime_cap").get<unsigned long>();
    j.at("generator_shells").get_to(o.sset.generator.max_shells);
    j.at("generator_node_cap").get_to(o.sset.generator.node_cap);
    o.class_group.max_minkowski = int_from_json(j.at("max_minkowski"));
    j.at("max_rounds").get_to(o.class_group.max_rounds);
    o.ell_cap = j.at("ell_cap").get<unsigned long>();
    o.ell1_cap = j.at("ell1_cap").get<unsigned long>();
    o.hcf_bound = j.at("hcf_bound").get<unsigned long>();
    return o;
}

PrimeIdeal prime_from_json(NumberField const& F, json const& j)
{
    Int p = int_from_json(j.at("p"));
    if (!is_prime(p))
        throw InvalidInput("serialized prime: " + p.get_str() + " is not prime");
    IntMatrix H(F.degree(), F.degree());
    std::size_t i = 0;
    for (auto const& row : j.at("hnf")) {
        if (i >= F.degree())
            throw InvalidInput("serialized prime: HNF has too many rows");
        H.set_row(i++, ints_from_json(row));
    }
    Ideal I(F, H);
    for (auto const& P : decompose_prime(F, p))
        if (P.ideal == I)
            return P;
    throw InvalidInput("serialized prime is not a prime of F");
}

Certificate check_m1_empty(FieldPtr F, QuaternionData const& B, Int const& l, int f, PrimeIdeal const& pF)
{
    if (!same_field(*B.F, *F) || !same_field(pF.ideal.field(), *F))
        throw InvalidInput("check_m1_empty: B and pF must live over F");
    Certificate c;
    c.theorem = "m1_empty";
    c.inputs = base_inputs(c.theorem, F, B, pF);
    c.inputs["l"] = int_to_json(l);
    c.inputs["f"] = f;
    c.checks.push_back(run_check("not_in_V", [&](SubCheck& s) {
        auto V = v_set(F, l, f);
        json vs = json::array();
        for (auto const& P : V)
            vs.push_back(P.to_string());
        s.data["V"] = vs;
        s.outcome = std::find(V.begin(), V.end(), pF) == V.end() ? Outcome::Pass : Outcome::Fail;
    }));
    c.checks.push_back(run_check("not_in_Ram", [&](SubCheck& s) {
        s.data["ram"] = B.to_json().at("ram");
        s.outcome = std::find(B.ram.begin(), B.ram.end(), pF) == B.ram.end() ? Outcome::Pass : Outcome::Fail;
    }));
    return c;
}

Certificate check_thm13(FieldPtr F, QuaternionData const& B, FieldPtr k, PrimeIdeal const& pF, CheckOptions const& opt)
{
    check_field_inputs(F, B, k, pF);
    Certificate cert;
    cert.theorem = "thm13";
    cert.inputs = base_inputs(cert.theorem, F, B, pF);
    cert.inputs["k"] = k->spec().to_json();
    cert.inputs["options"] = opt.to_json();
    Context c{F, B, k, pF, opt, n_lcm(*F), std::nullopt};
    long d = static_cast<long>(F->degree());

    cert.checks.push_back(run_check("class_number_coprime_to_d", [&](SubCheck& s) {
        auto const& cg = c.class_group_k();
        s.data["h"] = int_to_json(cg.h);
        s.data["d"] = d;
        s.data["invariants"] = ints_to_json(cg.invariants);
        s.outcome = gcd(cg.h, Int(d)) == 1 ? Outcome::Pass : Outcome::Fail;
    }));
    cert.checks.push_back(run_check("no_imaginary_quadratic_hcf", [&](SubCheck& s) {
        auto r = condition2_check(*k, static_cast<long>(opt.hcf_bound));
        s.data = r.to_json();
        s.outcome = r.verdict == Condition2Result::Verdict::Pass           ? Outcome::Pass
                    : r.verdict == Condition2Result::Verdict::HeuristicPass ? Outcome::Heuristic
                                                                             : Outcome::Fail;
    }));
    Int X = 0;
    cert.checks.push_back(ell2_check(c, X));
    cert.checks.push_back(run_check("galois_exponent", [&](SubCheck& s) {
        int ex = k->galois_exponent();
        s.data["d"] = d;
        s.data["exponent"] = ex;
        s.outcome = d == 1 || (d == 2 && ex == 2) ? Outcome::Pass : Outcome::Fail;
    }));
    cert.checks.push_back(split_check(c));
    if (blocked(cert.checks)) {
        cert.checks.push_back(skipped("not_in_N3"));
        return cert;
    }
    std::optional<SSet> S;
    SubCheck built = run_check("not_in_N3", [&](SubCheck&) { S = build_s_set(k, *F, c.class_group_k(), c.nl, opt.sset); });
    cert.checks.push_back(S ? exceptional_check(c, "not_in_N3", *S, X) : built);
    return cert;
}

Certificate check_thm14(FieldPtr F, QuaternionData const& B, FieldPtr k, PrimeIdeal const& pF, CheckOptions const& opt)
{
    check_field_inputs(F, B, k, pF);
    Certificate cert;
    cert.theorem = "thm14";
    cert.inputs = base_inputs(cert.theorem, F, B, pF);
    cert.inputs["k"] = k->spec().to_json();
    cert.inputs["options"] = opt.to_json();
    Context c{F, B, k, pF, opt, n_lcm(*F), std::nullopt};

    std::optional<Int> l1;
    cert.checks.push_back(run_check("ell1_exists", [&](SubCheck& s) {
        auto const& cg = c.class_group_k();
        s.data["h"] = int_to_json(cg.h);
        s.data["n_lcm"] = int_to_json(c.nl);
        s.data["cap"] = opt.ell1_cap;
        l1 = find_ell1(F, *k, c.nl, cg.h, opt.ell1_cap);
        s.data["l1"] = l1 ? int_to_json(*l1) : json(nullptr);
        s.outcome = l1 ? Outcome::Pass : Outcome::Fail;
    }));
    Int X = 0;
    cert.checks.push_back(ell2_check(c, X));
    cert.checks.push_back(split_check(c));
    if (blocked(cert.checks)) {
        cert.checks.push_back(skipped("not_in_N4"));
        return cert;
    }
    std::optional<SSet> S;
    SubCheck built = run_check("not_in_N4", [&](SubCheck&) {
        SSet T = build_s_set(k, *F, c.class_group_k(), c.nl, opt.sset);
        enlarge_s_set(T, *l1, opt.sset.generator);
        S = std::move(T);
    });
    cert.checks.push_back(S ? exceptional_check(c, "not_in_N4", *S, X) : built);
    return cert;
}

bool verify_certificate(json const& j, CheckOptions const& runtime)
{
    Certificate c = Certificate::from_json(j);
    json const& in = c.inputs;
    FieldPtr F = NumberField::build(FieldSpec::from_json(in.at("F")));
    QuaternionData B = QuaternionData::from_json(F, in.at("B"));
    PrimeIdeal pF = prime_from_json(*F, in.at("pF"));
    Certificate again;
    if (c.theorem == "m1_empty") {
        again = check_m1_empty(F, B, int_from_json(in.at("l")), in.at("f").get<int>(), pF);
    } else {
        CheckOptions opt = CheckOptions::from_json(in.at("options"));
        opt.scan.workers = runtime.scan.workers;
        opt.class_group.workers = runtime.class_group.workers;
        opt.class_group_provider = runtime.class_group_provider;
        FieldPtr k = NumberField::build(FieldSpec::from_json(in.at("k")));
        if (c.theorem == "thm13")
            again = check_thm13(F, B, k, pF, opt);
        else if (c.theorem == "thm14")
            again = check_thm14(F, B, k, pF, opt);
        else
            throw InvalidInput("certificate: unknown theorem '" + c.theorem + "'");
    }
    return again.to_json() == c.to_json();
}

} // namespace qms
