#include "qmsieve/cli/cli.hpp"

#include "qmsieve/criteria/theorems.hpp"
#include "qmsieve/version.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <regex>
#include <set>
#include <sstream>
#include <thread>

namespace qms {

namespace {

namespace fs = std::filesystem;

Int parse_int(std::string const& s)
{
    static std::regex const re("[+-]?[0-9]+");
    if (!std::regex_match(s, re))
        throw InvalidInput("expected an integer, got '" + s + "'");
    return Int(s[0] == '+' ? s.substr(1) : s);
}

std::vector<std::string> split(std::string const& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep))
        out.push_back(cur);
    if (!s.empty() && s.back() == sep)
        out.emplace_back();
    return out;
}

std::vector<Int> parse_ints(std::string const& s)
{
    std::vector<Int> out;
    for (auto const& t : split(s, ','))
        out.push_back(parse_int(t));
    if (out.empty())
        throw InvalidInput("empty integer list");
    return out;
}

json read_json_file(std::string const& path)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidInput("cannot read '" + path + "'");
    try {
        return json::parse(in);
    } catch (json::exception const& e) {
        throw InvalidInput("'" + path + "' is not valid JSON: " + e.what());
    }
}

std::size_t spec_degree(FieldSpec const& s)
{
    switch (s.kind) {
    case FieldSpec::Kind::Rationals:
        return 1;
    case FieldSpec::Kind::RealQuadratic:
        return 2;
    case FieldSpec::Kind::TotallyRealPoly:
        return static_cast<std::size_t>(s.poly.degree());
    case FieldSpec::Kind::Multiquadratic:
        return std::size_t(1) << s.gens.size();
    case FieldSpec::Kind::RelativeQuadratic:
        return 2 * spec_degree(*s.base);
    default:
        return s.table.size();
    }
}

bool starts_with(std::string const& s, std::string const& p) { return s.rfind(p, 0) == 0; }

std::uint64_t positive(std::uint64_t v, char const* what)
{
    if (v == 0)
        throw InvalidInput(std::string(what) + " must be positive");
    return v;
}

/* Settings shared by all subcommands. */
struct Job {
    bool json_out = false;
    unsigned workers = 1;
    std::uint64_t grid_cap = 100000000ULL;
    unsigned long ell_cap = 10000;
    unsigned long ell1_cap = 2000;
    unsigned long hcf_bound = 2000;
    unsigned long s_prime_cap = 100000;
    unsigned long max_minkowski = 100000;
    std::string cache_dir;
    bool no_cache = false;
    std::string config;

    void apply_config(json const& j, std::set<std::string> const& explicit_flags)
    {
        static std::set<std::string> const known{"workers",  "grid_cap",    "ell_cap",       "ell1_cap",
                                                 "hcf_bound", "s_prime_cap", "max_minkowski", "cache_dir"};
        if (!j.is_object())
            throw InvalidInput("config must be a JSON object");
        for (auto const& [key, v] : j.items()) {
            if (!known.count(key))
                throw InvalidInput("unknown config key '" + key + "'");
            if (explicit_flags.count(key))
                continue;
            if (key == "cache_dir") {
                cache_dir = v.get<std::string>();
                continue;
            }
            if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0)
                throw InvalidInput("config key '" + key + "' must be a positive integer");
            std::uint64_t x = v.get<std::uint64_t>();
            if (key == "workers")
                workers = static_cast<unsigned>(x);
            else if (key == "grid_cap")
                grid_cap = x;
            else if (key == "ell_cap")
                ell_cap = x;
            else if (key == "ell1_cap")
                ell1_cap = x;
            else if (key == "hcf_bound")
                hcf_bound = x;
            else if (key == "s_prime_cap")
                s_prime_cap = x;
            else
                max_minkowski = x;
        }
    }

    void validate() const
    {
        positive(workers, "--workers");
        positive(grid_cap, "--grid-cap");
        positive(ell_cap, "--ell-cap");
        positive(ell1_cap, "--ell1-cap");
        positive(hcf_bound, "--hcf-bound");
        positive(s_prime_cap, "--s-prime-cap");
        positive(max_minkowski, "--max-minkowski");
    }

    Cache cache() const
    {
        if (no_cache)
            return Cache(std::nullopt);
        if (!cache_dir.empty())
            return Cache(fs::path(cache_dir));
        return Cache(Cache::default_dir());
    }

    ClassGroupOptions cg_options() const
    {
        ClassGroupOptions o;
        o.max_minkowski = Int(max_minkowski);
        o.workers = workers;
        return o;
    }

    CheckOptions check_options(std::ostream& err) const
    {
        CheckOptions o;
        o.scan.workers = workers;
        o.scan.grid_cap = grid_cap;
        o.sset.prime_cap = s_prime_cap;
        o.class_group = cg_options();
        o.ell_cap = ell_cap;
        o.ell1_cap = ell1_cap;
        o.hcf_bound = hcf_bound;
        Job const* self = this;
        o.class_group_provider = [self, &err](FieldPtr k) { return self->class_group_of(k, err); };
        return o;
    }

    ClassGroupData class_group_of(FieldPtr const& k, std::ostream& err) const
    {
        Cache c = cache();
        ClassGroupOptions o = cg_options();
        json key{{"field", k->spec().to_json()},
                 {"max_minkowski", int_to_json(o.max_minkowski)},
                 {"max_rounds", o.max_rounds}};
        if (auto hit = c.get("classgroup", key, err)) {
            try {
                return ClassGroupData::from_json(k, *hit);
            } catch (std::exception const& e) {
                err << "warning: ignoring unusable class group cache entry: " << e.what() << "\n";
            }
        }
        ClassGroupData cg = class_group(k, o);
        c.put("classgroup", key, cg.to_json());
        return cg;
    }
};

FieldPtr field_of(std::string const& s) { return NumberField::build(parse_field_spec(s)); }

QuaternionData algebra_of(FieldPtr const& F, std::string const& s) { return build_quaternion(F, parse_ram_spec(s)); }

PrimeIdeal prime_of(NumberField const& F, std::string const& s)
{
    auto [p, i] = parse_prime_spec(s);
    if (!is_prime(p))
        throw InvalidInput(p.get_str() + " is not prime");
    auto above = decompose_prime(F, p);
    if (i >= above.size())
        throw InvalidInput("F has only " + std::to_string(above.size()) + " primes above " + p.get_str());
    return above[i];
}

int parse_f(std::string const& s)
{
    Int f = parse_int(s);
    if (f < 1 || f > 64)
        throw InvalidInput("f must lie in [1, 64]");
    return static_cast<int>(f.get_si());
}

Int parse_prime(std::string const& s)
{
    Int p = parse_int(s);
    if (!is_prime(p))
        throw InvalidInput(s + " is not prime");
    return p;
}

std::string prime_label(PrimeIdeal const& P)
{
    std::ostringstream os;
    os << P.p << " (e=" << P.e << ", f=" << P.f << ", N=" << P.norm() << ")";
    return os.str();
}

std::string certificate_text(Certificate const& c)
{
    std::ostringstream os;
    os << "theorem: " << c.theorem << "\n";
    os << "verdict: " << (c.empty() ? "Empty" : "Inconclusive");
    auto open = c.open_conditions();
    if (!open.empty()) {
        os << " (";
        for (std::size_t i = 0; i < open.size(); ++i)
            os << (i ? ", " : "") << open[i];
        os << ")";
    }
    os << "\n";
    for (auto const& s : c.checks)
        os << "  " << std::left << std::setw(11) << ("[" + outcome_name(s.outcome) + "]") << s.name << "\n";
    return os.str();
}

struct Output {
    std::string text;
    json doc;
};

void emit(Job const& job, std::ostream& out, Output const& o)
{
    if (job.json_out)
        out << o.doc.dump(2) << "\n";
    else
        out << o.text;
}

json primes_json(std::vector<PrimeIdeal> const& ps)
{
    json a = json::array();
    for (auto const& P : ps)
        a.push_back(P.to_json());
    return a;
}

std::string primes_text(std::vector<PrimeIdeal> const& ps)
{
    std::ostringstream os;
    for (auto const& P : ps)
        os << prime_label(P) << "\n";
    return os.str();
}

constexpr char const* kGrammar = R"(Field specs: Q | realquad:m | quad:m | multiquad:m1,m2,... | poly:c0,...,cn
             | relquad:<field>:d (or d0,d1,... on the base basis) | @file.json
             an optional k: prefix is accepted
Algebras:    ram:p1,p2,... or ram:@p.i,... (the i-th prime of F above p)
Primes:      p or p.i
Exit codes:  0 computed, 1 internal error, 2 invalid input, 3 resource bound exceeded
Cache:       QM_SIEVE_CACHE overrides the cache directory)";

} // namespace

FieldSpec parse_field_spec(std::string const& raw)
{
    std::string s = raw;
    if (starts_with(s, "k:"))
        s = s.substr(2);
    if (s == "Q")
        return FieldSpec::rationals();
    if (starts_with(s, "@"))
        return FieldSpec::from_json(read_json_file(s.substr(1)));
    if (starts_with(s, "realquad:"))
        return FieldSpec::real_quadratic(parse_int(s.substr(9)));
    if (starts_with(s, "quad:"))
        return FieldSpec::multiquadratic({parse_int(s.substr(5))});
    if (starts_with(s, "multiquad:"))
        return FieldSpec::multiquadratic(parse_ints(s.substr(10)));
    if (starts_with(s, "poly:"))
        return FieldSpec::totally_real_poly(IntPolynomial(parse_ints(s.substr(5))));
    if (starts_with(s, "relquad:")) {
        std::size_t cut = s.rfind(':');
        if (cut <= 8)
            throw InvalidInput("relquad needs <field>:<delta>");
        FieldSpec base = parse_field_spec(s.substr(8, cut - 8));
        std::vector<Int> d = parse_ints(s.substr(cut + 1));
        std::size_t n = spec_degree(base);
        if (d.size() == 1)
            d.resize(n, Int(0));
        if (d.size() != n)
            throw InvalidInput("relquad delta needs " + std::to_string(n) + " coordinates");
        return FieldSpec::relative_quadratic(base, d);
    }
    throw InvalidInput("unrecognized field spec '" + raw + "'");
}

std::pair<Int, std::size_t> parse_prime_spec(std::string const& s)
{
    auto parts = split(s, '.');
    if (parts.size() == 1)
        return {parse_int(parts[0]), 0};
    if (parts.size() == 2) {
        Int i = parse_int(parts[1]);
        if (i < 0)
            throw InvalidInput("prime index must be nonnegative");
        return {parse_int(parts[0]), static_cast<std::size_t>(i.get_ui())};
    }
    throw InvalidInput("unrecognized prime spec '" + s + "'");
}

std::vector<std::pair<Int, std::size_t>> parse_ram_spec(std::string const& s)
{
    if (!starts_with(s, "ram:"))
        throw InvalidInput("algebra spec must start with ram:");
    std::string body = s.substr(4);
    if (starts_with(body, "@"))
        body = body.substr(1);
    std::vector<std::pair<Int, std::size_t>> out;
    for (auto const& t : split(body, ','))
        out.push_back(parse_prime_spec(t));
    return out;
}

std::optional<fs::path> Cache::default_dir()
{
    if (char const* d = std::getenv("QM_SIEVE_CACHE"); d && *d)
        return fs::path(d);
    if (char const* x = std::getenv("XDG_CACHE_HOME"); x && *x)
        return fs::path(x) / "qmsieve";
    if (char const* h = std::getenv("HOME"); h && *h)
        return fs::path(h) / ".cache" / "qmsieve";
    return std::nullopt;
}

std::string Cache::key_digest(std::string const& kind, json const& key) const
{
    json k{{"kind", kind}, {"key", key}, {"version", kToolVersion}};
    return sha256_hex(k.dump());
}

std::optional<json> Cache::get(std::string const& kind, json const& key, std::ostream& warn) const
{
    if (!dir_)
        return std::nullopt;
    fs::path file = *dir_ / (key_digest(kind, key) + ".json");
    std::error_code ec;
    if (!fs::exists(file, ec))
        return std::nullopt;
    try {
        std::ifstream in(file);
        json j = json::parse(in);
        if (j.at("version").get<std::string>() != kToolVersion || j.at("kind") != kind || j.at("key") != key)
            return std::nullopt;
        return j.at("payload");
    } catch (std::exception const& e) {
        warn << "warning: skipping corrupt cache entry " << file.string() << "\n";
        return std::nullopt;
    }
}

void Cache::put(std::string const& kind, json const& key, json const& payload) const
{
    if (!dir_)
        return;
    std::error_code ec;
    fs::create_directories(*dir_, ec);
    if (ec)
        return;
    std::string name = key_digest(kind, key);
    fs::path tmp = *dir_ / (name + ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())));
    {
        std::ofstream o(tmp);
        if (!o)
            return;
        o << json{{"kind", kind}, {"key", key}, {"payload", payload}, {"version", kToolVersion}}.dump();
    }
    fs::rename(tmp, *dir_ / (name + ".json"), ec);
}

int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err)
{
    Job job;
    CLI::App app{"Exact checks for QM abelian variety sieve criteria", "qmsieve"};
    app.footer(kGrammar);
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);
    auto* o_json = app.add_flag("--json", job.json_out, "Print the structured result document (sorted keys)");
    auto* o_workers = app.add_option("--workers", job.workers, "Worker threads");
    auto* o_grid = app.add_option("--grid-cap", job.grid_cap, "Maximum triples in an M2 scan");
    auto* o_ell = app.add_option("--ell-cap", job.ell_cap, "Search bound for l0 and l2");
    auto* o_ell1 = app.add_option("--ell1-cap", job.ell1_cap, "Search bound for l1");
    auto* o_hcf = app.add_option("--hcf-bound", job.hcf_bound, "Prime sampling bound for Hilbert class field tests");
    auto* o_sp = app.add_option("--s-prime-cap", job.s_prime_cap, "Search bound for S-set primes");
    auto* o_mink = app.add_option("--max-minkowski", job.max_minkowski, "Largest admissible Minkowski bound");
    auto* o_cache = app.add_option("--cache", job.cache_dir, "Cache directory");
    app.add_flag("--no-cache", job.no_cache, "Disable the on-disk cache");
    app.add_option("--config", job.config, "JSON file with caps; unknown keys are rejected");
    std::vector<std::pair<std::string, CLI::Option*>> flag_names{
        {"workers", o_workers}, {"grid_cap", o_grid}, {"ell_cap", o_ell},        {"ell1_cap", o_ell1},
        {"hcf_bound", o_hcf},   {"s_prime_cap", o_sp}, {"max_minkowski", o_mink}, {"cache_dir", o_cache}};
    (void)o_json;

    std::vector<std::string> pos(5);
    std::string field_opt = "Q";
    std::function<Output()> action;

    auto sub = [&](char const* name, char const* help, std::vector<char const*> names) {
        auto* s = app.add_subcommand(name, help);
        for (std::size_t i = 0; i < names.size(); ++i)
            s->add_option(names[i], pos[i], names[i])->required();
        return s;
    };

    sub("nlcm", "lcm of m with [F(zeta_m):F] <= 2", {"field"})->callback([&] {
        action = [&] {
            FieldPtr F = field_of(pos[0]);
            Int n = n_lcm(*F);
            return Output{n.get_str() + "\n", {{"command", "nlcm"}, {"field", F->id()}, {"n_lcm", int_to_json(n)}}};
        };
    });
    sub("fr", "Weil polynomial classes b with |b| <= 2 sqrt(q^f) everywhere", {"field", "q", "f"})->callback([&] {
        action = [&] {
            FieldPtr F = field_of(pos[0]);
            Int q = parse_prime(pos[1]);
            int f = parse_f(pos[2]);
            Cache c = job.cache();
            json key{{"field", F->spec().to_json()}, {"q", int_to_json(q)}, {"f", f}};
            json doc;
            if (auto hit = c.get("fr", key, err)) {
                doc = *hit;
            } else {
                doc = fr_set(F, q, f).to_json();
                c.put("fr", key, doc);
            }
            std::ostringstream os;
            os << doc.at("classes").size() << " classes\n";
            for (auto const& w : doc.at("classes"))
                os << "b = " << w.at("b").dump() << "  disc " << w.at("disc_status").get<std::string>()
                   << "  contribution " << w.at("contribution").dump() << "\n";
            return Output{os.str(), {{"command", "fr"}, {"result", doc}}};
        };
    });
    for (char const* which : {"wset", "vset"}) {
        std::string w = which;
        sub(which, w == "wset" ? "Exceptional primes W(l^f)" : "Exceptional primes V(l^f)", {"field", "l", "f"})
            ->callback([&, w] {
                action = [&, w] {
                    FieldPtr F = field_of(pos[0]);
                    Int l = parse_prime(pos[1]);
                    int f = parse_f(pos[2]);
                    auto ps = w == "wset" ? w_set(F, l, f) : v_set(F, l, f);
                    return Output{primes_text(ps), {{"command", w}, {"field", F->id()}, {"primes", primes_json(ps)}}};
                };
            });
    }
    sub("torsion-bound", "Uniform torsion bound N", {"field", "l", "f"})->callback([&] {
        action = [&] {
            FieldPtr F = field_of(pos[0]);
            Int N = torsion_bound(F, parse_prime(pos[1]), parse_f(pos[2]));
            return Output{N.get_str() + "\n",
                          {{"command", "torsion-bound"}, {"field", F->id()}, {"N", int_to_json(N)}}};
        };
    });
    sub("classgroup", "Class group with certified structure", {"field"})->callback([&] {
        action = [&] {
            FieldPtr K = field_of(pos[0]);
            ClassGroupData cg = job.class_group_of(K, err);
            std::ostringstream os;
            os << "h = " << cg.h << "\ninvariants = [";
            for (std::size_t i = 0; i < cg.invariants.size(); ++i)
                os << (i ? ", " : "") << cg.invariants[i];
            os << "]\nminkowski bound = " << cg.minkowski_bound << "\n";
            return Output{os.str(), {{"command", "classgroup"}, {"result", cg.to_json()}}};
        };
    });
    sub("splits", "Does F(sqrt -l) split B?", {"B", "l"})
        ->callback([&] {
            action = [&] {
                FieldPtr F = field_of(field_opt);
                auto B = algebra_of(F, pos[0]);
                Int l = parse_prime(pos[1]);
                bool s = splits_B(B, l);
                return Output{std::string(s ? "true" : "false") + "\n",
                              {{"command", "splits"}, {"B", B.to_json()}, {"l", int_to_json(l)}, {"splits", s}}};
            };
        })
        ->add_option("--field", field_opt, "Base field of B (default Q)");
    sub("check-m1", "Emptiness of M1 at pF", {"F", "B", "l", "f", "pF"})->callback([&] {
        action = [&] {
            FieldPtr F = field_of(pos[0]);
            auto c = check_m1_empty(F, algebra_of(F, pos[1]), parse_prime(pos[2]), parse_f(pos[3]), prime_of(*F, pos[4]));
            return Output{certificate_text(c), c.to_json()};
        };
    });
    for (char const* which : {"check-thm13", "check-thm14"}) {
        std::string w = which;
        sub(which, w == "check-thm13" ? "Four-condition emptiness theorem at pF" : "Variant theorem at pF",
            {"F", "B", "k", "pF"})
            ->callback([&, w] {
                action = [&, w] {
                    FieldPtr F = field_of(pos[0]);
                    auto B = algebra_of(F, pos[1]);
                    FieldPtr k = field_of(pos[2]);
                    auto pF = prime_of(*F, pos[3]);
                    CheckOptions opt = job.check_options(err);
                    auto c = w == "check-thm13" ? check_thm13(F, B, k, pF, opt) : check_thm14(F, B, k, pF, opt);
                    return Output{certificate_text(c), c.to_json()};
                };
            });
    }
    sub("s-set", "Galois-closed generating set of split primes", {"k", "F"})->callback([&] {
        action = [&] {
            FieldPtr k = field_of(pos[0]);
            FieldPtr F = field_of(pos[1]);
            Int nl = n_lcm(*F);
            SSetOptions so;
            so.prime_cap = job.s_prime_cap;
            SSet S = build_s_set(k, *F, job.class_group_of(k, err), nl, so);
            std::ostringstream os;
            os << "h = " << S.h << ", n_lcm = " << nl << "\n";
            for (auto const& e : S.entries)
                os << prime_label(e.q) << "  alpha = " << e.alpha.to_string() << "\n";
            return Output{os.str(), {{"command", "s-set"}, {"n_lcm", int_to_json(nl)}, {"result", S.to_json()}}};
        };
    });
    sub("verify", "Replay a certificate and compare every sub-check", {"certificate"})->callback([&] {
        action = [&] {
            json cert = read_json_file(pos[0]);
            bool ok = verify_certificate(cert, job.check_options(err));
            if (!ok)
                throw InvalidInput("certificate does not reproduce");
            return Output{"verified\n", {{"command", "verify"}, {"verified", true}}};
        };
    });

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
        std::set<std::string> explicit_flags;
        for (auto const& [name, opt] : flag_names)
            if (opt->count() > 0)
                explicit_flags.insert(name);
        if (!job.config.empty())
            job.apply_config(read_json_file(job.config), explicit_flags);
        job.validate();
        emit(job, out, action());
        return 0;
    } catch (CLI::ParseError const& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    } catch (InvalidInput const& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (ResourceError const& e) {
        err << "resource bound exceeded: " << e.what() << "\n";
        return 3;
    } catch (json::exception const& e) {
        err << "error: malformed JSON input: " << e.what() << "\n";
        return 2;
    } catch (std::exception const& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace qms
