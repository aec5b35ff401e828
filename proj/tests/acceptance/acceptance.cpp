// End-to-end acceptance run. Each criterion returns a JSON record without
// timings; the run is repeated with 1 and 8 workers and the records must
// match byte for byte.

#include "brute_primes.hpp"

#include "qmsieve/classgroup/bqf.hpp"
#include "qmsieve/classgroup/class_group.hpp"
#include "qmsieve/criteria/sieve.hpp"
#include "qmsieve/criteria/theorems.hpp"
#include "qmsieve/criteria/weil.hpp"
#include "qmsieve/quaternion/quaternion.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <string>

using namespace qms;

namespace {

struct Record {
    bool ok = true;
    json data;
    std::vector<std::string> failures;

    void expect(bool cond, std::string const& what)
    {
        if (!cond) {
            ok = false;
            failures.push_back(what);
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

FieldPtr rationals() { return NumberField::build(FieldSpec::rationals()); }

FieldPtr multi(std::vector<long> g)
{
    std::vector<Int> v(g.begin(), g.end());
    return NumberField::build(FieldSpec::multiquadratic(v));
}

FieldPtr realquad(long m) { return NumberField::build(FieldSpec::real_quadratic(Int(m))); }

FieldSpec zeta7_plus_spec() { return FieldSpec::totally_real_poly(IntPolynomial({-1, -2, 1, 1})); }

FieldPtr zeta7_plus() { return NumberField::build(zeta7_plus_spec()); }

std::vector<long> primes_upto(long bound)
{
    std::vector<long> out;
    for (long p = 2; p <= bound; ++p)
        if (is_prime(Int(p)))
            out.push_back(p);
    return out;
}

ClassGroupOptions cg_options(unsigned workers)
{
    ClassGroupOptions o;
    o.workers = workers;
    return o;
}

json ideal_names(std::vector<PrimeIdeal> const& ps)
{
    json a = json::array();
    for (auto const& P : ps)
        a.push_back(P.to_json());
    return a;
}

std::set<long> under(std::vector<PrimeIdeal> const& ps)
{
    std::set<long> out;
    for (auto const& P : ps)
        out.insert(to_long(P.p));
    return out;
}

// ---------------------------------------------------------------------------

Record n_lcm_regression(unsigned)
{
    Record r;
    struct Case {
        std::string name;
        std::function<FieldPtr()> make;
        long want;
    };
    std::vector<Case> cases{{"Q", rationals, 12},
                            {"Q(sqrt 2)", [] { return realquad(2); }, 24},
                            {"Q(sqrt 5)", [] { return realquad(5); }, 60},
                            {"Q(sqrt 3)", [] { return realquad(3); }, 12},
                            {"Q(zeta7)+", zeta7_plus, 84}};
    for (auto const& c : cases) {
        auto t0 = Clock::now();
        Int got = n_lcm(*c.make());
        double dt = seconds_since(t0);
        r.data[c.name] = got.get_str();
        r.expect(got == c.want, c.name + ": n_lcm = " + got.get_str());
        r.expect(dt < 5.0, c.name + ": took " + std::to_string(dt) + " s");
    }
    return r;
}

Record quartic_example(unsigned workers)
{
    Record r;
    auto t0 = Clock::now();
    auto F = realquad(2);
    auto k = multi({2, -17});
    auto cg = class_group(k, cg_options(workers));
    Int nl = n_lcm(*F);
    bool split = splits_totally(*k, Int(7));
    auto w = fr_elements_in_k(F, *k, Int(7));
    r.data = {{"h", cg.h.get_str()},
              {"n_lcm", nl.get_str()},
              {"7_splits_totally", split},
              {"fr_in_k", w ? w->to_json() : json(nullptr)}};
    r.data["invariants"] = json::array();
    for (auto const& d : cg.invariants)
        r.data["invariants"].push_back(d.get_str());
    r.expect(cg.h == 8, "h_k = " + cg.h.get_str());
    r.expect(nl == 24, "n_lcm = " + nl.get_str());
    r.expect(split, "7 does not split totally");
    r.expect(!divides(Int(7), nl * cg.h), "7 divides n_lcm h");
    r.expect(!w, "FR(7) meets k");
    double dt = seconds_since(t0);
    r.expect(dt < 300.0, "took " + std::to_string(dt) + " s");
    return r;
}

Record sextic_example(unsigned workers)
{
    Record r;
    auto t0 = Clock::now();
    auto F = zeta7_plus();
    auto k = NumberField::build(FieldSpec::relative_quadratic(zeta7_plus_spec(), {Int(-17), Int(0), Int(0)}));
    Int nl = n_lcm(*F);
    ClassGroupData cg;
    try {
        cg = class_group(k, cg_options(workers));
    } catch (ResourceError const& e) {
        r.expect(false, std::string("resource error: ") + e.what());
        return r;
    }
    bool split = splits_totally(*k, Int(13));
    auto w = fr_elements_in_k(F, *k, Int(13));
    r.data = {{"h", cg.h.get_str()},
              {"n_lcm", nl.get_str()},
              {"13_splits_totally", split},
              {"fr_in_k", w ? w->to_json() : json(nullptr)}};
    r.data["invariants"] = json::array();
    for (auto const& d : cg.invariants)
        r.data["invariants"].push_back(d.get_str());
    r.expect(cg.h == 36, "h_k = " + cg.h.get_str());
    r.expect(nl == 84, "n_lcm = " + nl.get_str());
    r.expect(split, "13 does not split totally");
    r.expect(!divides(Int(13), nl * cg.h), "13 divides n_lcm h");
    r.expect(!w, "FR(13) meets k");
    double dt = seconds_since(t0);
    r.expect(dt < 1800.0, "took " + std::to_string(dt) + " s");
    return r;
}

Record weil_desk_instance(unsigned)
{
    Record r;
    auto t0 = Clock::now();
    auto Q = rationals();
    // oracle: b in [-3, 3] with b^2 <= 8, contribution 1 + b + 2 for each root pair
    std::set<long> w_oracle{2};
    Int n_oracle = 2;
    for (long b = -3; b <= 3; ++b) {
        if (b * b > 8)
            continue;
        long c = std::labs(1 + b + 2);
        n_oracle *= Int(c) * Int(c);
        for (long p : primes_upto(c))
            if (c % p == 0)
                w_oracle.insert(p);
    }
    std::set<long> v_oracle = w_oracle;
    for (long p : primes_upto(3)) // N(p) < 4^1
        v_oracle.insert(p);

    auto W = w_set(Q, Int(2), 1);
    auto V = v_set(Q, Int(2), 1);
    Int N = torsion_bound(Q, Int(2), 1);
    r.data = {{"W", ideal_names(W)}, {"V", ideal_names(V)}, {"torsion_bound", N.get_str()}};
    r.expect(under(W) == std::set<long>{2, 3, 5} && under(W) == w_oracle, "W set");
    r.expect(under(V) == std::set<long>{2, 3, 5} && under(V) == v_oracle, "V set");
    r.expect(N == 28800 && N == n_oracle, "torsion bound " + N.get_str());
    std::set<long> support;
    for (long p : primes_upto(7))
        if (divides(Int(p), N))
            support.insert(p);
    r.expect(support == under(W), "torsion bound support differs from W");
    r.expect(seconds_since(t0) < 1.0, "slower than 1 s");
    return r;
}

Record fr_oracle(unsigned)
{
    Record r;
    json cases = json::array();
    bool saw_boundary = false;
    for (FieldPtr F : {rationals(), realquad(2), realquad(5)}) {
        std::size_t n = F->degree();
        for (long q : primes_upto(50)) {
            long qf = q;
            for (int f = 1; qf <= 50; ++f, qf *= q) {
                auto S = fr_set(F, Int(q), f);
                std::set<FieldElement> got;
                for (auto const& w : S.classes)
                    got.insert(w.b);
                // box of radius 3 * 2 sqrt(q^f) in basis coordinates
                long R = 3 * static_cast<long>(std::ceil(2.0 * std::sqrt(static_cast<double>(qf))));
                std::set<FieldElement> want;
                std::vector<long> c(n, -R);
                for (;;) {
                    FieldElement b = F->from_coords(c);
                    if (is_totally_nonneg(F->from_int(4 * qf) - b * b))
                        want.insert(b);
                    std::size_t i = 0;
                    for (; i < n; ++i) {
                        if (++c[i] <= R)
                            break;
                        c[i] = -R;
                    }
                    if (i == n)
                        break;
                }
                std::string tag = F->name() + " q=" + std::to_string(q) + " f=" + std::to_string(f);
                r.expect(got == want, tag + ": " + std::to_string(got.size()) + " vs " + std::to_string(want.size()));
                cases.push_back({{"field", F->name()}, {"q", q}, {"f", f}, {"classes", S.classes.size()}});
                if (n == 2 && F->discriminant() == 8 && q == 2 && f == 1) {
                    auto sqrt2 = sqrt_in_field(*F, F->from_int(2));
                    if (sqrt2) {
                        FieldElement b = Rat(2) * *sqrt2;
                        int zero = 0;
                        for (auto const& w : S.classes)
                            if ((w.b == b || w.b == -b) && w.disc_status == WeilClass::Disc::Zero)
                                ++zero;
                        saw_boundary = zero == 2;
                    }
                }
            }
        }
    }
    r.expect(saw_boundary, "b = +-2 sqrt 2 missing or not degenerate");
    r.data = {{"cases", cases}, {"boundary_pm_2sqrt2", saw_boundary}};
    return r;
}

Record class_group_cross(unsigned workers)
{
    Record r;
    json rows = json::array();
    for (long D = -199; D < 0; ++D) {
        if (!is_fundamental_discriminant(Int(D)))
            continue;
        Int m = D % 4 == 0 ? Int(D / 4) : Int(D);
        auto K = multi({to_long(m)});
        auto cg = class_group(K, cg_options(workers));
        auto bq = bqf_class_group(Int(D));
        r.expect(cg.h == bq.h && cg.invariants == bq.invariants, "D = " + std::to_string(D));
        json inv = json::array();
        for (auto const& d : cg.invariants)
            inv.push_back(d.get_str());
        rows.push_back({{"D", D}, {"h", cg.h.get_str()}, {"invariants", inv}});
        if (D == -68 || D == -136)
            r.expect(cg.h == 4 && bq.h == 4, "h(" + std::to_string(D) + ") = " + cg.h.get_str());
    }
    r.expect(rows.size() > 50, "too few discriminants");
    r.data = rows;
    return r;
}

Record decomposition_oracle(unsigned)
{
    Record r;
    json rows = json::array();
    for (FieldPtr K : {rationals(), realquad(2), realquad(5), zeta7_plus(), multi({2, -17})}) {
        for (long p : primes_upto(50)) {
            auto primes = decompose_prime(*K, Int(p));
            int sum = 0;
            for (auto const& P : primes)
                sum += P.e * P.f;
            std::string tag = K->name() + " p=" + std::to_string(p);
            r.expect(sum == static_cast<int>(K->degree()), tag + ": sum e f");
            auto brute = oracle::brute_primes(*K, static_cast<u64>(p));
            r.expect(brute.size() == primes.size(), tag + ": prime count");
            json ef = json::array();
            for (auto const& P : primes) {
                auto sp = oracle::ideal_space(P.ideal.hnf(), static_cast<u64>(p));
                auto it = std::find_if(brute.begin(), brute.end(), [&](auto const& b) { return b.space == sp; });
                r.expect(it != brute.end() && it->e == P.e && it->f == P.f, tag + ": prime mismatch");
                ef.push_back({P.e, P.f});
            }
            rows.push_back({{"field", K->name()}, {"p", p}, {"ef", ef}});
        }
    }
    r.data = rows;
    return r;
}

/* Every nonzero m = N(alpha^eps - beta^E) on the full grid, exact norms only. */
std::vector<Int> exact_m_values(NumberField const& k, SSet const& S, long n)
{
    std::vector<Int> out;
    long E = n * to_long(S.h);
    for (auto const& e : S.entries) {
        long l = to_long(e.q.p);
        for (long b = -2 * l; b <= 2 * l; ++b) {
            if (b * b > 4 * l)
                continue;
            auto r = sqrt_in_field(k, k.from_int(b * b - 4 * l));
            for (long e0 = 0; e0 <= n; ++e0)
                for (long e1 = 0; e1 <= n; ++e1) {
                    FieldElement A = k.apply(0, e.alpha).pow(e0) * k.apply(1, e.alpha).pow(e1);
                    std::vector<FieldElement> gammas;
                    if (r) {
                        for (int s : {-1, 1}) {
                            FieldElement beta = Rat(1, 2) * (k.from_int(-b) + Rat(s) * *r);
                            gammas.push_back(A - beta.pow(E));
                        }
                    } else {
                        Int s0 = 2, s1 = -b; // beta^j + conj^j
                        for (long j = 2; j <= E; ++j) {
                            Int s2 = -b * s1 - l * s0;
                            s0 = s1;
                            s1 = s2;
                        }
                        gammas.push_back(A * A - Rat(s1) * A + k.from_rational(Rat(pow(Int(l), E))));
                    }
                    for (auto const& g : gammas) {
                        Rat m = norm(g);
                        if (m != 0)
                            out.push_back(abs(m.get_num()));
                    }
                }
        }
    }
    return out;
}

Record theorem_checker(unsigned workers)
{
    Record r;
    auto t0 = Clock::now();
    auto Q = rationals();
    auto B = build_quaternion(Q, std::vector<std::pair<Int, std::size_t>>{{Int(2), 0}, {Int(3), 0}});
    auto k = multi({-5});
    auto cg = class_group(k, cg_options(workers));
    Int nl = n_lcm(*Q);
    auto S = build_s_set(k, *Q, cg, nl);
    auto fr7 = fr_set(Q, Int(7), 1);
    r.expect(S.entries.size() == 2, "|S| = " + std::to_string(S.entries.size()));
    r.expect(fr7.classes.size() == 11, "|FR(7)| = " + std::to_string(fr7.classes.size()));
    Int grid = m2_grid_size(Q, S, nl);
    r.expect(grid == Int(2 * 11 * 13 * 13), "grid " + grid.get_str());

    auto ms = exact_m_values(*k, S, to_long(nl));
    CheckOptions opt;
    opt.scan.workers = workers;
    opt.class_group.workers = workers;
    json rows = json::array();
    json n0 = json::array();
    for (long p : primes_upto(200)) {
        if (p <= 20 || !splits_totally(*k, Int(p)))
            continue;
        bool in_n0 = std::any_of(ms.begin(), ms.end(), [&](Int const& m) { return divides(Int(p), m); });
        auto pF = decompose_prime(*Q, Int(p))[0];
        bool scanned = m2_scan(Q, S, nl, pF, opt.scan).member;
        auto cert = check_thm13(Q, B, k, pF, opt).to_json();
        std::string verdict = cert.at("verdict");
        std::string tag = "p=" + std::to_string(p);
        r.expect(scanned == in_n0, tag + ": scan disagrees with exact norms");
        r.expect((verdict == "Empty") == !in_n0, tag + ": verdict " + verdict);
        r.expect(verify_certificate(cert, opt), tag + ": certificate does not replay");
        if (in_n0)
            n0.push_back(p);
        rows.push_back({{"p", p}, {"verdict", verdict}, {"digest", cert.at("inputs_digest")}});
    }
    auto c7 = check_thm13(Q, B, multi({-7}), decompose_prime(*Q, Int(23))[0], opt);
    auto open = c7.open_conditions();
    r.expect(!c7.empty() && !open.empty() && open.front() == "no_imaginary_quadratic_hcf",
             "Q(sqrt -7) is not stopped by the Hilbert class field condition");
    r.data = {{"rows", rows}, {"N0", n0}, {"Q(sqrt -7)", c7.to_json()}};
    double dt = seconds_since(t0);
    r.expect(dt < 60.0, "took " + std::to_string(dt) + " s");
    return r;
}

/* Squares of P-units modulo I, as reduced coordinate vectors. */
std::set<IntVector> unit_squares(NumberField const& K, Ideal const& I, PrimeIdeal const& P)
{
    std::set<IntVector> out;
    IntMatrix const& H = I.hnf();
    std::size_t n = K.degree();
    IntVector x(n);
    for (;;) {
        if (!P.ideal.contains(FieldElement(K, x)))
            out.insert(reduce_mod(I, K.multiply(x, x)));
        std::size_t i = 0;
        for (; i < n; ++i) {
            if (++x[i] < H(i, i))
                break;
            x[i] = 0;
        }
        if (i == n)
            return out;
    }
}

Record splitting_tests(unsigned)
{
    Record r;
    auto Q = rationals();
    auto B = build_quaternion(Q, std::vector<std::pair<Int, std::size_t>>{{Int(2), 0}, {Int(3), 0}});
    bool s13 = splits_B(B, Int(13)), s7 = splits_B(B, Int(7)), s5 = splits_B(B, Int(5));
    r.expect(s13, "13 should split B");
    r.expect(!s7, "7 should not split B");
    r.expect(!s5, "5 should not split B");
    json rows = json::array();
    std::uint64_t lcg = 0x9e3779b97f4a7c15ULL;
    for (FieldPtr F : {rationals(), realquad(2), realquad(5), zeta7_plus()}) {
        std::size_t n = F->degree();
        for (long p : primes_upto(100)) {
            for (auto const& P : decompose_prime(*F, Int(p))) {
                if (P.norm() > 100)
                    continue;
                Ideal I = P.ideal.pow(2 * P.e + 1);
                auto sq = unit_squares(*F, I, P);
                IntMatrix const& H = I.hnf();
                // every residue when the quotient is small, a fixed sample otherwise
                bool all = I.norm() <= 4096;
                long tested = 0, squares = 0;
                IntVector x(n);
                for (long t = 0;; ++t) {
                    if (all) {
                        if (t > 0) {
                            std::size_t i = 0;
                            for (; i < n; ++i) {
                                if (++x[i] < H(i, i))
                                    break;
                                x[i] = 0;
                            }
                            if (i == n)
                                break;
                        }
                    } else {
                        if (t == 64)
                            break;
                        for (std::size_t i = 0; i < n; ++i) {
                            lcg = lcg * 6364136223846793005ULL + 1442695040888963407ULL;
                            x[i] = Int(static_cast<unsigned long>((lcg >> 33) % to_long(H(i, i))));
                        }
                    }
                    FieldElement u(*F, x);
                    if (u.is_zero() || P.ideal.contains(u))
                        continue;
                    bool want = sq.count(reduce_mod(I, u.num())) > 0;
                    bool got = is_local_square(u, P);
                    ++tested;
                    squares += got;
                    if (got != want)
                        r.expect(false, F->name() + " p=" + std::to_string(p) + " u=" + u.to_string());
                }
                rows.push_back({{"field", F->name()}, {"prime", P.to_json()}, {"tested", tested}, {"squares", squares}});
            }
        }
    }
    r.data = {{"splits", {{"13", s13}, {"7", s7}, {"5", s5}}}, {"local_squares", rows}};
    return r;
}

struct Criterion {
    int id;
    std::string title;
    Record (*run)(unsigned);
};

} // namespace

int main()
{
    std::vector<Criterion> criteria{
        {1, "n_lcm regression", n_lcm_regression},
        {2, "quartic example: h = 8, FR(7) disjoint from k", quartic_example},
        {3, "sextic example: h = 36, FR(13) disjoint from k", sextic_example},
        {4, "W, V and torsion bound over Q at l = 2", weil_desk_instance},
        {5, "FR sets against coefficient box enumeration", fr_oracle},
        {6, "class groups against binary quadratic forms", class_group_cross},
        {7, "prime decomposition against maximal ideals of O/pO", decomposition_oracle},
        {8, "Q(sqrt -5) certificates against exhaustive N0", theorem_checker},
        {9, "splitting of B and local squares", splitting_tests},
    };
    int failed = 0;
    bool deterministic = true;
    std::vector<std::string> drift;
    for (auto const& c : criteria) {
        auto t0 = Clock::now();
        Record one, eight;
        try {
            one = c.run(1);
            eight = c.run(8);
        } catch (std::exception const& e) {
            one.ok = false;
            one.failures.push_back(std::string("exception: ") + e.what());
        }
        double dt = seconds_since(t0);
        bool ok = one.ok && eight.ok;
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " (" << std::fixed
                  << std::setprecision(1) << dt << " s for both runs)\n";
        for (auto const& f : one.failures)
            std::cout << "    " << f << "\n";
        for (auto const& f : eight.failures)
            std::cout << "    [8 workers] " << f << "\n";
        if (!ok)
            ++failed;
        if (one.data.dump() != eight.data.dump()) {
            deterministic = false;
            drift.push_back(std::to_string(c.id));
        }
    }
    std::cout << (deterministic ? "PASS" : "FAIL")
              << " criterion 10: byte-identical records with 1 and 8 workers\n";
    for (auto const& d : drift)
        std::cout << "    criterion " << d << " differs\n";
    if (!deterministic)
        ++failed;
    std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << "\n";
    return failed ? 1 : 0;
}
