#include "qmsieve/criteria/sieve.hpp"

#include "qmsieve/exact/modp.hpp"
#include "qmsieve/exact/normal_form.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <thread>

namespace qms {

namespace {

std::vector<FieldElement> hnf_elements(Ideal const& I)
{
    NumberField const& K = I.field();
    std::vector<FieldElement> out;
    IntMatrix const& H = I.hnf();
    for (std::size_t i = 0; i < H.rows(); ++i)
        out.push_back(Rat(1) / Rat(I.den()) * FieldElement(K, H.row(i)));
    return out;
}

bool lies_over(NumberField const& k, NumberField const& F, PrimeIdeal const& Q, PrimeIdeal const& pF)
{
    if (Q.p != pF.p)
        return false;
    for (auto const& g : hnf_elements(pF.ideal))
        if (!Q.ideal.contains(embed(F, k, g)))
            return false;
    return true;
}

std::size_t image_prime(NumberField const& k, std::size_t aut, PrimeIdeal const& P, std::vector<PrimeIdeal> const& above)
{
    std::vector<FieldElement> gens{k.from_rational(Rat(P.p))};
    for (auto const& g : hnf_elements(P.ideal))
        gens.push_back(k.apply(aut, g));
    Ideal img = Ideal::generated_by(k, gens);
    for (std::size_t i = 0; i < above.size(); ++i)
        if (above[i].ideal == img)
            return i;
    throw std::logic_error("image_prime: conjugate prime not found");
}

/* Index of the subgroup generated by the given classes in Z^r / diag(inv). */
Int subgroup_index(IntVector const& inv, std::vector<IntVector> const& dlogs)
{
    std::size_t r = inv.size();
    if (r == 0)
        return 1;
    IntMatrix M(r + dlogs.size(), r);
    for (std::size_t i = 0; i < r; ++i)
        M(i, i) = inv[i];
    for (std::size_t j = 0; j < dlogs.size(); ++j)
        M.set_row(r + j, dlogs[j]);
    IntVector d = snf(M);
    Int idx = 1;
    for (std::size_t i = 0; i < r; ++i)
        idx *= d[i];
    return idx;
}

unsigned long to_ulong(Int const& a, char const* what)
{
    if (a < 0 || !a.fits_ulong_p())
        throw ResourceError(std::string(what) + " out of range: " + a.get_str());
    return a.get_ui();
}

void add_orbit(SSet& S, Int const& p, GeneratorOptions const& opt)
{
    NumberField const& k = *S.k;
    auto above = decompose_prime(k, p);
    if (above.size() != k.degree())
        throw InvalidInput("S-set: " + p.get_str() + " does not split totally in k");
    long h = to_long(S.h);
    FieldElement alpha0 = principal_generator(above[0].ideal.pow(h), opt);
    std::vector<std::optional<FieldElement>> alpha(above.size());
    for (std::size_t a = 0; a < k.automorphisms().size(); ++a)
        alpha[image_prime(k, a, above[0], above)] = k.apply(a, alpha0);
    for (std::size_t i = 0; i < above.size(); ++i) {
        if (!alpha[i] || Ideal::principal(*alpha[i]) != above[i].ideal.pow(h))
            throw std::logic_error("S-set: Galois transport of the generator failed");
        S.entries.push_back({above[i], *alpha[i]});
    }
    S.rational_primes.push_back(p);
    std::sort(S.rational_primes.begin(), S.rational_primes.end());
}

/* O_k / P for a prime of degree one: the ring map to F_p. */
struct LinearResidue {
    using T = u64;
    Fp fp;
    std::vector<u64> img; // image of the integral basis

    LinearResidue(NumberField const& K, PrimeIdeal const& P) : fp(Fp::from(P.p))
    {
        std::size_t n = K.degree();
        IntMatrix const& H = P.ideal.hnf();
        std::size_t j = 0;
        while (H(j, j) != P.p)
            ++j;
        auto coord = [&](IntVector const& v) { return fp.reduce(reduce_mod(P.ideal, v)[j]); };
        u64 u = coord(K.one().num());
        u64 ui = fp.inv(u);
        for (std::size_t i = 0; i < n; ++i) {
            IntVector e(n);
            e[i] = 1;
            img.push_back(fp.mul(coord(e), ui));
        }
    }
    T of(FieldElement const& x) const
    {
        Int s = 0;
        IntVector const& c = x.num();
        for (std::size_t i = 0; i < c.size(); ++i)
            s += c[i] * Int(static_cast<unsigned long>(img[i]));
        return fp.mul(fp.reduce(s), fp.inv(fp.reduce(x.den())));
    }
    T mul(T a, T b) const { return fp.mul(a, b); }
    T add(T a, T b) const { return fp.add(a, b); }
    T sub(T a, T b) const { return fp.sub(a, b); }
    T one() const { return 1; }
    bool zero(T a) const { return a == 0; }
};

/* O_k / P in general, on reduced HNF coordinates. */
struct IdealResidue {
    using T = IntVector;
    NumberField const* K;
    Ideal I;

    IdealResidue(NumberField const& k, PrimeIdeal const& P) : K(&k), I(P.ideal) {}
    T of(FieldElement const& x) const
    {
        if (x.den() != 1)
            throw std::logic_error("IdealResidue: non-integral element");
        return reduce_mod(I, x.num());
    }
    T mul(T const& a, T const& b) const { return reduce_mod(I, K->multiply(a, b)); }
    T add(T a, T const& b) const
    {
        for (std::size_t i = 0; i < a.size(); ++i)
            a[i] += b[i];
        return reduce_mod(I, a);
    }
    T sub(T a, T const& b) const
    {
        for (std::size_t i = 0; i < a.size(); ++i)
            a[i] -= b[i];
        return reduce_mod(I, a);
    }
    T one() const { return reduce_mod(I, K->one().num()); }
    bool zero(T const& a) const
    {
        return std::all_of(a.begin(), a.end(), [](Int const& c) { return c == 0; });
    }
};

/* One root beta of x^2 + b x + l, or a conjugate pair not in k. */
struct Beta {
    std::size_t cls;
    bool in_k;
    FieldElement b;     // in k
    FieldElement value; // beta in k when in_k
};

struct BetaList {
    Int l;
    std::vector<Beta> betas;
};

BetaList beta_list(FieldPtr F, NumberField const& k, Int const& l)
{
    BetaList out{l, {}};
    auto fr = fr_set(F, l, 1);
    for (std::size_t c = 0; c < fr.classes.size(); ++c) {
        auto const& w = fr.classes[c];
        FieldElement b = embed(*F, k, w.b);
        if (w.disc_status == WeilClass::Disc::Zero) {
            out.betas.push_back({c, true, b, Rat(-1, 2) * b});
            continue;
        }
        auto r = sqrt_in_field(k, embed(*F, k, w.discriminant()));
        if (r) {
            out.betas.push_back({c, true, b, Rat(1, 2) * (b * k.from_int(-1) - *r)});
            out.betas.push_back({c, true, b, Rat(1, 2) * (b * k.from_int(-1) + *r)});
        } else {
            out.betas.push_back({c, false, b, k.zero()});
        }
    }
    return out;
}

template <class R>
typename R::T ring_pow(R const& ring, typename R::T a, unsigned long e)
{
    typename R::T r = ring.one();
    while (e) {
        if (e & 1)
            r = ring.mul(r, a);
        a = ring.mul(a, a);
        e >>= 1;
    }
    return r;
}

/* Residue data of one (q, beta) pair modulo one prime. */
template <class R>
struct Pre {
    std::vector<std::vector<typename R::T>> pw; // pw[sigma][j] = sigma(alpha)^j
    typename R::T c;                            // beta^E, or l^E
    typename R::T s;                            // beta^E + conj(beta)^E
    bool in_k = false;
};

template <class R>
Pre<R> prepare(R const& ring, NumberField const& k, FieldElement const& alpha, Beta const& beta, Int const& l,
               unsigned long E, unsigned long n)
{
    Pre<R> P;
    P.in_k = beta.in_k;
    for (std::size_t a = 0; a < k.automorphisms().size(); ++a) {
        typename R::T x = ring.of(k.apply(a, alpha));
        std::vector<typename R::T> row{ring.one()};
        for (unsigned long j = 1; j <= n; ++j)
            row.push_back(ring.mul(row.back(), x));
        P.pw.push_back(std::move(row));
    }
    if (beta.in_k) {
        P.c = ring_pow(ring, ring.of(beta.value), E);
        P.s = ring.one();
    } else {
        typename R::T L = ring.of(k.from_rational(Rat(l)));
        P.c = ring_pow(ring, L, E);
        // s_j = -b s_{j-1} - l s_{j-2}, s_0 = 2, s_1 = -b
        typename R::T mb = ring.sub(ring.of(k.zero()), ring.of(beta.b));
        typename R::T s0 = ring.add(ring.one(), ring.one()), s1 = mb;
        if (E == 0)
            s1 = s0;
        for (unsigned long j = 2; j <= E; ++j) {
            typename R::T s2 = ring.sub(ring.mul(mb, s1), ring.mul(L, s0));
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        P.s = s1;
    }
    return P;
}

void digits(std::uint64_t idx, unsigned long base, std::size_t g, std::vector<unsigned>& eps)
{
    eps.assign(g, 0);
    for (std::size_t i = g; i-- > 0;) {
        eps[i] = static_cast<unsigned>(idx % base);
        idx /= base;
    }
}

template <class R>
bool residue_zero(R const& ring, Pre<R> const& P, std::vector<unsigned> const& eps)
{
    typename R::T A = P.pw[0][eps[0]];
    for (std::size_t a = 1; a < eps.size(); ++a)
        A = ring.mul(A, P.pw[a][eps[a]]);
    if (P.in_k)
        return ring.zero(ring.sub(A, P.c));
    return ring.zero(ring.add(ring.sub(ring.mul(A, A), ring.mul(P.s, A)), P.c));
}

/* Exact constants of a (q, beta) pair, built on first use. */
struct Exact {
    FieldElement c, s;
    std::vector<FieldElement> conj;
};

Exact exact_constants(NumberField const& k, FieldElement const& alpha, Beta const& beta, Int const& l, unsigned long E)
{
    Exact X;
    for (std::size_t a = 0; a < k.automorphisms().size(); ++a)
        X.conj.push_back(k.apply(a, alpha));
    if (beta.in_k) {
        X.c = beta.value.pow(E);
        X.s = k.one();
    } else {
        X.c = k.from_rational(Rat(pow(l, E)));
        FieldElement mb = k.zero() - beta.b;
        FieldElement s0 = k.from_int(2), s1 = mb;
        if (E == 0)
            s1 = s0;
        for (unsigned long j = 2; j <= E; ++j) {
            FieldElement s2 = mb * s1 - k.from_rational(Rat(l)) * s0;
            s0 = s1;
            s1 = s2;
        }
        X.s = s1;
    }
    return X;
}

FieldElement exact_gamma(NumberField const& k, Exact const& X, bool in_k, std::vector<unsigned> const& eps)
{
    FieldElement A = k.one();
    for (std::size_t a = 0; a < eps.size(); ++a)
        if (eps[a])
            A = A * X.conj[a].pow(eps[a]);
    if (in_k)
        return A - X.c;
    return A * A - X.s * A + X.c;
}

} // namespace

bool in_m_set(NumberField const& k, NumberField const& F, Int const& p, Int const& nl, Int const& h)
{
    return is_prime(p) && !divides(p, nl * h) && !divides(p, F.discriminant()) && splits_totally(k, p);
}

SSet build_s_set(FieldPtr k, NumberField const& F, ClassGroupData const& cg, Int const& nl, SSetOptions const& opt)
{
    if (!k->galois() || k->automorphisms().size() != k->degree())
        throw InvalidInput("S-set: k must be Galois over Q");
    if (!same_field(*cg.field, *k))
        throw InvalidInput("S-set: class group data belongs to another field");
    SSet S{k, cg.h, {}, {}};
    std::vector<IntVector> dlogs;
    Int index = cg.h;
    for (Int p = 2; p <= Int(opt.prime_cap); p = next_prime(p)) {
        if (!in_m_set(*k, F, p, nl, cg.h))
            continue;
        std::vector<IntVector> next = dlogs;
        for (auto const& P : decompose_prime(*k, p))
            next.push_back(ideal_class_dlog(cg, P.ideal));
        Int idx = subgroup_index(cg.invariants, next);
        if (!S.entries.empty() && idx == index)
            continue;
        add_orbit(S, p, opt.generator);
        dlogs = std::move(next);
        index = idx;
        if (index == 1)
            return S;
    }
    throw ResourceError("S-set: classes of admissible primes up to " + std::to_string(opt.prime_cap) +
                        " do not generate the class group");
}

void enlarge_s_set(SSet& S, Int const& l, GeneratorOptions const& opt)
{
    if (std::find(S.rational_primes.begin(), S.rational_primes.end(), l) != S.rational_primes.end())
        return;
    std::size_t before = S.entries.size();
    add_orbit(S, l, opt);
    // keep entries grouped in ascending rational prime order
    std::stable_sort(S.entries.begin(), S.entries.end(),
                     [](SSet::Entry const& a, SSet::Entry const& b) { return a.q.p < b.q.p; });
    (void)before;
}

json SSet::to_json() const
{
    json j;
    j["field"] = k->id();
    j["h"] = int_to_json(h);
    j["rational_primes"] = ints_to_json(rational_primes);
    json es = json::array();
    for (auto const& e : entries)
        es.push_back({{"prime", e.q.to_json()}, {"alpha", e.alpha.to_json()}});
    j["entries"] = es;
    return j;
}

std::vector<PrimeIdeal> primes_of_k_over(NumberField const& k, NumberField const& F, PrimeIdeal const& pF)
{
    if (!same_field(pF.ideal.field(), F))
        throw InvalidInput("prime of F expected");
    if (F.degree() == 1)
        return decompose_prime(k, pF.p);
    if (k.has_base() && same_field(*k.base(), F)) {
        std::vector<PrimeIdeal> out;
        for (auto const& Q : decompose_prime(k, pF.p))
            if (lies_over(k, F, Q, pF))
                out.push_back(Q);
        return out;
    }
    throw InvalidInput("F must be Q or the registered base of k");
}

json ScanResult::to_json() const
{
    json j;
    j["member"] = member;
    j["triples"] = triples;
    j["zero_residues"] = zero_residues;
    j["vanishing"] = vanishing;
    j["self_checked"] = self_checked;
    if (witness)
        j["witness"] = {{"entry", witness->entry}, {"beta", witness->beta}, {"eps", witness->eps}};
    else
        j["witness"] = nullptr;
    return j;
}

Int m2_grid_size(FieldPtr F, SSet const& S, Int const& nl)
{
    NumberField const& k = *S.k;
    Int per = pow(nl + 1, k.automorphisms().size());
    std::map<Int, std::size_t> nbeta;
    Int total = 0;
    for (auto const& e : S.entries) {
        auto it = nbeta.find(e.q.p);
        if (it == nbeta.end())
            it = nbeta.emplace(e.q.p, beta_list(F, k, e.q.p).betas.size()).first;
        total += per * Int(static_cast<unsigned long>(it->second));
    }
    return total;
}

ScanResult m2_scan(FieldPtr F, SSet const& S, Int const& nl, PrimeIdeal const& pF, ScanOptions const& opt)
{
    NumberField const& k = *S.k;
    if (ramified_member(k, *F, pF))
        throw InvalidInput("m2_scan: " + pF.to_string() + " is ramified");
    for (auto const& e : S.entries)
        if (lies_over(k, *F, e.q, pF))
            throw InvalidInput("m2_scan: " + pF.to_string() + " lies below a prime of S");
    Int total = m2_grid_size(F, S, nl);
    if (total > Int(static_cast<unsigned long>(opt.grid_cap)))
        throw ResourceError("m2_scan: grid of " + total.get_str() + " triples exceeds cap " +
                            std::to_string(opt.grid_cap));

    unsigned long n = to_ulong(nl, "n_lcm");
    unsigned long E = to_ulong(nl * S.h, "n_lcm * h");
    std::size_t g = k.automorphisms().size();
    std::uint64_t per = 1;
    for (std::size_t i = 0; i < g; ++i)
        per *= n + 1;

    auto Ps = primes_of_k_over(k, *F, pF);
    std::vector<LinearResidue> lin;
    std::vector<IdealResidue> gen;
    for (auto const& P : Ps) {
        if (P.f == 1 && P.p < Int(1UL << 62))
            lin.emplace_back(k, P);
        else
            gen.emplace_back(k, P);
    }

    std::map<Int, BetaList> betas;
    for (auto const& e : S.entries)
        if (!betas.count(e.q.p))
            betas.emplace(e.q.p, beta_list(F, k, e.q.p));

    auto exact_member = [&](FieldElement const& gamma) {
        if (gamma.is_zero())
            return false;
        return std::any_of(Ps.begin(), Ps.end(), [&](PrimeIdeal const& P) { return P.ideal.contains(gamma); });
    };

    ScanResult res;
    unsigned workers = std::max(1u, opt.workers);
    constexpr std::uint64_t kChunk = 4096;

    for (std::size_t ei = 0; ei < S.entries.size() && !res.witness; ++ei) {
        auto const& entry = S.entries[ei];
        Int const& l = entry.q.p;
        auto const& bl = betas.at(l).betas;
        for (std::size_t bi = 0; bi < bl.size() && !res.witness; ++bi) {
            Beta const& beta = bl[bi];
            std::vector<Pre<LinearResidue>> plin;
            for (auto const& r : lin)
                plin.push_back(prepare(r, k, entry.alpha, beta, l, E, n));
            std::vector<Pre<IdealResidue>> pgen;
            for (auto const& r : gen)
                pgen.push_back(prepare(r, k, entry.alpha, beta, l, E, n));
            std::optional<Exact> X;
            std::mutex mu;
            auto exact = [&]() -> Exact const& {
                std::lock_guard<std::mutex> lock(mu);
                if (!X)
                    X = exact_constants(k, entry.alpha, beta, l, E);
                return *X;
            };

            std::atomic<std::uint64_t> next{0}, zeros{0}, vanish{0};
            std::atomic<std::uint64_t> best{per};
            auto work = [&]() {
                std::vector<unsigned> eps;
                for (;;) {
                    std::uint64_t lo = next.fetch_add(kChunk);
                    if (lo >= per)
                        return;
                    std::uint64_t hi = std::min(per, lo + kChunk);
                    for (std::uint64_t t = lo; t < hi; ++t) {
                        digits(t, n + 1, g, eps);
                        bool z = false;
                        for (std::size_t i = 0; i < lin.size() && !z; ++i)
                            z = residue_zero(lin[i], plin[i], eps);
                        for (std::size_t i = 0; i < gen.size() && !z; ++i)
                            z = residue_zero(gen[i], pgen[i], eps);
                        if (!z)
                            continue;
                        ++zeros;
                        if (exact_gamma(k, exact(), beta.in_k, eps).is_zero()) {
                            ++vanish;
                            continue;
                        }
                        std::uint64_t cur = best.load();
                        while (t < cur && !best.compare_exchange_weak(cur, t)) {
                        }
                    }
                }
            };
            if (workers == 1) {
                work();
            } else {
                std::vector<std::thread> pool;
                for (unsigned w = 0; w < workers; ++w)
                    pool.emplace_back(work);
                for (auto& t : pool)
                    t.join();
            }
            res.triples += per;
            res.zero_residues += zeros.load();
            res.vanishing += vanish.load();
            if (best.load() < per) {
                std::vector<unsigned> eps;
                digits(best.load(), n + 1, g, eps);
                res.witness = ScanResult::Witness{ei, bi, eps};
            }
        }
    }
    res.member = res.witness.has_value();

    // the residue test must agree with exact arithmetic on a fixed sample
    std::uint64_t want = static_cast<std::uint64_t>(opt.self_check_rate * static_cast<double>(res.triples) + 0.999999);
    want = std::min(want, opt.max_self_checks);
    std::mt19937_64 rng(std::hash<std::string>{}(pF.to_string() + "|" + std::to_string(S.entries.size())));
    std::vector<unsigned> eps;
    for (std::uint64_t c = 0; c < want; ++c) {
        std::size_t ei = rng() % S.entries.size();
        auto const& entry = S.entries[ei];
        auto const& bl = betas.at(entry.q.p).betas;
        if (bl.empty())
            continue;
        Beta const& beta = bl[rng() % bl.size()];
        digits(rng() % per, n + 1, g, eps);
        bool fast = false;
        for (auto const& r : lin)
            fast = fast || residue_zero(r, prepare(r, k, entry.alpha, beta, entry.q.p, E, n), eps);
        for (auto const& r : gen)
            fast = fast || residue_zero(r, prepare(r, k, entry.alpha, beta, entry.q.p, E, n), eps);
        FieldElement gamma = exact_gamma(k, exact_constants(k, entry.alpha, beta, entry.q.p, E), beta.in_k, eps);
        bool slow = gamma.is_zero() || exact_member(gamma);
        if (fast != slow)
            throw std::logic_error("m2_scan: residue test disagrees with exact arithmetic");
        ++res.self_checked;
    }
    return res;
}

bool t_member(NumberField const& F, SSet const& S, Int const& nl, PrimeIdeal const& pF)
{
    if (pF.p < nl || pF.norm() < pow(Int(4), F.degree()))
        return true;
    return std::any_of(S.entries.begin(), S.entries.end(),
                       [&](SSet::Entry const& e) { return lies_over(*S.k, F, e.q, pF); });
}

std::vector<PrimeIdeal> t_set(NumberField const& F, SSet const& S, Int const& nl)
{
    std::set<PrimeIdeal> out;
    Int bound = std::max(nl, pow(Int(4), F.degree()));
    for (Int p = 2; p < bound; p = next_prime(p))
        for (auto const& P : decompose_prime(F, p))
            if (t_member(F, S, nl, P))
                out.insert(P);
    for (auto const& p : S.rational_primes)
        for (auto const& P : decompose_prime(F, p))
            if (t_member(F, S, nl, P))
                out.insert(P);
    return {out.begin(), out.end()};
}

bool ramified_member(NumberField const& k, NumberField const& F, PrimeIdeal const& pF)
{
    if (pF.e > 1)
        return true;
    auto Ps = primes_of_k_over(k, F, pF);
    return std::any_of(Ps.begin(), Ps.end(), [&](PrimeIdeal const& Q) { return Q.e > pF.e; });
}

json N1Result::to_json() const
{
    json j;
    j["member"] = member;
    j["reason"] = reason;
    j["scan"] = scan ? scan->to_json() : json(nullptr);
    return j;
}

N1Result n1_member(FieldPtr F, SSet const& S, Int const& nl, PrimeIdeal const& pF, ScanOptions const& opt)
{
    N1Result r;
    if (t_member(*F, S, nl, pF)) {
        r.member = true;
        r.reason = "T";
        return r;
    }
    if (ramified_member(*S.k, *F, pF)) {
        r.member = true;
        r.reason = "ramified";
        return r;
    }
    r.scan = m2_scan(F, S, nl, pF, opt);
    r.member = r.scan->member;
    if (r.member)
        r.reason = "N0";
    return r;
}

std::optional<Ell2> find_ell2(QuaternionData const& B, NumberField const& k, Int const& nl, unsigned long cap)
{
    Int bad = nl * delta(B);
    for (Int l = 2; l <= Int(cap); l = next_prime(l)) {
        if (divides(l, bad))
            continue;
        int f = decompose_prime(k, l).front().f;
        if (f % 2 == 0)
            continue;
        if (splits_B(B, l))
            continue;
        return Ell2{l, f};
    }
    return std::nullopt;
}

N2Threshold n2_threshold(QuaternionData const& B, NumberField const& k, Int const& nl, unsigned long cap)
{
    auto e = find_ell2(B, k, nl, cap);
    if (!e) {
        std::string why;
        try {
            if (!sufficient_condition(B, k))
                why = " (no ramified prime of B is coprime to d_k/F D_F)";
        } catch (InvalidInput const&) {
        }
        throw ResourceError("n2_threshold: no admissible l up to " + std::to_string(cap) + why);
    }
    if (!divides(Int(12), nl))
        throw std::logic_error("n2_threshold: n_lcm not divisible by 12");
    Int ex = Int(static_cast<unsigned long>(B.F->degree())) * Int(e->f) * nl / 12;
    return N2Threshold{*e, 4 * pow(e->l, to_ulong(ex, "threshold exponent"))};
}

std::optional<Int> find_ell1(FieldPtr F, NumberField const& k, Int const& nl, Int const& h, unsigned long cap)
{
    for (Int l = 2; l <= Int(cap); l = next_prime(l)) {
        if (divides(l, nl * h) || !splits_totally(k, l))
            continue;
        if (!fr_elements_in_k(F, k, l))
            return l;
    }
    return std::nullopt;
}

} // namespace qms
