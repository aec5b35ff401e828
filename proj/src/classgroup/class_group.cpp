#include "qmsieve/classgroup/class_group.hpp"

#include "qmsieve/exact/lattice.hpp"
#include "qmsieve/exact/modp.hpp"
#include "qmsieve/exact/normal_form.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <random>
#include <set>
#include <thread>

namespace qms {

namespace {

Int element_norm(NumberField const& K, IntVector const& x)
{
    std::size_t n = K.degree();
    IntMatrix M(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        IntVector e(n);
        e[i] = 1;
        M.set_row(i, K.multiply(e, x));
    }
    return abs(determinant(M));
}

Int factorial(unsigned long n)
{
    Int r = 1;
    for (unsigned long i = 2; i <= n; ++i)
        r *= i;
    return r;
}

/* A reduced basis of an integral ideal lattice for T2 enumeration. */
struct Lattice {
    IntMatrix basis; // rows on the integral basis
    std::vector<std::vector<double>> gram;
    double lambda = 0;
};

Lattice reduced_lattice(NumberField const& K, IntMatrix const& H)
{
    RatMatrix Hr = to_rat(H);
    RatMatrix G = Hr * to_rat(K.t2_gram()) * Hr.transpose();
    LllResult r = lll_gram(G);
    Lattice L;
    L.basis = r.U * H;
    L.gram = to_double(r.gram);
    L.lambda = L.gram[0][0];
    return L;
}

IntVector combine(IntMatrix const& B, std::vector<long> const& y)
{
    IntVector x(B.cols());
    for (std::size_t i = 0; i < B.rows(); ++i) {
        if (y[i] == 0)
            continue;
        Int c(y[i]);
        for (std::size_t j = 0; j < B.cols(); ++j)
            x[j] += c * B(i, j);
    }
    return x;
}

bool sign_canonical(IntVector const& x)
{
    for (auto const& c : x)
        if (c != 0)
            return c > 0;
    return false;
}

struct BaseContext {
    NumberField const* K;
    Int bound;
    std::vector<Int> rational_primes;                       // p <= bound
    std::map<Int, std::vector<std::pair<PrimeIdeal, long>>> above; // prime, factor-base index or -1
    std::vector<PrimeIdeal> fb;
    std::vector<std::vector<std::size_t>> aut_perm; // aut_perm[s][j] = index of s(P_j)
};

Ideal apply_aut(NumberField const& K, std::size_t s, Ideal const& I)
{
    IntMatrix const& M = K.automorphisms()[s];
    IntMatrix const& H = I.hnf();
    return Ideal(K, H * M, I.den());
}

BaseContext make_context(NumberField const& K, Int const& bound)
{
    BaseContext ctx;
    ctx.K = &K;
    ctx.bound = bound;
    for (Int p = 2; p <= bound; p = next_prime(p)) {
        ctx.rational_primes.push_back(p);
        auto primes = decompose_prime(K, p);
        std::vector<std::pair<PrimeIdeal, long>> entry;
        for (auto& P : primes) {
            long idx = -1;
            if (P.norm() <= bound) {
                idx = static_cast<long>(ctx.fb.size());
                ctx.fb.push_back(P);
            }
            entry.emplace_back(std::move(P), idx);
        }
        ctx.above[p] = std::move(entry);
    }
    std::size_t m = ctx.fb.size();
    for (std::size_t s = 0; s < K.automorphisms().size(); ++s) {
        std::vector<std::size_t> perm(m);
        for (std::size_t j = 0; j < m; ++j) {
            Ideal img = apply_aut(K, s, ctx.fb[j].ideal);
            auto const& cands = ctx.above.at(ctx.fb[j].p);
            auto it = std::find_if(cands.begin(), cands.end(),
                                   [&](auto const& c) { return c.second >= 0 && c.first.ideal == img; });
            if (it == cands.end())
                throw std::logic_error("class_group: automorphism does not permute the factor base");
            perm[j] = static_cast<std::size_t>(it->second);
        }
        ctx.aut_perm.push_back(std::move(perm));
    }
    return ctx;
}

/* Exponent vector of (x) over the factor base, if x is smooth. */
std::optional<IntVector> factor_over_base(BaseContext const& ctx, IntVector const& x)
{
    NumberField const& K = *ctx.K;
    Int N = element_norm(K, x);
    if (N == 0)
        return std::nullopt;
    std::vector<std::pair<Int, int>> pv;
    for (Int const& p : ctx.rational_primes) {
        if (N == 1)
            break;
        if (!divides(p, N))
            continue;
        int v = 0;
        while (divides(p, N)) {
            N /= p;
            ++v;
        }
        pv.emplace_back(p, v);
    }
    if (N != 1)
        return std::nullopt;
    IntVector out(ctx.fb.size());
    FieldElement xe(K, x);
    for (auto const& [p, vp] : pv) {
        auto const& primes = ctx.above.at(p);
        int rest = vp;
        for (std::size_t i = 0; i < primes.size(); ++i) {
            auto const& [P, idx] = primes[i];
            int v;
            if (i + 1 == primes.size()) {
                if (rest % P.f != 0)
                    throw std::logic_error("class_group: norm and valuations disagree");
                v = rest / P.f;
            } else {
                v = rest > 0 ? valuation(xe, P) : 0;
            }
            rest -= v * P.f;
            if (v == 0)
                continue;
            if (idx < 0)
                return std::nullopt;
            out[static_cast<std::size_t>(idx)] = v;
        }
        if (rest != 0)
            throw std::logic_error("class_group: norm and valuations disagree");
    }
    return out;
}

std::vector<IntVector> harvest_lattice(BaseContext const& ctx, Lattice const& L, std::size_t index, int round)
{
    std::vector<IntVector> elems;
    std::size_t cap = 24u << round;
    double C = L.lambda * static_cast<double>(2u << round);
    try {
        fincke_pohst_approx(
            L.gram, C,
            [&](std::vector<long> const& y) {
                IntVector x = combine(L.basis, y);
                if (sign_canonical(x))
                    elems.push_back(std::move(x));
                return elems.size() < cap;
            },
            200000ULL << round);
    } catch (ResourceError const&) {
        // the shell is only a source of candidates; a partial scan is fine
    }
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ (index * 1000003ULL + static_cast<unsigned long long>(round)));
    long span = 1L + round;
    std::uniform_int_distribution<long> coef(-span, span);
    std::size_t n = L.basis.rows();
    for (int t = 0; t < 16; ++t) {
        std::vector<long> y(n);
        for (auto& c : y)
            c = coef(rng);
        IntVector x = combine(L.basis, y);
        if (sign_canonical(x))
            elems.push_back(std::move(x));
    }
    std::vector<IntVector> rels;
    for (auto const& x : elems) {
        auto r = factor_over_base(ctx, x);
        if (!r)
            continue;
        if (std::all_of(r->begin(), r->end(), [](Int const& c) { return c == 0; }))
            continue;
        for (auto const& perm : ctx.aut_perm) {
            IntVector s(r->size());
            for (std::size_t j = 0; j < r->size(); ++j)
                s[perm[j]] = (*r)[j];
            rels.push_back(std::move(s));
        }
    }
    return rels;
}

struct LatticeDet {
    Int h;
    IntMatrix H;
};

/* HNF of the relation lattice when it has full rank. */
std::optional<LatticeDet> relation_lattice(std::set<IntVector> const& rels, std::size_t m)
{
    Fp F((1ULL << 61) - 1);
    std::vector<std::vector<u64>> basis(m); // basis[c]: pivot at c, normalized to 1
    std::vector<IntVector> chosen;
    for (auto const& r : rels) {
        std::vector<u64> v(m);
        for (std::size_t j = 0; j < m; ++j)
            v[j] = F.reduce(r[j]);
        for (std::size_t c = 0; c < m; ++c) {
            if (v[c] == 0)
                continue;
            if (basis[c].empty()) {
                u64 inv = F.inv(v[c]);
                for (auto& e : v)
                    e = F.mul(e, inv);
                basis[c] = v;
                chosen.push_back(r);
                break;
            }
            u64 f = v[c];
            for (std::size_t j = c; j < m; ++j)
                v[j] = F.sub(v[j], F.mul(f, basis[c][j]));
        }
        if (chosen.size() == m)
            break;
    }
    if (chosen.size() < m)
        return std::nullopt;
    IntMatrix S(m, m);
    for (std::size_t i = 0; i < m; ++i)
        S.set_row(i, chosen[i]);
    Int D = abs(determinant(S));
    IncrementalHnf hnf(m);
    hnf.set_modulus(D);
    for (auto const& r : rels)
        hnf.insert(r);
    return LatticeDet{hnf.determinant(), hnf.matrix()};
}

IntVector mod_nonneg(IntVector v, Int const& m)
{
    for (auto& c : v)
        c -= floor_div(c, m) * m;
    return v;
}

/* Invariants, factor-base dlogs and generators of Z^m / (rows of H). */
void structure(ClassGroupData& cg, IntMatrix const& H, Int const& h)
{
    std::size_t m = H.rows();
    std::vector<std::size_t> E;
    std::vector<long> pos(m, -1);
    for (std::size_t c = 0; c < m; ++c)
        if (H(c, c) != 1) {
            pos[c] = static_cast<long>(E.size());
            E.push_back(c);
        }
    std::size_t k = E.size();
    // rep[c]: class of P_c on the classes of the P_j, j in E
    std::vector<IntVector> rep(m, IntVector(k));
    for (std::size_t c = m; c-- > 0;) {
        if (pos[c] >= 0) {
            rep[c][static_cast<std::size_t>(pos[c])] = 1;
            continue;
        }
        IntVector r(k);
        for (std::size_t j = c + 1; j < m; ++j) {
            if (H(c, j) == 0)
                continue;
            for (std::size_t t = 0; t < k; ++t)
                r[t] -= H(c, j) * rep[j][t];
        }
        rep[c] = mod_nonneg(r, h);
    }
    cg.dlog.assign(m, IntVector{});
    cg.generators.clear();
    cg.invariants.clear();
    if (k == 0)
        return;
    IntMatrix R(k, k);
    for (std::size_t a = 0; a < k; ++a) {
        std::size_t c = E[a];
        IntVector r(k);
        r[a] = H(c, c);
        for (std::size_t j = c + 1; j < m; ++j) {
            if (H(c, j) == 0)
                continue;
            for (std::size_t t = 0; t < k; ++t)
                r[t] += H(c, j) * rep[j][t];
        }
        R.set_row(a, r);
    }
    SnfResult s = snf_with_transforms(R);
    IntMatrix Vinv = to_int_exact(inverse(to_rat(s.V)));
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < k; ++i)
        if (abs(s.d[i]) != 1)
            keep.push_back(i);
    for (std::size_t i : keep)
        cg.invariants.push_back(abs(s.d[i]));
    Int expo = cg.invariants.empty() ? Int(1) : cg.invariants.back();
    for (std::size_t c = 0; c < m; ++c) {
        IntVector img = rep[c] * s.V;
        IntVector v;
        for (std::size_t t = 0; t < keep.size(); ++t) {
            Int d = cg.invariants[t];
            v.push_back(img[keep[t]] - floor_div(img[keep[t]], d) * d);
        }
        cg.dlog[c] = std::move(v);
    }
    for (std::size_t i : keep) {
        IntVector g(m);
        for (std::size_t t = 0; t < k; ++t)
            g[E[t]] = Vinv(i, t);
        cg.generators.push_back(mod_nonneg(g, expo));
    }
}

Ideal fb_product(ClassGroupData const& cg, IntVector const& exps)
{
    Ideal r = Ideal::unit(*cg.field);
    for (std::size_t j = 0; j < exps.size(); ++j)
        if (exps[j] != 0)
            r = r * cg.factor_base[j].ideal.pow(to_long(exps[j]));
    return r;
}

} // namespace

Int minkowski_bound(NumberField const& K)
{
    unsigned long n = K.degree();
    // 4/pi < 12733/10000
    Rat c = Rat(factorial(n), pow(Int(n), n));
    for (int i = 0; i < K.r2(); ++i)
        c *= Rat(12733, 10000);
    Int ad = abs(K.discriminant());
    Int s = isqrt(ad);
    if (s * s != ad)
        s += 1;
    c *= s;
    return floor_of(c);
}

Ideal ClassGroupData::generator_ideal(std::size_t i) const { return fb_product(*this, generators.at(i)); }

ClassGroupData class_group(FieldPtr K, ClassGroupOptions const& opt)
{
    if (K->degree() > 6)
        throw InvalidInput("class_group: degree must be at most 6");
    ClassGroupData cg;
    cg.field = K;
    cg.minkowski_bound = minkowski_bound(*K);
    if (cg.minkowski_bound > opt.max_minkowski)
        throw ResourceError("class_group: Minkowski bound " + cg.minkowski_bound.get_str() + " exceeds cap");
    BaseContext ctx = make_context(*K, cg.minkowski_bound);
    cg.factor_base = ctx.fb;
    std::size_t m = ctx.fb.size();
    if (m == 0) {
        cg.h = 1;
        return cg;
    }

    std::vector<Lattice> lattices;
    lattices.push_back(reduced_lattice(*K, IntMatrix::identity(K->degree())));
    for (auto const& P : ctx.fb)
        lattices.push_back(reduced_lattice(*K, P.ideal.hnf()));

    std::set<IntVector> rels;
    std::optional<Int> previous;
    std::optional<LatticeDet> last;
    unsigned workers = std::max(1u, opt.workers);
    for (int round = 0; round < opt.max_rounds; ++round) {
        std::vector<std::vector<IntVector>> found(lattices.size());
        std::atomic<std::size_t> next{0};
        auto work = [&]() {
            for (std::size_t i = next++; i < lattices.size(); i = next++)
                found[i] = harvest_lattice(ctx, lattices[i], i, round);
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
        for (auto& f : found)
            rels.insert(f.begin(), f.end());

        std::vector<bool> seen(m, false);
        for (auto const& r : rels)
            for (std::size_t j = 0; j < m; ++j)
                if (r[j] != 0)
                    seen[j] = true;
        bool covered = std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
        last = covered ? relation_lattice(rels, m) : std::nullopt;
        if (!last) {
            previous.reset();
            continue;
        }
        if (previous && *previous == last->h) {
            cg.h = last->h;
            cg.relations = rels.size();
            cg.rounds = round + 1;
            structure(cg, last->H, last->h);
            Int prod = 1;
            for (auto const& d : cg.invariants)
                prod *= d;
            if (prod != cg.h)
                throw std::logic_error("class_group: invariant factors do not multiply to h");
            return cg;
        }
        previous = last->h;
    }
    std::string partial = last ? last->h.get_str() : std::string("unknown");
    throw ResourceError("class_group: relation lattice did not stabilize; h divides " + partial);
}

IntVector ideal_class_dlog(ClassGroupData const& cg, Ideal const& I)
{
    NumberField const& K = *cg.field;
    std::size_t r = cg.invariants.size();
    IntVector v(r);
    auto add_factorization = [&](IdealFactorization const& fac, int sign) -> bool {
        for (auto const& [P, e] : fac) {
            auto it = std::find(cg.factor_base.begin(), cg.factor_base.end(), P);
            if (it == cg.factor_base.end())
                return false;
            auto const& d = cg.dlog[static_cast<std::size_t>(it - cg.factor_base.begin())];
            for (std::size_t i = 0; i < r; ++i)
                v[i] += sign * e * d[i];
        }
        return true;
    };
    if (!add_factorization(factor_ideal(I), 1)) {
        // I ~ J^-1 for (x) = I J with J smooth over the base
        std::fill(v.begin(), v.end(), Int(0));
        Ideal J0 = Ideal(K, I.hnf()); // den * I, same class
        Lattice L = reduced_lattice(K, J0.hnf());
        Ideal Jinv = J0.inverse();
        bool done = false;
        std::mt19937_64 rng(0x2545f4914f6cdd1dULL);
        for (long span = 1; !done && span < 64; span *= 2) {
            std::uniform_int_distribution<long> coef(-span, span);
            for (int t = 0; t < 200 && !done; ++t) {
                std::vector<long> y(L.basis.rows());
                for (auto& c : y)
                    c = coef(rng);
                IntVector x = combine(L.basis, y);
                if (std::all_of(x.begin(), x.end(), [](Int const& c) { return c == 0; }))
                    continue;
                Ideal cof = Ideal::principal(FieldElement(K, x)) * Jinv;
                std::fill(v.begin(), v.end(), Int(0));
                done = add_factorization(factor_ideal(cof), -1);
            }
        }
        if (!done)
            throw ResourceError("ideal_class_dlog: no smooth cofactor found");
    }
    for (std::size_t i = 0; i < r; ++i)
        v[i] -= floor_div(v[i], cg.invariants[i]) * cg.invariants[i];
    return v;
}

FieldElement certify_dlog(ClassGroupData const& cg, Ideal const& I, IntVector const& v)
{
    NumberField const& K = *cg.field;
    Ideal R = Ideal(K, I.hnf());
    for (std::size_t i = 0; i < v.size(); ++i) {
        Int d = cg.invariants[i];
        Int e = d - (v[i] - floor_div(v[i], d) * d);
        if (e == d)
            continue;
        R = R * cg.generator_ideal(i).pow(to_long(e));
    }
    return principal_generator(R);
}

FieldElement principal_generator(Ideal const& I, GeneratorOptions const& opt)
{
    NumberField const& K = I.field();
    if (I.is_unit())
        return K.one();
    Ideal J(K, I.hnf()); // den * I
    Int N = 1;
    for (std::size_t i = 0; i < J.hnf().rows(); ++i)
        N *= J.hnf()(i, i);
    Lattice L = reduced_lattice(K, J.hnf());
    double C = L.lambda;
    for (int shell = 0; shell < opt.max_shells; ++shell, C *= 2) {
        std::vector<IntVector> hits;
        fincke_pohst_approx(
            L.gram, C,
            [&](std::vector<long> const& y) {
                IntVector x = combine(L.basis, y);
                if (sign_canonical(x) && element_norm(K, x) == N)
                    hits.push_back(std::move(x));
                return true;
            },
            opt.node_cap);
        if (hits.empty())
            continue;
        IntVector best = *std::min_element(hits.begin(), hits.end());
        FieldElement alpha(K, best);
        if (Ideal::principal(alpha) != J)
            throw std::logic_error("principal_generator: generator check failed");
        return Rat(1) / Rat(I.den()) * alpha;
    }
    throw ResourceError("principal_generator: shell cap exhausted");
}

json ClassGroupData::to_json() const
{
    json j;
    j["field"] = field->id();
    j["h"] = int_to_json(h);
    j["invariants"] = ints_to_json(invariants);
    j["minkowski_bound"] = int_to_json(minkowski_bound);
    json fb = json::array();
    for (auto const& P : factor_base)
        fb.push_back(P.to_json());
    j["factor_base"] = fb;
    json dl = json::array();
    for (auto const& d : dlog)
        dl.push_back(ints_to_json(d));
    j["dlog"] = dl;
    json gs = json::array();
    for (auto const& g : generators)
        gs.push_back(ints_to_json(g));
    j["generators"] = gs;
    j["relations"] = relations;
    j["rounds"] = rounds;
    return j;
}

ClassGroupData ClassGroupData::from_json(FieldPtr K, json const& j)
{
    if (j.at("field").get<std::string>() != K->id())
        throw InvalidInput("ClassGroupData: cached data belongs to another field");
    ClassGroupData cg;
    cg.field = K;
    cg.h = int_from_json(j.at("h"));
    cg.invariants = ints_from_json(j.at("invariants"));
    cg.minkowski_bound = int_from_json(j.at("minkowski_bound"));
    std::map<Int, std::vector<PrimeIdeal>> cache;
    for (auto const& pj : j.at("factor_base")) {
        Int p = int_from_json(pj.at("p"));
        if (!cache.count(p))
            cache[p] = decompose_prime(*K, p);
        IntMatrix H(K->degree(), K->degree());
        std::size_t i = 0;
        for (auto const& row : pj.at("hnf"))
            H.set_row(i++, ints_from_json(row));
        Ideal I(*K, H);
        auto const& cands = cache[p];
        auto it = std::find_if(cands.begin(), cands.end(), [&](PrimeIdeal const& P) { return P.ideal == I; });
        if (it == cands.end())
            throw InvalidInput("ClassGroupData: cached factor base does not match the field");
        cg.factor_base.push_back(*it);
    }
    for (auto const& d : j.at("dlog"))
        cg.dlog.push_back(ints_from_json(d));
    for (auto const& g : j.at("generators"))
        cg.generators.push_back(ints_from_json(g));
    cg.relations = j.at("relations").get<std::size_t>();
    cg.rounds = j.at("rounds").get<int>();
    return cg;
}

} // namespace qms
