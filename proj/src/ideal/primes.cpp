#include "qmsieve/exact/modp.hpp"
#include "qmsieve/exact/normal_form.hpp"
#include "qmsieve/ideal/ideal.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace qms {

namespace {

/* O_K / pO_K with coordinates reduced into [0, p). */
struct ResidueRing {
    NumberField const& K;
    Int pz;
    Fp F;
    std::size_t n;
    std::vector<std::vector<u64>> st;

    ResidueRing(NumberField const& K_, Int const& p) : K(K_), pz(p), F(Fp::from(p)), n(K_.degree())
    {
        st.resize(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                IntVector const& t = K.table(i, j);
                st[i * n + j].resize(n);
                for (std::size_t k = 0; k < n; ++k)
                    st[i * n + j][k] = F.reduce(t[k]);
            }
    }

    std::vector<u64> mul(std::vector<u64> const& x, std::vector<u64> const& y) const
    {
        std::vector<u64> r(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i] == 0)
                continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (y[j] == 0)
                    continue;
                u64 c = F.mul(x[i], y[j]);
                auto const& t = st[i * n + j];
                for (std::size_t k = 0; k < n; ++k)
                    if (t[k])
                        r[k] = F.add(r[k], F.mul(c, t[k]));
            }
        }
        return r;
    }

    std::vector<u64> pow(std::vector<u64> x, Int e) const
    {
        std::vector<u64> r(n, 0);
        r[0] = 1;
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t()))
                r = mul(r, x);
            e >>= 1;
            if (e > 0)
                x = mul(x, x);
        }
        return r;
    }

    std::vector<u64> reduce(IntVector const& v) const
    {
        std::vector<u64> r(n);
        for (std::size_t i = 0; i < n; ++i)
            r[i] = F.reduce(v[i]);
        return r;
    }

    static IntVector lift(std::vector<u64> const& v)
    {
        IntVector r(v.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            r[i] = static_cast<unsigned long>(v[i]);
        return r;
    }
};

/* Rows of an integral ideal containing pO, as an HNF mod p. */
Ideal ideal_mod_p(NumberField const& K, Int const& p, std::vector<IntVector> rows)
{
    return Ideal(K, hnf_mod(rows, p, K.degree()));
}

std::vector<IntVector> ideal_rows(Ideal const& I)
{
    std::vector<IntVector> r;
    for (std::size_t i = 0; i < I.hnf().rows(); ++i)
        r.push_back(I.hnf().row(i));
    return r;
}

std::vector<IntVector> element_rows(NumberField const& K, IntVector const& y)
{
    std::vector<IntVector> rows;
    for (std::size_t i = 0; i < K.degree(); ++i) {
        IntVector e(K.degree());
        e[i] = 1;
        rows.push_back(K.multiply(e, y));
    }
    return rows;
}

/* Quotient coordinates of O / J for J ⊇ pO: the columns with pivot p. */
std::vector<std::size_t> quotient_columns(Ideal const& J)
{
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < J.hnf().rows(); ++c)
        if (J.hnf()(c, c) != 1)
            cols.push_back(c);
    return cols;
}

/* Maximal ideals containing J, where O / J is reduced (J contains the
 * p-radical). Splits with the Frobenius-fixed subalgebra. */
void split_reduced(ResidueRing const& R, Ideal const& J, std::vector<Ideal>& out)
{
    NumberField const& K = R.K;
    std::size_t n = R.n;
    Fp const& F = R.F;
    std::vector<std::size_t> cols = quotient_columns(J);
    std::size_t m = cols.size();
    auto coords = [&](std::vector<u64> const& v) {
        IntVector r = reduce_mod(J, ResidueRing::lift(v));
        std::vector<u64> c(m);
        for (std::size_t i = 0; i < m; ++i)
            c[i] = F.reduce(r[cols[i]]);
        return c;
    };
    auto full = [&](std::vector<u64> const& c) {
        std::vector<u64> v(n, 0);
        for (std::size_t i = 0; i < m; ++i)
            v[cols[i]] = c[i];
        return v;
    };
    MatFp M(m, std::vector<u64>(m));
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<u64> e(n, 0);
        e[cols[i]] = 1;
        std::vector<u64> fr = coords(R.pow(e, R.pz));
        fr[i] = F.sub(fr[i], 1);
        M[i] = fr;
    }
    MatFp ker = fp::kernel(fp::transpose(M, m), m, F);
    if (ker.size() <= 1) {
        out.push_back(J);
        return;
    }
    std::vector<u64> one(n, 0);
    one[0] = 1;
    std::vector<u64> onec = coords(one);
    // an element of the fixed algebra that is not a scalar
    std::vector<u64> x;
    for (auto const& k : ker) {
        MatFp two{onec, k};
        if (fp::rank(two, F) == 2) {
            x = full(k);
            break;
        }
    }
    // minimal polynomial of x over F_p
    MatFp powers{onec};
    std::vector<u64> xp = one;
    PolyFp minpoly;
    for (;;) {
        xp = R.mul(xp, x);
        std::vector<u64> c = coords(xp);
        MatFp trial = powers;
        trial.push_back(c);
        MatFp dep = fp::kernel(fp::transpose(trial, m), trial.size(), F);
        if (!dep.empty()) {
            minpoly = dep.front();
            fp::trim(minpoly);
            minpoly = fp::monic(minpoly, F);
            break;
        }
        powers.push_back(c);
    }
    std::vector<u64> roots = roots_mod_p(fp::to_int(minpoly), R.pz);
    for (u64 lam : roots) {
        std::vector<u64> y = x;
        y[0] = F.sub(y[0], lam);
        std::vector<IntVector> rows = ideal_rows(J);
        auto er = element_rows(K, ResidueRing::lift(y));
        rows.insert(rows.end(), er.begin(), er.end());
        split_reduced(R, ideal_mod_p(K, R.pz, rows), out);
    }
}

FieldElement find_anti_uniformizer(NumberField const& K, Ideal const& P, Int const& p)
{
    std::size_t n = K.degree();
    Fp F = Fp::from(p);
    // b -> (b h_k mod p)_k must vanish
    MatFp A(n, std::vector<u64>(n * n));
    for (std::size_t i = 0; i < n; ++i) {
        IntVector e(n);
        e[i] = 1;
        for (std::size_t k = 0; k < n; ++k) {
            IntVector prod = K.multiply(e, P.hnf().row(k));
            for (std::size_t l = 0; l < n; ++l)
                A[i][k * n + l] = F.reduce(prod[l]);
        }
    }
    MatFp ker = fp::kernel(fp::transpose(A, n * n), n, F);
    if (ker.empty())
        throw std::logic_error("prime ideal has no anti-uniformizer");
    return FieldElement(K, ResidueRing::lift(ker.front()));
}

/* v_P(a) for an integral nonzero numerator vector. */
int valuation_integral(NumberField const& K, IntVector a, PrimeIdeal const& P, bool known_e = true)
{
    int v = 0;
    Int c = 0;
    for (auto const& x : a)
        c = gcd(c, x);
    int k = known_e ? valuation(c, P.p) : 0;
    if (k > 0) {
        Int pk = qms::pow(P.p, static_cast<unsigned long>(k));
        for (auto& x : a)
            x /= pk;
        v += k * P.e;
    }
    for (;;) {
        IntVector t = K.multiply(a, P.anti_uniformizer.num());
        bool div = true;
        for (auto const& x : t)
            if (!divides(P.p, x)) {
                div = false;
                break;
            }
        if (!div)
            return v;
        for (auto& x : t)
            x /= P.p;
        a = std::move(t);
        ++v;
    }
}

PrimeIdeal make_prime(NumberField const& K, Int const& p, Ideal const& I, std::optional<FieldElement> pi)
{
    PrimeIdeal P;
    P.ideal = I;
    P.p = p;
    Rat N = I.norm();
    int f = 0;
    for (Int q = N.get_num(); q > 1; q /= p)
        ++f;
    P.f = f;
    P.anti_uniformizer = find_anti_uniformizer(K, I, p);
    IntVector pv(K.degree());
    pv[0] = p;
    P.e = valuation_integral(K, pv, P, false);
    if (!pi) {
        // two-element form: search small combinations of the basis
        std::mt19937_64 rng(0x2545f4914f6cdd1dULL);
        std::size_t n = K.degree();
        FieldElement pe = K.from_rational(Rat(p));
        for (int attempt = 0; attempt < 200 && !pi; ++attempt) {
            IntVector c(n);
            if (attempt < static_cast<int>(n))
                c = I.hnf().row(attempt);
            else {
                std::uniform_int_distribution<long> d(-2, 2);
                for (std::size_t r = 0; r < n; ++r) {
                    long s = d(rng);
                    IntVector row = I.hnf().row(r);
                    for (std::size_t j = 0; j < n; ++j)
                        c[j] += s * row[j];
                }
            }
            FieldElement cand(K, c);
            if (cand.is_zero())
                continue;
            if (Ideal::generated_by(K, {pe, cand}) == I)
                pi = cand;
        }
    }
    P.two_element = pi;
    return P;
}

} // namespace

std::vector<PrimeIdeal> decompose_prime(NumberField const& K, Int const& p)
{
    if (!is_prime(p))
        throw InvalidInput("decompose_prime: " + p.get_str() + " is not prime");
    std::size_t n = K.degree();
    std::vector<PrimeIdeal> out;
    if (!divides(p, K.theta_index())) {
        FieldElement th = K.theta();
        for (auto const& fac : factor_poly_mod_p(K.defining_polynomial(), p)) {
            FieldElement pi = K.zero();
            for (int k = fac.factor.degree(); k >= 0; --k)
                pi = pi * th + K.from_rational(Rat(fac.factor.coeff(k)));
            std::vector<IntVector> rows;
            for (std::size_t i = 0; i < n; ++i) {
                IntVector e(n);
                e[i] = p;
                rows.push_back(e);
            }
            auto er = element_rows(K, pi.num());
            rows.insert(rows.end(), er.begin(), er.end());
            PrimeIdeal P = make_prime(K, p, ideal_mod_p(K, p, rows), pi);
            if (P.e != fac.multiplicity || P.f != fac.factor.degree())
                throw std::logic_error("Dedekind decomposition inconsistent");
            out.push_back(std::move(P));
        }
    }
    else {
        ResidueRing R(K, p);
        // p-radical: kernel of x -> x^(p^j) with p^j >= n
        Int q = p;
        while (q < Int(static_cast<unsigned long>(n)))
            q *= p;
        MatFp Fr(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<u64> e(n, 0);
            e[i] = 1;
            Fr[i] = R.pow(e, q);
        }
        MatFp rad = fp::kernel(fp::transpose(Fr, n), n, R.F);
        std::vector<IntVector> rows;
        for (std::size_t i = 0; i < n; ++i) {
            IntVector e(n);
            e[i] = p;
            rows.push_back(e);
        }
        for (auto const& v : rad)
            rows.push_back(ResidueRing::lift(v));
        std::vector<Ideal> maxes;
        split_reduced(R, ideal_mod_p(K, p, rows), maxes);
        for (auto const& M : maxes)
            out.push_back(make_prime(K, p, M, std::nullopt));
    }
    std::sort(out.begin(), out.end());
    int total = 0;
    for (auto const& P : out)
        total += P.e * P.f;
    if (total != static_cast<int>(n))
        throw std::logic_error("prime decomposition: sum of e f differs from the degree");
    return out;
}

int valuation(FieldElement const& x, PrimeIdeal const& P)
{
    if (x.is_zero())
        throw InvalidInput("valuation of zero");
    return valuation_integral(x.field(), x.num(), P) - P.e * qms::valuation(x.den(), P.p);
}

int valuation(Ideal const& I, PrimeIdeal const& P)
{
    int v = -1;
    bool first = true;
    for (std::size_t i = 0; i < I.hnf().rows(); ++i) {
        int w = valuation_integral(I.field(), I.hnf().row(i), P);
        if (first || w < v)
            v = w;
        first = false;
    }
    return v - P.e * qms::valuation(I.den(), P.p);
}

IdealFactorization factor_ideal(Ideal const& I, FactorBudget const& budget)
{
    NumberField const& K = I.field();
    std::map<Int, bool> primes;
    Int N = abs(determinant(I.hnf()));
    if (N != 1)
        for (auto const& [p, e] : factor_integer(N, budget))
            primes[p] = true;
    if (I.den() != 1)
        for (auto const& [p, e] : factor_integer(I.den(), budget))
            primes[p] = true;
    IdealFactorization out;
    for (auto const& [p, unused] : primes) {
        (void)unused;
        for (auto const& P : decompose_prime(K, p)) {
            int v = valuation(I, P);
            if (v != 0)
                out.emplace_back(P, v);
        }
    }
    if (product(K, out) != I)
        throw std::logic_error("ideal factorization does not reproduce the ideal");
    return out;
}

IdealFactorization factor_principal(FieldElement const& x, FactorBudget const& budget)
{
    return factor_ideal(Ideal::principal(x), budget);
}

std::vector<std::pair<int, int>> splitting_type(NumberField const& K, Int const& p)
{
    std::vector<std::pair<int, int>> t;
    for (auto const& P : decompose_prime(K, p))
        t.emplace_back(P.e, P.f);
    std::sort(t.begin(), t.end());
    return t;
}

bool splits_totally(NumberField const& K, Int const& p)
{
    return decompose_prime(K, p).size() == K.degree();
}

std::vector<int> inertia_degrees(NumberField const& K, Int const& p)
{
    std::vector<int> f;
    for (auto const& P : decompose_prime(K, p))
        f.push_back(P.f);
    std::sort(f.begin(), f.end());
    return f;
}

Ideal extend_ideal(NumberField const& K, Ideal const& I)
{
    std::vector<FieldElement> gens;
    for (std::size_t i = 0; i < I.hnf().rows(); ++i)
        gens.push_back(lift_from_base(K, FieldElement(*K.base(), I.hnf().row(i), I.den())));
    return Ideal::generated_by(K, gens);
}

std::vector<PrimeIdeal> primes_above(NumberField const& K, PrimeIdeal const& P)
{
    Ideal E = extend_ideal(K, P.ideal);
    std::vector<PrimeIdeal> out;
    for (auto const& Q : decompose_prime(K, P.p))
        if (E.is_subset_of(Q.ideal))
            out.push_back(Q);
    return out;
}

PrimeIdeal prime_below(NumberField const& K, PrimeIdeal const& Q)
{
    for (auto const& P : decompose_prime(*K.base(), Q.p))
        if (extend_ideal(K, P.ideal).is_subset_of(Q.ideal))
            return P;
    throw std::logic_error("no base prime below the given prime");
}

namespace {

/* Whether x^2 = delta mod P^(2w + 2t) has a solution with v_P(x) = w. */
bool dyadic_square(NumberField const& F, FieldElement const& delta, PrimeIdeal const& P, int w, int t)
{
    Ideal box = P.ideal.pow(w + 2 * t);
    Ideal target = P.ideal.pow(2 * w + 2 * t);
    IntMatrix const& H = box.hnf();
    std::size_t n = F.degree();
    Int total = 1;
    for (std::size_t i = 0; i < n; ++i)
        total *= H(i, i);
    if (total > 20000000)
        throw ResourceError("relative discriminant: residue search over " + total.get_str() + " classes");
    IntVector c(n);
    for (;;) {
        FieldElement x(F, c);
        FieldElement r = x * x - delta;
        if (target.contains(r))
            return true;
        std::size_t i = 0;
        for (; i < n; ++i) {
            c[i] += 1;
            if (c[i] < H(i, i))
                break;
            c[i] = 0;
        }
        if (i == n)
            return false;
    }
}

} // namespace

Ideal relative_discriminant(NumberField const& K)
{
    if (!K.has_base() || !K.relative_conjugation())
        throw InvalidInput("relative discriminant: field " + K.name() + " is not a registered quadratic extension");
    NumberField const& F = *K.base();
    FieldElement const& delta = K.relative_delta();
    if (!delta.is_integral())
        throw InvalidInput("relative discriminant: delta must be integral");
    Ideal D = Ideal::unit(F);
    for (auto const& [P, v] : factor_principal(delta))
        if (P.p != 2 && v % 2 != 0)
            D = D * P.ideal;
    for (auto const& P : decompose_prime(F, Int(2))) {
        int v = valuation(delta, P);
        int ex;
        if (v % 2 != 0)
            ex = 2 * P.e + 1;
        else {
            int t = P.e;
            while (t > 0 && !dyadic_square(F, delta, P, v / 2, t))
                --t;
            ex = 2 * (P.e - t);
        }
        if (ex > 0)
            D = D * P.ideal.pow(ex);
    }
    return D;
}

} // namespace qms
