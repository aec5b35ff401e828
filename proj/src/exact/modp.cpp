#include "qmsieve/exact/modp.hpp"

#include <algorithm>
#include <random>

namespace qms {

namespace {
constexpr u64 kEdfSeed = 0x9e3779b97f4a7c15ULL;
}

Fp Fp::from(Int const& q)
{
    if (!is_prime(q))
        throw InvalidInput("modulus is not prime: " + q.get_str());
    if (mpz_sizeinbase(q.get_mpz_t(), 2) > 62)
        throw ResourceError("prime too large for word arithmetic: " + q.get_str());
    return Fp(static_cast<u64>(q.get_ui()));
}

u64 Fp::reduce(Int const& a) const
{
    Int r;
    mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), p);
    return r.get_ui();
}

u64 Fp::pow(u64 a, u64 e) const
{
    u64 r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1)
            r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

u64 Fp::inv(u64 a) const
{
    if (a % p == 0)
        throw std::domain_error("Fp::inv of zero");
    return pow(a, p - 2);
}

namespace fp {

void trim(PolyFp& a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

int degree(PolyFp const& a) { return static_cast<int>(a.size()) - 1; }

PolyFp from_int(IntPolynomial const& f, Fp const& F)
{
    PolyFp r;
    for (auto const& c : f.coefficients())
        r.push_back(F.reduce(c));
    trim(r);
    return r;
}

IntPolynomial to_int(PolyFp const& a)
{
    std::vector<Int> c;
    for (u64 x : a)
        c.emplace_back(static_cast<unsigned long>(x));
    return IntPolynomial(std::move(c));
}

PolyFp add(PolyFp const& a, PolyFp const& b, Fp const& F)
{
    PolyFp r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(r);
    return r;
}

PolyFp sub(PolyFp const& a, PolyFp const& b, Fp const& F)
{
    PolyFp r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(r);
    return r;
}

PolyFp mul(PolyFp const& a, PolyFp const& b, Fp const& F)
{
    if (a.empty() || b.empty())
        return {};
    PolyFp r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    trim(r);
    return r;
}

PolyFp scale(PolyFp const& a, u64 s, Fp const& F)
{
    PolyFp r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = F.mul(a[i], s);
    trim(r);
    return r;
}

void divmod(PolyFp const& a, PolyFp const& b, PolyFp& q, PolyFp& r, Fp const& F)
{
    if (b.empty())
        throw std::domain_error("polynomial division by zero");
    r = a;
    trim(r);
    int db = degree(b);
    if (degree(r) < db) {
        q.clear();
        return;
    }
    q.assign(r.size() - b.size() + 1, 0);
    u64 inv = F.inv(b.back());
    for (int k = degree(r); k >= db; --k) {
        u64 c = F.mul(r[k], inv);
        q[k - db] = c;
        if (c == 0)
            continue;
        for (int j = 0; j <= db; ++j)
            r[k - db + j] = F.sub(r[k - db + j], F.mul(c, b[j]));
    }
    r.resize(db);
    trim(r);
    trim(q);
}

PolyFp rem(PolyFp const& a, PolyFp const& b, Fp const& F)
{
    PolyFp q, r;
    divmod(a, b, q, r, F);
    return r;
}

PolyFp quo(PolyFp const& a, PolyFp const& b, Fp const& F)
{
    PolyFp q, r;
    divmod(a, b, q, r, F);
    return q;
}

PolyFp monic(PolyFp const& a, Fp const& F)
{
    if (a.empty())
        return a;
    return scale(a, F.inv(a.back()), F);
}

PolyFp gcd(PolyFp a, PolyFp b, Fp const& F)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        PolyFp r = rem(a, b, F);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, F);
}

PolyFp derivative(PolyFp const& a, Fp const& F)
{
    if (a.size() <= 1)
        return {};
    PolyFp r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i)
        r[i - 1] = F.mul(a[i], i % F.p);
    trim(r);
    return r;
}

PolyFp powmod(PolyFp const& base, Int const& e, PolyFp const& m, Fp const& F)
{
    PolyFp r{1 % F.p};
    trim(r);
    r = rem(r, m, F);
    PolyFp b = rem(base, m, F);
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        r = rem(mul(r, r, F), m, F);
        if (mpz_tstbit(e.get_mpz_t(), i))
            r = rem(mul(r, b, F), m, F);
    }
    return r;
}

u64 eval(PolyFp const& a, u64 x, Fp const& F)
{
    u64 r = 0;
    for (std::size_t i = a.size(); i-- > 0;)
        r = F.add(F.mul(r, x), a[i]);
    return r;
}

} // namespace fp

namespace {

using namespace fp;

/* Squarefree decomposition of a monic polynomial: pairs (g, m) with
 * f = prod g^m and each g squarefree. */
std::vector<std::pair<PolyFp, int>> squarefree_decomposition(PolyFp const& f, Fp const& F)
{
    std::vector<std::pair<PolyFp, int>> out;
    if (degree(f) < 1)
        return out;
    PolyFp c = gcd(f, derivative(f, F), F);
    PolyFp w = quo(f, c, F);
    int i = 1;
    while (degree(w) > 0) {
        PolyFp y = gcd(w, c, F);
        PolyFp fac = quo(w, y, F);
        if (degree(fac) > 0)
            out.emplace_back(monic(fac, F), i);
        w = y;
        c = quo(c, y, F);
        ++i;
    }
    if (degree(c) > 0) {
        // c is a p-th power
        PolyFp root;
        for (std::size_t k = 0; k < c.size(); k += F.p)
            root.push_back(c[k]);
        for (auto& [g, m] : squarefree_decomposition(monic(root, F), F))
            out.emplace_back(g, m * static_cast<int>(F.p));
    }
    return out;
}

/* Distinct-degree factorization of a squarefree monic polynomial. */
std::vector<std::pair<PolyFp, int>> distinct_degree(PolyFp f, Fp const& F)
{
    std::vector<std::pair<PolyFp, int>> out;
    PolyFp x{0, 1};
    PolyFp h = rem(x, f, F);
    Int p(static_cast<unsigned long>(F.p));
    for (int d = 1; 2 * d <= degree(f); ++d) {
        h = powmod(h, p, f, F);
        PolyFp g = gcd(sub(h, x, F), f, F);
        if (degree(g) > 0) {
            out.emplace_back(g, d);
            f = quo(f, g, F);
            h = rem(h, f, F);
        }
    }
    if (degree(f) > 0)
        out.emplace_back(monic(f, F), degree(f));
    return out;
}

void equal_degree(PolyFp const& f, int d, Fp const& F, std::mt19937_64& rng,
                  std::vector<PolyFp>& out)
{
    int n = degree(f);
    if (n == d) {
        out.push_back(monic(f, F));
        return;
    }
    Int exp = (pow(Int(static_cast<unsigned long>(F.p)), static_cast<unsigned long>(d)) - 1) / 2;
    for (;;) {
        PolyFp a(n);
        for (auto& c : a)
            c = rng() % F.p;
        trim(a);
        if (degree(a) < 1)
            continue;
        PolyFp g = gcd(a, f, F);
        if (degree(g) <= 0 || degree(g) == n) {
            PolyFp b;
            if (F.p == 2) {
                // trace map a + a^2 + ... + a^(2^(d-1))
                PolyFp t = rem(a, f, F);
                b = t;
                for (int i = 1; i < d; ++i) {
                    t = rem(mul(t, t, F), f, F);
                    b = add(b, t, F);
                }
            }
            else {
                b = sub(powmod(a, exp, f, F), PolyFp{1}, F);
            }
            g = gcd(b, f, F);
        }
        if (degree(g) > 0 && degree(g) < n) {
            equal_degree(g, d, F, rng, out);
            equal_degree(quo(f, g, F), d, F, rng, out);
            return;
        }
    }
}

bool factor_less(ModPFactor const& a, ModPFactor const& b)
{
    if (a.factor.degree() != b.factor.degree())
        return a.factor.degree() < b.factor.degree();
    auto const& ca = a.factor.coefficients();
    auto const& cb = b.factor.coefficients();
    if (ca != cb)
        return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
    return a.multiplicity < b.multiplicity;
}

} // namespace

std::vector<ModPFactor> factor_poly_mod_p(IntPolynomial const& f, Int const& q)
{
    Fp F = Fp::from(q);
    PolyFp g = from_int(f, F);
    if (degree(g) != f.degree())
        throw InvalidInput("factor_poly_mod_p: leading coefficient vanishes mod q");
    g = monic(g, F);
    std::mt19937_64 rng(kEdfSeed);
    std::vector<ModPFactor> out;
    for (auto const& [sq, m] : squarefree_decomposition(g, F))
        for (auto const& [blk, d] : distinct_degree(sq, F)) {
            std::vector<PolyFp> pieces;
            equal_degree(blk, d, F, rng, pieces);
            for (auto const& pc : pieces)
                out.push_back({to_int(pc), m});
        }
    std::sort(out.begin(), out.end(), factor_less);
    return out;
}

std::vector<u64> roots_mod_p(IntPolynomial const& f, Int const& q)
{
    std::vector<u64> r;
    for (auto const& fa : factor_poly_mod_p(f, q))
        if (fa.factor.degree() == 1) {
            Fp F = Fp::from(q);
            r.push_back(F.neg(F.reduce(fa.factor.coeff(0))));
        }
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
}

namespace fp {

std::vector<std::size_t> rref(MatFp& m, Fp const& F)
{
    std::vector<std::size_t> piv;
    if (m.empty())
        return piv;
    std::size_t cols = m[0].size(), r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t k = r;
        while (k < m.size() && m[k][c] == 0)
            ++k;
        if (k == m.size())
            continue;
        std::swap(m[r], m[k]);
        u64 inv = F.inv(m[r][c]);
        for (auto& x : m[r])
            x = F.mul(x, inv);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0)
                continue;
            u64 f = m[i][c];
            for (std::size_t j = c; j < cols; ++j)
                m[i][j] = F.sub(m[i][j], F.mul(f, m[r][j]));
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

std::size_t rank(MatFp m, Fp const& F) { return rref(m, F).size(); }

MatFp kernel(MatFp m, std::size_t cols, Fp const& F)
{
    std::vector<std::size_t> piv = rref(m, F);
    std::vector<bool> is_piv(cols, false);
    for (auto c : piv)
        is_piv[c] = true;
    MatFp basis;
    for (std::size_t fc = 0; fc < cols; ++fc) {
        if (is_piv[fc])
            continue;
        std::vector<u64> v(cols, 0);
        v[fc] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i)
            v[piv[i]] = F.neg(m[i][fc]);
        basis.push_back(std::move(v));
    }
    return basis;
}

MatFp transpose(MatFp const& m, std::size_t cols)
{
    MatFp t(cols, std::vector<u64>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j)
            t[j][i] = m[i][j];
    return t;
}

} // namespace fp

} // namespace qms
