#include "qmsieve/criteria/weil.hpp"

#include "qmsieve/exact/factor.hpp"

#include <algorithm>
#include <set>

namespace qms {

namespace {

IntPolynomial cyclotomic(unsigned long m)
{
    std::vector<Int> c(m + 1);
    c[0] = -1;
    c[m] = 1;
    IntPolynomial p(c);
    for (unsigned long d = 1; d < m; ++d)
        if (m % d == 0)
            p = divide_exact(p, cyclotomic(d));
    return p;
}

FieldElement eval(IntPolynomial const& P, FieldElement const& x)
{
    NumberField const& K = x.field();
    FieldElement r = K.zero();
    for (int i = P.degree(); i >= 0; --i)
        r = r * x + K.from_rational(Rat(P.coeff(i)));
    return r;
}

char const* disc_name(WeilClass::Disc d)
{
    switch (d) {
    case WeilClass::Disc::Zero:
        return "zero";
    case WeilClass::Disc::TotallyNegative:
        return "totally_negative";
    default:
        return "mixed_nonpositive";
    }
}

void insert_all(std::set<PrimeIdeal>& s, std::vector<PrimeIdeal> const& v) { s.insert(v.begin(), v.end()); }

} // namespace

IntPolynomial real_cyclotomic(unsigned long m)
{
    if (m == 0)
        throw InvalidInput("real_cyclotomic: m must be positive");
    if (m == 1)
        return IntPolynomial({-2, 1});
    if (m == 2)
        return IntPolynomial({2, 1});
    // Phi_m(x) = x^k Psi_m(x + 1/x) with x^j + x^-j = D_j(x + 1/x)
    IntPolynomial phi = cyclotomic(m);
    int k = phi.degree() / 2;
    IntPolynomial y = IntPolynomial::x();
    std::vector<IntPolynomial> D{IntPolynomial::constant(2), y};
    for (int j = 2; j <= k; ++j)
        D.push_back(y * D[j - 1] - D[j - 2]);
    IntPolynomial psi = IntPolynomial::constant(phi.coeff(k));
    for (int j = 1; j <= k; ++j)
        psi = psi + phi.coeff(k + j) * D[j];
    return psi;
}

Int n_lcm(NumberField const& F)
{
    if (!F.totally_real())
        throw InvalidInput("n_lcm: field must be totally real");
    unsigned long d = F.degree();
    // phi(m) >= sqrt(m / 2), so phi(m) | 2d forces m <= 8 d^2
    std::vector<FieldElement> box = enumerate_box(F, Rat(4));
    Int L = 1;
    for (unsigned long m = 1; m <= 8 * d * d; ++m) {
        unsigned long ph = euler_phi(m);
        if ((2 * d) % ph != 0)
            continue;
        IntPolynomial psi = real_cyclotomic(m);
        if (static_cast<unsigned long>(psi.degree()) > d || d % static_cast<unsigned long>(psi.degree()) != 0)
            continue;
        bool root = std::any_of(box.begin(), box.end(), [&](FieldElement const& x) { return eval(psi, x).is_zero(); });
        if (root)
            L = lcm(L, Int(m));
    }
    return L;
}

FieldElement WeilClass::discriminant() const
{
    NumberField const& F = b.field();
    return b * b - F.from_rational(Rat(4 * pow(q, static_cast<unsigned long>(f))));
}

json WeilClass::to_json() const
{
    json j;
    j["b"] = b.to_json();
    j["q"] = int_to_json(q);
    j["f"] = f;
    j["disc_status"] = disc_name(disc_status);
    j["contribution"] = contribution.to_json();
    return j;
}

json FRSet::to_json() const
{
    json j;
    j["field"] = F->id();
    j["q"] = int_to_json(q);
    j["f"] = f;
    json cs = json::array();
    for (auto const& c : classes)
        cs.push_back(c.to_json());
    j["classes"] = cs;
    return j;
}

FRSet fr_set(FieldPtr F, Int const& q, int f)
{
    if (f < 1 || !is_prime(q))
        throw InvalidInput("fr_set: need a prime q and f >= 1");
    if (!F->totally_real())
        throw InvalidInput("fr_set: field must be totally real");
    Int Q = pow(q, static_cast<unsigned long>(f));
    FRSet S{F, q, f, {}};
    for (auto const& b : enumerate_box(*F, Rat(4 * Q))) {
        WeilClass w;
        w.b = b;
        w.q = q;
        w.f = f;
        FieldElement disc = w.discriminant();
        if (disc.is_zero()) {
            w.disc_status = WeilClass::Disc::Zero;
            w.contribution = Rat(1, 2) * (F->from_int(2) + b);
        } else {
            w.disc_status = is_totally_neg(disc) ? WeilClass::Disc::TotallyNegative : WeilClass::Disc::MixedNonpositive;
            w.contribution = F->one() + b + F->from_rational(Rat(Q));
        }
        if (w.contribution.is_zero())
            throw std::logic_error("fr_set: vanishing contribution");
        S.classes.push_back(std::move(w));
    }
    return S;
}

std::vector<PrimeIdeal> w_set(FieldPtr F, Int const& l, int f)
{
    std::set<PrimeIdeal> s;
    insert_all(s, decompose_prime(*F, l));
    for (auto const& p : prime_divisors(F->discriminant()))
        for (auto const& P : decompose_prime(*F, p))
            if (P.e > 1)
                s.insert(P);
    for (auto const& w : fr_set(F, l, f).classes)
        for (auto const& [P, e] : factor_principal(w.contribution))
            if (e > 0)
                s.insert(P);
    return {s.begin(), s.end()};
}

std::vector<PrimeIdeal> v_set(FieldPtr F, Int const& l, int f)
{
    auto w = w_set(F, l, f);
    std::set<PrimeIdeal> s(w.begin(), w.end());
    Int bound = pow(Int(4), F->degree());
    for (Int p = 2; p < bound; p = next_prime(p))
        for (auto const& P : decompose_prime(*F, p))
            if (P.norm() < bound)
                s.insert(P);
    return {s.begin(), s.end()};
}

Int torsion_bound(FieldPtr F, Int const& l, int f)
{
    Int N = l;
    for (auto const& w : fr_set(F, l, f).classes) {
        Rat nm = abs(norm(w.contribution));
        if (nm.get_den() != 1)
            throw std::logic_error("torsion_bound: non-integral contribution");
        Int a = nm.get_num();
        N *= w.disc_status == WeilClass::Disc::Zero ? a : Int(a * a);
    }
    return N;
}

FieldElement embed(NumberField const& F, NumberField const& k, FieldElement const& x)
{
    if (F.degree() == 1)
        return k.from_rational(x.as_rational());
    if (same_field(F, k))
        return FieldElement(k, x.num(), x.den());
    if (k.has_base() && same_field(*k.base(), F))
        return lift_from_base(k, FieldElement(*k.base(), x.num(), x.den()));
    throw InvalidInput("embed: " + F.name() + " is not a registered subfield of " + k.name());
}

std::optional<WeilClass> fr_elements_in_k(FieldPtr F, NumberField const& k, Int const& l)
{
    for (auto const& w : fr_set(F, l, 1).classes) {
        if (w.disc_status == WeilClass::Disc::Zero)
            return w; // beta = -b/2 already lies in F
        if (sqrt_in_field(k, embed(*F, k, w.discriminant())))
            return w;
    }
    return std::nullopt;
}

} // namespace qms
