#include "qmsieve/exact/factor.hpp"
#include "qmsieve/exact/lattice.hpp"
#include "qmsieve/field/number_field.hpp"

#include <algorithm>

namespace qms {

std::vector<FieldElement> enumerate_box(NumberField const& K, Rat const& R2, BoxOptions const& opt)
{
    std::size_t n = K.degree();
    if (K.t2_gram().rows() != n)
        throw InvalidInput("enumerate_box: field " + K.name() + " is neither totally real nor CM");
    if (R2 < 0)
        return {};
    LllResult red = lll_gram(to_rat(K.t2_gram()));
    Rat C = Rat(static_cast<unsigned long>(n)) * R2;
    FieldElement r2 = K.from_rational(R2);
    bool real = K.totally_real();
    std::vector<FieldElement> out;
    fincke_pohst(
        red.gram, C,
        [&](IntVector const& y) {
            FieldElement x(K, y * red.U);
            FieldElement xx = real ? x * x : x * K.conjugate(x);
            if (is_totally_nonneg(r2 - xx))
                out.push_back(std::move(x));
            return true;
        },
        opt.cap);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

FieldElement canonical_sign(FieldElement const& x)
{
    for (auto const& c : x.num())
        if (c != 0)
            return c < 0 ? -x : x;
    return x;
}

std::optional<Rat> rational_sqrt(Rat const& r)
{
    if (r < 0 || !is_square(r.get_num()) || !is_square(r.get_den()))
        return std::nullopt;
    Rat s(isqrt(r.get_num()), isqrt(r.get_den()));
    s.canonicalize();
    return s;
}

} // namespace

std::optional<FieldElement> sqrt_in_field(NumberField const& K, FieldElement const& m)
{
    if (m.is_zero())
        return K.zero();
    if (K.degree() == 1) {
        auto s = rational_sqrt(m.as_rational());
        if (!s)
            return std::nullopt;
        return K.from_rational(*s);
    }
    if (!m.is_integral()) {
        // sqrt(m) = sqrt(m d^2) / d
        Rat d(m.den());
        auto s = sqrt_in_field(K, (d * d) * m);
        if (!s)
            return std::nullopt;
        return canonical_sign(Rat(1) / d * *s);
    }
    // the norm of a square is a square
    if (!rational_sqrt(abs(norm(m))) || (K.degree() % 2 == 1 && norm(m) < 0))
        return std::nullopt;
    if (K.totally_real() && !is_totally_nonneg(m))
        return std::nullopt;
    if (K.has_base()) {
        if (auto y = K.try_descend(m)) {
            // x = a + b sqrt(delta) with x^2 in the base forces a = 0 or b = 0
            NumberField const& F = *K.base();
            if (auto s = sqrt_in_field(F, *y))
                return canonical_sign(lift_from_base(K, *s));
            FieldElement const& delta = K.relative_delta();
            if (auto w = sqrt_in_field(F, *y * delta))
                return canonical_sign(lift_from_base(K, *w / delta) * K.relative_sqrt_delta());
            return std::nullopt;
        }
    }
    if (K.t2_gram().rows() != K.degree()) {
        Rat bound = cauchy_root_bound(char_poly(m));
        for (auto const& x : enumerate_box(K, Rat(ceil_of(bound))))
            if (x * x == m)
                return canonical_sign(x);
        return std::nullopt;
    }
    // x^2 = m gives |sigma(x)|^2 = |sigma(m)|, so T2(x) = Tr(m) when K is
    // totally real and T2(x) <= sqrt(n T2(m)) when K is CM
    Rat C;
    if (K.totally_real()) {
        C = trace(m);
    } else {
        Int t = floor_of(Rat(static_cast<unsigned long>(K.degree())) * trace(m * K.conjugate(m)));
        C = Rat(isqrt(t) + 1);
    }
    LllResult red = lll_gram(to_rat(K.t2_gram()));
    std::optional<FieldElement> found;
    fincke_pohst(red.gram, C, [&](IntVector const& y) {
        FieldElement x(K, y * red.U);
        if (x * x == m) {
            found = canonical_sign(x);
            return false;
        }
        return true;
    });
    return found;
}

std::vector<Int> quadratic_subfields(NumberField const& K)
{
    if (K.degree() % 2 == 1)
        return {};
    std::vector<Int> primes = prime_divisors(K.discriminant());
    if (primes.size() > 20)
        throw ResourceError("quadratic_subfields: too many ramified primes");
    std::vector<Int> out;
    for (std::size_t S = 0; S < (std::size_t(1) << primes.size()); ++S) {
        Int d = 1;
        for (std::size_t i = 0; i < primes.size(); ++i)
            if (S >> i & 1)
                d *= primes[i];
        for (Int cand : {d, Int(-d)}) {
            if (cand == 1)
                continue;
            if (sqrt_in_field(K, K.from_rational(Rat(cand))))
                out.push_back(cand);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace qms
